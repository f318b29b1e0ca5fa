#include "protnn/pdb.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace protnn {

namespace {

std::string trimmed(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Fixed-column field, 1-based inclusive columns as in the PDB format spec.
std::string_view field(const std::string& line, int first, int last) {
  size_t b = static_cast<size_t>(first - 1);
  size_t e = std::min(static_cast<size_t>(last), line.size());
  if (b >= e) return {};
  return std::string_view(line).substr(b, e - b);
}

bool parse_double_field(std::string_view f, double* out) {
  std::string s = trimmed(f);
  if (s.empty()) return false;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return false;
  *out = v;
  return true;
}

bool parse_int_field(std::string_view f, int* out) {
  std::string s = trimmed(f);
  if (s.empty()) return false;
  char* end = nullptr;
  long v = std::strtol(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size()) return false;
  *out = static_cast<int>(v);
  return true;
}

std::string residue_key(char chain, int seq, char icode) {
  std::string key(1, chain);
  key += ':';
  key += std::to_string(seq);
  key += icode;
  return key;
}

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

StructureRecord parse_pdb_stream(std::istream& in, const std::string& id,
                                 const std::string& source_path) {
  StructureRecord rec;
  rec.structure_id = id;
  rec.source_path = source_path;

  std::unordered_set<std::string> with_ca;
  std::unordered_set<std::string> all_residues;
  int models_seen = 0;
  bool past_first_model = false;
  int line_no = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string record_name = trimmed(field(line, 1, 6));

    if (record_name == "MODEL") {
      ++models_seen;
      if (models_seen > 1) ++rec.stats.models_skipped;
      continue;
    }
    if (record_name == "ENDMDL") {
      if (models_seen >= 1) past_first_model = true;
      continue;
    }
    if (past_first_model) continue;

    if (record_name == "HETATM") {
      ++rec.stats.hetatm_records;
      continue;
    }
    if (record_name != "ATOM") continue;

    ++rec.stats.atom_records;
    if (line.size() < 54)
      fail(errc::malformed_record,
           id + ": ATOM record too short at line " + std::to_string(line_no));

    std::string label = trimmed(field(line, 18, 20));
    char chain = line[21];
    char icode = line[26];
    int seq = 0;
    if (label.empty() || !parse_int_field(field(line, 23, 26), &seq))
      fail(errc::malformed_record,
           id + ": unparseable ATOM record at line " + std::to_string(line_no));
    std::transform(label.begin(), label.end(), label.begin(),
                   [](unsigned char c) { return std::toupper(c); });

    std::string key = residue_key(chain, seq, icode);
    all_residues.insert(key);

    if (trimmed(field(line, 13, 16)) != "CA") continue;

    char altloc = line[16];
    if (altloc != ' ' && altloc != 'A') {
      ++rec.stats.altloc_skipped;
      continue;
    }

    Vec3 pos;
    if (!parse_double_field(field(line, 31, 38), &pos.x) ||
        !parse_double_field(field(line, 39, 46), &pos.y) ||
        !parse_double_field(field(line, 47, 54), &pos.z))
      fail(errc::malformed_record,
           id + ": unparseable coordinates at line " + std::to_string(line_no));

    if (!with_ca.insert(key).second) continue;  // first CA per residue wins

    Residue r;
    r.label = std::move(label);
    r.chain_id = chain;
    r.seq_number = seq;
    r.insertion_code = icode;
    r.ca_position = pos;
    rec.residues.push_back(std::move(r));
  }

  rec.stats.residues_without_ca =
      static_cast<int>(all_residues.size() - with_ca.size());
  if (rec.residues.empty())
    fail(errc::no_ca_atoms, id + ": no CA atoms found");
  return rec;
}

}  // namespace

StructureRecord parse_pdb_file(const std::string& path,
                               const IngestOptions& options) {
  std::ifstream in(path);
  if (!in)
    fail(errc::file_not_found, "cannot open PDB file: " + path);
  std::string id =
      options.id_override.empty() ? stem_of(path) : options.id_override;
  return parse_pdb_stream(in, id, path);
}

StructureRecord parse_pdb_text(const std::string& text, const std::string& id,
                               const IngestOptions& options) {
  std::istringstream in(text);
  std::string use_id = options.id_override.empty() ? id : options.id_override;
  return parse_pdb_stream(in, use_id, "<memory>");
}

std::vector<ManifestEntry> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    fail(errc::file_not_found, "cannot open manifest: " + path);

  std::string header;
  if (!std::getline(in, header))
    fail(errc::empty_manifest, "manifest is empty: " + path);
  if (!header.empty() && header.back() == '\r') header.pop_back();

  // Locate the path and label columns; extra columns are tolerated.
  int path_col = -1, label_col = -1, ncols = 0;
  {
    std::stringstream hs(header);
    std::string col;
    for (int i = 0; std::getline(hs, col, ','); ++i, ++ncols) {
      std::string name = trimmed(col);
      if (name == "path") path_col = i;
      if (name == "label") label_col = i;
    }
  }
  if (path_col < 0 || label_col < 0)
    fail(errc::missing_column,
         "manifest header must contain `path` and `label`: " + path);

  std::filesystem::path base = std::filesystem::path(path).parent_path();
  std::vector<ManifestEntry> entries;
  std::unordered_set<std::string> seen;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trimmed(line).empty()) continue;

    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(trimmed(cell));
    if (static_cast<int>(cells.size()) <= std::max(path_col, label_col))
      fail(errc::missing_column, "manifest row " + std::to_string(line_no) +
                                     " has too few columns");

    ManifestEntry e;
    const std::string& raw = cells[path_col];
    std::filesystem::path p(raw);
    e.path = p.is_absolute() ? raw : (base / p).string();
    e.label = cells[label_col];
    if (!seen.insert(raw).second)
      fail(errc::duplicate_path, "manifest lists path twice: " + raw);
    entries.push_back(std::move(e));
  }
  if (entries.empty())
    fail(errc::empty_manifest, "manifest has no data rows: " + path);
  return entries;
}

void dump_record(const StructureRecord& rec, std::ostream& out) {
  out << "#structure " << rec.structure_id << "\n";
  out << "#source " << rec.source_path << "\n";
  out << "#residues " << rec.residues.size() << "\n";
  char buf[96];
  for (const Residue& r : rec.residues) {
    char chain = r.chain_id == ' ' ? '_' : r.chain_id;
    char icode = r.insertion_code == ' ' ? '_' : r.insertion_code;
    std::snprintf(buf, sizeof buf, " %c %d %c %.17g %.17g %.17g", chain,
                  r.seq_number, icode, r.ca_position.x, r.ca_position.y,
                  r.ca_position.z);
    out << r.label << buf << "\n";
  }
}

StructureRecord read_record_dump(std::istream& in) {
  StructureRecord rec;
  // header values may contain spaces (paths), so read whole lines
  auto header = [&](const char* tag) {
    std::string line;
    if (!std::getline(in, line) || line.rfind(tag, 0) != 0)
      fail(errc::bad_format, std::string("record dump: bad ") + tag + " line");
    size_t cut = std::strlen(tag) + 1;
    return cut <= line.size() ? line.substr(cut) : std::string();
  };
  rec.structure_id = header("#structure");
  rec.source_path = header("#source");
  size_t count = 0;
  try {
    count = std::stoul(header("#residues"));
  } catch (const std::exception&) {
    fail(errc::bad_format, "record dump: bad #residues count");
  }
  rec.residues.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    Residue r;
    char chain, icode;
    if (!(in >> r.label >> chain >> r.seq_number >> icode >> r.ca_position.x >>
          r.ca_position.y >> r.ca_position.z))
      fail(errc::bad_format, "record dump: truncated residue list");
    r.chain_id = chain == '_' ? ' ' : chain;
    r.insertion_code = icode == '_' ? ' ' : icode;
    rec.residues.push_back(std::move(r));
  }
  return rec;
}

}  // namespace protnn
