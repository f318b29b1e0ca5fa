#include "support/fixtures.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace protnn::testing {

TempDir::TempDir() {
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("protnn-test-" + std::to_string(rd()) + "-" +
           std::to_string(rd()));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  out << content;
}

std::string pdb_atom_line(int serial, const std::string& atom_name,
                          char altloc, const std::string& resname, char chain,
                          int seq, char icode, double x, double y, double z) {
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "ATOM  %5d %-4s%c%-3s %c%4d%c   %8.3f%8.3f%8.3f  1.00  0.00",
                serial, atom_name.c_str(), altloc, resname.c_str(), chain, seq,
                icode, x, y, z);
  return buf;
}

std::string pdb_text(const std::vector<ResidueSpec>& residues) {
  std::string out;
  int serial = 1;
  for (const auto& r : residues) {
    out += pdb_atom_line(serial++, " CA ", ' ', r.label, r.chain, r.seq, ' ',
                         r.x, r.y, r.z);
    out += '\n';
  }
  out += "END\n";
  return out;
}

namespace {
const char* kResidueCodes[] = {"ALA", "GLY", "SER", "LEU",
                               "VAL", "THR", "LYS", "ASP"};
}

std::vector<ResidueSpec> helix_residues(int n, double origin_x) {
  // 100 degrees per residue, 1.5 A rise, 2.3 A radius: ~3.8 A CA spacing.
  std::vector<ResidueSpec> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    double angle = i * 100.0 * std::numbers::pi / 180.0;
    out.push_back({kResidueCodes[i % 8], 'A', i + 1,
                   origin_x + 2.3 * std::cos(angle), 2.3 * std::sin(angle),
                   1.5 * i});
  }
  return out;
}

std::vector<ResidueSpec> strand_residues(int n, double origin_y) {
  std::vector<ResidueSpec> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i)
    out.push_back(
        {kResidueCodes[(i * 3) % 8], 'A', i + 1, 3.8 * i, origin_y, 0.0});
  return out;
}

StructureRecord random_points_record(std::mt19937& rng, int n, double box,
                                     const std::string& id) {
  std::uniform_real_distribution<double> coord(0.0, box);
  StructureRecord rec;
  rec.structure_id = id;
  rec.source_path = "<synthetic>";
  for (int i = 0; i < n; ++i) {
    Residue r;
    r.label = kResidueCodes[i % 8];
    r.chain_id = 'A';
    r.seq_number = i + 1;
    r.insertion_code = ' ';
    r.ca_position = {coord(rng), coord(rng), coord(rng)};
    rec.residues.push_back(std::move(r));
  }
  return rec;
}

ProteinGraph random_graph(std::mt19937& rng, int n, double edge_prob,
                          int label_alphabet, const std::string& id) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, label_alphabet - 1);
  std::vector<std::string> labels(n);
  for (auto& l : labels) l = kResidueCodes[pick(rng)];
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (unit(rng) < edge_prob) edges.emplace_back(i, j);
  return ProteinGraph(id, std::move(labels), std::move(edges));
}

std::vector<FeatureVector> cluster_rows(std::mt19937& rng, int per_class,
                                        double sigma) {
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<FeatureVector> rows;
  for (int cls = 0; cls < 2; ++cls)
    for (int i = 0; i < per_class; ++i) {
      FeatureVector fv;
      fv.structure_id = (cls ? "b" : "a") + std::to_string(i);
      fv.label = cls ? "beta" : "alpha";
      fv.values.resize(kNumAttributes);
      for (int j = 0; j < kNumAttributes; ++j) {
        double center = (j % 2 == cls) ? 1.0 : 0.0;
        fv.values[j] = center + noise(rng);
      }
      rows.push_back(std::move(fv));
    }
  return rows;
}

std::vector<FeatureVector> noise_fixture_rows() {
  // clean signal in A1, adversarial noise in A18 pairing a1 with b1.
  struct Row {
    const char* id;
    const char* cls;
    double clean, noise;
  };
  const Row spec[] = {
      {"a1", "A", 0.00, 0.00}, {"a2", "A", 0.05, 0.95}, {"a3", "A", 0.10, 1.00},
      {"b1", "B", 0.90, 0.00}, {"b2", "B", 0.95, 0.90}, {"b3", "B", 1.00, 0.92},
  };
  std::vector<FeatureVector> rows;
  for (const Row& r : spec) {
    FeatureVector fv;
    fv.structure_id = r.id;
    fv.label = r.cls;
    fv.values.assign(kNumAttributes, 5.0);  // constant middle attributes
    fv.values.front() = r.clean;
    fv.values.back() = r.noise;
    rows.push_back(std::move(fv));
  }
  return rows;
}

}  // namespace protnn::testing
