#include "protnn/reference_db.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "protnn/error.hpp"

namespace protnn {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_csv_safe(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_of(",\n\r") != std::string::npos)
    fail(errc::bad_format,
         std::string(what) + " must be non-empty and comma/newline free: `" +
             s + "`");
}

FeatureVector embed_structure(const ManifestEntry& entry,
                              const GraphBuildParams& params) {
  StructureRecord rec = parse_pdb_file(entry.path);
  FeatureVector fv = compute_features(build_graph(rec, params));
  fv.label = entry.label;
  return fv;
}

struct EmbedOutcome {
  FeatureVector row;
  std::string error;  // non-empty on failure
};

// Embeds every entry, keeping manifest order. jobs > 1 fans the per-protein
// work out over threads; everything here is pure per entry.
std::vector<EmbedOutcome> embed_all(const std::vector<ManifestEntry>& entries,
                                    const GraphBuildParams& params, int jobs) {
  std::vector<EmbedOutcome> out(entries.size());
  auto work = [&](size_t i) {
    try {
      out[i].row = embed_structure(entries[i], params);
    } catch (const std::exception& e) {
      out[i].error = e.what();
    }
  };

  jobs = std::clamp(jobs, 1, static_cast<int>(entries.size() + 1));
  if (jobs <= 1) {
    for (size_t i = 0; i < entries.size(); ++i) work(i);
    return out;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (size_t i = next++; i < entries.size(); i = next++) work(i);
    });
  for (auto& th : pool) th.join();
  return out;
}

void validate_row(const FeatureVector& row) {
  if (row.values.size() != static_cast<size_t>(kNumAttributes))
    fail(errc::dimension_mismatch,
         row.structure_id + ": row does not have " +
             std::to_string(kNumAttributes) + " attributes");
  for (double v : row.values)
    if (!std::isfinite(v))
      fail(errc::bad_format, row.structure_id + ": non-finite attribute value");
  if (row.structure_id.empty())
    fail(errc::bad_format, "row with empty structure_id");
  if (row.label.empty())
    fail(errc::bad_format, row.structure_id + ": reference row without label");
}

std::vector<std::string> registry_names() {
  std::vector<std::string> names;
  names.reserve(kNumAttributes);
  for (const auto& info : kAttributes) names.emplace_back(info.name);
  return names;
}

}  // namespace

FeatureStats compute_stats(const std::vector<FeatureVector>& rows) {
  FeatureStats s;
  if (rows.empty()) return s;
  size_t dim = rows[0].values.size();
  s.min.assign(dim, std::numeric_limits<double>::infinity());
  s.max.assign(dim, -std::numeric_limits<double>::infinity());
  s.mean.assign(dim, 0.0);
  s.variance.assign(dim, 0.0);
  for (const auto& row : rows)
    for (size_t j = 0; j < dim; ++j) {
      double v = row.values[j];
      s.min[j] = std::min(s.min[j], v);
      s.max[j] = std::max(s.max[j], v);
      s.mean[j] += v;
    }
  for (size_t j = 0; j < dim; ++j) s.mean[j] /= rows.size();
  for (const auto& row : rows)
    for (size_t j = 0; j < dim; ++j) {
      double d = row.values[j] - s.mean[j];
      s.variance[j] += d * d;
    }
  for (size_t j = 0; j < dim; ++j) s.variance[j] /= rows.size();
  return s;
}

std::vector<double> normalize(std::span<const double> values,
                              const FeatureStats& stats) {
  std::vector<double> out(values.size());
  for (size_t j = 0; j < values.size(); ++j) {
    double range = stats.max[j] - stats.min[j];
    out[j] = range == 0 ? 0.0 : (values[j] - stats.min[j]) / range;
  }
  return out;
}

ReferenceDb ReferenceDb::from_rows(std::vector<FeatureVector> rows,
                                   double delta) {
  ReferenceDb db;
  db.delta_ = delta;
  db.attribute_names_ = registry_names();
  for (auto& row : rows) {
    validate_row(row);
    db.append_row(std::move(row));
  }
  db.recompute_stats();
  return db;
}

void ReferenceDb::append_row(FeatureVector row) {
  auto [it, inserted] = id_index_.emplace(row.structure_id, rows_.size());
  if (!inserted)
    fail(errc::duplicate_structure_id,
         "duplicate structure_id: " + row.structure_id);
  rows_.push_back(std::move(row));
}

void ReferenceDb::recompute_stats() {
  stats_ = compute_stats(rows_);
  normalized_variances_.assign(kNumAttributes, 0.0);
  if (rows_.empty()) return;

  // Population variance of each attribute after min-max normalization.
  std::vector<double> mean(kNumAttributes, 0.0);
  std::vector<std::vector<double>> normed(rows_.size());
  for (size_t i = 0; i < rows_.size(); ++i) {
    normed[i] = normalize(rows_[i].values, stats_);
    for (int j = 0; j < kNumAttributes; ++j) mean[j] += normed[i][j];
  }
  for (int j = 0; j < kNumAttributes; ++j) mean[j] /= rows_.size();
  for (const auto& v : normed)
    for (int j = 0; j < kNumAttributes; ++j) {
      double d = v[j] - mean[j];
      normalized_variances_[j] += d * d;
    }
  for (int j = 0; j < kNumAttributes; ++j)
    normalized_variances_[j] /= rows_.size();
}

ReferenceDb ReferenceDb::without_row(size_t i) const {
  ReferenceDb out;
  out.delta_ = delta_;
  out.attribute_names_ = attribute_names_;
  out.rows_.reserve(rows_.size() - 1);
  for (size_t r = 0; r < rows_.size(); ++r)
    if (r != i) out.append_row(rows_[r]);
  out.recompute_stats();
  return out;
}

ReferenceDb build_db(const std::vector<ManifestEntry>& manifest,
                     const GraphBuildParams& params,
                     std::vector<BuildFailure>* failures, int jobs) {
  ReferenceDb db;
  db.delta_ = params.delta;
  db.attribute_names_ = registry_names();

  std::vector<EmbedOutcome> outcomes = embed_all(manifest, params, jobs);
  for (size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].error.empty()) {
      try {
        db.append_row(std::move(outcomes[i].row));
        continue;
      } catch (const Error& e) {
        outcomes[i].error = e.what();  // duplicate id: keep the first row
      }
    }
    if (failures)
      failures->push_back({manifest[i].path, outcomes[i].error});
  }
  if (db.rows_.empty())
    fail(errc::all_structures_failed,
         "no structure could be embedded (" +
             std::to_string(manifest.size()) + " failures)");
  db.recompute_stats();
  return db;
}

void add_structures(ReferenceDb& db, const std::vector<ManifestEntry>& extra,
                    const GraphBuildParams& params,
                    std::vector<BuildFailure>* failures, int jobs) {
  std::vector<EmbedOutcome> outcomes = embed_all(extra, params, jobs);

  // Validate ids up front so a duplicate leaves the database untouched.
  std::vector<FeatureVector*> accepted;
  std::unordered_map<std::string, int> fresh;
  for (size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].error.empty()) {
      if (failures) failures->push_back({extra[i].path, outcomes[i].error});
      continue;
    }
    const std::string& id = outcomes[i].row.structure_id;
    if (db.contains(id) || !fresh.emplace(id, 1).second)
      fail(errc::duplicate_structure_id, "duplicate structure_id: " + id);
    accepted.push_back(&outcomes[i].row);
  }
  for (FeatureVector* row : accepted) db.append_row(std::move(*row));
  db.recompute_stats();
}

void save_db(const ReferenceDb& db, const std::string& path) {
  for (const auto& row : db.rows()) {
    check_csv_safe(row.structure_id, "structure_id");
    check_csv_safe(row.label, "label");
  }

  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) fail(errc::io_error, "cannot write " + tmp.string());
    out << "#protnn-db v" << db.version() << "\n";
    out << "#delta=" << g17(db.delta()) << "\n";
    out << "#attributes=" << attribute_name_list() << "\n";
    for (const auto& row : db.rows()) {
      out << row.structure_id << "," << row.label;
      for (double v : row.values) out << "," << g17(v);
      out << "\n";
    }
    if (!out.flush()) fail(errc::io_error, "write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

ReferenceDb load_db(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::file_not_found, "cannot open db file: " + path);

  std::string line;
  auto next_line = [&](const char* what) {
    if (!std::getline(in, line))
      fail(errc::bad_format, std::string("db file truncated before ") + what);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };

  if (next_line("version") != "#protnn-db v1")
    fail(errc::bad_format, path + ": not a protnn-db v1 file");
  next_line("delta");
  double delta = 0;
  if (line.rfind("#delta=", 0) != 0 ||
      !(std::istringstream(line.substr(7)) >> delta) || !(delta > 0))
    fail(errc::bad_format, path + ": bad #delta header");
  if (next_line("attributes") != "#attributes=" + attribute_name_list())
    fail(errc::bad_format, path + ": attribute list does not match registry");

  ReferenceDb db;
  db.delta_ = delta;
  db.attribute_names_ = registry_names();
  size_t line_no = 3;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    FeatureVector row;
    std::stringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 2 + kNumAttributes)
      fail(errc::bad_format,
           path + ": bad row at line " + std::to_string(line_no));
    row.structure_id = cells[0];
    row.label = cells[1];
    row.values.reserve(kNumAttributes);
    for (int j = 0; j < kNumAttributes; ++j) {
      char* end = nullptr;
      double v = std::strtod(cells[2 + j].c_str(), &end);
      if (end != cells[2 + j].c_str() + cells[2 + j].size())
        fail(errc::bad_format,
             path + ": bad value at line " + std::to_string(line_no));
      row.values.push_back(v);
    }
    validate_row(row);
    db.append_row(std::move(row));
  }
  if (db.rows_.empty())
    fail(errc::empty_db, path + ": db file contains no rows");
  db.recompute_stats();
  return db;
}

}  // namespace protnn
