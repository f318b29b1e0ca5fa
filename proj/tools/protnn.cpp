// protnn command-line front end: database building, classification, and the
// evaluation experiments, all emitting CSV reports.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "protnn/classifier.hpp"
#include "protnn/error.hpp"
#include "protnn/eval.hpp"
#include "protnn/graph.hpp"
#include "protnn/pdb.hpp"
#include "protnn/reference_db.hpp"

namespace {

using namespace protnn;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Reports go to stdout unless --out was given; files are written atomically.
void emit_report(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  fs::path tmp = fs::path(out_path);
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) fail(errc::io_error, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) fail(errc::io_error, "write failed: " + tmp.string());
  }
  fs::rename(tmp, out_path);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t b = item.find_first_not_of(" \t");
    size_t e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::string mask_to_names(const std::vector<int>& mask) {
  if (mask.empty()) return "all";
  std::string out;
  for (size_t i = 0; i < mask.size(); ++i) {
    if (i) out += ',';
    out += kAttributes[mask[i]].name;
  }
  return out;
}

struct PhaseTimes {
  double graph_build = 0;
  double attributes = 0;
  double classification = 0;
  int proteins = 0;

  std::string table() const {
    auto line = [&](const char* name, double total) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%-24s %12.3f s %14.6f s\n", name, total,
                    proteins ? total / proteins : 0.0);
      return std::string(buf);
    };
    std::string out = "phase                           total    per-protein\n";
    out += line("graph-build", graph_build);
    out += line("attributes", attributes);
    out += line("classification", classification);
    out += line("total", graph_build + attributes + classification);
    return out;
  }

  std::string csv() const {
    std::string out = "phase,total_seconds,per_protein_seconds\n";
    auto row = [&](const char* name, double total) {
      return std::string(name) + "," + g17(total) + "," +
             g17(proteins ? total / proteins : 0.0) + "\n";
    };
    out += row("graph-build", graph_build);
    out += row("attributes", attributes);
    out += row("classification", classification);
    out += row("total", graph_build + attributes + classification);
    return out;
  }
};

void print_failures(const std::vector<BuildFailure>& failures) {
  for (const auto& f : failures)
    std::cerr << "warning: skipped " << f.path << ": " << f.message << "\n";
}

// ---- shared option block ----

struct CommonOpts {
  std::string db_path;
  int k = 1;
  std::string distance = "std-euclidean";
  double minkowski_p = 2.0;
  std::string mask_spec;
  std::string out_path;
};

DistanceMeasure make_measure(const CommonOpts& o) {
  return measure_from_name(o.distance, o.minkowski_p);
}

FeatureMask make_mask(const CommonOpts& o) {
  if (o.mask_spec.empty()) return std::nullopt;
  return parse_mask(o.mask_spec);
}

void add_measure_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--distance", o.distance,
                  "distance measure (euclidean, std-euclidean, cosine, "
                  "manhattan, correlation, minkowski, chebyshev, canberra, "
                  "braycurtis)")
      ->default_val("std-euclidean");
  cmd->add_option("--minkowski-p", o.minkowski_p,
                  "order p for the minkowski measure")
      ->default_val(2.0);
}

// ---- build-db / add ----

int run_build_db(const std::string& manifest_path, const std::string& out,
                 double delta, int jobs) {
  std::vector<BuildFailure> failures;
  ReferenceDb db =
      build_db(load_manifest(manifest_path), {delta}, &failures, jobs);
  print_failures(failures);
  save_db(db, out);
  std::cout << "wrote " << out << ": " << db.rows().size() << " rows, "
            << failures.size() << " failures\n";
  return 0;
}

int run_add(const std::string& db_path, const std::string& manifest_path,
            std::string out, int jobs) {
  ReferenceDb db = load_db(db_path);
  std::vector<BuildFailure> failures;
  add_structures(db, load_manifest(manifest_path), {db.delta()}, &failures,
                 jobs);
  print_failures(failures);
  if (out.empty()) out = db_path;
  save_db(db, out);
  std::cout << "wrote " << out << ": " << db.rows().size() << " rows, "
            << failures.size() << " failures\n";
  return 0;
}

// ---- classify ----

std::vector<std::string> query_files(const std::string& query) {
  if (!fs::exists(query))
    fail(errc::file_not_found, "query path does not exist: " + query);
  if (!fs::is_directory(query)) return {query};
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(query))
    if (entry.is_regular_file() && entry.path().extension() == ".pdb")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  if (files.empty())
    fail(errc::file_not_found, "no .pdb files under " + query);
  return files;
}

int run_classify(const CommonOpts& o, const std::string& query, bool timing) {
  ReferenceDb db = load_db(o.db_path);
  DistanceMeasure m = make_measure(o);
  FeatureMask mask = make_mask(o);
  GraphBuildParams params{db.delta()};

  PhaseTimes times;
  std::string csv = "query_id,predicted_class,top1_id,top1_distance,votes\n";
  for (const std::string& file : query_files(query)) {
    auto t0 = Clock::now();
    ProteinGraph g = build_graph(parse_pdb_file(file), params);
    times.graph_build += seconds_since(t0);

    t0 = Clock::now();
    FeatureVector fv = compute_features(g);
    times.attributes += seconds_since(t0);

    t0 = Clock::now();
    Prediction p = classify(fv, db, o.k, m, mask);
    times.classification += seconds_since(t0);
    ++times.proteins;

    std::string votes;
    for (const auto& [cls, n] : p.votes) {
      if (!votes.empty()) votes += ';';
      votes += cls + ":" + std::to_string(n);
    }
    csv += p.query_id + "," + p.predicted_class + "," +
           p.neighbors[0].structure_id + "," + g17(p.neighbors[0].distance) +
           "," + votes + "\n";
  }
  emit_report(o.out_path, csv);
  if (timing) std::cerr << times.table();
  return 0;
}

// ---- evaluate / rfe / score-attributes ----

int run_evaluate(const CommonOpts& o) {
  ReferenceDb db = load_db(o.db_path);
  LooResult res = loo_accuracy(db, o.k, make_measure(o), make_mask(o),
                               fs::path(o.db_path).stem().string());
  std::string csv;
  csv += "# protnn-loo dataset=" + res.dataset_id + " k=" +
         std::to_string(res.k) + " distance=" + res.measure +
         " mask=" + mask_to_names(res.mask) + "\n";
  csv += "# accuracy=" + g17(res.accuracy) + "\n";
  csv += "query_id,true_class,predicted_class,correct\n";
  for (const auto& q : res.per_query)
    csv += q.query_id + "," + q.true_class + "," + q.predicted_class + "," +
           (q.predicted_class == q.true_class ? "1" : "0") + "\n";
  emit_report(o.out_path, csv);
  std::cerr << "accuracy " << g17(res.accuracy) << " (" << res.per_query.size()
            << " queries)\n";
  return 0;
}

int run_rfe(const CommonOpts& o) {
  ReferenceDb db = load_db(o.db_path);
  RfeResult res = rfe(db, o.k, make_measure(o));
  std::string csv;
  csv += "# protnn-rfe db=" + fs::path(o.db_path).stem().string() +
         " k=" + std::to_string(o.k) + " distance=" + o.distance + "\n";
  csv += "# final_mask=" + mask_to_names(res.selected_mask) +
         " final_accuracy=" + g17(res.final_accuracy) +
         " loo_evaluations=" + std::to_string(res.loo_evaluations) + "\n";
  csv += "step,removed_attribute,accuracy\n";
  csv += "0,," + g17(res.initial_accuracy) + "\n";
  int step = 1;
  for (const auto& s : res.elimination_trace) {
    csv += std::to_string(step++) + "," +
           std::string(kAttributes[s.removed_attribute].name) + "," +
           g17(s.accuracy_after_removal) + "\n";
  }
  emit_report(o.out_path, csv);
  return 0;
}

int run_score_attributes(const std::vector<std::string>& db_paths,
                         const std::string& measures_spec,
                         const std::string& ks_spec, double minkowski_p,
                         const std::string& out_path) {
  std::vector<ReferenceDb> dbs;
  for (const auto& p : db_paths) dbs.push_back(load_db(p));
  std::vector<DistanceMeasure> measures;
  for (const auto& name : split_list(measures_spec))
    measures.push_back(measure_from_name(name, minkowski_p));
  std::vector<int> ks;
  for (const auto& k : split_list(ks_spec)) ks.push_back(std::stoi(k));

  AttributeScoreTable table = score_attributes(dbs, measures, ks);
  std::string csv = "# experiments=" + std::to_string(table.experiments) + "\n";
  csv += "attribute,count,score,rank\n";
  for (int j = 0; j < kNumAttributes; ++j)
    csv += std::string(kAttributes[j].name) + "," +
           std::to_string(table.count[j]) + "," + g17(table.score[j]) + "," +
           std::to_string(table.rank[j]) + "\n";
  emit_report(out_path, csv);
  return 0;
}

// ---- stats ----

int run_stats(const std::string& db_path, const std::string& pdb_path,
              double delta, const std::string& dump_path,
              const std::string& out_path) {
  std::string csv;
  if (!db_path.empty()) {
    ReferenceDb db = load_db(db_path);
    std::map<std::string, int> classes;
    for (const auto& row : db.rows()) ++classes[row.label];
    csv += "# rows=" + std::to_string(db.rows().size()) +
           " classes=" + std::to_string(classes.size()) +
           " delta=" + g17(db.delta()) + "\n";
    csv += "attribute,min,max,mean,variance\n";
    for (int j = 0; j < kNumAttributes; ++j)
      csv += std::string(kAttributes[j].name) + "," + g17(db.stats().min[j]) +
             "," + g17(db.stats().max[j]) + "," + g17(db.stats().mean[j]) +
             "," + g17(db.stats().variance[j]) + "\n";
  } else if (!pdb_path.empty()) {
    StructureRecord rec = parse_pdb_file(pdb_path);
    ProteinGraph g = build_graph(rec, {delta});
    GraphStats s = graph_stats(g);
    csv += "# structure=" + rec.structure_id +
           " residues=" + std::to_string(rec.residues.size()) +
           " residues_without_ca=" + std::to_string(rec.stats.residues_without_ca) +
           " altloc_skipped=" + std::to_string(rec.stats.altloc_skipped) +
           " models_skipped=" + std::to_string(rec.stats.models_skipped) + "\n";
    csv += "nodes,edges,components\n";
    csv += std::to_string(s.nodes) + "," + std::to_string(s.edges) + "," +
           std::to_string(s.components) + "\n";
    if (!dump_path.empty()) {
      std::ostringstream dump;
      dump_graph(g, dump);
      emit_report(dump_path, dump.str());
    }
  } else {
    fail(errc::bad_format, "stats needs --db or --pdb");
  }
  emit_report(out_path, csv);
  return 0;
}

// ---- bench ----

StructureRecord synthetic_record(std::mt19937& rng, int nodes,
                                 const std::string& id) {
  // box side scaled so contact density resembles a globular backbone
  double side = 5.4 * std::cbrt(double(nodes));
  std::uniform_real_distribution<double> coord(0.0, side);
  const char* codes[] = {"ALA", "GLY", "SER", "LEU", "VAL", "THR"};
  StructureRecord rec;
  rec.structure_id = id;
  rec.source_path = "<synthetic>";
  for (int i = 0; i < nodes; ++i) {
    Residue r;
    r.label = codes[i % 6];
    r.chain_id = 'A';
    r.seq_number = i + 1;
    r.ca_position = {coord(rng), coord(rng), coord(rng)};
    rec.residues.push_back(std::move(r));
  }
  return rec;
}

ReferenceDb synthetic_db(std::mt19937& rng, int rows) {
  std::uniform_real_distribution<double> val(0.0, 100.0);
  std::vector<FeatureVector> out;
  out.reserve(rows);
  for (int i = 0; i < rows; ++i) {
    FeatureVector fv;
    fv.structure_id = "syn" + std::to_string(i);
    fv.label = "c" + std::to_string(i % 5);
    fv.values.resize(kNumAttributes);
    for (auto& v : fv.values) v = val(rng);
    out.push_back(std::move(fv));
  }
  return ReferenceDb::from_rows(std::move(out), 7.0);
}

int run_bench(const CommonOpts& o, int synthetic_rows, int queries, int nodes,
              double delta, unsigned seed) {
  std::mt19937 rng(seed);
  ReferenceDb db =
      o.db_path.empty() ? synthetic_db(rng, synthetic_rows) : load_db(o.db_path);
  DistanceMeasure m = make_measure(o);

  std::vector<StructureRecord> records;
  records.reserve(queries);
  for (int i = 0; i < queries; ++i)
    records.push_back(synthetic_record(rng, nodes, "q" + std::to_string(i)));

  PhaseTimes times;
  times.proteins = queries;

  std::vector<ProteinGraph> graphs;
  graphs.reserve(queries);
  auto t0 = Clock::now();
  for (const auto& rec : records) graphs.push_back(build_graph(rec, {delta}));
  times.graph_build = seconds_since(t0);

  std::vector<FeatureVector> vectors;
  vectors.reserve(queries);
  t0 = Clock::now();
  for (const auto& g : graphs) vectors.push_back(compute_features(g));
  times.attributes = seconds_since(t0);

  int votes = 0;  // fold results so the scan cannot be optimized away
  t0 = Clock::now();
  for (const auto& fv : vectors) {
    Prediction p = classify(fv, db, o.k, m);
    votes += int(p.votes.size());
  }
  times.classification = seconds_since(t0);

  std::cout << "reference rows: " << db.rows().size()
            << ", queries: " << queries << ", nodes/query: " << nodes
            << ", distance: " << m.name() << ", vote sets: " << votes << "\n";
  std::cout << times.table();
  if (!o.out_path.empty()) emit_report(o.out_path, times.csv());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"protein contact-graph embedding and nearest-neighbor "
               "function prediction"};
  app.require_subcommand(1);

  // build-db
  std::string manifest_path, build_out;
  double build_delta = 7.0;
  int jobs = 1;
  auto* build = app.add_subcommand(
      "build-db", "embed a manifest of PDB files into a reference database");
  build->add_option("--manifest", manifest_path, "CSV with header path,label")
      ->required();
  build->add_option("--out", build_out, "database file to write")->required();
  build->add_option("--delta", build_delta, "contact threshold in angstroms")
      ->default_val(7.0);
  build->add_option("--jobs", jobs, "parallel descriptor computation")
      ->default_val(1);

  // add
  CommonOpts add_opts;
  std::string add_manifest, add_out;
  int add_jobs = 1;
  auto* add = app.add_subcommand(
      "add", "append structures to an existing database incrementally");
  add->add_option("--db", add_opts.db_path, "existing database")->required();
  add->add_option("--manifest", add_manifest, "CSV of new structures")
      ->required();
  add->add_option("--out", add_out, "output (defaults to --db, in place)");
  add->add_option("--jobs", add_jobs, "parallel descriptor computation")
      ->default_val(1);

  // classify
  CommonOpts cls;
  std::string query_path;
  bool timing = false;
  auto* classify_cmd =
      app.add_subcommand("classify", "predict classes for query structures");
  classify_cmd->add_option("--db", cls.db_path, "reference database")
      ->required();
  classify_cmd
      ->add_option("--query", query_path, "PDB file or directory of .pdb files")
      ->required();
  classify_cmd->add_option("--k", cls.k, "number of nearest neighbors")
      ->default_val(1);
  add_measure_flags(classify_cmd, cls);
  classify_cmd->add_option("--mask", cls.mask_spec,
                           "attribute subset, e.g. A15,A17,A12");
  classify_cmd->add_option("--out", cls.out_path, "report file (default stdout)");
  classify_cmd->add_flag("--timing", timing, "print per-phase timings");

  // evaluate
  CommonOpts ev;
  auto* evaluate =
      app.add_subcommand("evaluate", "leave-one-out accuracy of a database");
  evaluate->add_option("--db", ev.db_path, "reference database")->required();
  evaluate->add_option("--k", ev.k, "number of nearest neighbors")
      ->default_val(1);
  add_measure_flags(evaluate, ev);
  evaluate->add_option("--mask", ev.mask_spec, "attribute subset");
  evaluate->add_option("--out", ev.out_path, "report file (default stdout)");

  // rfe
  CommonOpts rf;
  auto* rfe_cmd = app.add_subcommand(
      "rfe", "recursive feature elimination guided by LOO accuracy");
  rfe_cmd->add_option("--db", rf.db_path, "reference database")->required();
  rfe_cmd->add_option("--k", rf.k, "number of nearest neighbors")
      ->default_val(1);
  add_measure_flags(rfe_cmd, rf);
  rfe_cmd->add_option("--out", rf.out_path, "trace file (default stdout)");

  // score-attributes
  std::vector<std::string> score_dbs;
  std::string score_measures =
      "manhattan,braycurtis,std-euclidean,canberra,cosine";
  std::string score_ks = "1,2,3,4,5";
  double score_minkp = 2.0;
  std::string score_out;
  auto* score = app.add_subcommand(
      "score-attributes", "attribute ranking over a grid of RFE experiments");
  score->add_option("--dbs", score_dbs, "database files")->required();
  score->add_option("--measures", score_measures, "comma-separated measures");
  score->add_option("--ks", score_ks, "comma-separated k values");
  score->add_option("--minkowski-p", score_minkp, "order p for minkowski")
      ->default_val(2.0);
  score->add_option("--out", score_out, "report file (default stdout)");

  // stats
  std::string stats_db, stats_pdb, stats_dump, stats_out;
  double stats_delta = 7.0;
  auto* stats =
      app.add_subcommand("stats", "database or structure/graph summaries");
  stats->add_option("--db", stats_db, "reference database");
  stats->add_option("--pdb", stats_pdb, "structure file");
  stats->add_option("--delta", stats_delta, "contact threshold for --pdb")
      ->default_val(7.0);
  stats->add_option("--dump-graph", stats_dump, "write the graph debug dump");
  stats->add_option("--out", stats_out, "report file (default stdout)");

  // bench
  CommonOpts bench_opts;
  int bench_rows = 94126, bench_queries = 100, bench_nodes = 250;
  double bench_delta = 7.0;
  unsigned bench_seed = 42;
  bool bench_timing = false;
  auto* bench = app.add_subcommand(
      "bench", "single-threaded runtime benchmark of the three phases");
  bench->add_option("--db", bench_opts.db_path,
                    "reference database (omit for a synthetic one)");
  bench->add_option("--synthetic-rows", bench_rows,
                    "rows of the synthetic reference database")
      ->default_val(94126);
  bench->add_option("--queries", bench_queries, "number of synthetic queries")
      ->default_val(100);
  bench->add_option("--nodes", bench_nodes, "residues per synthetic query")
      ->default_val(250);
  bench->add_option("--k", bench_opts.k, "number of nearest neighbors")
      ->default_val(1);
  add_measure_flags(bench, bench_opts);
  bench->add_option("--delta", bench_delta, "contact threshold")
      ->default_val(7.0);
  bench->add_option("--seed", bench_seed, "RNG seed")->default_val(42);
  bench->add_option("--out", bench_opts.out_path, "timing CSV file");
  bench->add_flag("--timing", bench_timing,
                  "timing report is always printed; kept for symmetry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build) return run_build_db(manifest_path, build_out, build_delta, jobs);
    if (*add) return run_add(add_opts.db_path, add_manifest, add_out, add_jobs);
    if (*classify_cmd) return run_classify(cls, query_path, timing);
    if (*evaluate) return run_evaluate(ev);
    if (*rfe_cmd) return run_rfe(rf);
    if (*score)
      return run_score_attributes(score_dbs, score_measures, score_ks,
                                  score_minkp, score_out);
    if (*stats)
      return run_stats(stats_db, stats_pdb, stats_delta, stats_dump, stats_out);
    if (*bench)
      return run_bench(bench_opts, bench_rows, bench_queries, bench_nodes,
                       bench_delta, bench_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
