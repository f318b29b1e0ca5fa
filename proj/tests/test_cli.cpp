// End-to-end checks of the command-line tool: real process, real files.

#include <cstdlib>
#include <vector>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "support/fixtures.hpp"

using namespace protnn::testing;

namespace {

#ifndef PROTNN_CLI_PATH
#error "PROTNN_CLI_PATH must be defined by the build"
#endif
#ifndef PROTNN_DATA_DIR
#error "PROTNN_DATA_DIR must be defined by the build"
#endif

const char* kCli = PROTNN_CLI_PATH;
const char* kData = PROTNN_DATA_DIR;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args, const TempDir& dir) {
  std::string out_file = dir.file("cmd.out");
  std::string cmd = std::string(kCli) + " " + args + " > " + out_file + " 2>&1";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file);
  std::stringstream buf;
  buf << in.rdbuf();
  return {code, buf.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string manifest() { return std::string(kData) + "/manifest.csv"; }

}  // namespace

TEST_CASE("cli: build-db, classify, evaluate round trip") {
  TempDir dir;
  std::string db = dir.file("ref.db");
  RunResult r = run("build-db --manifest " + manifest() + " --out " + db, dir);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("6 rows") != std::string::npos);

  r = run("classify --db " + db + " --query " + kData + "/helix_m.pdb", dir);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("helix_m,alpha,helix_m,0,alpha:1") != std::string::npos);

  std::string report = dir.file("loo.csv");
  r = run("evaluate --db " + db + " --k 1 --distance std-euclidean --out " +
              report,
          dir);
  CHECK(r.exit_code == 0);
  CHECK(slurp(report).find("# accuracy=1") != std::string::npos);
}

TEST_CASE("cli: identical inputs give byte-identical reports") {
  TempDir dir;
  std::string db = dir.file("ref.db");
  REQUIRE(run("build-db --manifest " + manifest() + " --out " + db, dir)
              .exit_code == 0);

  std::string db2 = dir.file("ref2.db");
  REQUIRE(run("build-db --manifest " + manifest() + " --out " + db2, dir)
              .exit_code == 0);
  CHECK(slurp(db) == slurp(db2));

  std::string a = dir.file("a.csv"), b = dir.file("b.csv");
  std::string args = "classify --db " + db + " --query " + kData +
                     " --k 3 --distance manhattan --out ";
  REQUIRE(run(args + a, dir).exit_code == 0);
  REQUIRE(run(args + b, dir).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
}

TEST_CASE("cli: rfe and score-attributes emit the expected tables") {
  TempDir dir;
  std::string db = dir.file("ref.db");
  REQUIRE(run("build-db --manifest " + manifest() + " --out " + db, dir)
              .exit_code == 0);

  RunResult r = run("rfe --db " + db + " --k 1 --distance euclidean", dir);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("step,removed_attribute,accuracy") != std::string::npos);

  r = run("score-attributes --dbs " + db + " --measures euclidean --ks 1", dir);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("attribute,count,score,rank") != std::string::npos);
  CHECK(r.out.find("A1,1,1,") != std::string::npos);
}

TEST_CASE("cli: stats for databases and structures") {
  TempDir dir;
  std::string db = dir.file("ref.db");
  REQUIRE(run("build-db --manifest " + manifest() + " --out " + db, dir)
              .exit_code == 0);

  RunResult r = run("stats --db " + db, dir);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("# rows=6 classes=2") != std::string::npos);

  std::string dump = dir.file("g.txt");
  r = run("stats --pdb " + std::string(kData) +
              "/strand_s.pdb --delta 4 --dump-graph " + dump,
          dir);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("nodes,edges,components") != std::string::npos);
  CHECK(r.out.find("10,9,1") != std::string::npos);  // path graph
  CHECK(slurp(dump).rfind("#nodes 10", 0) == 0);
}

TEST_CASE("cli: add grows a database incrementally") {
  TempDir dir;
  std::string db = dir.file("ref.db");
  REQUIRE(run("build-db --manifest " + manifest() + " --out " + db, dir)
              .exit_code == 0);

  write_file(dir.file("extra.pdb"), pdb_text(helix_residues(30)));
  write_file(dir.file("extra.csv"), "path,label\nextra.pdb,alpha\n");
  RunResult r = run("add --db " + db + " --manifest " + dir.file("extra.csv"),
                    dir);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("7 rows") != std::string::npos);

  // adding the same id again must fail without touching the file
  std::string before = slurp(db);
  r = run("add --db " + db + " --manifest " + dir.file("extra.csv"), dir);
  CHECK(r.exit_code == 1);
  CHECK(slurp(db) == before);
}

TEST_CASE("cli: bench prints the three phase lines") {
  TempDir dir;
  std::string out = dir.file("bench.csv");
  RunResult r = run(
      "bench --synthetic-rows 500 --queries 2 --nodes 40 --seed 7 --out " + out,
      dir);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("graph-build") != std::string::npos);
  CHECK(r.out.find("attributes") != std::string::npos);
  CHECK(r.out.find("classification") != std::string::npos);
  std::string csv = slurp(out);
  CHECK(csv.rfind("phase,total_seconds,per_protein_seconds", 0) == 0);
}

TEST_CASE("cli: exit codes distinguish usage and data errors") {
  TempDir dir;
  CHECK(run("no-such-command", dir).exit_code == 2);
  CHECK(run("classify --db missing.db", dir).exit_code == 2);  // missing --query
  CHECK(run("classify --db missing.db --query also-missing.pdb", dir)
            .exit_code == 1);
  CHECK(run("evaluate --db missing.db", dir).exit_code == 1);
  CHECK(run("stats", dir).exit_code == 1);
}

TEST_CASE("cli: --help documents every subcommand and its flags") {
  TempDir dir;
  RunResult top = run("--help", dir);
  CHECK(top.exit_code == 0);
  for (const char* sub : {"build-db", "add", "classify", "evaluate", "rfe",
                          "score-attributes", "stats", "bench"})
    CHECK(top.out.find(sub) != std::string::npos);

  struct SubHelp {
    const char* sub;
    std::vector<const char*> flags;
  };
  const SubHelp expected[] = {
      {"build-db", {"--manifest", "--out", "--delta", "--jobs"}},
      {"add", {"--db", "--manifest", "--out", "--jobs"}},
      {"classify",
       {"--db", "--query", "--k", "--distance", "--minkowski-p", "--mask",
        "--out", "--timing"}},
      {"evaluate", {"--db", "--k", "--distance", "--mask", "--out"}},
      {"rfe", {"--db", "--k", "--distance", "--out"}},
      {"score-attributes", {"--dbs", "--measures", "--ks", "--out"}},
      {"stats", {"--db", "--pdb", "--delta", "--dump-graph", "--out"}},
      {"bench",
       {"--db", "--synthetic-rows", "--queries", "--nodes", "--k",
        "--distance", "--seed", "--out"}},
  };
  for (const auto& sub : expected) {
    RunResult r = run(std::string(sub.sub) + " --help", dir);
    CHECK(r.exit_code == 0);
    for (const char* flag : sub.flags) {
      INFO(sub.sub, " ", flag);
      CHECK(r.out.find(flag) != std::string::npos);
    }
  }
}
