#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "reorder/cli.hpp"
#include "reorder/ml/model.hpp"
#include "reorder/mmio.hpp"

using namespace reorder;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = REORDER_FIXTURE_DIR;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("reorder-cli-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("features: tridiagonal fixture row carries bandwidth 1 and profile 2") {
  const CliResult r = run_cli({"features", kFixtures + "/tri3.mtx", "--jobs", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.starts_with("matrix,dimension,nnz,"));
  CHECK(r.out.find("tri3,3,7,") != std::string::npos);
  CHECK(r.out.find(",1,2,\n") != std::string::npos);  // ...,bandwidth,profile,label
}

TEST_CASE("features: empty directory gives a header-only CSV and exit 0") {
  TempDir tmp;
  const CliResult r = run_cli({"features", tmp.path.string()});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 1);
}

TEST_CASE("features: corrupt file fails, --skip-bad downgrades to a warning") {
  TempDir tmp;
  fs::copy_file(kFixtures + "/tri3.mtx", tmp.path / "tri3.mtx");
  fs::copy_file(kFixtures + "/corrupt.mtx", tmp.path / "corrupt.mtx");

  const CliResult strict = run_cli({"features", tmp.path.string()});
  CHECK(strict.code == 2);
  CHECK(strict.err.find("corrupt") != std::string::npos);

  const CliResult lax = run_cli({"features", tmp.path.string(), "--skip-bad"});
  CHECK(lax.code == 0);
  CHECK(lax.err.find("warning") != std::string::npos);
  CHECK(lax.out.find("tri3,") != std::string::npos);  // surviving row emitted
}

TEST_CASE("reorder: writes a permuted matrix and the permutation") {
  TempDir tmp;
  const std::string out_mtx = (tmp.path / "out.mtx").string();
  const std::string out_perm = (tmp.path / "perm.txt").string();
  const CliResult r =
      run_cli({"reorder", kFixtures + "/path7_shuffled.mtx", "--alg", "RCM", "-o",
               out_mtx, "--perm-out", out_perm});
  REQUIRE(r.code == 0);
  const SparseMatrixCSR m = parse_matrix_market_file(out_mtx);
  CHECK(m.n_rows == 7);
  CHECK(count_lines(slurp(out_perm)) == 7);
}

TEST_CASE("label: timings mode reproduces the true labels") {
  TempDir tmp;
  fs::copy_file(kFixtures + "/tri3.mtx", tmp.path / "ASIC_320k.mtx");
  const std::string features_csv = (tmp.path / "f.csv").string();
  REQUIRE(run_cli({"features", tmp.path.string(), "-o", features_csv}).code == 0);
  const CliResult r = run_cli({"label", "--features", features_csv, "--timings",
                               kFixtures + "/timings_table1.csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("ASIC_320k") != std::string::npos);
  CHECK(r.out.find(",ND\n") != std::string::npos);
}

TEST_CASE("label: proxy mode on the diagonal fixture lands on AMD") {
  TempDir tmp;
  fs::copy_file(kFixtures + "/identity4.mtx", tmp.path / "identity4.mtx");
  const std::string features_csv = (tmp.path / "f.csv").string();
  REQUIRE(run_cli({"features", tmp.path.string(), "-o", features_csv}).code == 0);
  const CliResult r =
      run_cli({"label", "--features", features_csv, "--matrices", tmp.path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("identity4") != std::string::npos);
  CHECK(r.out.find(",AMD\n") != std::string::npos);
}

TEST_CASE("label: a missing matrix names the offender and exits 2") {
  TempDir tmp;
  fs::copy_file(kFixtures + "/tri3.mtx", tmp.path / "tri3.mtx");
  const std::string features_csv = (tmp.path / "f.csv").string();
  REQUIRE(run_cli({"features", tmp.path.string(), "-o", features_csv}).code == 0);
  fs::remove(tmp.path / "tri3.mtx");
  const CliResult r =
      run_cli({"label", "--features", features_csv, "--matrices", tmp.path.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("tri3") != std::string::npos);
}

TEST_CASE("report: table fixtures render and exit 0") {
  TempDir tmp;
  const std::string csv = (tmp.path / "r.csv").string();
  const CliResult r =
      run_cli({"report", "--timings", kFixtures + "/table7_timings.csv",
               "--predictions", kFixtures + "/table7_predictions.csv", "-o", csv});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("t2em") != std::string::npos);
  CHECK(r.out.find("25.13") != std::string::npos);
  CHECK(slurp(csv).find("TOTAL") != std::string::npos);
}

TEST_CASE("usage and data errors map to exit codes 1 and 2") {
  CHECK(run_cli({"no-such-command"}).code == 1);
  CHECK(run_cli({"train", "--data", "x.csv"}).code == 1);  // missing --out
  CHECK(run_cli({"features", kFixtures + "/corrupt.mtx"}).code == 2);
  CHECK(run_cli({"report", "--timings", "missing.csv", "--predictions",
                 "missing.csv"})
            .code == 2);
  const CliResult help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("reorder-advisor") != std::string::npos);
}

TEST_CASE("pipeline composes: dataset -> train -> predict -> evaluate -> report") {
  TempDir tmp;
  // small mixed corpus from fixtures
  fs::copy_file(kFixtures + "/tri3.mtx", tmp.path / "a.mtx");
  fs::copy_file(kFixtures + "/identity4.mtx", tmp.path / "b.mtx");
  fs::copy_file(kFixtures + "/path7_shuffled.mtx", tmp.path / "c.mtx");
  fs::copy_file(kFixtures + "/tri3_sym.mtx", tmp.path / "d.mtx");
  fs::copy_file(kFixtures + "/diag2.mtx", tmp.path / "e.mtx");
  fs::copy_file(kFixtures + "/empty3.mtx", tmp.path / "f.mtx");

  const std::string data_csv = (tmp.path / "data.csv").string();
  const std::string model_path = (tmp.path / "model.json").string();

  CliResult r = run_cli({"dataset", tmp.path.string(), "-o", data_csv});
  REQUIRE(r.code == 0);

  r = run_cli({"train", "--data", data_csv, "--algorithm", "decision_tree",
               "--cv-k", "2", "--seed", "42", "--out", model_path});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("cv table") != std::string::npos);
  CHECK(fs::exists(model_path));

  const std::string pred_csv = (tmp.path / "pred.csv").string();
  {
    const CliResult p =
        run_cli({"predict", "--model", model_path, tmp.path.string(), "--no-times"});
    REQUIRE(p.code == 0);
    CHECK(p.out.starts_with("matrix,label\n"));
    CHECK(count_lines(p.out) == 7);  // header + six fixtures
    std::ofstream f(pred_csv);
    f << p.out;
  }

  r = run_cli({"evaluate", "--model", model_path, "--data", data_csv});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("accuracy:") != std::string::npos);

  // timings covering the six fixture names so report can join them
  const std::string timings_csv = (tmp.path / "t.csv").string();
  {
    std::ofstream f(timings_csv);
    f << "matrix,rcm,amd,nd,scotch\n";
    for (const char* name : {"a", "b", "c", "d", "e", "f"})
      f << name << ",4.0,2.0,3.0,1.0\n";
  }
  r = run_cli({"report", "--timings", timings_csv, "--predictions", pred_csv});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("mean speedup") != std::string::npos);
}

TEST_CASE("predict output is byte-identical across runs with --no-times") {
  TempDir tmp;
  fs::copy_file(kFixtures + "/tri3.mtx", tmp.path / "a.mtx");
  fs::copy_file(kFixtures + "/diag2.mtx", tmp.path / "b.mtx");
  const std::string data_csv = (tmp.path / "data.csv").string();
  const std::string model_path = (tmp.path / "model.json").string();
  REQUIRE(run_cli({"dataset", tmp.path.string(), "-o", data_csv}).code == 0);
  REQUIRE(run_cli({"train", "--data", data_csv, "--algorithm", "naive_bayes",
                   "--cv-k", "2", "--out", model_path})
              .code == 0);
  const CliResult a =
      run_cli({"predict", "--model", model_path, tmp.path.string(), "--no-times"});
  const CliResult b =
      run_cli({"predict", "--model", model_path, tmp.path.string(), "--no-times"});
  CHECK(a.out == b.out);
  CHECK(a.code == 0);
}

TEST_CASE("train is byte-identical for identical seeds") {
  TempDir tmp;
  fs::copy_file(kFixtures + "/tri3.mtx", tmp.path / "a.mtx");
  fs::copy_file(kFixtures + "/identity4.mtx", tmp.path / "b.mtx");
  fs::copy_file(kFixtures + "/path7_shuffled.mtx", tmp.path / "c.mtx");
  fs::copy_file(kFixtures + "/diag2.mtx", tmp.path / "d.mtx");
  const std::string data_csv = (tmp.path / "data.csv").string();
  REQUIRE(run_cli({"dataset", tmp.path.string(), "-o", data_csv}).code == 0);

  const std::string m1 = (tmp.path / "m1.json").string();
  const std::string m2 = (tmp.path / "m2.json").string();
  REQUIRE(run_cli({"train", "--data", data_csv, "--algorithm", "random_forest",
                   "--grid", "n_estimators=8", "--cv-k", "2", "--seed", "7",
                   "--threads", "1", "--out", m1})
              .code == 0);
  REQUIRE(run_cli({"train", "--data", data_csv, "--algorithm", "random_forest",
                   "--grid", "n_estimators=8", "--cv-k", "2", "--seed", "7",
                   "--threads", "2", "--out", m2})
              .code == 0);
  CHECK(slurp(m1) == slurp(m2));
}

TEST_CASE("train prints one cv-table row per grid combination") {
  TempDir tmp;
  fs::copy_file(kFixtures + "/tri3.mtx", tmp.path / "a.mtx");
  fs::copy_file(kFixtures + "/identity4.mtx", tmp.path / "b.mtx");
  fs::copy_file(kFixtures + "/path7_shuffled.mtx", tmp.path / "c.mtx");
  fs::copy_file(kFixtures + "/diag2.mtx", tmp.path / "d.mtx");
  const std::string data_csv = (tmp.path / "data.csv").string();
  REQUIRE(run_cli({"dataset", tmp.path.string(), "-o", data_csv}).code == 0);
  const CliResult r = run_cli(
      {"train", "--data", data_csv, "--algorithm", "decision_tree", "--grid",
       "max_depth=1,2;min_samples_leaf=1,2", "--cv-k", "2", "--out",
       (tmp.path / "m.json").string()});
  REQUIRE(r.code == 0);
  // a 2x2 grid evaluates exactly 4 combinations
  int combo_rows = 0;
  std::istringstream lines(r.out);
  for (std::string line; std::getline(lines, line);)
    if (line.starts_with("  ") && line.find("max_depth=") != std::string::npos)
      ++combo_rows;
  CHECK(combo_rows == 4);
}

TEST_CASE("directory-mode extraction is identical at any worker count") {
  TempDir tmp;
  fs::copy_file(kFixtures + "/tri3.mtx", tmp.path / "a.mtx");
  fs::copy_file(kFixtures + "/identity4.mtx", tmp.path / "b.mtx");
  fs::copy_file(kFixtures + "/path7_shuffled.mtx", tmp.path / "c.mtx");
  fs::copy_file(kFixtures + "/tri3_sym.mtx", tmp.path / "d.mtx");
  fs::copy_file(kFixtures + "/diag2.mtx", tmp.path / "e.mtx");
  const CliResult serial = run_cli({"features", tmp.path.string(), "--jobs", "1"});
  const CliResult wide = run_cli({"features", tmp.path.string(), "--jobs", "8"});
  REQUIRE(serial.code == 0);
  CHECK(serial.out == wide.out);

  const CliResult ds1 = run_cli({"dataset", tmp.path.string(), "--jobs", "1"});
  const CliResult ds8 = run_cli({"dataset", tmp.path.string(), "--jobs", "8"});
  CHECK(ds1.out == ds8.out);
}

TEST_CASE("train rejects malformed grid specs and split ratios with exit 1") {
  TempDir tmp;
  fs::copy_file(kFixtures + "/tri3.mtx", tmp.path / "a.mtx");
  const std::string data_csv = (tmp.path / "data.csv").string();
  REQUIRE(run_cli({"dataset", tmp.path.string(), "-o", data_csv}).code == 0);
  const CliResult r = run_cli({"train", "--data", data_csv, "--grid", "=bad",
                               "--out", (tmp.path / "m.json").string()});
  CHECK(r.code == 1);
  const CliResult s = run_cli({"train", "--data", data_csv, "--split", "1.5",
                               "--out", (tmp.path / "m.json").string()});
  CHECK(s.code == 1);
}
