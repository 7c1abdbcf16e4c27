#include <catch2/catch.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

#include "corrcs/csv.hpp"

using namespace corrcs;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* p = std::getenv("CORRCS_CLI");
  REQUIRE(p != nullptr);
  return p;
}

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out_file = dir / "stdout.txt";
  const std::string cmd =
      "cd " + dir.string() + " && " + cli_path() + " " + args + " > " +
      out_file.string() + " 2> stderr.txt";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file);
  r.stdout_text.assign(std::istreambuf_iterator<char>(in), {});
  return r;
}

double value_of(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + "=");
  REQUIRE(pos != std::string::npos);
  return std::strtod(text.c_str() + pos + key.size() + 1, nullptr);
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("corrcs_cli_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

}  // namespace

TEST_CASE("solve: identity instance converges to the observation") {
  TempDir tmp;
  write_matrix_csv((tmp.path / "A.csv").string(), Mat::Identity(4, 4));
  Vec y(4);
  y << 1.5, 0.0, -2.0, 0.25;
  write_vector_csv((tmp.path / "y.csv").string(), y);

  const RunResult r =
      run_cli("solve --matrix A.csv --obs y.csv --method lasso --out sol.csv", tmp.path);
  REQUIRE(r.exit_code == 0);
  const Vec sol = read_vector_csv((tmp.path / "sol.csv").string());
  REQUIRE((sol - y).norm() <= 1e-4 * y.norm());
  REQUIRE(fs::exists(tmp.path / "sol.csv.meta"));
  REQUIRE(r.stdout_text.find("status=converged") != std::string::npos);
}

TEST_CASE("solve: zero observation gives the zero vector") {
  TempDir tmp;
  write_matrix_csv((tmp.path / "A.csv").string(), Mat::Identity(3, 3));
  write_vector_csv((tmp.path / "y.csv").string(), Vec::Zero(3));
  const RunResult r =
      run_cli("solve --matrix A.csv --obs y.csv --method lasso --out sol.csv", tmp.path);
  REQUIRE(r.exit_code == 0);
  REQUIRE(read_vector_csv((tmp.path / "sol.csv").string()).norm() <= 1e-8);
}

TEST_CASE("solve: usage errors exit 1") {
  TempDir tmp;
  write_matrix_csv((tmp.path / "A.csv").string(), Mat::Identity(2, 2));
  write_vector_csv((tmp.path / "y.csv").string(), Vec::Zero(2));
  REQUIRE(run_cli("solve --matrix A.csv --obs y.csv --method mc", tmp.path).exit_code == 1);
  REQUIRE(run_cli("solve --matrix A.csv --obs y.csv --method nope", tmp.path).exit_code == 1);
  REQUIRE(run_cli("solve --matrix missing.csv --obs y.csv --method lasso", tmp.path)
              .exit_code == 1);
}

TEST_CASE("solve: iteration cap exits 2, unbounded objective exits 3") {
  TempDir tmp;
  Mat a(2, 6);
  a << 1, -1, 1, -1, 1, -1,
       1, 1, -1, -1, 1, 1;
  Vec x = Vec::Zero(6);
  x[0] = 2.0;
  write_matrix_csv((tmp.path / "A.csv").string(), a);
  write_vector_csv((tmp.path / "y.csv").string(), a * x);

  const RunResult capped = run_cli(
      "solve --matrix A.csv --obs y.csv --method lasso --max-iters 2 --out s.csv", tmp.path);
  REQUIRE(capped.exit_code == 2);
  REQUIRE(capped.stdout_text.find("status=max_iters") != std::string::npos);

  Mat row(1, 4);
  row << 1.0, 0.0, 0.0, 0.0;
  Vec x1 = Vec::Zero(4);
  x1[0] = 1.0;
  Vec p = Vec::Zero(4);
  p[1] = 2.0;  // |p| > 1 off the support: objective unbounded along e_1
  write_matrix_csv((tmp.path / "A1.csv").string(), row);
  write_vector_csv((tmp.path / "y1.csv").string(), row * x1);
  write_vector_csv((tmp.path / "p.csv").string(), p);
  const RunResult runaway = run_cli(
      "solve --matrix A1.csv --obs y1.csv --method mc --shift p.csv --out s.csv", tmp.path);
  REQUIRE(runaway.exit_code == 3);
  REQUIRE(runaway.stdout_text.find("status=diverged") != std::string::npos);
}

TEST_CASE("geom v prints the worked value") {
  TempDir tmp;
  Vec x(2), p(2);
  x << 1.0, 0.0;
  p << 0.5, -0.2;
  write_vector_csv((tmp.path / "x.csv").string(), x);
  write_vector_csv((tmp.path / "p.csv").string(), p);
  const RunResult r = run_cli("geom v --signal x.csv --shift p.csv", tmp.path);
  REQUIRE(r.exit_code == 0);
  REQUIRE(value_of(r.stdout_text, "v") == Approx(1.69).margin(1e-12));
}

TEST_CASE("geom width handles the full-support clamp") {
  TempDir tmp;
  const RunResult r = run_cli("geom width --n 128 --s 128 --v 1", tmp.path);
  REQUIRE(r.exit_code == 0);
  REQUIRE(value_of(r.stdout_text, "width_sq") == 128.0);
}

TEST_CASE("geom mc rejects a degenerate cone with exit 4") {
  TempDir tmp;
  Vec x(2), p(2);
  x << 1.0, 0.0;
  p << 1.0, 0.0;
  write_vector_csv((tmp.path / "x.csv").string(), x);
  write_vector_csv((tmp.path / "p.csv").string(), p);
  const RunResult r =
      run_cli("geom mc --signal x.csv --shift p.csv --samples 10 --seed 1", tmp.path);
  REQUIRE(r.exit_code == 4);
}

TEST_CASE("geom mc reports estimate fields") {
  TempDir tmp;
  Vec x(2), p(2);
  x << 1.0, 0.0;
  p << 0.5, 0.0;
  write_vector_csv((tmp.path / "x.csv").string(), x);
  write_vector_csv((tmp.path / "p.csv").string(), p);
  const RunResult r =
      run_cli("geom mc --signal x.csv --shift p.csv --samples 2000 --seed 5", tmp.path);
  REQUIRE(r.exit_code == 0);
  REQUIRE(value_of(r.stdout_text, "samples") == 2000.0);
  REQUIRE(value_of(r.stdout_text, "mean_sq_dist") > 0.0);
  REQUIRE(value_of(r.stdout_text, "mean_sq_dist") <=
          value_of(r.stdout_text, "closed_form_bound") +
              3.0 * value_of(r.stdout_text, "std_error"));
}

TEST_CASE("geom predict composes width and sample-size bound") {
  TempDir tmp;
  const RunResult r =
      run_cli("geom predict --n 128 --s 16 --v 128 --K 1 --C 1 --eps 0", tmp.path);
  REQUIRE(r.exit_code == 0);
  REQUIRE(value_of(r.stdout_text, "width_sq") == Approx(65.61126230797703).margin(1e-9));
  REQUIRE(value_of(r.stdout_text, "m_bound") ==
          Approx(value_of(r.stdout_text, "width_sq")).margin(1e-9));
}

TEST_CASE("phase writes a grid, a sidecar, and is byte-reproducible") {
  TempDir tmp;
  const std::string flags =
      "phase --n 8 --step 4 --trials 2 --tol 1e-2 --case b --method mc --seed 3 --out g.csv";
  REQUIRE(run_cli(flags, tmp.path).exit_code == 0);
  const std::string first = read_text_file((tmp.path / "g.csv").string());
  REQUIRE(first.rfind("s,m,successes,trials\n", 0) == 0);
  REQUIRE(std::count(first.begin(), first.end(), '\n') == 10);  // header + 9 cells
  REQUIRE(fs::exists(tmp.path / "g.csv.meta"));

  REQUIRE(run_cli(flags + " --threads 2", tmp.path).exit_code == 0);
  REQUIRE(read_text_file((tmp.path / "g.csv").string()) == first);

  REQUIRE(run_cli("phase --n 8 --case z --out g.csv", tmp.path).exit_code == 1);
  REQUIRE(run_cli("phase --n 8 --method nope --out g.csv", tmp.path).exit_code == 1);
}

TEST_CASE("contour on an all-success zero row starts at the origin") {
  TempDir tmp;
  write_text_file((tmp.path / "g.csv").string(),
                  "s,m,successes,trials\n0,0,2,2\n0,4,2,2\n4,0,0,2\n4,4,1,2\n");
  const RunResult r = run_cli("contour --grid g.csv --level 0.5 --out c.csv", tmp.path);
  REQUIRE(r.exit_code == 0);
  const std::string text = read_text_file((tmp.path / "c.csv").string());
  REQUIRE(text.rfind("s,m_star\n0,0\n", 0) == 0);
}

TEST_CASE("compare writes an aligned table") {
  TempDir tmp;
  const RunResult r = run_cli(
      "compare --n 8 --step 4 --trials 2 --case b --methods mc,l1l1 --level 0.5 "
      "--seed 3 --out t.csv",
      tmp.path);
  REQUIRE(r.exit_code == 0);
  const std::string text = read_text_file((tmp.path / "t.csv").string());
  REQUIRE(text.rfind("s,mc,l1l1\n0,0,0\n", 0) == 0);
  REQUIRE(fs::exists(tmp.path / "t.csv.meta"));
}

TEST_CASE("missing subcommand is a usage error") {
  TempDir tmp;
  REQUIRE(run_cli("", tmp.path).exit_code == 1);
  REQUIRE(run_cli("frobnicate", tmp.path).exit_code == 1);
}
