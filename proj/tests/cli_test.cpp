// End-to-end checks of the command line tool: spawns the real binary,
// inspects exit codes and artifacts.  TSCAL_CLI_BIN is injected by the
// build.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tscal/csv_io.hpp"
#include "tscal/time_scale.hpp"

#ifdef __unix__
#include <sys/wait.h>
#endif

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (ok) {
    std::printf("cli ok   %s\n", what.c_str());
  } else {
    std::printf("cli FAIL %s\n", what.c_str());
    ++failures;
  }
}

fs::path tmp_root() {
  static const fs::path root = [] {
    fs::path p = fs::current_path() / "cli_test_tmp";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return root;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

// exit code of the tool on a config, artifacts under out
int run_cli(const fs::path& cfg, const fs::path& out, bool expect_fail) {
  std::string cmd = std::string(TSCAL_CLI_BIN) + " --config " + cfg.string() +
                    " --out " + out.string() + " --quiet";
  cmd += expect_fail ? " 2>/dev/null" : "";
  const int rc = std::system(cmd.c_str());
#ifdef __unix__
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
  return -1;
#else
  return rc;
#endif
}

int run_case(const std::string& name, const std::string& config,
             bool expect_fail = false) {
  const fs::path dir = tmp_root() / name;
  fs::create_directories(dir);
  write_file(dir / "config.json", config);
  return run_cli(dir / "config.json", dir / "out", expect_fail);
}

std::string artifact(const std::string& name, const std::string& file) {
  return read_file(tmp_root() / name / "out" / file);
}

// key=value lines with the wall clock line removed
std::string strip_wall(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.rfind("wall_ms=", 0) != 0) out += line + "\n";
  return out;
}

void case_classify() {
  const int rc = run_case("classify", R"({
    "command": "classify",
    "scale": {"segments": [[0, 1], [2, 3]]},
    "classify": {"h": 0.25}
  })");
  const std::string csv = artifact("classify", "classification.csv");
  const std::string meta = artifact("classify", "run_meta.txt");
  expect(rc == 0 && csv.rfind("t,sigma,rho,graininess,right,left\n", 0) == 0 &&
             contains(csv, "\n1,2,") && contains(meta, "command=classify"),
         "classify writes the jump table");
}

void case_integrate() {
  const int rc = run_case("integrate", R"({
    "command": "integrate",
    "scale": {"segments": [[0, 1], [2, 3]]},
    "integrate": {"f": {"kind": "const", "value": 1}, "h": 0.25}
  })");
  const std::string txt = artifact("integrate", "integral.txt");
  expect(rc == 0 && contains(txt, "value=3\n") && contains(txt, "from=0\n") &&
             contains(txt, "to=3\n"),
         "integrate of 1 over [0,1] u [2,3] equals 3");
}

void case_rdcheck() {
  const int rc = run_case("rdcheck", R"({
    "command": "rdcheck",
    "scale": {"segments": [[0, 1], [2, 3]]},
    "rdcheck": {
      "functions": [{"kind": "step", "at": 1, "lo": 0, "hi": 1}],
      "eps": 0.5, "a": 0, "b": 1, "h": 0.03125
    }
  })");
  const std::string txt = artifact("rdcheck", "rdcheck.txt");
  expect(rc == 0 && contains(txt, "result=violation") &&
             contains(txt, "gap=1\n"),
         "rdcheck flags the jump on the restricted window");

  const int rc2 = run_case("rdcheck_full", R"({
    "command": "rdcheck",
    "scale": {"segments": [[0, 1], [2, 3]]},
    "rdcheck": {
      "functions": [{"kind": "step", "at": 1, "lo": 0, "hi": 1}],
      "eps": 0.5, "h": 0.03125
    }
  })");
  expect(rc2 == 0 &&
             contains(artifact("rdcheck_full", "rdcheck.txt"),
                      "result=certified"),
         "rdcheck certifies the same jump on the full scale");
}

void case_solve() {
  const int rc = run_case("solve", R"({
    "command": "solve",
    "scale": {"segments": [[0, 0], [1, 1], [2, 2], [3, 3]]},
    "solve": {
      "rhs": {"kind": "linear", "a": 1, "b": 0},
      "u0": [1], "beta": 1000000, "M": 100000, "h": 1
    }
  })");
  const std::string meta = artifact("solve", "trace_meta.txt");
  std::istringstream csv(artifact("solve", "trace.csv"));
  const tscal::TimeScale scale = tscal::TimeScale::discrete(0, 3);
  const tscal::GridFunction u = tscal::read_grid_function_csv(csv, scale);
  bool doubling = u.grid->size() == 4;
  for (std::size_t k = 0; doubling && k < 4; ++k)
    doubling = u.values(static_cast<Eigen::Index>(k), 0) ==
               std::exp2(static_cast<double>(k));
  expect(rc == 0 && doubling && contains(meta, "residual_max=0\n") &&
             contains(meta, "guard_ok=yes") && contains(meta, "end=3\n"),
         "solve doubles along the integer lattice, artifacts parse back");
}

void case_picard() {
  const int rc = run_case("picard", R"({
    "command": "picard",
    "scale": {"segments": [[0, 1]]},
    "picard": {
      "rhs": {"kind": "linear", "a": -0.5, "b": 0},
      "u0": [1], "beta": 1, "M": 1, "h": 0.015625,
      "k_max": 30, "tol": 1e-10
    }
  })");
  const std::string txt = artifact("picard", "picard.txt");
  expect(rc == 0 && contains(txt, "status=converged") &&
             contains(txt, "gap_0="),
         "picard converges on a contracting problem");
}

void case_kamke() {
  const int rc = run_case("kamke", R"({
    "command": "kamke",
    "scale": {"segments": [[0, 1]]},
    "kamke": {
      "q": {"kind": "const", "value": 1},
      "h": 0.015625, "x_max": 1, "eps": 0.5
    }
  })");
  const std::string txt = artifact("kamke", "kamke.txt");
  const std::string csv = artifact("kamke", "gronwall.csv");
  expect(rc == 0 && contains(txt, "uniqueness=verified_linear") &&
             contains(txt, "zero_stays_zero=yes") &&
             csv.rfind("t,from_zero,envelope\n", 0) == 0,
         "kamke verifies the linear comparison function");
}

void case_parabolic() {
  const int rc = run_case("parabolic", R"({
    "command": "parabolic",
    "scale": {"segments": [[0, 0], [0.125, 0.125]]},
    "parabolic": {
      "N": 16, "beta": 1, "P": 1, "h": 1,
      "forcing": {"kind": "zero"},
      "phi": {"kind": "geometric", "base": 0.5},
      "psi": {"kind": "const", "value": 1},
      "eps": 0.25, "trials": 100
    }
  })");
  const std::string meta = artifact("parabolic", "trace_meta.txt");
  expect(rc == 0 && contains(meta, "M=7\n") &&
             contains(meta, "phi_norm=0.5\n") &&
             contains(meta, "stability_warning=no") &&
             contains(meta, "lipschitz_ok=yes") &&
             contains(meta, "rd_ok=yes") && contains(meta, "tail_from_13="),
         "parabolic solve reports budget and hypothesis checks");
}

void case_study() {
  const int rc = run_case("study", R"({
    "command": "study",
    "scale": {"segments": [[0, 0], [0.125, 0.125]]},
    "study": {
      "beta": 1, "P": 1, "h": 1,
      "forcing": {"kind": "zero"},
      "phi": {"kind": "geometric", "base": 0.5},
      "psi": {"kind": "const", "value": 1},
      "orders": [8, 16]
    }
  })");
  const std::string csv = artifact("study", "study.csv");
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  double diff = -1;
  if (row.rfind("8,16,", 0) == 0) diff = std::stod(row.substr(5));
  expect(rc == 0 && header == "n_lo,n_hi,max_diff" &&
             diff == 0.000244140625,
         "study reports the truncation difference for N in {8,16}");
}

void case_mnc_deterministic() {
  const std::string cfg = R"json({
    "command": "mnc",
    "scale": {"segments": [[0, 1]]},
    "seed": 42,
    "mnc": {
      "members": [
        {"prefix": [1, 0, 0], "tail": "geometric(0.5,0.5)"},
        {"prefix": [0, 0, 0], "tail": "const_until(0.25,inf)"}
      ],
      "axiom_trials": 40
    }
  })json";
  const int rc_a = run_case("mnc_a", cfg);
  const int rc_b = run_case("mnc_b", cfg);
  const std::string a = artifact("mnc_a", "mnc.txt");
  const std::string b = artifact("mnc_b", "mnc.txt");
  const std::string meta_a = strip_wall(artifact("mnc_a", "run_meta.txt"));
  const std::string meta_b = strip_wall(artifact("mnc_b", "run_meta.txt"));
  expect(rc_a == 0 && rc_b == 0 && !a.empty() && a == b && meta_a == meta_b &&
             contains(a, "axioms_hausdorff-c0=pass") &&
             contains(a, "hausdorff=0.25\n") && contains(meta_a, "seed=42"),
         "mnc reruns are byte-identical for a fixed config and seed");
}

void case_scale_file() {
  const fs::path dir = tmp_root() / "scale_file";
  fs::create_directories(dir);
  write_file(dir / "scale.txt", "# two pieces\n0 1\n2 3\n");
  write_file(dir / "config.json",
             std::string(R"({
    "command": "classify",
    "scale": {"file": ")") +
                 (dir / "scale.txt").string() + R"("},
    "classify": {"h": 0.5}
  })");
  const int rc = run_cli(dir / "config.json", dir / "out", false);
  expect(rc == 0 && contains(read_file(dir / "out" / "classification.csv"),
                             "\n1,2,"),
         "scale loads from a text file");
}

void case_failures() {
  expect(run_case("bad_key", R"({
    "command": "classify",
    "scale": {"segments": [[0, 1]]},
    "classify": {"h": 0.5, "bogus": 1}
  })",
                  true) == 1,
         "unknown config key exits 1");

  expect(run_case("bad_command", R"({
    "command": "frobnicate",
    "scale": {"segments": [[0, 1]]}
  })",
                  true) == 1,
         "unknown command exits 1");

  expect(run_case("missing_key", R"({
    "command": "solve",
    "scale": {"segments": [[0, 1]]},
    "solve": {"rhs": {"kind": "linear", "a": 1}, "u0": [1], "M": 1, "h": 0.1}
  })",
                  true) == 1,
         "missing required key exits 1");

  expect(run_case("bad_json", "{not json", true) == 1,
         "malformed json exits 1");

  expect(run_case("blowup", R"({
    "command": "solve",
    "scale": {"segments": [[0, 1]]},
    "solve": {
      "rhs": {"kind": "linear", "a": 1000, "b": 0},
      "u0": [1], "beta": 1e300, "M": 1, "h": 0.001
    }
  })",
                  true) == 2,
         "overflowing solve exits 2");
}

}  // namespace

int main() {
  case_classify();
  case_integrate();
  case_rdcheck();
  case_solve();
  case_picard();
  case_kamke();
  case_parabolic();
  case_study();
  case_mnc_deterministic();
  case_scale_file();
  case_failures();
  if (failures != 0) {
    std::printf("%d cli check(s) failed\n", failures);
    return 1;
  }
  std::printf("all cli checks passed\n");
  return 0;
}
