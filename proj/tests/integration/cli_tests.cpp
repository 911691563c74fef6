#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "noma-cli-tests";
  fs::create_directories(dir);
  return dir;
}

int next_id() {
  static int id = 0;
  return id++;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path write_scenario(const std::string& text) {
  const fs::path path = work_dir() / ("scenario" + std::to_string(next_id()) + ".json");
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

RunResult run_cli(const std::string& args) {
  const int id = next_id();
  const fs::path out_path = work_dir() / ("out" + std::to_string(id) + ".txt");
  const fs::path err_path = work_dir() / ("err" + std::to_string(id) + ".txt");
  const std::string command = std::string(NOMA_EE_BIN) + " " + args + " >" + out_path.string() +
                              " 2>" + err_path.string();
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (const char ch : text) {
    if (ch == '\n') {
      lines.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) lines.push_back(current);
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (const char ch : line) {
    if (ch == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  fields.push_back(current);
  return fields;
}

std::string header_value(const std::string& text, const std::string& key) {
  for (const std::string& line : lines_of(text)) {
    if (line.rfind(key, 0) == 0) return line.substr(key.size());
  }
  return "";
}

const char* kSimulateK1 = R"({
  "system": {"K": 1, "R_D": 10.0, "alpha": 2.0, "rho_db": 10.0, "seed": 42},
  "run": {"trials": 10}
})";

const char* kErgodicK3 = R"({
  "system": {"K": 3, "R_D": 10.0, "alpha": 2.0, "rho_db": 10.0, "seed": 42},
  "run": {"trials": 2000}
})";

const char* kErgodicK2 = R"({
  "system": {"K": 2, "R_D": 10.0, "alpha": 2.0, "rho_db": 10.0, "seed": 42},
  "run": {"trials": 2000}
})";

const char* kOptimize = R"({
  "system": {"K": 16, "R_D": 10.0, "alpha": 2.0, "rho_db": 10.0, "seed": 42},
  "power": {"eta": 1.0, "P_c": 0.0, "P_RF": 1.0, "P_T": 1e6, "N_0": 1.0}
})";

}  // namespace

TEST_CASE("the version flag reports the tool name and version") {
  const RunResult result = run_cli("--version");
  CHECK(result.exit_code == 0);
  CHECK(result.out == "noma-ee 1.0.0\n");
}

TEST_CASE("usage problems exit with the configuration code") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("explore whatever.json").exit_code == 2);
  CHECK(run_cli("ergodic").exit_code == 2);
  const RunResult missing = run_cli("ergodic /nonexistent/nope.json");
  CHECK(missing.exit_code == 2);
  CHECK(missing.err.find("cannot read file") != std::string::npos);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("simulate emits one row per realization plus a mean row") {
  const fs::path scenario = write_scenario(kSimulateK1);
  const RunResult result = run_cli("simulate " + scenario.string());
  REQUIRE(result.exit_code == 0);
  const std::vector<std::string> lines = lines_of(result.out);
  REQUIRE(lines.size() == 17);
  for (int i = 0; i < 5; ++i) CHECK(lines[i].rfind("# ", 0) == 0);
  CHECK(lines[0] == "# noma-ee 1.0.0");
  CHECK(lines[1] == "# command: simulate");
  CHECK(lines[3] == "# seed: 42");
  CHECK(lines[5] == "realization,seed,R_1,sum_rate,sum_rate_stderr");
  for (int r = 0; r < 10; ++r) {
    const std::vector<std::string> fields = fields_of(lines[6 + r]);
    REQUIRE(fields.size() == 5);
    CHECK(fields[0] == std::to_string(r));
    CHECK(fields[2] == fields[3]);
    CHECK(fields[4].empty());
  }
  const std::vector<std::string> mean = fields_of(lines[16]);
  REQUIRE(mean.size() == 5);
  CHECK(mean[0] == "mean");
  CHECK(mean[1] == "42");
  CHECK_FALSE(mean[4].empty());
}

TEST_CASE("a single-trial simulation repeats its row in the mean") {
  const fs::path scenario = write_scenario(R"({
    "system": {"K": 1, "R_D": 10.0, "alpha": 2.0, "rho_db": 10.0, "seed": 7},
    "run": {"trials": 1}
  })");
  const RunResult result = run_cli("simulate " + scenario.string());
  REQUIRE(result.exit_code == 0);
  const std::vector<std::string> lines = lines_of(result.out);
  REQUIRE(lines.size() == 8);
  const std::vector<std::string> row = fields_of(lines[6]);
  const std::vector<std::string> mean = fields_of(lines[7]);
  CHECK(row[2] == mean[2]);
  CHECK(row[3] == mean[3]);
  CHECK(mean[4] == "0");
}

TEST_CASE("reruns are byte-identical and --out mirrors stdout") {
  const fs::path scenario = write_scenario(kErgodicK3);
  const RunResult first = run_cli("ergodic " + scenario.string());
  const RunResult second = run_cli("ergodic " + scenario.string());
  REQUIRE(first.exit_code == 0);
  CHECK(first.out == second.out);

  const fs::path out_file = work_dir() / "ergodic_via_flag.csv";
  const RunResult filed = run_cli("ergodic " + scenario.string() + " --out " + out_file.string());
  REQUIRE(filed.exit_code == 0);
  CHECK(filed.out.empty());
  CHECK(read_file(out_file) == first.out);
}

TEST_CASE("a seed override changes the embedded seed and fingerprint") {
  const fs::path scenario = write_scenario(kErgodicK3);
  const RunResult base = run_cli("ergodic " + scenario.string());
  const RunResult reseeded = run_cli("ergodic " + scenario.string() + " --seed 777");
  REQUIRE(base.exit_code == 0);
  REQUIRE(reseeded.exit_code == 0);
  CHECK(header_value(reseeded.out, "# seed: ") == "777");
  CHECK(header_value(base.out, "# seed: ") == "42");
  CHECK(header_value(base.out, "# scenario-hash: ") !=
        header_value(reseeded.out, "# scenario-hash: "));
}

TEST_CASE("every failure class maps to its exit code") {
  const fs::path unknown_key = write_scenario(R"({
    "system": {"K": 1, "R_D": 10.0, "alpha": 2.0, "rho_db": 10.0},
    "extras": true
  })");
  const RunResult config = run_cli("ergodic " + unknown_key.string());
  CHECK(config.exit_code == 2);
  CHECK(config.err.find("unknown field") != std::string::npos);

  const fs::path missing_snr = write_scenario(R"({
    "system": {"K": 1, "R_D": 10.0, "alpha": 2.0}
  })");
  const RunResult snr = run_cli("ergodic " + missing_snr.string());
  CHECK(snr.exit_code == 2);
  CHECK(snr.err.find("system.rho_db") != std::string::npos);

  const fs::path zero_users = write_scenario(R"({
    "system": {"K": 0, "R_D": 10.0, "alpha": 2.0, "rho_db": 10.0}
  })");
  CHECK(run_cli("ergodic " + zero_users.string()).exit_code == 3);

  const fs::path starved = write_scenario(R"({
    "system": {"K": 16, "R_D": 10.0, "alpha": 2.0, "rho_db": 10.0},
    "power": {"eta": 1.0, "P_c": 0.0, "P_RF": 1.0, "P_T": 1.0, "N_0": 1.0}
  })");
  const RunResult infeasible = run_cli("optimize " + starved.string());
  CHECK(infeasible.exit_code == 4);
  CHECK(infeasible.err.find("C1") != std::string::npos);

  const fs::path no_antennas = write_scenario(R"({
    "system": {"K": 4, "R_D": 10.0, "alpha": 2.0, "rho_db": 10.0},
    "power": {"eta": 1.0, "P_c": 0.0, "P_RF": 1.0, "P_T": 1e6, "N_0": 1.0},
    "budget": {"N_bs_a": 0}
  })");
  const RunResult antennas = run_cli("optimize " + no_antennas.string());
  CHECK(antennas.exit_code == 4);
  CHECK(antennas.err.find("C2") != std::string::npos);

  const fs::path hopeless = write_scenario(R"({
    "system": {"K": 3, "R_D": 10.0, "alpha": 2.0, "rho_db": 10.0},
    "run": {"trials": 100, "tolerances": {"quadrature": 1e-30}}
  })");
  CHECK(run_cli("ergodic " + hopeless.string()).exit_code == 5);
}

TEST_CASE("optimize requires a power section") {
  const fs::path scenario = write_scenario(kErgodicK3);
  const RunResult result = run_cli("optimize " + scenario.string());
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("power") != std::string::npos);
}

TEST_CASE("sweep mode requires a sweep section, optimize sweeps a power section") {
  const fs::path no_sweep = write_scenario(kErgodicK3);
  const RunResult missing = run_cli("sweep " + no_sweep.string());
  CHECK(missing.exit_code == 2);
  CHECK(missing.err.find("run.sweep") != std::string::npos);

  const fs::path no_power = write_scenario(R"({
    "system": {"K": 3, "R_D": 10.0, "alpha": 2.0, "rho_db": 10.0},
    "run": {"trials": 100, "sweep": {"axis": "K", "values": [2, 3], "mode": "optimize"}}
  })");
  const RunResult powerless = run_cli("sweep " + no_power.string());
  CHECK(powerless.exit_code == 2);
  CHECK(powerless.err.find("power") != std::string::npos);
}

TEST_CASE("ergodic rows carry an empty growth-law column below three users") {
  const fs::path two = write_scenario(kErgodicK2);
  const RunResult result_two = run_cli("ergodic " + two.string());
  REQUIRE(result_two.exit_code == 0);
  const std::vector<std::string> lines_two = lines_of(result_two.out);
  REQUIRE(lines_two.size() == 7);
  CHECK(lines_two[5] == "K,rho_db,gcq_rate,mc_rate,mc_stderr,asymptotic_rate,rel_gap");
  const std::vector<std::string> row_two = fields_of(lines_two[6]);
  REQUIRE(row_two.size() == 7);
  CHECK(row_two[0] == "2");
  CHECK(row_two[5].empty());

  const fs::path three = write_scenario(kErgodicK3);
  const RunResult result_three = run_cli("ergodic " + three.string());
  REQUIRE(result_three.exit_code == 0);
  const std::vector<std::string> row_three = fields_of(lines_of(result_three.out)[6]);
  REQUIRE(row_three.size() == 7);
  CHECK(row_three[0] == "3");
  CHECK_FALSE(row_three[5].empty());
}

TEST_CASE("optimize prints a nondecreasing trace and a feasible summary") {
  const fs::path scenario = write_scenario(kOptimize);
  const RunResult result = run_cli("optimize " + scenario.string());
  REQUIRE(result.exit_code == 0);
  const std::vector<std::string> lines = lines_of(result.out);
  REQUIRE(lines.size() >= 10);
  CHECK(lines[5] == "iteration,S_n,residual,P_n");

  std::size_t blank = 0;
  for (std::size_t i = 6; i < lines.size(); ++i) {
    if (lines[i].empty()) {
      blank = i;
      break;
    }
  }
  REQUIRE(blank > 6);
  double prev = -1.0;
  for (std::size_t i = 6; i < blank; ++i) {
    const std::vector<std::string> fields = fields_of(lines[i]);
    REQUIRE(fields.size() == 4);
    CHECK(fields[0] == std::to_string(i - 6));
    const double s = std::stod(fields[1]);
    CHECK(s >= prev);
    prev = s;
  }
  CHECK(blank - 6 == 5);

  CHECK(lines[blank + 1] == "P_star,S_star,converged,C1,C2,C3,C4");
  CHECK(lines[blank + 2] == "2.1595682831466645,0.66804789278877041,1,1,1,1,1");
}

TEST_CASE("an snr sweep emits one strictly improving row per value") {
  const fs::path scenario = write_scenario(R"({
    "system": {"K": 3, "R_D": 10.0, "alpha": 2.0, "rho_db": 10.0, "seed": 42},
    "run": {"trials": 2000, "sweep": {"axis": "rho_db", "values": [0, 10, 20], "mode": "ergodic"}}
  })");
  const RunResult result = run_cli("sweep " + scenario.string());
  REQUIRE(result.exit_code == 0);
  const std::vector<std::string> lines = lines_of(result.out);
  REQUIRE(lines.size() == 9);
  CHECK(lines[5] == "sweep_value,K,rho_db,gcq_rate,mc_rate,mc_stderr,asymptotic_rate,rel_gap");
  const char* values[] = {"0", "10", "20"};
  double prev = -1.0;
  for (int i = 0; i < 3; ++i) {
    const std::vector<std::string> fields = fields_of(lines[6 + i]);
    REQUIRE(fields.size() == 8);
    CHECK(fields[0] == values[i]);
    CHECK(fields[2] == values[i]);
    const double gcq = std::stod(fields[3]);
    CHECK(gcq > prev);
    prev = gcq;
  }
}

TEST_CASE("a chain-power sweep lowers the achieved efficiency") {
  const fs::path scenario = write_scenario(R"({
    "system": {"K": 16, "R_D": 10.0, "alpha": 2.0, "rho_db": 10.0, "seed": 42},
    "power": {"eta": 1.0, "P_c": 0.0, "P_RF": 1.0, "P_T": 1e6, "N_0": 1.0},
    "run": {"sweep": {"axis": "P_RF", "values": [0.5, 1, 2], "mode": "optimize"}}
  })");
  const RunResult result = run_cli("sweep " + scenario.string());
  REQUIRE(result.exit_code == 0);
  const std::vector<std::string> lines = lines_of(result.out);
  REQUIRE(lines.size() == 9);
  CHECK(lines[5] == "sweep_value,P_star,S_star,converged,C1,C2,C3,C4");
  const char* expected[] = {"0.8034788298096277", "0.66804789278877041", "0.51780093220224488"};
  for (int i = 0; i < 3; ++i) {
    const std::vector<std::string> fields = fields_of(lines[6 + i]);
    REQUIRE(fields.size() == 8);
    CHECK(fields[2] == expected[i]);
    CHECK(fields[3] == "1");
  }
}

TEST_CASE("the embedded config reproduces every mode byte for byte") {
  struct Case {
    std::string mode;
    std::string scenario;
    std::string extra_flags;
  };
  const Case cases[] = {
      {"simulate", kSimulateK1, " --trials 5"},
      {"ergodic", kErgodicK3, " --seed 123 --trials 1500"},
      {"optimize", kOptimize, ""},
      {"sweep", R"({
         "system": {"K": 3, "R_D": 10.0, "alpha": 2.0, "rho_db": 10.0, "seed": 42},
         "run": {"trials": 500, "sweep": {"axis": "K", "values": [2, 3, 4], "mode": "ergodic"}}
       })",
       ""},
  };
  for (const Case& c : cases) {
    CAPTURE(c.mode);
    const fs::path scenario = write_scenario(c.scenario);
    const RunResult first = run_cli(c.mode + " " + scenario.string() + c.extra_flags);
    REQUIRE(first.exit_code == 0);

    const std::string config = header_value(first.out, "# config: ");
    const std::string mode = header_value(first.out, "# command: ");
    REQUIRE_FALSE(config.empty());
    CHECK(mode == c.mode);

    const fs::path replay = write_scenario(config);
    const RunResult second = run_cli(mode + " " + replay.string());
    REQUIRE(second.exit_code == 0);
    CHECK(second.out == first.out);
  }
}
