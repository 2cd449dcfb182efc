#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

namespace {

const std::string cli = KEPLERREG_CLI_PATH;
const std::string samples = KEPLERREG_SAMPLES_DIR;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string out_path = "/tmp/keplerreg_cli_out.txt";
  const std::string cmd = cli + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

}  // namespace

TEST_CASE("verify: exit 0, all checks pass, reproducible bytes per seed") {
  const RunResult a = run("verify --cutoff 5 --seed 11");
  CHECK(a.code == 0);
  const auto ja = nlohmann::json::parse(a.out);
  CHECK(ja["all_pass"] == true);
  CHECK(ja["checks"].size() > 25);

  const RunResult b = run("verify --cutoff 5 --seed 11");
  CHECK(b.out == a.out);

  const RunResult c = run("verify --cutoff 5 --seed 12");
  CHECK(c.code == 0);  // different seed still passes, bytes may differ
}

TEST_CASE("verify: injected sign error fails and names the check") {
  const RunResult r = run("verify --cutoff 4 --seed 1 --inject-sign-error");
  CHECK(r.code == 1);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["all_pass"] == false);
  bool named = false;
  for (const auto& c : j["checks"])
    if (c["pass"] == false) {
      named = true;
      const std::string name = c["name"];
      CHECK(name.find("oracle_equivalence") != std::string::npos);
      break;
    }
  CHECK(named);
}

TEST_CASE("spectrum: hydrogen lines with n^2 degeneracies") {
  const RunResult r = run("spectrum --regime neg --cutoff 8 --m 1 --gamma 1");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() >= 5);
  for (int n = 1; n <= 5; ++n) {
    CHECK(j[n - 1]["n"] == n);
    CHECK(j[n - 1]["degeneracy"] == n * n);
    CHECK(std::abs(j[n - 1]["energy"].get<double>() + 0.5 / (n * n)) < 1e-14);
  }
}

TEST_CASE("spectrum: positive regime tau = 2 line") {
  const RunResult r = run("spectrum --regime pos --cutoff 6");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j[0]["n"] == 2);
  CHECK(std::abs(j[0]["energy"].get<double>() - 0.125) < 1e-15);
}

TEST_CASE("spectrum: zero regime reports the constraint sphere") {
  const RunResult r = run("spectrum --regime zero --k 1 --m 1 --gamma 1");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["constraint_sphere_radius_squared"] == 2.0);
  CHECK(j.contains("message"));
}

TEST_CASE("spectrum: csv format carries the closed-form column") {
  const RunResult r = run("spectrum --regime neg --cutoff 4 --format csv");
  CHECK(r.code == 0);
  std::istringstream is(r.out);
  std::string header;
  std::getline(is, header);
  CHECK(header == "n,energy,closed_form,degeneracy,truncation_complete");
}

TEST_CASE("propagate: circular orbit sample config conserves everything") {
  const RunResult r = run("propagate --state " + samples +
                          "/circular_orbit.json --regime neg --n-steps 2000 "
                          "--dlambda 0.0031415926535897933");
  CHECK(r.code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "s,t,x1,x2,x3,y1,y2,y3,H,L1,L2,L3,RL1,RL2,RL3");
  double drift = -1.0;
  while (std::getline(is, line))
    if (line.rfind("# max_drift_H,", 0) == 0)
      drift = std::stod(line.substr(std::string("# max_drift_H,").size()));
  CHECK(drift >= 0.0);
  CHECK(drift < 1e-12);
}

TEST_CASE("propagate: high-eccentricity sample completes") {
  const RunResult r = run("propagate --state " + samples +
                          "/eccentric_e099.json --regime neg --n-steps 4000 "
                          "--dlambda 0.0015707963267948966");
  CHECK(r.code == 0);
  CHECK(r.out.find("nan") == std::string::npos);
}

TEST_CASE("propagate: malformed state file exits 2 with a diagnostic") {
  std::ofstream bad("/tmp/keplerreg_bad_state.json");
  bad << "{ not json";
  bad.close();
  const RunResult r = run("propagate --state /tmp/keplerreg_bad_state.json --regime neg");
  CHECK(r.code == 2);

  std::ofstream invalid("/tmp/keplerreg_invalid_state.json");
  invalid << R"({"X":[0,0,0],"Y":[0,0,0],"m":1,"gamma":1})";
  invalid.close();
  const RunResult r2 =
      run("propagate --state /tmp/keplerreg_invalid_state.json --regime neg");
  CHECK(r2.code == 2);
}

TEST_CASE("propagate: energy/regime mismatch exits 1") {
  const RunResult r = run("propagate --state " + samples +
                          "/circular_orbit.json --regime pos --n-steps 10 --dlambda 0.1");
  CHECK(r.code == 1);
}

TEST_CASE("benchmark: three scenarios, deterministic, ratio grows with e") {
  const RunResult a = run("benchmark --n-steps 4000 --seed 7");
  CHECK(a.code == 0);
  const auto j = nlohmann::json::parse(a.out);
  REQUIRE(j["scenarios"].size() == 3);
  double prev_ratio = 0.0;
  for (const auto& s : j["scenarios"]) {
    CHECK(s["regularized_drift_H"].get<double>() < 1e-10);
    if (s["drift_ratio"].is_number()) {
      CHECK(s["drift_ratio"].get<double>() > prev_ratio);
      prev_ratio = s["drift_ratio"].get<double>();
    } else {
      prev_ratio = 1e300;  // diverged counts as worse than any finite drift
    }
  }
  const RunResult b = run("benchmark --n-steps 4000 --seed 7");
  CHECK(b.out == a.out);
}

TEST_CASE("config file provides defaults, flags win") {
  std::ofstream cfg("/tmp/keplerreg_cfg.json");
  cfg << R"({"cutoff": 4, "regime": "neg"})";
  cfg.close();
  const RunResult file_only = run("spectrum --config /tmp/keplerreg_cfg.json");
  CHECK(file_only.code == 0);
  const auto jf = nlohmann::json::parse(file_only.out);
  CHECK(jf.size() == 3);  // cutoff 4 -> n = 1..3

  const RunResult flag_wins = run("spectrum --config /tmp/keplerreg_cfg.json --cutoff 8");
  const auto jw = nlohmann::json::parse(flag_wins.out);
  CHECK(jw.size() == 5);  // cutoff 8 -> n = 1..5
}

TEST_CASE("verify report carries the algebra table with its residual") {
  const RunResult r = run("verify --cutoff 4 --seed 2");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.contains("algebra_table"));
  CHECK(j["algebra_table"]["generators"].size() == 16);
  CHECK(j["algebra_table"]["f"].size() == 16);
  CHECK(j["algebra_table"]["max_residual"].get<double>() < 1e-12);
}

TEST_CASE("benchmark config file round-trips and thread cap is deterministic") {
  std::ofstream cfg("/tmp/keplerreg_bench_cfg.json");
  cfg << R"({"n_steps": 4000, "seed": 7})";
  cfg.close();
  const RunResult via_cfg = run("benchmark --config /tmp/keplerreg_bench_cfg.json");
  const RunResult via_flags = run("benchmark --n-steps 4000 --seed 7");
  CHECK(via_cfg.code == 0);
  CHECK(via_cfg.out == via_flags.out);

  const std::string out_path = "/tmp/keplerreg_threads_out.txt";
  const int status = std::system(("KEPLERREG_THREADS=1 " + cli +
                                  " benchmark --n-steps 4000 --seed 7 > " + out_path +
                                  " 2>/dev/null")
                                     .c_str());
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == via_flags.out);  // scenario-ordered merge is thread-count invariant
}

TEST_CASE("shipped sample config drives propagate from the repo root") {
  const std::string root = samples.substr(0, samples.rfind('/'));
  const std::string out_path = "/tmp/keplerreg_sample_cfg_out.txt";
  const int status =
      std::system(("cd " + root + " && " + cli +
                   " propagate --config samples/propagate_config.json > " + out_path +
                   " 2>/dev/null")
                      .c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
  std::ifstream in(out_path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "s,t,x1,x2,x3,y1,y2,y3,H,L1,L2,L3,RL1,RL2,RL3");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("spectrum --regime bogus").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("verify --cutoff 99").code == 2);
}
