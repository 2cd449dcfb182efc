// keplerreg: batch verification, spectra, propagation and benchmarks for the
// linearized Kepler toolkit. Exit codes: 0 success, 1 check failure, 2
// usage/config error.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "keplerreg/json_io.hpp"
#include "keplerreg/propagate.hpp"
#include "keplerreg/quantum.hpp"
#include "keplerreg/verify.hpp"

namespace kr = keplerreg;
using kr::operator-;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct RunConfig {
  double m = 1.0;
  double gamma = 1.0;
  double k = 1.0;
  std::string regime = "neg";
  int cutoff = 8;
  int n_steps = 10000;
  double dlambda = 1e-3;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  std::string state_file;
  bool inject_sign_error = false;
  bool timing = false;
};

/// Config file first, then any flag the user actually passed wins.
void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  json j;
  in >> j;
  cfg.m = j.value("m", cfg.m);
  cfg.gamma = j.value("gamma", cfg.gamma);
  cfg.k = j.value("k", cfg.k);
  cfg.regime = j.value("regime", cfg.regime);
  cfg.cutoff = j.value("cutoff", cfg.cutoff);
  cfg.n_steps = j.value("n_steps", cfg.n_steps);
  cfg.dlambda = j.value("dlambda", cfg.dlambda);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.out = j.value("out", cfg.out);
  cfg.format = j.value("format", cfg.format);
  cfg.state_file = j.value("state", cfg.state_file);
}

kr::Regime parse_regime(const std::string& r) {
  if (r == "neg") return kr::Regime::neg;
  if (r == "pos") return kr::Regime::pos;
  if (r == "zero") return kr::Regime::zero;
  throw CLI::ValidationError("--regime", "must be neg, pos or zero");
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out);
  if (!out) throw std::runtime_error("cannot write " + cfg.out);
  out << text;
}

int cmd_verify(const RunConfig& cfg) {
  kr::VerifyOptions opt;
  opt.seed = cfg.seed;
  opt.cutoff = cfg.cutoff;
  opt.inject_sign_error = cfg.inject_sign_error;
  const auto checks = kr::run_verification(opt);
  ordered_json report = kr::verification_report(checks, opt);
  {
    // algebra report: the quantum commutator table with its residual scalar
    const kr::Representation rep = kr::make_fock_rep(std::min(cfg.cutoff, 6));
    auto ops = kr::su22_generators(rep, kr::Regime::neg, false);
    if (cfg.inject_sign_error)
      ops[kr::generators::kN2] = kr::cxd(-1.0) * ops[kr::generators::kN2];
    const kr::AlgebraTable table =
        kr::commutator_table(ops, kr::generators::names());
    ordered_json at = ordered_json::parse(table.to_json().dump());
    at["max_residual"] = table.max_residual;
    report["algebra_table"] = at;
  }
  write_output(cfg, report.dump(2) + "\n");
  for (const auto& c : checks)
    if (!c.pass) {
      std::cerr << "FAILED check: " << c.name << " (residual " << kr::fmt17(c.residual)
                << " > tolerance " << kr::fmt17(c.tolerance) << ")\n";
      return 1;
    }
  return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
  if (cfg.regime == "zero") {
    // E = 0 carries no discrete tower; the shell condition is the sphere
    // sum(A_i^2 + B_i^2) = 2 gamma sqrt(m) / k, foliated by k.
    ordered_json j;
    j["regime"] = "zero";
    j["message"] =
        "zero energy has no discrete spectrum: states live on the constraint "
        "sphere sum(A^2+B^2) = 2*gamma*sqrt(m)/k";
    j["constraint_sphere_radius_squared"] = 2.0 * cfg.gamma * std::sqrt(cfg.m) / cfg.k;
    write_output(cfg, j.dump(2) + "\n");
    return 0;
  }
  if (cfg.cutoff < 2) throw CLI::ValidationError("--cutoff", "spectrum needs cutoff >= 2");
  const auto lines = (cfg.regime == "neg")
                         ? kr::hydrogen_spectrum_neg(cfg.cutoff, cfg.m, cfg.gamma)
                         : kr::spectrum_pos(cfg.cutoff, cfg.m, cfg.gamma);
  auto closed_form = [&cfg](int n) {
    const double s = (cfg.regime == "neg") ? -1.0 : 1.0;
    return s * cfg.m * cfg.gamma * cfg.gamma / (2.0 * double(n) * double(n));
  };
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "n,energy,closed_form,degeneracy,truncation_complete\n";
    for (const auto& l : lines)
      os << l.n << ',' << kr::fmt17(l.energy) << ',' << kr::fmt17(closed_form(l.n)) << ','
         << l.degeneracy << ',' << (l.truncation_complete ? 1 : 0) << "\n";
    write_output(cfg, os.str());
  } else {
    write_output(cfg, kr::to_json(lines).dump(2) + "\n");
  }
  // closed-form comparison column on stderr so files keep the documented shape
  std::cerr << "n  energy                   closed_form              degeneracy\n";
  for (const auto& l : lines)
    std::cerr << l.n << "  " << kr::fmt17(l.energy) << "  " << kr::fmt17(closed_form(l.n))
              << "  " << l.degeneracy << (l.truncation_complete ? "" : " (truncated)")
              << "\n";
  return 0;
}

int cmd_propagate(const RunConfig& cfg) {
  if (cfg.state_file.empty())
    throw CLI::ValidationError("--state", "propagate needs an initial state file");
  json j;
  {
    std::ifstream in(cfg.state_file);
    if (!in) throw CLI::ValidationError("--state", "cannot open " + cfg.state_file);
    try {
      in >> j;
    } catch (const json::exception& e) {
      std::cerr << "state file parse error: " << e.what() << "\n";
      return 2;
    }
  }
  kr::KeplerState initial;
  try {
    initial = kr::kepler_state_from_json(j);
  } catch (const std::exception& e) {
    std::cerr << "state file invalid: " << e.what() << "\n";
    return 2;
  }
  kr::Trajectory tr;
  try {
    tr = kr::propagate_physical(initial, parse_regime(cfg.regime), cfg.n_steps,
                                cfg.dlambda);
  } catch (const kr::DomainError& e) {
    std::cerr << "propagation rejected: " << e.what() << "\n";
    return 1;
  }
  std::ostringstream os;
  kr::write_trajectory_csv(os, tr);
  os << "# max_drift_H," << kr::fmt17(tr.max_drift_H()) << "\n";
  os << "# max_drift_L," << kr::fmt17(tr.max_drift_L()) << "\n";
  os << "# max_drift_RL," << kr::fmt17(tr.max_drift_RL()) << "\n";
  for (const auto& e : tr.events)
    os << "# event," << e.kind << "," << kr::fmt17(e.s) << "\n";
  write_output(cfg, os.str());
  std::cerr << "samples " << tr.samples.size() << ", max drift H "
            << kr::fmt17(tr.max_drift_H()) << ", L " << kr::fmt17(tr.max_drift_L())
            << ", RL " << kr::fmt17(tr.max_drift_RL()) << "\n";
  return 0;
}

struct BenchResult {
  double e = 0.0;
  double reg_drift_H = 0.0;
  double oracle_drift_H = 0.0;
  double drift_ratio = 0.0;
  double reg_position_error = 0.0;
  double oracle_position_error = 0.0;
  bool oracle_diverged = false;
  double reg_ns_per_step = 0.0;
  double oracle_ns_per_step = 0.0;
};

BenchResult run_scenario(double e, const RunConfig& cfg) {
  BenchResult r;
  r.e = e;
  const double a = 1.0;
  const kr::KeplerState s0 = kr::make_orbit_state(a, e, cfg.m, cfg.gamma);
  const double T = kr::kepler_period(a, cfg.m, cfg.gamma);
  const double k = std::sqrt(-2.0 * kr::hamiltonian(s0));

  const auto t0 = std::chrono::steady_clock::now();
  const kr::Trajectory reg =
      kr::propagate_physical(s0, kr::Regime::neg, cfg.n_steps, 2.0 * M_PI / k / cfg.n_steps);
  const auto t1 = std::chrono::steady_clock::now();
  const kr::Trajectory rk = kr::direct_kepler_oracle(s0, T, cfg.n_steps);
  const auto t2 = std::chrono::steady_clock::now();

  r.reg_drift_H = reg.max_drift_H();
  r.oracle_diverged = rk.diverged;
  r.oracle_drift_H = rk.diverged ? std::numeric_limits<double>::infinity()
                                 : rk.max_drift_H();
  r.drift_ratio = r.oracle_drift_H / std::max(r.reg_drift_H, 1e-300);

  const auto [Xreg, Yreg] =
      kr::kepler_closed_form(a, e, cfg.m, cfg.gamma, reg.samples.back().t);
  r.reg_position_error = kr::norm(reg.samples.back().state.X - Xreg);
  if (!rk.diverged) {
    const auto [Xrk, Yrk] =
        kr::kepler_closed_form(a, e, cfg.m, cfg.gamma, rk.samples.back().t);
    r.oracle_position_error = kr::norm(rk.samples.back().state.X - Xrk);
  } else {
    r.oracle_position_error = std::numeric_limits<double>::infinity();
  }
  r.reg_ns_per_step =
      std::chrono::duration<double, std::nano>(t1 - t0).count() / cfg.n_steps;
  r.oracle_ns_per_step =
      std::chrono::duration<double, std::nano>(t2 - t1).count() / cfg.n_steps;
  return r;
}

int cmd_benchmark(const RunConfig& cfg) {
  const std::vector<double> eccs = {0.5, 0.9, 0.99};
  std::vector<BenchResult> results(eccs.size());

  unsigned max_threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("KEPLERREG_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) max_threads = unsigned(v);
  }
  const unsigned n_workers = std::min<unsigned>(max_threads, eccs.size());
  std::vector<std::thread> workers;
  std::atomic<std::size_t> next{0};
  for (unsigned w = 0; w < n_workers; ++w)
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t idx = next.fetch_add(1);
        if (idx >= eccs.size()) return;
        results[idx] = run_scenario(eccs[idx], cfg);
      }
    });
  for (auto& w : workers) w.join();

  ordered_json j;
  j["seed"] = cfg.seed;
  j["n_steps"] = cfg.n_steps;
  ordered_json arr = ordered_json::array();
  for (const auto& r : results) {  // merged in scenario order
    ordered_json s;
    s["e"] = r.e;
    s["regularized_drift_H"] = r.reg_drift_H;
    s["oracle_drift_H"] = r.oracle_diverged ? ordered_json("diverged")
                                            : ordered_json(r.oracle_drift_H);
    s["drift_ratio"] = r.oracle_diverged ? ordered_json("diverged")
                                         : ordered_json(r.drift_ratio);
    s["regularized_position_error"] = r.reg_position_error;
    s["oracle_position_error"] = r.oracle_diverged ? ordered_json("diverged")
                                                   : ordered_json(r.oracle_position_error);
    if (cfg.timing) {
      s["regularized_ns_per_step"] = r.reg_ns_per_step;
      s["oracle_ns_per_step"] = r.oracle_ns_per_step;
    }
    arr.push_back(s);
  }
  j["scenarios"] = arr;
  write_output(cfg, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification-grade toolkit for the linearized Kepler problem"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file (flags win)");
    sub->add_option("--m", cfg.m, "mass")->check(CLI::PositiveNumber);
    sub->add_option("--gamma", cfg.gamma, "coupling")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* verify = app.add_subcommand("verify", "run the full invariant suite");
  add_common(verify);
  verify->add_option("--cutoff", cfg.cutoff, "basis cutoff")->check(CLI::Range(2, 16));
  verify->add_flag("--inject-sign-error", cfg.inject_sign_error,
                   "negative control: flip one quantum generator");

  CLI::App* spectrum = app.add_subcommand("spectrum", "emit spectrum lines");
  add_common(spectrum);
  spectrum->add_option("--regime", cfg.regime, "neg|pos|zero")
      ->check(CLI::IsMember({"neg", "pos", "zero"}));
  spectrum->add_option("--cutoff", cfg.cutoff, "basis cutoff")->check(CLI::Range(2, 20));
  spectrum->add_option("--k", cfg.k, "scale parameter (zero regime)")
      ->check(CLI::PositiveNumber);

  CLI::App* propagate = app.add_subcommand("propagate", "exact regularized propagation");
  add_common(propagate);
  propagate->add_option("--state", cfg.state_file, "initial KeplerState JSON file");
  propagate->add_option("--regime", cfg.regime, "neg|pos|zero")
      ->check(CLI::IsMember({"neg", "pos", "zero"}));
  propagate->add_option("--n-steps", cfg.n_steps, "number of samples")
      ->check(CLI::PositiveNumber);
  propagate->add_option("--dlambda", cfg.dlambda, "fictitious-time step")
      ->check(CLI::PositiveNumber);

  CLI::App* benchmark =
      app.add_subcommand("benchmark", "regularized vs direct-integrator comparison");
  add_common(benchmark);
  benchmark->add_option("--n-steps", cfg.n_steps, "steps per scenario")
      ->check(CLI::PositiveNumber);
  benchmark->add_flag("--timing", cfg.timing, "include wall-clock fields");

  // two-pass parse so a config file fills defaults and explicit flags win
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (!config_path.empty()) {
      RunConfig from_file = cfg;
      apply_config_file(config_path, from_file);
      // flags that were explicitly given override the file values
      for (CLI::App* sub : {verify, spectrum, propagate, benchmark}) {
        if (!sub->parsed()) continue;
        auto keep = [&](const std::string& flag, auto member) {
          if (sub->count(flag) > 0) from_file.*member = cfg.*member;
        };
        keep("--m", &RunConfig::m);
        keep("--gamma", &RunConfig::gamma);
        keep("--seed", &RunConfig::seed);
        keep("--out", &RunConfig::out);
        keep("--format", &RunConfig::format);
        if (sub->get_option_no_throw("--cutoff") && sub->count("--cutoff"))
          from_file.cutoff = cfg.cutoff;
        if (sub->get_option_no_throw("--regime") && sub->count("--regime"))
          from_file.regime = cfg.regime;
        if (sub->get_option_no_throw("--k") && sub->count("--k")) from_file.k = cfg.k;
        if (sub->get_option_no_throw("--n-steps") && sub->count("--n-steps"))
          from_file.n_steps = cfg.n_steps;
        if (sub->get_option_no_throw("--dlambda") && sub->count("--dlambda"))
          from_file.dlambda = cfg.dlambda;
        if (sub->get_option_no_throw("--state") && sub->count("--state"))
          from_file.state_file = cfg.state_file;
      }
      from_file.inject_sign_error = cfg.inject_sign_error;
      from_file.timing = cfg.timing;
      cfg = from_file;
    }
    if (verify->parsed()) return cmd_verify(cfg);
    if (spectrum->parsed()) return cmd_spectrum(cfg);
    if (propagate->parsed()) return cmd_propagate(cfg);
    if (benchmark->parsed()) return cmd_benchmark(cfg);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
