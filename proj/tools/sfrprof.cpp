// sfrprof: stepped-frequency HRR profiling from incomplete pulse trains.
//
//   sfrprof simulate --config exp.ini --out dir [--seed N] [--method sparse_l1]
//   sfrprof sweep    --config exp.ini --out dir [--seed N]
//   sfrprof recover  --config exp.ini --trm data.trm --pulses 0,1,3,... --out dir [--method ...] [--epsilon E]
//   sfrprof selftest
//
// SFR_THREADS caps the sweep worker pool (0 or unset = all cores).

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sfr/config_file.hpp"
#include "sfr/errors.hpp"
#include "sfr/experiment.hpp"
#include "sfr/selftest.hpp"
#include "sfr/trm_io.hpp"

namespace fs = std::filesystem;

namespace {

sfr::ExperimentSpec load_spec(const std::string& config_path) {
  return config_path.empty() ? sfr::ExperimentSpec{} : sfr::load_experiment_spec(config_path);
}

std::vector<sfr::Method> pick_methods(const sfr::ExperimentSpec& spec, const std::string& method) {
  if (method.empty()) return spec.solvers;
  return {sfr::parse_method(method)};
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw sfr::ConfigError("bad pulse index '" + item + "'");
    out.push_back(v);
  }
  return out;
}

void print_result(const std::string& label, const sfr::RecoveryResult& r, const sfr::CVector* truth) {
  std::printf("%-14s residual=%.6g iterations=%d converged=%s", label.c_str(), r.residual_l2, r.iterations,
              r.converged ? "yes" : "no");
  if (r.method == sfr::Method::SparseL1) std::printf(" epsilon=%.6g", r.epsilon_used);
  if (r.degraded) std::printf(" (degraded: zero-filled pulses)");
  if (truth != nullptr) {
    const sfr::SimilarityReport rep = sfr::similarity(*truth, r.h_est);
    std::printf(" similarity=%.6f rel_l2=%.6f psl=%.2fdB", rep.similarity, rep.rel_l2_error, rep.peak_sidelobe_db);
  }
  std::printf("\n");
}

int cmd_simulate(const std::string& config, std::optional<std::uint64_t> seed, const fs::path& out,
                 const std::string& method) {
  sfr::ExperimentSpec spec = load_spec(config);
  if (seed) spec.seed = *seed;
  fs::create_directories(out);
  std::optional<sfr::RangeProfile> file_target;
  if (spec.target.kind == sfr::TargetSpec::Kind::FromFile) {
    file_target = sfr::load_profile_csv(spec.target.path, spec.radar);
  }
  const int missing = spec.sweep.front();
  const double snr = spec.snr_db.front();
  const sfr::TrialData data = sfr::make_trial(spec, file_target ? &*file_target : nullptr, missing, snr, 0);
  const auto axis = sfr::range_axis(spec.radar);

  std::printf("missing=%d snr_db=%g pulses kept=%d TRM=%lldx%lld\n", missing, snr, data.schedule.m_count(),
              static_cast<long long>(data.trm.rows()), static_cast<long long>(data.trm.cols()));
  sfr::export_profile(data.truth.values(), axis, out / "truth.csv");
  sfr::write_trm_file(out / "trm.sfrtrm", data.trm, spec.radar.delta_t);
  {
    std::ofstream os(out / "schedule.txt");
    for (std::size_t i = 0; i < data.schedule.valid_indices().size(); ++i) {
      os << (i ? "," : "") << data.schedule.valid_indices()[i];
    }
    os << '\n';
  }
  for (sfr::Method m : pick_methods(spec, method)) {
    const sfr::RecoveryResult r = sfr::run_method(m, data, spec);
    const std::string name(sfr::method_name(m));
    print_result(name, r, &data.truth.values());
    sfr::export_profile(r, axis, out / ("profile_" + name + ".csv"));
  }
  return 0;
}

int cmd_sweep(const std::string& config, std::optional<std::uint64_t> seed, const fs::path& out,
              const std::string& method) {
  sfr::ExperimentSpec spec = load_spec(config);
  if (seed) spec.seed = *seed;
  spec.solvers = pick_methods(spec, method);
  fs::create_directories(out);
  const auto records = sfr::run_experiment(spec, sfr::threads_from_env());
  {
    std::ofstream os(out / "trials.csv");
    sfr::write_trials_csv(os, records);
  }
  const auto summary = sfr::summarize(records);
  {
    std::ofstream os(out / "summary.csv");
    sfr::write_summary_csv(os, summary);
  }
  std::printf("%8s %8s %-14s %10s %10s\n", "missing", "snr_db", "method", "similarity", "psl_db");
  for (const auto& s : summary) {
    std::printf("%8d %8g %-14s %10.4f %10.2f\n", s.missing_count, s.snr_db, std::string(sfr::method_name(s.method)).c_str(),
                s.mean_similarity, s.mean_peak_sidelobe_db);
  }
  std::printf("wrote %s\n", (out / "trials.csv").string().c_str());
  return 0;
}

int cmd_recover(const std::string& config, const fs::path& trm_path, const std::string& pulses, const fs::path& out,
                const std::string& method, std::optional<double> epsilon, double noise_sigma) {
  sfr::ExperimentSpec spec = load_spec(config);
  if (epsilon) spec.solver_opts.epsilon = sfr::EpsilonRule::explicit_value(*epsilon);
  const sfr::PulseSchedule schedule = pulses.empty() ? sfr::PulseSchedule::full(spec.radar.n_pulses)
                                                     : sfr::PulseSchedule(spec.radar.n_pulses, parse_index_list(pulses));
  sfr::Trm trm = sfr::load_trm_file(trm_path, spec.radar, schedule);
  trm.noise_sigma = noise_sigma;
  sfr::TrialData data{sfr::RangeProfile(spec.radar), schedule, trm,
                      sfr::build_sensing_system(spec.radar, spec.shape, schedule, trm)};
  fs::create_directories(out);
  const auto axis = sfr::range_axis(spec.radar);
  for (sfr::Method m : pick_methods(spec, method)) {
    const sfr::RecoveryResult r = sfr::run_method(m, data, spec);
    const std::string name(sfr::method_name(m));
    print_result(name, r, nullptr);
    sfr::export_profile(r, axis, out / ("profile_" + name + ".csv"));
  }
  return 0;
}

int cmd_selftest() {
  int failed = 0;
  for (const auto& r : sfr::run_selftest()) {
    std::printf("[%s] %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    failed += r.passed ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stepped-frequency HRR profiling with missing pulses"};
  app.require_subcommand(1);

  std::string config;
  std::uint64_t seed_value = 0;
  std::string out = "out";
  std::string method;

  auto* simulate = app.add_subcommand("simulate", "run one trial and dump truth, TRM and recovered profiles");
  auto* sweep = app.add_subcommand("sweep", "run the missing-pulse sweep and write trials.csv");
  auto* recover = app.add_subcommand("recover", "reconstruct a profile from a recorded TRM file");
  auto* selftest = app.add_subcommand("selftest", "run the built-in invariant checks");
  (void)selftest;

  CLI::Option* seed_opts[2];
  int i = 0;
  for (auto* sub : {simulate, sweep}) {
    sub->add_option("--config", config, "experiment INI file")->check(CLI::ExistingFile);
    seed_opts[i++] = sub->add_option("--seed", seed_value, "master seed (overrides the config)");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--method", method, "sparse_l1 | least_squares | stretch_idft (default: config list)");
  }

  std::string trm_path;
  std::string pulses;
  double epsilon = 0.0;
  double noise_sigma = 0.0;
  recover->add_option("--config", config, "experiment INI file (radar and solver sections)")->check(CLI::ExistingFile);
  recover->add_option("--trm", trm_path, "SFRTRM v1 file")->required()->check(CLI::ExistingFile);
  recover->add_option("--pulses", pulses, "comma-separated valid pulse indices (default: all N)");
  recover->add_option("--out", out, "output directory");
  recover->add_option("--method", method, "solver to run (default: config list)");
  auto* eps_opt = recover->add_option("--epsilon", epsilon, "explicit data-fit radius for sparse_l1");
  recover->add_option("--noise-sigma", noise_sigma, "per-sample noise std-dev, for epsilon_rule=from_noise");

  CLI11_PARSE(app, argc, argv);

  try {
    auto seed_of = [&](CLI::Option* o) {
      return o->count() > 0 ? std::optional<std::uint64_t>(seed_value) : std::nullopt;
    };
    if (simulate->parsed()) return cmd_simulate(config, seed_of(seed_opts[0]), out, method);
    if (sweep->parsed()) return cmd_sweep(config, seed_of(seed_opts[1]), out, method);
    if (recover->parsed()) {
      return cmd_recover(config, trm_path, pulses, out, method,
                         eps_opt->count() > 0 ? std::optional<double>(epsilon) : std::nullopt, noise_sigma);
    }
    return cmd_selftest();
  } catch (const sfr::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
