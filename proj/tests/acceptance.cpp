// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sfr/experiment.hpp"
#include "sfr/metrics.hpp"
#include "sfr/sensing.hpp"
#include "sfr/solvers.hpp"
#include "test_util.hpp"

using namespace sfr;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

constexpr std::uint64_t kSeed = 20100601;

Outcome sensing_oracle() {
  const RadarConfig cfg;
  const PulseShape shape = PulseShape::ideal_sinc(cfg.pulse_bandwidth);
  std::mt19937_64 gen(kSeed);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const RangeProfile h = testing::random_sparse_profile(cfg, 24, gen);
    const PulseSchedule sched = random_missing_schedule(cfg.n_pulses, 12, kSeed + i);
    const CVector vec = vectorize(build_trm(h, shape, sched));
    const SensingSystem sys = build_sensing_system(cfg, shape, sched, build_trm(RangeProfile(cfg), shape, sched));
    worst = std::max(worst, (sys.phi * h.values() - vec).norm() / vec.norm());
  }
  return {worst <= 1e-12, fmt("worst relative mismatch %.3e over 100 profiles (limit 1e-12)", worst)};
}

struct RecoveryStats {
  int successes = 0;
  int converged = 0;
  double worst_eps_ratio = 0.0;
};

RecoveryStats noiseless_recovery_runs() {
  RadarConfig cfg;
  cfg.l_bins = 4;
  const PulseShape shape = PulseShape::ideal_sinc(cfg.pulse_bandwidth);
  std::mt19937_64 gen(kSeed + 1);
  RecoveryStats stats;
  for (int t = 0; t < 100; ++t) {
    const RangeProfile h = testing::random_sparse_profile(cfg, 5, gen);
    const PulseSchedule sched = random_missing_schedule(cfg.n_pulses, 12, kSeed + 1000 + t);
    const SensingSystem sys = build_sensing_system(cfg, shape, sched, build_trm(h, shape, sched));
    SolverOptions opts;
    opts.epsilon = EpsilonRule::explicit_value(1e-6 * sys.y.norm());
    const RecoveryResult r = solve_sparse_l1(sys, opts);
    stats.successes += rel_l2_error(h.values(), r.h_est) <= 1e-3 ? 1 : 0;
    if (r.converged) {
      ++stats.converged;
      stats.worst_eps_ratio = std::max(stats.worst_eps_ratio, r.residual_l2 / r.epsilon_used);
    }
  }
  return stats;
}

std::map<std::pair<int, Method>, SweepSummary> by_point(const std::vector<TrialRecord>& records) {
  std::map<std::pair<int, Method>, SweepSummary> out;
  for (const SweepSummary& s : summarize(records)) out[{s.missing_count, s.method}] = s;
  return out;
}

Outcome similarity_trend(const std::vector<TrialRecord>& records) {
  const auto pts = by_point(records);
  bool ok = true;
  std::string detail;
  for (int missing : {0, 4, 8, 12, 16, 20}) {
    const double sparse = pts.at({missing, Method::SparseL1}).mean_similarity;
    const double ls = pts.at({missing, Method::LeastSquares}).mean_similarity;
    const bool point_ok = missing == 0 ? std::abs(sparse - ls) <= 0.02 : sparse >= ls;
    ok = ok && point_ok;
    detail += fmt("%s%d: %.4f vs %.4f%s", detail.empty() ? "" : "; ", missing, sparse, ls, point_ok ? "" : " (!)");
  }
  return {ok, "missing: sparse vs LS mean similarity -> " + detail};
}

Outcome sidelobes(const std::vector<TrialRecord>& records) {
  const auto pts = by_point(records);
  const double sparse = pts.at({12, Method::SparseL1}).mean_peak_sidelobe_db;
  const double ls = pts.at({12, Method::LeastSquares}).mean_peak_sidelobe_db;
  return {ls - sparse >= 3.0, fmt("mean PSL sparse %.2f dB, LS %.2f dB, gap %.2f dB (need >= 3)", sparse, ls, ls - sparse)};
}

Outcome solver_contracts(const RecoveryStats& noiseless) {
  // SparseL1 feasibility over the noiseless runs plus noisy default-geometry trials.
  double worst_ratio = noiseless.worst_eps_ratio;
  int converged_sweep = 0;
  const RadarConfig cfg;
  const PulseShape shape = PulseShape::ideal_sinc(cfg.pulse_bandwidth);
  ExperimentSpec spec;
  spec.seed = kSeed;
  for (int missing : {0, 12, 20}) {
    for (int t = 0; t < 5; ++t) {
      const TrialData data = make_trial(spec, nullptr, missing, 15.0, t);
      const RecoveryResult r = solve_sparse_l1(data.sys, spec.solver_opts);
      if (r.converged) {
        ++converged_sweep;
        worst_ratio = std::max(worst_ratio, r.residual_l2 / r.epsilon_used);
      }
    }
  }
  const bool sparse_ok = worst_ratio <= 1.0 + kEpsilonSlack;

  // LS normal equations.
  double worst_normal = 0.0;
  for (int missing : {0, 12, 20}) {
    const TrialData data = make_trial(spec, nullptr, missing, 15.0, 0);
    const RecoveryResult r = solve_least_squares(data.sys, spec.solver_opts);
    const double ridge = 1e-6 * estimate_operator_norm_sq(data.sys.phi);
    const CVector b = data.sys.phi.adjoint() * data.sys.y;
    const CVector lhs = data.sys.phi.adjoint() * (data.sys.phi * r.h_est) + ridge * r.h_est;
    worst_normal = std::max(worst_normal, (lhs - b).norm() / b.norm());
  }
  const bool ls_ok = worst_normal <= 1e-8;

  // Stretch baseline against a long-double DFT of each selected column.
  double worst_dft = 0.0;
  const long double pi = std::numbers::pi_v<long double>;
  for (int t = 0; t < 5; ++t) {
    const TrialData data = make_trial(spec, nullptr, 0, 15.0, t);
    const RecoveryResult r = solve_stretch_idft(data.trm, cfg, shape);
    for (int bin = 0; bin < cfg.l_bins; ++bin) {
      const CVector col = data.trm.data.col(stretch_column_for_bin(cfg, bin));
      for (int q = 0; q < cfg.n_pulses; ++q) {
        std::complex<long double> acc{0, 0};
        for (int n = 0; n < cfg.n_pulses; ++n) {
          const long double a = 2.0L * pi * n * q / cfg.n_pulses;
          acc += std::complex<long double>(col[n].real(), col[n].imag()) * std::complex<long double>(std::cos(a), std::sin(a));
        }
        acc /= static_cast<long double>(cfg.n_pulses);
        const Complex got = r.h_est[bin * cfg.n_pulses + q];
        worst_dft = std::max(worst_dft, static_cast<double>(std::abs(std::complex<long double>(got.real(), got.imag()) - acc)));
      }
    }
  }
  const bool dft_ok = worst_dft <= 1e-12;

  return {sparse_ok && ls_ok && dft_ok && converged_sweep > 0 && noiseless.converged > 0,
          fmt("sparse max residual/eps %.6f over %d converged solves; LS normal-eq rel residual %.2e; "
              "stretch vs DFT max abs diff %.2e",
              worst_ratio, noiseless.converged + converged_sweep, worst_normal, worst_dft)};
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string f;
  while (std::getline(is, f, ',')) out.push_back(f);
  return out;
}

Outcome determinism() {
  ExperimentSpec spec;
  spec.seed = kSeed;
  spec.sweep = {0, 12, 20};
  spec.trials_per_point = 3;
  spec.solvers = {Method::SparseL1, Method::LeastSquares, Method::StretchIdft};

  auto csv = [&](int threads) {
    std::ostringstream os;
    write_trials_csv(os, run_experiment(spec, threads), false);
    return os.str();
  };
  const std::string first = csv(1);
  const std::string second = csv(1);
  const std::string pooled = csv(0);
  const std::string four = csv(4);
  const bool repeat_ok = first == second;

  // Thread-count comparison: numeric columns within 1e-10 relative.
  bool threads_ok = true;
  for (const std::string& other : {pooled, four}) {
    const auto la = split_lines(first);
    const auto lb = split_lines(other);
    if (la.size() != lb.size()) {
      threads_ok = false;
      continue;
    }
    for (std::size_t i = 0; i < la.size(); ++i) {
      const auto fa = split_fields(la[i]);
      const auto fb = split_fields(lb[i]);
      if (fa.size() != fb.size()) {
        threads_ok = false;
        break;
      }
      for (std::size_t j = 0; j < fa.size(); ++j) {
        if (fa[j] == fb[j]) continue;
        try {
          const double a = std::stod(fa[j]);
          const double b = std::stod(fb[j]);
          if (std::abs(a - b) > 1e-10 * std::max(std::abs(a), std::abs(b))) threads_ok = false;
        } catch (const std::exception&) {
          threads_ok = false;
        }
      }
    }
  }
  return {repeat_ok && threads_ok,
          fmt("repeat byte-identical: %s; threads {1, auto=%d, 4} agree: %s (%zu rows)", repeat_ok ? "yes" : "no",
              resolve_thread_count(0), threads_ok ? "yes" : "no", split_lines(first).size() - 1)};
}

Outcome resolution() {
  const RadarConfig cfg;
  const auto axis = range_axis(cfg);
  const double spacing = axis[1] - axis[0];
  return {std::abs(spacing - 0.29277) <= 1e-5, fmt("range_axis spacing %.7f m (target 0.29277 +- 1e-5)", spacing)};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = fn();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] AC%d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  };

  report(1, "sensing oracle equivalence", sensing_oracle);

  RecoveryStats noiseless;
  report(2, "noiseless exact recovery", [&] {
    noiseless = noiseless_recovery_runs();
    return Outcome{noiseless.successes >= 95,
                   fmt("%d/100 trials with rel l2 error <= 1e-3 (need >= 95)", noiseless.successes)};
  });

  ExperimentSpec fig2;
  fig2.sweep = {0, 4, 8, 12, 16, 20};
  fig2.snr_db = {15.0};
  fig2.trials_per_point = 20;
  fig2.target.n_scatterers = 24;
  report(3, "similarity trend vs missing pulses", [&] {
    return similarity_trend(run_experiment(fig2, threads_from_env()));
  });

  report(4, "sidelobe degradation direction", [&] {
    ExperimentSpec single = fig2;
    single.sweep = {12};
    single.target.n_scatterers = 1;
    return sidelobes(run_experiment(single, threads_from_env()));
  });

  report(5, "solver contracts", [&] { return solver_contracts(noiseless); });
  report(6, "determinism", determinism);
  report(7, "resolution bookkeeping", resolution);

  std::printf("%s: %d of 7 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
