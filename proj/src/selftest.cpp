#include "sfr/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "sfr/experiment.hpp"
#include "sfr/metrics.hpp"
#include "sfr/sensing.hpp"
#include "sfr/solvers.hpp"

namespace sfr {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

CVector random_vector(Eigen::Index n, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(normal(gen), normal(gen));
  return v;
}

}  // namespace

std::vector<SelfTestResult> run_selftest() {
  std::vector<SelfTestResult> out;
  const RadarConfig cfg;
  const PulseShape shape = PulseShape::ideal_sinc(cfg.pulse_bandwidth);
  std::mt19937_64 gen(2024);

  {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const RangeProfile h = synthetic_sparse_target(cfg, 24, 100 + i);
      const PulseSchedule sched = random_missing_schedule(cfg.n_pulses, 12, 200 + i);
      const Trm trm = build_trm(h, shape, sched);
      const SensingSystem sys = build_sensing_system(cfg, shape, sched, trm);
      worst = std::max(worst, (sys.phi * h.values() - sys.y).norm() / sys.y.norm());
    }
    out.push_back({"sensing operator reproduces synthesized TRM", worst <= 1e-12, "max rel diff " + sci(worst)});
  }

  {
    const PulseSchedule sched = random_missing_schedule(cfg.n_pulses, 12, 7);
    const SensingSystem sys = build_sensing_system(cfg, shape, sched, build_trm(RangeProfile(cfg), shape, sched));
    const CVector h = random_vector(sys.n_cells(), gen);
    const CVector y = random_vector(sys.n_observations(), gen);
    const Complex lhs = (sys.phi * h).dot(y);
    const Complex rhs = h.dot(sys.phi.adjoint() * y);
    const double rel = std::abs(lhs - rhs) / std::abs(lhs);
    out.push_back({"adjoint consistency", rel <= 1e-10, "rel diff " + sci(rel)});

    SolverOptions opts;
    SensingSystem noisy = sys;
    noisy.y = y;
    const RecoveryResult ls = solve_least_squares(noisy, opts);
    const double ridge = 1e-6 * estimate_operator_norm_sq(sys.phi);
    const CVector b = sys.phi.adjoint() * y;
    const CVector normal = sys.phi.adjoint() * (sys.phi * ls.h_est) + ridge * ls.h_est - b;
    const double nrel = normal.norm() / b.norm();
    out.push_back({"least-squares normal equations", nrel <= 1e-8, "rel residual " + sci(nrel)});
  }

  {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const CVector x = random_vector(cfg.n_pulses, gen);
      const CVector viaConj = inverse_dft(x.conjugate()).conjugate();  // = DFT(x) / N
      CVector dft(cfg.n_pulses);
      for (int k = 0; k < cfg.n_pulses; ++k) {
        Complex acc{};
        for (int n = 0; n < cfg.n_pulses; ++n) acc += x[n] * std::polar(1.0, -2.0 * std::numbers::pi * k * n / cfg.n_pulses);
        dft[k] = acc / static_cast<double>(cfg.n_pulses);
      }
      worst = std::max(worst, (viaConj - dft).cwiseAbs().maxCoeff());
    }
    out.push_back({"inverse DFT matches direct transform", worst <= 1e-12, "max abs diff " + sci(worst)});
  }

  {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Complex z = random_vector(1, gen)[0];
      const double t = std::abs(random_vector(1, gen)[0]);
      const Complex got = complex_soft_threshold(z, t);
      const Complex want = z * std::max(1.0 - t / std::abs(z), 0.0);
      worst = std::max(worst, std::abs(got - want));
    }
    out.push_back({"complex soft threshold", worst <= 1e-15, "max abs diff " + sci(worst)});
  }

  {
    RadarConfig small = cfg;
    small.l_bins = 4;
    const RangeProfile h = synthetic_sparse_target(small, 5, 11);
    const PulseSchedule sched = random_missing_schedule(small.n_pulses, 12, 12);
    const SensingSystem sys = build_sensing_system(small, shape, sched, build_trm(h, shape, sched));
    SolverOptions opts;
    opts.epsilon = EpsilonRule::explicit_value(1e-6 * sys.y.norm());
    const RecoveryResult r = solve_sparse_l1(sys, opts);
    const double err = rel_l2_error(h.values(), r.h_est);
    out.push_back({"noiseless sparse recovery", r.converged && err <= 1e-3, "rel error " + sci(err)});
  }

  {
    const double spacing = range_axis(cfg)[1] - range_axis(cfg)[0];
    out.push_back({"HRR cell spacing", std::abs(spacing - 0.29277) <= 1e-5, std::to_string(spacing) + " m"});
  }
  return out;
}

}  // namespace sfr
