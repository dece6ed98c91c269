#include "sfr/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "sfr/errors.hpp"

namespace sfr {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::SparseL1:
      return "sparse_l1";
    case Method::LeastSquares:
      return "least_squares";
    case Method::StretchIdft:
      return "stretch_idft";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::SparseL1, Method::LeastSquares, Method::StretchIdft}) {
    if (method_name(m) == name) return m;
  }
  throw ConfigError("unknown method '" + std::string(name) + "' (expected sparse_l1, least_squares or stretch_idft)");
}

void SolverOptions::validate() const {
  if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
  if (!(rel_change_tol > 0)) throw ConfigError("rel_change_tol must be > 0");
  if (lambda_path_steps < 1) throw ConfigError("lambda_path_steps must be >= 1");
  if (!(std::isfinite(epsilon.value) && epsilon.value >= 0)) throw ConfigError("epsilon rule value must be >= 0");
  if (ls_ridge && !(std::isfinite(*ls_ridge) && *ls_ridge > 0)) throw ConfigError("ls_ridge must be > 0");
}

namespace {

void require_finite(const SensingSystem& sys) {
  if (!sys.phi.allFinite() || !sys.y.allFinite()) throw InputError("sensing system contains non-finite values");
  if (sys.phi.rows() != sys.y.size()) throw DimensionError("Phi rows and Y length differ");
}

double residual_norm(const SensingSystem& sys, const CVector& h) { return (sys.y - sys.phi * h).norm(); }

/// Quadratic data in Gram form: 0.5||Y - Phi h||^2 = 0.5 (yy - 2 Re<b, h> + <h, G h>).
struct GramProblem {
  CMatrix gram;  // Phi^H Phi
  CVector b;     // Phi^H Y
  double yy = 0.0;
  double step = 0.0;

  explicit GramProblem(const SensingSystem& sys) {
    gram.noalias() = sys.phi.adjoint() * sys.phi;
    b.noalias() = sys.phi.adjoint() * sys.y;
    yy = sys.y.squaredNorm();
  }

  double objective(const CVector& h, const CVector& gh, double lambda) const {
    const double quad = 0.5 * (yy - 2.0 * b.dot(h).real() + h.dot(gh).real());
    return quad + lambda * h.cwiseAbs().sum();
  }
};

double power_iteration(const CMatrix& gram) {
  const Eigen::Index n = gram.cols();
  if (n == 0) return 0.0;
  std::mt19937_64 gen(0x5eed);
  std::normal_distribution<double> normal;
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(normal(gen), normal(gen));
  v.normalize();
  double estimate = 0.0;
  for (int it = 0; it < 1000; ++it) {
    CVector w = gram * v;
    const double next = v.dot(w).real();
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    v = w / wn;
    const bool settled = std::abs(next - estimate) <= 1e-6 * std::abs(next);
    estimate = next;
    if (it + 1 >= 30 && settled) break;
  }
  return estimate;
}

void soft_threshold_inplace(CVector& v, double t) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = complex_soft_threshold(v[i], t);
}

PenalizedSolution run_mfista(const GramProblem& prob, double lambda, const SolverOptions& opts, CVector x,
                             bool record_objective) {
  PenalizedSolution out;
  const double thresh = lambda * prob.step;
  CVector gx = prob.gram * x;
  double fx = prob.objective(x, gx, lambda);
  CVector y = x;
  CVector gy = gx;
  CVector z(x.size());
  CVector gz(x.size());
  double t = 1.0;

  for (int k = 0; k < opts.max_iters; ++k) {
    z = y - prob.step * (gy - prob.b);
    soft_threshold_inplace(z, thresh);
    gz.noalias() = prob.gram * z;
    const double fz = prob.objective(z, gz, lambda);
    ++out.iterations;

    // Rounding in the Gram-form objective is ~1e-16 * ||Y||^2; do not let it trigger restarts.
    if (fz <= fx + 1e-14 * (prob.yy + std::abs(fx))) {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      const double change = (z - x).norm() / std::max(z.norm(), 1e-12);
      const double beta = (t - 1.0) / t_next;
      // Accepted step: z is the new iterate and momentum carries on from it.
      y = z + beta * (z - x);
      gy = gz + beta * (gz - gx);
      x.swap(z);
      gx.swap(gz);
      fx = fz;
      t = t_next;
      if (record_objective) out.objective.push_back(fx);
      if (change < opts.rel_change_tol) {
        out.converged = true;
        break;
      }
    } else {
      // Objective went up: keep x and restart momentum from it.
      y = x;
      gy = gx;
      t = 1.0;
      if (record_objective) out.objective.push_back(fx);
    }
  }
  out.h = std::move(x);
  return out;
}

RecoveryResult zero_result(const SensingSystem& sys, Method method) {
  RecoveryResult r;
  r.method = method;
  r.h_est = CVector::Zero(sys.n_cells());
  r.residual_l2 = sys.y.norm();
  r.converged = true;
  return r;
}

}  // namespace

Complex complex_soft_threshold(Complex z, double t) {
  const double mag = std::abs(z);
  if (mag <= t) return {0.0, 0.0};
  return z * (1.0 - t / mag);
}

double estimate_operator_norm_sq(const CMatrix& phi) {
  const CMatrix gram = phi.adjoint() * phi;
  return power_iteration(gram);
}

double resolve_epsilon(const SensingSystem& sys, const SolverOptions& opts) {
  if (opts.epsilon.kind == EpsilonRule::Kind::Explicit) return opts.epsilon.value;
  if (sys.noise_sigma > 0.0) {
    return opts.epsilon.value * sys.noise_sigma * std::sqrt(static_cast<double>(sys.n_observations()));
  }
  return 1e-6 * sys.y.norm();
}

PenalizedSolution solve_penalized_l1(const SensingSystem& sys, double lambda, const SolverOptions& opts,
                                     const CVector* warm_start, bool record_objective) {
  opts.validate();
  require_finite(sys);
  if (!(lambda >= 0)) throw ConfigError("lambda must be >= 0");
  GramProblem prob(sys);
  const double lop = power_iteration(prob.gram);
  if (lop == 0.0) {
    PenalizedSolution zero;
    zero.h = CVector::Zero(sys.n_cells());
    zero.converged = true;
    return zero;
  }
  prob.step = 1.0 / (1.01 * lop);
  CVector x0 = warm_start ? *warm_start : CVector::Zero(sys.n_cells());
  if (x0.size() != sys.n_cells()) throw DimensionError("warm start has the wrong length");
  return run_mfista(prob, lambda, opts, std::move(x0), record_objective);
}

RecoveryResult solve_sparse_l1(const SensingSystem& sys, const SolverOptions& opts) {
  opts.validate();
  require_finite(sys);
  const double eps = resolve_epsilon(sys, opts);
  if (!std::isfinite(eps) || eps < 0) throw InputError("epsilon must be finite and nonnegative");

  GramProblem prob(sys);
  const double lambda_max = prob.b.cwiseAbs().maxCoeff();
  const double y_norm = std::sqrt(prob.yy);
  if (lambda_max == 0.0 || y_norm <= eps) {
    // h = 0 is feasible and has the smallest possible l1 norm.
    RecoveryResult r = zero_result(sys, Method::SparseL1);
    r.epsilon_used = eps;
    r.lambda_used = lambda_max;
    return r;
  }

  const double lop = power_iteration(prob.gram);
  prob.step = 1.0 / (1.01 * lop);
  const double max_col_norm = sys.phi.colwise().norm().maxCoeff();
  // For a nonzero penalized minimizer |Phi_p^H r| = lambda on its support, so
  // ||r|| >= lambda / max_p ||Phi_p||: no lambda above eps * max_col_norm can be feasible.
  const double lambda_hi = std::min(lambda_max, eps * max_col_norm);
  const double ratio = opts.lambda_path_steps > 1 ? std::pow(1e-4, 1.0 / (opts.lambda_path_steps - 1)) : 1.0;
  const double feasible_radius = eps * (1.0 + kEpsilonSlack);

  RecoveryResult best;
  best.method = Method::SparseL1;
  best.epsilon_used = eps;
  best.h_est = CVector::Zero(sys.n_cells());
  best.residual_l2 = y_norm;
  best.lambda_used = lambda_max;
  int total_iters = 0;

  CVector warm = CVector::Zero(sys.n_cells());
  double lambda_fail = lambda_hi;  // smallest penalty known (or bounded) to be infeasible
  std::optional<double> lambda_ok;
  CVector h_ok;

  for (int k = 0; k < opts.lambda_path_steps; ++k) {
    const double lambda = lambda_hi * std::pow(ratio, k);
    PenalizedSolution sol = run_mfista(prob, lambda, opts, warm, false);
    total_iters += sol.iterations;
    const double res = residual_norm(sys, sol.h);
    if (res <= feasible_radius) {
      lambda_ok = lambda;
      h_ok = sol.h;
      break;
    }
    if (res < best.residual_l2) {
      best.h_est = sol.h;
      best.residual_l2 = res;
      best.lambda_used = lambda;
    }
    lambda_fail = lambda;
    warm = std::move(sol.h);
  }

  if (!lambda_ok) {
    best.iterations = total_iters;
    best.converged = false;
    best.residual_l2 = residual_norm(sys, best.h_est);
    return best;
  }

  // Refine towards the largest feasible penalty (the constrained optimum sits on ||r|| = eps).
  constexpr int kRefineSteps = 6;
  if (lambda_fail > *lambda_ok) {
    double lo = *lambda_ok;
    double hi = lambda_fail;
    for (int i = 0; i < kRefineSteps; ++i) {
      const double mid = std::sqrt(lo * hi);
      PenalizedSolution sol = run_mfista(prob, mid, opts, h_ok, false);
      total_iters += sol.iterations;
      if (residual_norm(sys, sol.h) <= feasible_radius) {
        lo = mid;
        h_ok = std::move(sol.h);
      } else {
        hi = mid;
      }
    }
    lambda_ok = lo;
  }

  RecoveryResult r;
  r.method = Method::SparseL1;
  r.h_est = std::move(h_ok);
  r.residual_l2 = residual_norm(sys, r.h_est);
  r.iterations = total_iters;
  r.converged = true;
  r.epsilon_used = eps;
  r.lambda_used = *lambda_ok;
  return r;
}

RecoveryResult solve_least_squares(const SensingSystem& sys, const SolverOptions& opts) {
  opts.validate();
  require_finite(sys);
  GramProblem prob(sys);
  const double ridge = opts.ls_ridge ? *opts.ls_ridge : 1e-6 * power_iteration(prob.gram);
  if (!(ridge > 0)) {
    // Only possible for an all-zero Phi.
    return zero_result(sys, Method::LeastSquares);
  }
  CMatrix a = prob.gram;
  a.diagonal().array() += ridge;
  Eigen::LLT<CMatrix> llt(a);
  if (llt.info() != Eigen::Success) throw SolverError("regularized normal equations are not positive definite");
  CVector h = llt.solve(prob.b);
  // One step of iterative refinement.
  const CVector correction = llt.solve(prob.b - a * h);
  h += correction;
  if (!h.allFinite()) throw SolverError("least-squares solution is not finite");

  RecoveryResult r;
  r.method = Method::LeastSquares;
  r.h_est = std::move(h);
  r.residual_l2 = residual_norm(sys, r.h_est);
  r.iterations = 1;
  r.converged = true;
  return r;
}

CVector inverse_dft(const CVector& column) {
  const Eigen::Index n = column.size();
  CVector out = CVector::Zero(n);
  const int nn = static_cast<int>(n);
  for (Eigen::Index q = 0; q < n; ++q) {
    Complex acc{0.0, 0.0};
    // conj(exp(-j 2 pi n q / N)) = exp(+j 2 pi n q / N)
    for (Eigen::Index k = 0; k < n; ++k) acc += column[k] * std::conj(step_phase(k, q, nn));
    out[q] = acc / static_cast<double>(n);
  }
  return out;
}

int stretch_column_for_bin(const RadarConfig& cfg, int bin) {
  const double center = (bin + 0.5) / cfg.delta_f;
  const int s = static_cast<int>(std::lround(center / cfg.delta_t));
  return std::clamp(s, 0, cfg.samples_per_pulse() - 1);
}

RecoveryResult solve_stretch_idft(const Trm& trm, const RadarConfig& cfg, const PulseShape& shape) {
  cfg.validate();
  const int n = cfg.n_pulses;
  const int s_cols = cfg.samples_per_pulse();
  if (trm.cols() != s_cols || trm.rows() != static_cast<Eigen::Index>(trm.row_pulse_indices.size())) {
    throw DimensionError("TRM shape does not match the radar config");
  }
  const PulseSchedule schedule(n, trm.row_pulse_indices);

  CMatrix filled = CMatrix::Zero(n, s_cols);
  for (int m = 0; m < schedule.m_count(); ++m) filled.row(schedule[m]) = trm.data.row(m);

  RecoveryResult r;
  r.method = Method::StretchIdft;
  r.degraded = !schedule.is_full();
  r.h_est = CVector::Zero(cfg.profile_length());
  for (int l = 0; l < cfg.l_bins; ++l) {
    const CVector segment = inverse_dft(filled.col(stretch_column_for_bin(cfg, l)));
    r.h_est.segment(static_cast<Eigen::Index>(l) * n, n) = segment;
  }
  const SensingSystem sys = build_sensing_system(cfg, shape, schedule, trm);
  r.residual_l2 = residual_norm(sys, r.h_est);
  r.iterations = 1;
  r.converged = true;
  return r;
}

}  // namespace sfr
