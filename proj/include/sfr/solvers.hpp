#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfr/sensing.hpp"

namespace sfr {

enum class Method { SparseL1, LeastSquares, StretchIdft };

std::string_view method_name(Method m);
/// Accepts the names produced by method_name(); throws ConfigError otherwise.
Method parse_method(std::string_view name);

/// How the data-fit radius epsilon of the l1 program is chosen.
struct EpsilonRule {
  enum class Kind { Explicit, FromNoise };
  Kind kind = Kind::FromNoise;
  double value = 1.1;  // epsilon itself (Explicit) or the factor on sigma*sqrt(M*S) (FromNoise)

  static EpsilonRule explicit_value(double eps) { return {Kind::Explicit, eps}; }
  static EpsilonRule from_noise(double factor = 1.1) { return {Kind::FromNoise, factor}; }
};

struct SolverOptions {
  int max_iters = 5000;  // per penalty value on the continuation path
  double rel_change_tol = 1e-6;
  EpsilonRule epsilon = EpsilonRule::from_noise();
  int lambda_path_steps = 8;
  /// Tikhonov weight for the LS baseline; unset means 1e-6 * ||Phi||_2^2.
  std::optional<double> ls_ridge;

  void validate() const;
};

struct RecoveryResult {
  CVector h_est;
  Method method = Method::SparseL1;
  double residual_l2 = 0.0;  // ||Y - Phi h_est||_2, recomputed on return
  int iterations = 0;
  bool converged = false;
  double epsilon_used = 0.0;  // SparseL1 only
  double lambda_used = 0.0;   // SparseL1: penalty of the returned point
  bool degraded = false;      // StretchIdft with zero-filled missing pulses
};

/// Multiplicative slack on epsilon when judging SparseL1 feasibility.
inline constexpr double kEpsilonSlack = 1e-3;

/// epsilon for `sys` under `opts.epsilon`. A FromNoise rule on a noiseless
/// system (sigma == 0) falls back to 1e-6 * ||Y||_2.
double resolve_epsilon(const SensingSystem& sys, const SolverOptions& opts);

/// Largest eigenvalue of Phi^H Phi by power iteration (at least 30 sweeps,
/// then until the estimate moves by less than 1e-6 relative).
double estimate_operator_norm_sq(const CMatrix& phi);

/// prox of t*|.| on C: shrinks the modulus by t and keeps the phase.
Complex complex_soft_threshold(Complex z, double t);

/// Minimizer of 0.5 ||Y - Phi h||^2 + lambda ||h||_1 by monotone FISTA.
struct PenalizedSolution {
  CVector h;
  int iterations = 0;
  bool converged = false;             // relative-change test met before max_iters
  std::vector<double> objective;      // objective after every iteration, if requested
};

PenalizedSolution solve_penalized_l1(const SensingSystem& sys, double lambda, const SolverOptions& opts,
                                     const CVector* warm_start = nullptr, bool record_objective = false);

/// min ||h||_1 s.t. ||Y - Phi h||_2 <= epsilon, via a warm-started penalty continuation.
RecoveryResult solve_sparse_l1(const SensingSystem& sys, const SolverOptions& opts);

/// argmin ||Y - Phi h||^2 + ridge ||h||^2.
RecoveryResult solve_least_squares(const SensingSystem& sys, const SolverOptions& opts);

/// Classical per-column IDFT. Missing pulses are zero-filled and flag the result degraded.
/// `shape` is only used to report the residual against the matching Phi.
RecoveryResult solve_stretch_idft(const Trm& trm, const RadarConfig& cfg, const PulseShape& shape);

/// x_q = (1/N) sum_n X_n exp(+j 2 pi n q / N).
CVector inverse_dft(const CVector& column);

/// Column of the TRM used for coarse bin `bin` by the stretch baseline:
/// the sample whose instant is nearest the bin center.
int stretch_column_for_bin(const RadarConfig& cfg, int bin);

}  // namespace sfr
