#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sfr/metrics.hpp"
#include "sfr/sensing.hpp"
#include "sfr/solvers.hpp"

namespace sfr {

struct TargetSpec {
  enum class Kind { SyntheticSparse, FromFile };
  Kind kind = Kind::SyntheticSparse;
  int n_scatterers = 24;
  std::string path;  // FromFile: profile CSV as written by export_profile()
};

/// One Monte Carlo study: every (missing count, SNR, trial) cell runs every solver
/// on the same target, schedule and noise draw.
struct ExperimentSpec {
  RadarConfig radar;
  PulseShape shape = PulseShape::ideal_sinc(24.0e6);
  TargetSpec target;
  std::vector<int> sweep{0, 4, 8, 12, 16, 20};
  std::vector<double> snr_db{15.0};  // +inf means noiseless
  int trials_per_point = 20;
  std::uint64_t seed = 1;
  std::vector<Method> solvers{Method::SparseL1, Method::LeastSquares};
  SolverOptions solver_opts;

  void validate() const;
};

struct TrialRecord {
  std::uint64_t seed = 0;  // child seed of this trial
  int missing_count = 0;
  double snr_db = 0.0;
  int trial = 0;
  Method method = Method::SparseL1;
  double similarity = 0.0;
  double rel_l2_error = 0.0;
  double peak_sidelobe_db = 0.0;
  double residual_l2 = 0.0;
  int iterations = 0;
  bool converged = false;
  std::uint64_t input_hash = 0;  // content hash of the measurements the method consumed
  double wall_time_s = 0.0;
};

/// Everything one trial's solvers see.
struct TrialData {
  RangeProfile truth;
  PulseSchedule schedule;
  Trm trm;
  SensingSystem sys;
};

/// Pure function of (seed, missing_count, trial).
std::uint64_t child_seed(std::uint64_t seed, int missing_count, int trial);

/// `n_scatterers` distinct cells, Rayleigh magnitudes with unit mean, uniform phases.
RangeProfile synthetic_sparse_target(const RadarConfig& cfg, int n_scatterers, std::uint64_t seed);

TrialData make_trial(const ExperimentSpec& spec, const RangeProfile* file_target, int missing_count, double snr_db,
                     int trial);

RecoveryResult run_method(Method method, const TrialData& data, const ExperimentSpec& spec);

/// Worker count: `threads` if positive, else hardware concurrency.
int resolve_thread_count(int threads);
/// SFR_THREADS from the environment (0 or unset means auto).
int threads_from_env();

/// Records sorted by (missing_count, snr_db, trial, method).
std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec, int threads = 0);

/// FNV-1a over the raw bytes of the samples.
std::uint64_t content_hash(const CVector& v);

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records, bool include_wall_time = true);

struct SweepSummary {
  int missing_count = 0;
  double snr_db = 0.0;
  Method method = Method::SparseL1;
  int trials = 0;
  double mean_similarity = 0.0;
  double mean_rel_l2_error = 0.0;
  double mean_peak_sidelobe_db = 0.0;
};

std::vector<SweepSummary> summarize(const std::vector<TrialRecord>& records);
void write_summary_csv(std::ostream& os, const std::vector<SweepSummary>& summary);

}  // namespace sfr
