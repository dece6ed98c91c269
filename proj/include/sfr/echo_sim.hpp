#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "sfr/radar_model.hpp"

namespace sfr {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Complex HRR profile h over the N*L fine cells of the extended gate.
class RangeProfile {
 public:
  /// Zero profile for `cfg`.
  explicit RangeProfile(const RadarConfig& cfg);
  /// Throws DimensionError unless values.size() == N*L.
  RangeProfile(const RadarConfig& cfg, CVector values);

  const RadarConfig& config() const { return cfg_; }
  const CVector& values() const { return values_; }
  CVector& values() { return values_; }
  Eigen::Index size() const { return values_.size(); }
  Complex operator[](Eigen::Index p) const { return values_[p]; }

  /// Count of cells with nonzero modulus.
  int sparsity() const;

 private:
  RadarConfig cfg_;
  CVector values_;
};

/// Valid-pulse indices C_0 < C_1 < ... < C_{M-1}, each in [0, N).
class PulseSchedule {
 public:
  /// Throws ConfigError if indices are unsorted, repeated, out of range or empty.
  PulseSchedule(int n_pulses, std::vector<int> valid_indices);

  static PulseSchedule full(int n_pulses);

  int n_pulses() const { return n_pulses_; }
  int m_count() const { return static_cast<int>(indices_.size()); }
  const std::vector<int>& valid_indices() const { return indices_; }
  int operator[](int m) const { return indices_[static_cast<std::size_t>(m)]; }
  bool is_full() const { return m_count() == n_pulses_; }

  friend bool operator==(const PulseSchedule&, const PulseSchedule&) = default;

 private:
  int n_pulses_;
  std::vector<int> indices_;
};

/// Target response matrix: one row per valid pulse, one column per fast-time sample.
struct Trm {
  CMatrix data;                      // M x S
  std::vector<int> row_pulse_indices;  // C_m per row
  std::vector<double> col_instants;    // s * dt, referenced to the gate start
  std::optional<double> snr_db;
  double noise_sigma = 0.0;  // per-sample complex noise std-dev, 0 when noiseless

  Eigen::Index rows() const { return data.rows(); }
  Eigen::Index cols() const { return data.cols(); }
};

/// Circular complex white Gaussian noise at `snr_db` relative to the mean
/// noiseless TRM power. Draws are keyed by (seed, C_m, s).
struct NoiseModel {
  double snr_db = 15.0;
  std::uint64_t seed = 0;
};

/// Noise-free E_n(tau) with tau measured from the gate start.
Complex synthesize_echo_sample(const RangeProfile& profile, const PulseShape& shape, int pulse_index,
                               double tau);

Trm build_trm(const RangeProfile& profile, const PulseShape& shape, const PulseSchedule& schedule,
              const std::optional<NoiseModel>& noise = std::nullopt);

/// Drops a uniformly chosen `n_missing`-subset of [0, N) and returns the rest.
PulseSchedule random_missing_schedule(int n_pulses, int n_missing, std::uint64_t seed);

/// Keeps only the rows of `trm` whose pulse index is in `schedule`.
Trm select_rows(const Trm& trm, const PulseSchedule& schedule);

/// Unit-variance circular complex Gaussian draw keyed by (seed, pulse, sample).
Complex keyed_unit_noise(std::uint64_t seed, int pulse_index, int sample_index);

/// SplitMix64 finalizer; used to derive independent streams from structured keys.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace sfr
