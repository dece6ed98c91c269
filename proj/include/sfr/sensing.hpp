#pragma once

#include <vector>

#include "sfr/echo_sim.hpp"

namespace sfr {

/// Identifies the TRM entry behind one observation: pulse C_m, fast-time sample s.
struct RowKey {
  int pulse = 0;
  int sample = 0;
  friend bool operator==(const RowKey&, const RowKey&) = default;
};

/// Y = Phi h + U over the surviving pulses.
///
/// Observations are stacked column-major over the TRM: every valid pulse of
/// sample 0 (in schedule order), then sample 1, and so on.
struct SensingSystem {
  CMatrix phi;  // (M*S) x (N*L)
  CVector y;    // M*S
  std::vector<RowKey> row_keys;
  double noise_sigma = 0.0;
  bool underdetermined = false;

  Eigen::Index n_observations() const { return phi.rows(); }
  Eigen::Index n_cells() const { return phi.cols(); }
};

/// phi(C_m, tau): element p is R_X(tau - p/(N delta_f)) exp(-j 2 pi C_m p / N).
CVector projection_row(const RadarConfig& cfg, const PulseShape& shape, int c_m, double tau);

SensingSystem build_sensing_system(const RadarConfig& cfg, const PulseShape& shape, const PulseSchedule& schedule,
                                   const Trm& trm);

/// vec() of the TRM in the same order as SensingSystem::row_keys.
CVector vectorize(const Trm& trm);

}  // namespace sfr
