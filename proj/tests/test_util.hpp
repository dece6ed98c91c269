#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "sfr/echo_sim.hpp"

namespace sfr::testing {

inline CVector random_complex(Eigen::Index n, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(normal(gen), normal(gen));
  return v;
}

/// K-sparse profile with standard complex Gaussian amplitudes on distinct cells.
inline RangeProfile random_sparse_profile(const RadarConfig& cfg, int k, std::mt19937_64& gen) {
  RangeProfile h(cfg);
  std::uniform_int_distribution<int> cell(0, cfg.profile_length() - 1);
  std::normal_distribution<double> normal;
  int placed = 0;
  while (placed < k) {
    const int p = cell(gen);
    if (h.values()[p] != Complex{}) continue;
    h.values()[p] = Complex(normal(gen), normal(gen));
    ++placed;
  }
  return h;
}

/// Direct long-double evaluation of the echo sum for an ideal sinc pulse, with
/// the carrier phase formed from the unreduced product n*p.
inline std::complex<long double> echo_oracle(const RadarConfig& cfg, const CVector& h, double bandwidth, int n,
                                             double tau) {
  const long double pi = std::numbers::pi_v<long double>;
  std::complex<long double> acc{0, 0};
  for (Eigen::Index p = 0; p < h.size(); ++p) {
    const long double arg = static_cast<long double>(bandwidth) *
                            (static_cast<long double>(tau) - static_cast<long double>(p) /
                                                                 (static_cast<long double>(cfg.n_pulses) * cfg.delta_f));
    long double shape = 1.0L;
    if (arg != 0.0L) shape = std::sin(pi * arg) / (pi * arg);
    const long double phase = -2.0L * pi * static_cast<long double>(n) * static_cast<long double>(p) / cfg.n_pulses;
    const std::complex<long double> hp(h[p].real(), h[p].imag());
    acc += hp * shape * std::complex<long double>(std::cos(phase), std::sin(phase));
  }
  return acc;
}

}  // namespace sfr::testing
