#pragma once

#include <complex>
#include <vector>

namespace sfr {

using Complex = std::complex<double>;

inline constexpr double kSpeedOfLight = 299'792'458.0;

/// Stepped-frequency waveform and range-gate geometry.
///
/// Pulse n is transmitted on carrier f_c + n * delta_f. The extended range gate
/// starts at R0 = c * Q / (2 delta_f) and spans L coarse range bins, each of
/// extent c / (2 delta_f). The defaults reproduce the 32-pulse, 16 MHz step,
/// 24 MHz pulse-bandwidth, 12-bin setup used throughout the simulations.
struct RadarConfig {
  double f_c = 5.0e9;
  double delta_f = 16.0e6;
  int n_pulses = 32;
  double pulse_bandwidth = 24.0e6;
  double delta_t = 1.0 / 24.0e6;
  int q_start = 0;
  int l_bins = 12;
  double c_light = kSpeedOfLight;

  /// Throws ConfigError when any invariant is violated.
  void validate() const;

  double coarse_bin_extent() const { return c_light / (2.0 * delta_f); }
  /// Fine-cell width; coarse_bin_extent() / N by construction.
  double hrr_resolution() const { return coarse_bin_extent() / n_pulses; }
  double range_gate_start() const { return q_start * coarse_bin_extent(); }
  double gate_depth() const { return l_bins * coarse_bin_extent(); }
  /// Fine-cell delay spacing 1 / (N delta_f), seconds.
  double cell_delay() const { return 1.0 / (n_pulses * delta_f); }
  /// N * L, the length of an HRR profile.
  int profile_length() const { return n_pulses * l_bins; }
  /// S = round(2D / (c dt)): fast-time samples per pulse across the gate.
  int samples_per_pulse() const;
};

/// f_c + n * delta_f. Throws ConfigError unless 0 <= n < N.
double carrier_frequency(const RadarConfig& cfg, int n);

/// Range of every fine cell: element p is R0 + p * c / (2 N delta_f).
std::vector<double> range_axis(const RadarConfig& cfg);

enum class Window { Hamming, Hann, Rect };

/// Compressed (matched-filter output) baseband pulse R_X.
struct PulseShape {
  enum class Kind { IdealSinc, WindowedSinc };

  Kind kind = Kind::IdealSinc;
  Window window = Window::Rect;
  double truncation_halfwidth = 0.0;  // seconds, WindowedSinc only
  double bandwidth = 24.0e6;

  static PulseShape ideal_sinc(double bandwidth);
  static PulseShape windowed_sinc(double bandwidth, Window window, double truncation_halfwidth);

  void validate() const;
};

/// R_X(tau). Real valued and even, so Hermitian symmetric with peak 1 at tau = 0.
Complex pulse_shape_eval(const PulseShape& shape, double tau);

/// exp(-j 2 pi n p / N), with n * p reduced modulo N before the angle is formed.
Complex step_phase(long long n, long long p, int n_pulses);

}  // namespace sfr
