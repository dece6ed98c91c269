#include "sfr/radar_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sfr/errors.hpp"

namespace sfr {

void RadarConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("invalid radar config: ") + what);
  };
  require(std::isfinite(f_c), "f_c must be finite");
  require(std::isfinite(delta_f) && delta_f > 0, "delta_f must be > 0");
  require(n_pulses >= 2, "n_pulses must be >= 2");
  require(std::isfinite(pulse_bandwidth) && pulse_bandwidth > 0, "pulse_bandwidth must be > 0");
  require(std::isfinite(delta_t) && delta_t > 0, "delta_t must be > 0");
  require(q_start >= 0, "q_start must be >= 0");
  require(l_bins >= 1, "l_bins must be >= 1");
  require(std::isfinite(c_light) && c_light > 0, "c_light must be > 0");
  require(samples_per_pulse() >= 1, "gate must contain at least one fast-time sample");
}

int RadarConfig::samples_per_pulse() const {
  return static_cast<int>(std::lround(2.0 * gate_depth() / (c_light * delta_t)));
}

double carrier_frequency(const RadarConfig& cfg, int n) {
  if (n < 0 || n >= cfg.n_pulses) {
    throw ConfigError("pulse index " + std::to_string(n) + " outside [0, " +
                      std::to_string(cfg.n_pulses) + ")");
  }
  return cfg.f_c + n * cfg.delta_f;
}

std::vector<double> range_axis(const RadarConfig& cfg) {
  cfg.validate();
  const double r0 = cfg.range_gate_start();
  const double res = cfg.hrr_resolution();
  std::vector<double> axis(static_cast<std::size_t>(cfg.profile_length()));
  for (std::size_t p = 0; p < axis.size(); ++p) axis[p] = r0 + static_cast<double>(p) * res;
  return axis;
}

PulseShape PulseShape::ideal_sinc(double bandwidth) {
  PulseShape s;
  s.kind = Kind::IdealSinc;
  s.bandwidth = bandwidth;
  return s;
}

PulseShape PulseShape::windowed_sinc(double bandwidth, Window window, double truncation_halfwidth) {
  PulseShape s;
  s.kind = Kind::WindowedSinc;
  s.window = window;
  s.truncation_halfwidth = truncation_halfwidth;
  s.bandwidth = bandwidth;
  return s;
}

void PulseShape::validate() const {
  if (!(std::isfinite(bandwidth) && bandwidth > 0)) {
    throw ConfigError("pulse shape bandwidth must be > 0");
  }
  if (kind == Kind::WindowedSinc && !(std::isfinite(truncation_halfwidth) && truncation_halfwidth > 0)) {
    throw ConfigError("windowed sinc needs a positive truncation half-width");
  }
}

namespace {

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  // Exact nulls at nonzero integers; sin(k pi) in floating point is only ~1e-16.
  if (x == std::round(x)) return 0.0;
  return std::sin(px) / px;
}

double window_weight(Window w, double tau, double halfwidth) {
  const double arg = std::numbers::pi * tau / halfwidth;
  switch (w) {
    case Window::Hamming:
      return 0.54 + 0.46 * std::cos(arg);
    case Window::Hann:
      return 0.5 + 0.5 * std::cos(arg);
    case Window::Rect:
      return 1.0;
  }
  return 1.0;
}

}  // namespace

Complex pulse_shape_eval(const PulseShape& shape, double tau) {
  const double main = sinc(shape.bandwidth * tau);
  if (shape.kind == PulseShape::Kind::IdealSinc) return {main, 0.0};
  if (std::abs(tau) > shape.truncation_halfwidth) return {0.0, 0.0};
  return {main * window_weight(shape.window, tau, shape.truncation_halfwidth), 0.0};
}

Complex step_phase(long long n, long long p, int n_pulses) {
  long long k = (n * p) % n_pulses;
  if (k < 0) k += n_pulses;
  if (k == 0) return {1.0, 0.0};
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / n_pulses;
  return std::polar(1.0, angle);
}

}  // namespace sfr
