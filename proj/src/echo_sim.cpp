#include "sfr/echo_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "sfr/errors.hpp"

namespace sfr {

RangeProfile::RangeProfile(const RadarConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  values_ = CVector::Zero(cfg_.profile_length());
}

RangeProfile::RangeProfile(const RadarConfig& cfg, CVector values) : cfg_(cfg), values_(std::move(values)) {
  cfg_.validate();
  if (values_.size() != cfg_.profile_length()) {
    throw DimensionError("range profile has " + std::to_string(values_.size()) + " cells, expected N*L = " +
                         std::to_string(cfg_.profile_length()));
  }
}

int RangeProfile::sparsity() const {
  int k = 0;
  for (Eigen::Index p = 0; p < values_.size(); ++p) k += std::abs(values_[p]) > 0.0 ? 1 : 0;
  return k;
}

PulseSchedule::PulseSchedule(int n_pulses, std::vector<int> valid_indices)
    : n_pulses_(n_pulses), indices_(std::move(valid_indices)) {
  if (n_pulses_ < 1) throw ConfigError("pulse schedule needs n_pulses >= 1");
  if (indices_.empty()) throw ConfigError("pulse schedule must keep at least one pulse");
  if (static_cast<int>(indices_.size()) > n_pulses_) throw ConfigError("pulse schedule longer than N");
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    const int c = indices_[i];
    if (c < 0 || c >= n_pulses_) {
      throw ConfigError("pulse index " + std::to_string(c) + " outside [0, " + std::to_string(n_pulses_) + ")");
    }
    if (i > 0 && c <= indices_[i - 1]) throw ConfigError("pulse indices must be strictly increasing");
  }
}

PulseSchedule PulseSchedule::full(int n_pulses) {
  std::vector<int> idx(static_cast<std::size_t>(std::max(n_pulses, 0)));
  std::iota(idx.begin(), idx.end(), 0);
  return PulseSchedule(n_pulses, std::move(idx));
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Complex keyed_unit_noise(std::uint64_t seed, int pulse_index, int sample_index) {
  const std::uint64_t key =
      mix_seed(mix_seed(seed, static_cast<std::uint64_t>(pulse_index)), static_cast<std::uint64_t>(sample_index));
  std::mt19937_64 gen(key);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const double re = normal(gen);
  const double im = normal(gen);
  return {re, im};
}

Complex synthesize_echo_sample(const RangeProfile& profile, const PulseShape& shape, int pulse_index,
                               double tau) {
  const RadarConfig& cfg = profile.config();
  if (pulse_index < 0 || pulse_index >= cfg.n_pulses) {
    throw ConfigError("pulse index " + std::to_string(pulse_index) + " outside [0, " +
                      std::to_string(cfg.n_pulses) + ")");
  }
  const double cell = cfg.cell_delay();
  Complex acc{0.0, 0.0};
  for (Eigen::Index p = 0; p < profile.size(); ++p) {
    const Complex h = profile[p];
    if (h == Complex{}) continue;
    acc += h * pulse_shape_eval(shape, tau - static_cast<double>(p) * cell) *
           step_phase(pulse_index, p, cfg.n_pulses);
  }
  return acc;
}

Trm build_trm(const RangeProfile& profile, const PulseShape& shape, const PulseSchedule& schedule,
              const std::optional<NoiseModel>& noise) {
  const RadarConfig& cfg = profile.config();
  if (schedule.n_pulses() != cfg.n_pulses) {
    throw DimensionError("schedule is for N = " + std::to_string(schedule.n_pulses()) + " but profile has N = " +
                         std::to_string(cfg.n_pulses));
  }
  shape.validate();
  const int m_rows = schedule.m_count();
  const int s_cols = cfg.samples_per_pulse();

  Trm trm;
  trm.data = CMatrix::Zero(m_rows, s_cols);
  trm.row_pulse_indices = schedule.valid_indices();
  trm.col_instants.resize(static_cast<std::size_t>(s_cols));
  for (int s = 0; s < s_cols; ++s) trm.col_instants[static_cast<std::size_t>(s)] = s * cfg.delta_t;

  // The pulse-shape factor does not depend on the pulse, so tabulate it per (s, p).
  const Eigen::Index n_cells = profile.size();
  std::vector<Eigen::Index> support;
  for (Eigen::Index p = 0; p < n_cells; ++p) {
    if (profile[p] != Complex{}) support.push_back(p);
  }
  for (int s = 0; s < s_cols; ++s) {
    const double tau = trm.col_instants[static_cast<std::size_t>(s)];
    std::vector<Complex> weighted(support.size());
    for (std::size_t k = 0; k < support.size(); ++k) {
      const Eigen::Index p = support[k];
      weighted[k] = profile[p] * pulse_shape_eval(shape, tau - static_cast<double>(p) * cfg.cell_delay());
    }
    for (int m = 0; m < m_rows; ++m) {
      const int c_m = schedule[m];
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; k < support.size(); ++k) acc += weighted[k] * step_phase(c_m, support[k], cfg.n_pulses);
      trm.data(m, s) = acc;
    }
  }

  if (noise) {
    const double p_sig = trm.data.squaredNorm() / static_cast<double>(trm.data.size());
    const double sigma = std::sqrt(p_sig / std::pow(10.0, noise->snr_db / 10.0));
    for (int s = 0; s < s_cols; ++s) {
      for (int m = 0; m < m_rows; ++m) trm.data(m, s) += sigma * keyed_unit_noise(noise->seed, schedule[m], s);
    }
    trm.snr_db = noise->snr_db;
    trm.noise_sigma = sigma;
  }
  return trm;
}

PulseSchedule random_missing_schedule(int n_pulses, int n_missing, std::uint64_t seed) {
  if (n_pulses < 1) throw ConfigError("n_pulses must be >= 1");
  if (n_missing < 0 || n_missing >= n_pulses) {
    throw ConfigError("missing-pulse count " + std::to_string(n_missing) + " must lie in [0, " +
                      std::to_string(n_pulses) + ")");
  }
  std::vector<int> all(static_cast<std::size_t>(n_pulses));
  std::iota(all.begin(), all.end(), 0);
  std::mt19937_64 gen(seed);
  // Partial Fisher-Yates: the first n_missing slots become the dropped subset.
  for (int i = 0; i < n_missing; ++i) {
    std::uniform_int_distribution<int> pick(i, n_pulses - 1);
    std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(pick(gen))]);
  }
  std::vector<int> kept(all.begin() + n_missing, all.end());
  std::sort(kept.begin(), kept.end());
  return PulseSchedule(n_pulses, std::move(kept));
}

Trm select_rows(const Trm& trm, const PulseSchedule& schedule) {
  Trm out;
  out.data.resize(schedule.m_count(), trm.cols());
  out.col_instants = trm.col_instants;
  out.snr_db = trm.snr_db;
  out.noise_sigma = trm.noise_sigma;
  out.row_pulse_indices = schedule.valid_indices();
  for (int m = 0; m < schedule.m_count(); ++m) {
    const auto it = std::find(trm.row_pulse_indices.begin(), trm.row_pulse_indices.end(), schedule[m]);
    if (it == trm.row_pulse_indices.end()) {
      throw DimensionError("pulse " + std::to_string(schedule[m]) + " is not present in the TRM");
    }
    out.data.row(m) = trm.data.row(it - trm.row_pulse_indices.begin());
  }
  return out;
}

}  // namespace sfr
