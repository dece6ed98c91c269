#include "sfr/sensing.hpp"

#include <string>

#include "sfr/errors.hpp"

namespace sfr {

CVector projection_row(const RadarConfig& cfg, const PulseShape& shape, int c_m, double tau) {
  if (c_m < 0 || c_m >= cfg.n_pulses) {
    throw ConfigError("pulse index " + std::to_string(c_m) + " outside [0, " + std::to_string(cfg.n_pulses) + ")");
  }
  const Eigen::Index n_cells = cfg.profile_length();
  CVector row(n_cells);
  for (Eigen::Index p = 0; p < n_cells; ++p) {
    row[p] = pulse_shape_eval(shape, tau - static_cast<double>(p) * cfg.cell_delay()) *
             step_phase(c_m, p, cfg.n_pulses);
  }
  return row;
}

CVector vectorize(const Trm& trm) {
  return Eigen::Map<const CVector>(trm.data.data(), trm.data.size());
}

SensingSystem build_sensing_system(const RadarConfig& cfg, const PulseShape& shape, const PulseSchedule& schedule,
                                   const Trm& trm) {
  cfg.validate();
  shape.validate();
  if (schedule.n_pulses() != cfg.n_pulses) throw DimensionError("schedule and config disagree on N");
  const int m_rows = schedule.m_count();
  const int s_cols = cfg.samples_per_pulse();
  if (trm.rows() != m_rows || trm.cols() != s_cols) {
    throw DimensionError("TRM is " + std::to_string(trm.rows()) + "x" + std::to_string(trm.cols()) +
                         ", expected " + std::to_string(m_rows) + "x" + std::to_string(s_cols));
  }
  if (trm.row_pulse_indices != schedule.valid_indices()) {
    throw DimensionError("TRM row pulse indices do not match the schedule");
  }

  SensingSystem sys;
  const Eigen::Index n_obs = static_cast<Eigen::Index>(m_rows) * s_cols;
  const Eigen::Index n_cells = cfg.profile_length();
  sys.phi.resize(n_obs, n_cells);
  sys.row_keys.reserve(static_cast<std::size_t>(n_obs));
  for (int s = 0; s < s_cols; ++s) {
    // R_X factor is shared by every pulse of this sample.
    const double tau = s * cfg.delta_t;
    CVector shape_row(n_cells);
    for (Eigen::Index p = 0; p < n_cells; ++p) {
      shape_row[p] = pulse_shape_eval(shape, tau - static_cast<double>(p) * cfg.cell_delay());
    }
    for (int m = 0; m < m_rows; ++m) {
      const Eigen::Index r = static_cast<Eigen::Index>(s) * m_rows + m;
      for (Eigen::Index p = 0; p < n_cells; ++p) sys.phi(r, p) = shape_row[p] * step_phase(schedule[m], p, cfg.n_pulses);
      sys.row_keys.push_back({schedule[m], s});
    }
  }
  sys.y = vectorize(trm);
  sys.noise_sigma = trm.noise_sigma;
  sys.underdetermined = n_obs < n_cells;
  return sys;
}

}  // namespace sfr
