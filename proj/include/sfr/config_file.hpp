#pragma once

#include <filesystem>
#include <iosfwd>

#include "sfr/experiment.hpp"

namespace sfr {

/// Reads an INI-style experiment file. Every key is optional and falls back to
/// the ExperimentSpec defaults; unknown sections or keys are ConfigErrors.
///
///   [radar]      f_c delta_f n_pulses pulse_bandwidth delta_t q_start l_bins c_light
///   [pulse]      shape=ideal_sinc|windowed_sinc window=hamming|hann|rect truncation_halfwidth bandwidth
///   [target]     kind=synthetic_sparse|file n_scatterers path
///   [experiment] sweep snr_db trials_per_point seed solvers      (lists are comma separated)
///   [solver]     max_iters rel_change_tol epsilon_rule=from_noise|explicit epsilon_factor epsilon
///                lambda_path_steps ls_ridge
///
/// delta_t defaults to 1/pulse_bandwidth and the pulse bandwidth to the radar's.
ExperimentSpec parse_experiment_spec(std::istream& is);
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

}  // namespace sfr
