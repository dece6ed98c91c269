#pragma once

#include <filesystem>
#include <iosfwd>

#include "sfr/echo_sim.hpp"
#include "sfr/solvers.hpp"

namespace sfr {

/// Text TRM format:
///
///   SFRTRM v1 M=<int> S=<int> dt=<float> order=row-major
///   re,im            (M*S lines, row-major: all samples of row 0, then row 1, ...)
///
/// Samples are written with 17 significant digits so a reload is bit-exact.
void write_trm(std::ostream& os, const Trm& trm, double delta_t);
void write_trm_file(const std::filesystem::path& path, const Trm& trm, double delta_t);

/// Parses a TRM and checks it against `cfg` (S, dt) and `schedule` (M).
/// Each failure mode raises FormatError with its own kind.
Trm load_trm(std::istream& is, const RadarConfig& cfg, const PulseSchedule& schedule);
Trm load_trm_file(const std::filesystem::path& path, const RadarConfig& cfg, const PulseSchedule& schedule);

/// CSV with header `range_m,magnitude,phase_rad`, one row per fine cell, 9 significant digits.
void export_profile(std::ostream& os, const CVector& profile, const std::vector<double>& axis);
void export_profile(const RecoveryResult& result, const std::vector<double>& axis, const std::filesystem::path& path);
void export_profile(const CVector& profile, const std::vector<double>& axis, const std::filesystem::path& path);

/// Reads a profile written by export_profile() back as complex values.
RangeProfile load_profile_csv(const std::filesystem::path& path, const RadarConfig& cfg);

}  // namespace sfr
