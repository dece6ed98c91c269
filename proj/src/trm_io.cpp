#include "sfr/trm_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "sfr/errors.hpp"

namespace sfr {

namespace {

using Kind = FormatError::Kind;

std::string format_g(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

bool parse_int_field(const std::string& token, const std::string& key, long long& out) {
  if (token.rfind(key + "=", 0) != 0) return false;
  try {
    std::size_t used = 0;
    const std::string value = token.substr(key.size() + 1);
    out = std::stoll(value, &used);
    return used == value.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_double_field(const std::string& token, const std::string& key, double& out) {
  if (token.rfind(key + "=", 0) != 0) return false;
  try {
    std::size_t used = 0;
    const std::string value = token.substr(key.size() + 1);
    out = std::stod(value, &used);
    return used == value.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Splits "a,b" into two doubles; returns false on a malformed line.
bool parse_pair(const std::string& line, double& a, double& b) {
  const auto comma = line.find(',');
  if (comma == std::string::npos) return false;
  try {
    std::size_t ua = 0;
    std::size_t ub = 0;
    const std::string sa = trim(line.substr(0, comma));
    const std::string sb = trim(line.substr(comma + 1));
    a = std::stod(sa, &ua);
    b = std::stod(sb, &ub);
    return ua == sa.size() && ub == sb.size() && !sa.empty() && !sb.empty();
  } catch (const std::exception&) {
    return false;
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw FormatError(Kind::Io, "cannot open " + path.string() + " for writing");
  return os;
}

}  // namespace

void write_trm(std::ostream& os, const Trm& trm, double delta_t) {
  os << "SFRTRM v1 M=" << trm.rows() << " S=" << trm.cols() << " dt=" << format_g(delta_t, 17)
     << " order=row-major\n";
  for (Eigen::Index m = 0; m < trm.rows(); ++m) {
    for (Eigen::Index s = 0; s < trm.cols(); ++s) {
      const Complex v = trm.data(m, s);
      os << format_g(v.real(), 17) << ',' << format_g(v.imag(), 17) << '\n';
    }
  }
}

void write_trm_file(const std::filesystem::path& path, const Trm& trm, double delta_t) {
  std::ofstream os = open_out(path);
  write_trm(os, trm, delta_t);
  if (!os) throw FormatError(Kind::Io, "failed writing " + path.string());
}

Trm load_trm(std::istream& is, const RadarConfig& cfg, const PulseSchedule& schedule) {
  std::string header;
  if (!std::getline(is, header)) throw FormatError(Kind::MalformedHeader, "TRM file is empty");
  std::istringstream hs(trim(header));
  std::string magic, version, m_tok, s_tok, dt_tok, order_tok, extra;
  hs >> magic >> version >> m_tok >> s_tok >> dt_tok >> order_tok;
  long long m_rows = 0;
  long long s_cols = 0;
  double dt = 0.0;
  if (magic != "SFRTRM" || version != "v1" || !parse_int_field(m_tok, "M", m_rows) ||
      !parse_int_field(s_tok, "S", s_cols) || !parse_double_field(dt_tok, "dt", dt) || order_tok != "order=row-major" ||
      (hs >> extra) || m_rows < 1 || s_cols < 1 || !(dt > 0)) {
    throw FormatError(Kind::MalformedHeader, "malformed TRM header: '" + header + "'");
  }
  if (m_rows != schedule.m_count()) {
    throw FormatError(Kind::DimensionMismatch, "TRM header has M=" + std::to_string(m_rows) + " but the schedule keeps " +
                                                   std::to_string(schedule.m_count()) + " pulses");
  }
  if (s_cols != cfg.samples_per_pulse()) {
    throw FormatError(Kind::DimensionMismatch, "TRM header has S=" + std::to_string(s_cols) +
                                                   " but the radar config implies S=" +
                                                   std::to_string(cfg.samples_per_pulse()));
  }
  if (std::abs(dt - cfg.delta_t) > 1e-9 * cfg.delta_t) {
    throw FormatError(Kind::DimensionMismatch,
                      "TRM dt=" + format_g(dt, 12) + " differs from config delta_t=" + format_g(cfg.delta_t, 12));
  }

  const long long expected = m_rows * s_cols;
  Trm trm;
  trm.data.resize(m_rows, s_cols);
  long long found = 0;
  std::string line;
  long long line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    double re = 0.0;
    double im = 0.0;
    if (!parse_pair(t, re, im)) {
      throw FormatError(Kind::BadRecord, "line " + std::to_string(line_no) + ": expected 're,im', got '" + t + "'");
    }
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw FormatError(Kind::NonFiniteSample, "line " + std::to_string(line_no) + ": non-finite sample");
    }
    if (found < expected) trm.data(found / s_cols, found % s_cols) = Complex(re, im);
    ++found;
  }
  if (found != expected) {
    throw FormatError(Kind::DimensionMismatch, "TRM sample count mismatch: expected " + std::to_string(expected) +
                                                   " (M*S), found " + std::to_string(found));
  }
  trm.row_pulse_indices = schedule.valid_indices();
  trm.col_instants.resize(static_cast<std::size_t>(s_cols));
  for (long long s = 0; s < s_cols; ++s) trm.col_instants[static_cast<std::size_t>(s)] = s * cfg.delta_t;
  return trm;
}

Trm load_trm_file(const std::filesystem::path& path, const RadarConfig& cfg, const PulseSchedule& schedule) {
  std::ifstream is(path);
  if (!is) throw FormatError(Kind::Io, "cannot open TRM file " + path.string());
  return load_trm(is, cfg, schedule);
}

void export_profile(std::ostream& os, const CVector& profile, const std::vector<double>& axis) {
  if (static_cast<std::size_t>(profile.size()) != axis.size()) {
    throw DimensionError("profile has " + std::to_string(profile.size()) + " cells but the axis has " +
                         std::to_string(axis.size()));
  }
  os << "range_m,magnitude,phase_rad\n";
  for (Eigen::Index p = 0; p < profile.size(); ++p) {
    const Complex v = profile[p];
    os << format_g(axis[static_cast<std::size_t>(p)], 9) << ',' << format_g(std::abs(v), 9) << ','
       << format_g(std::arg(v), 9) << '\n';
  }
}

void export_profile(const CVector& profile, const std::vector<double>& axis, const std::filesystem::path& path) {
  std::ofstream os = open_out(path);
  export_profile(os, profile, axis);
  if (!os) throw FormatError(Kind::Io, "failed writing " + path.string());
}

void export_profile(const RecoveryResult& result, const std::vector<double>& axis, const std::filesystem::path& path) {
  export_profile(result.h_est, axis, path);
}

RangeProfile load_profile_csv(const std::filesystem::path& path, const RadarConfig& cfg) {
  std::ifstream is(path);
  if (!is) throw FormatError(Kind::Io, "cannot open profile file " + path.string());
  std::string line;
  if (!std::getline(is, line) || trim(line) != "range_m,magnitude,phase_rad") {
    throw FormatError(Kind::MalformedHeader, path.string() + ": expected header 'range_m,magnitude,phase_rad'");
  }
  std::vector<Complex> values;
  long long line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    std::istringstream ls(t);
    std::string f0, f1, f2;
    if (!std::getline(ls, f0, ',') || !std::getline(ls, f1, ',') || !std::getline(ls, f2)) {
      throw FormatError(Kind::BadRecord, path.string() + ":" + std::to_string(line_no) + ": expected three fields");
    }
    double mag = 0.0;
    double phase = 0.0;
    try {
      mag = std::stod(f1);
      phase = std::stod(f2);
    } catch (const std::exception&) {
      throw FormatError(Kind::BadRecord, path.string() + ":" + std::to_string(line_no) + ": unparsable number");
    }
    if (!std::isfinite(mag) || !std::isfinite(phase)) {
      throw FormatError(Kind::NonFiniteSample, path.string() + ":" + std::to_string(line_no) + ": non-finite value");
    }
    if (mag < 0) throw FormatError(Kind::BadRecord, path.string() + ":" + std::to_string(line_no) + ": negative magnitude");
    values.push_back(std::polar(mag, phase));
  }
  if (static_cast<long long>(values.size()) != cfg.profile_length()) {
    throw FormatError(Kind::DimensionMismatch, path.string() + ": expected " + std::to_string(cfg.profile_length()) +
                                                   " cells (N*L), found " + std::to_string(values.size()));
  }
  return RangeProfile(cfg, Eigen::Map<const CVector>(values.data(), static_cast<Eigen::Index>(values.size())));
}

}  // namespace sfr
