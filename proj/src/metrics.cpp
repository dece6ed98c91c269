#include "sfr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "sfr/errors.hpp"

namespace sfr {

namespace {

void require_same_length(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("profiles differ in length: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

/// sum_i a[i] * b[i - d] over the overlap.
double shifted_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int d) {
  const Eigen::Index n = a.size();
  const Eigen::Index lo = std::max<Eigen::Index>(0, d);
  const Eigen::Index hi = std::min<Eigen::Index>(n, n + d);
  if (hi <= lo) return 0.0;
  return a.segment(lo, hi - lo).dot(b.segment(lo - d, hi - lo));
}

}  // namespace

int similarity_shift_bound(Eigen::Index n_cells) { return static_cast<int>(n_cells / 8); }

SimilarityReport similarity(const RangeProfile& truth, const RangeProfile& estimate) {
  return similarity(truth.values(), estimate.values());
}

SimilarityReport similarity(const CVector& truth, const CVector& estimate) {
  require_same_length(truth, estimate);
  const Eigen::VectorXd a = truth.cwiseAbs();
  const Eigen::VectorXd b = estimate.cwiseAbs();
  const double na = a.norm();
  if (na == 0.0) throw InputError("similarity needs a nonzero truth profile");

  SimilarityReport rep;
  rep.rel_l2_error = rel_l2_error(truth, estimate);
  const double nb = b.norm();
  if (nb == 0.0) {
    rep.peak_sidelobe_db = kSidelobeFloorDb;
    return rep;
  }
  rep.peak_sidelobe_db = peak_sidelobe_db(estimate, kDefaultMainlobeHalfwidth);

  const int bound = similarity_shift_bound(a.size());
  double best = -1.0;
  int best_shift = 0;
  // Visit 0, -1, +1, -2, +2, ... so strict improvement keeps the documented tie order.
  for (int k = 0; k <= 2 * bound; ++k) {
    const int d = (k % 2 == 1) ? -(k + 1) / 2 : k / 2;
    const double v = shifted_dot(a, b, d);
    if (v > best) {
      best = v;
      best_shift = d;
    }
  }
  rep.similarity = std::clamp(best / (na * nb), 0.0, 1.0);
  rep.alignment_shift = best_shift;
  return rep;
}

double rel_l2_error(const CVector& truth, const CVector& estimate) {
  require_same_length(truth, estimate);
  const double nt = truth.norm();
  if (nt == 0.0) throw InputError("relative error needs a nonzero truth profile");
  return (truth - estimate).norm() / nt;
}

double peak_sidelobe_db(const CVector& profile, int mainlobe_halfwidth) {
  if (mainlobe_halfwidth < 0) throw ConfigError("mainlobe half-width must be >= 0");
  const Eigen::VectorXd mag = profile.cwiseAbs();
  Eigen::Index peak = 0;
  const double peak_val = mag.size() > 0 ? mag.maxCoeff(&peak) : 0.0;
  if (!(peak_val > 0.0)) throw InputError("peak sidelobe level of a zero profile is undefined");
  double side = 0.0;
  for (Eigen::Index i = 0; i < mag.size(); ++i) {
    if (std::abs(i - peak) > mainlobe_halfwidth) side = std::max(side, mag[i]);
  }
  if (side == 0.0) return kSidelobeFloorDb;
  return std::max(kSidelobeFloorDb, 20.0 * std::log10(side / peak_val));
}

}  // namespace sfr
