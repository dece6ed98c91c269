#pragma once

#include "sfr/echo_sim.hpp"

namespace sfr {

struct SimilarityReport {
  double similarity = 0.0;  // in [0, 1]
  double rel_l2_error = 0.0;
  double peak_sidelobe_db = 0.0;  // of the estimate
  int alignment_shift = 0;        // cells the estimate was shifted by
};

/// Floor reported by peak_sidelobe_db when no sidelobe energy exists.
inline constexpr double kSidelobeFloorDb = -300.0;
/// Mainlobe half-width used for the sidelobe figure inside SimilarityReport.
inline constexpr int kDefaultMainlobeHalfwidth = 1;

/// Largest zero-filled shift tried by similarity(): N*L/8 cells.
int similarity_shift_bound(Eigen::Index n_cells);

/// Best normalized cross-correlation of magnitude profiles over shifts in
/// [-NL/8, NL/8]; ties prefer the smallest |shift|, then the negative one.
SimilarityReport similarity(const RangeProfile& truth, const RangeProfile& estimate);
SimilarityReport similarity(const CVector& truth, const CVector& estimate);

/// ||h - h_est|| / ||h|| on complex values, no alignment.
double rel_l2_error(const CVector& truth, const CVector& estimate);

/// 20 log10(max |h| outside +-halfwidth of the peak / max |h|), floored at kSidelobeFloorDb.
double peak_sidelobe_db(const CVector& profile, int mainlobe_halfwidth);

}  // namespace sfr
