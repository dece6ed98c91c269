#include <doctest.h>

#include <cmath>
#include <random>

#include "sfr/errors.hpp"
#include "sfr/metrics.hpp"
#include "sfr/solvers.hpp"
#include "test_util.hpp"

using namespace sfr;

namespace {

/// Exhaustive shift search written independently of the implementation.
double brute_force_similarity(const CVector& a, const CVector& b, int bound) {
  const int n = static_cast<int>(a.size());
  double na = 0;
  double nb = 0;
  for (int i = 0; i < n; ++i) {
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
  }
  double best = 0.0;
  for (int d = -bound; d <= bound; ++d) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const int j = i - d;
      if (j >= 0 && j < n) acc += std::abs(a[i]) * std::abs(b[j]);
    }
    best = std::max(best, acc);
  }
  return best / std::sqrt(na * nb);
}

}  // namespace

TEST_CASE("similarity examples") {
  const RadarConfig cfg;
  std::mt19937_64 gen(1);
  const RangeProfile h = testing::random_sparse_profile(cfg, 24, gen);

  const SimilarityReport self = similarity(h, h);
  CHECK(self.similarity == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(self.alignment_shift == 0);
  CHECK(self.rel_l2_error == 0.0);

  CHECK(similarity(h.values(), 3.7 * h.values()).similarity == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(similarity(h.values(), CVector::Zero(h.size())).similarity == 0.0);
  CHECK_THROWS_AS(similarity(CVector::Zero(10), CVector::Ones(10)), InputError);
  CHECK_THROWS_AS(similarity(CVector::Ones(10), CVector::Ones(11)), DimensionError);
  CHECK(similarity_shift_bound(384) == 48);
}

TEST_CASE("disjoint supports and the shift search") {
  const Eigen::Index n = 64;
  std::mt19937_64 gen(2);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    CVector even = CVector::Zero(n);
    CVector odd = CVector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Complex v(normal(gen), normal(gen));
      (i % 2 == 0 ? even : odd)[i] = v;
    }
    // At shift 0 the magnitude correlation vanishes.
    CHECK(even.cwiseAbs().dot(odd.cwiseAbs()) == 0.0);
    const SimilarityReport rep = similarity(even, odd);
    CHECK(rep.similarity == doctest::Approx(brute_force_similarity(even, odd, 8)).epsilon(1e-12));
    CHECK(rep.alignment_shift % 2 != 0);
  }
}

TEST_CASE("similarity properties") {
  const RadarConfig cfg;
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    const CVector a = testing::random_sparse_profile(cfg, 24, gen).values();
    const CVector b = testing::random_sparse_profile(cfg, 40, gen).values() + 0.1 * a;
    const double ab = similarity(a, b).similarity;
    CHECK(ab == doctest::Approx(similarity(b, a).similarity).epsilon(1e-12));
    CHECK(ab <= 1.0 + 1e-12);
    CHECK(ab >= 0.0);
    CHECK(ab == doctest::Approx(brute_force_similarity(a, b, 48)).epsilon(1e-12));

    const Complex c = std::polar(0.01 + trial, 0.37 * trial);
    CHECK(similarity(a, c * a).similarity == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("shifted copy is realigned") {
  const RadarConfig cfg;
  std::mt19937_64 gen(4);
  RangeProfile h(cfg);
  for (int p = 100; p < 140; p += 5) h.values()[p] = Complex(1.0 + p * 0.01, 0.5);
  CVector moved = CVector::Zero(h.size());
  moved.segment(107, 40) = h.values().segment(100, 40);
  const SimilarityReport rep = similarity(h.values(), moved);
  CHECK(rep.similarity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.alignment_shift == -7);
}

TEST_CASE("relative l2 error") {
  std::mt19937_64 gen(5);
  const CVector h = testing::random_complex(50, gen);
  CHECK(rel_l2_error(h, h) == 0.0);
  CHECK(rel_l2_error(h, CVector::Zero(50)) == doctest::Approx(1.0));
  CVector bumped = h;
  bumped[7] += h.norm();
  CHECK(rel_l2_error(h, bumped) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(rel_l2_error(CVector::Zero(3), h.head(3)), InputError);
}

TEST_CASE("peak sidelobe level") {
  CVector single = CVector::Zero(20);
  single[5] = Complex(0.0, 2.0);
  CHECK(peak_sidelobe_db(single, 1) == kSidelobeFloorDb);

  CVector twin = CVector::Zero(20);
  twin[3] = 1.0;
  twin[15] = Complex(0.0, -1.0);
  CHECK(peak_sidelobe_db(twin, 1) == doctest::Approx(0.0));

  CVector near = CVector::Zero(20);
  near[10] = 1.0;
  near[11] = 0.9;
  near[14] = 0.1;
  CHECK(peak_sidelobe_db(near, 1) == doctest::Approx(-20.0));
  CHECK(peak_sidelobe_db(near, 0) == doctest::Approx(20 * std::log10(0.9)));

  CHECK_THROWS_AS(peak_sidelobe_db(CVector::Zero(4), 1), InputError);
}

TEST_CASE("peak sidelobe of a zero-filled IDFT column") {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 10; ++trial) {
    const int tone = static_cast<int>(gen() % 32);
    const PulseSchedule sched = random_missing_schedule(32, 12, 40 + trial);
    CVector column = CVector::Zero(32);
    for (int n : sched.valid_indices()) column[n] = step_phase(n, tone, 32);
    const CVector profile = inverse_dft(column);

    // Brute-force scan of the magnitude sequence.
    int peak = 0;
    for (int q = 1; q < 32; ++q) {
      if (std::abs(profile[q]) > std::abs(profile[peak])) peak = q;
    }
    double side = 0.0;
    for (int q = 0; q < 32; ++q) {
      if (std::abs(q - peak) > 1) side = std::max(side, std::abs(profile[q]));
    }
    CHECK(peak == tone);
    CHECK(peak_sidelobe_db(profile, 1) == doctest::Approx(20 * std::log10(side / std::abs(profile[peak]))));
  }
}
