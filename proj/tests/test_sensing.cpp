#include <doctest.h>

#include <cmath>
#include <random>

#include "sfr/errors.hpp"
#include "sfr/sensing.hpp"
#include "test_util.hpp"

using namespace sfr;

namespace {

const RadarConfig kCfg{};
const PulseShape kSinc = PulseShape::ideal_sinc(kCfg.pulse_bandwidth);

SensingSystem system_for(const RangeProfile& h, const PulseSchedule& sched) {
  return build_sensing_system(h.config(), kSinc, sched, build_trm(h, kSinc, sched));
}

}  // namespace

TEST_CASE("projection row examples") {
  RadarConfig one_bin = kCfg;
  one_bin.l_bins = 1;
  const CVector row = projection_row(one_bin, kSinc, 0, 0.0);
  REQUIRE(row.size() == 32);
  CHECK(row[0] == Complex(1.0, 0.0));
  // With c_m = 0 the row is just R_X(-p / (N delta_f)); no cell in one bin reaches the first null.
  for (int p = 1; p < 32; ++p) {
    CHECK(row[p].imag() == 0.0);
    CHECK(row[p].real() == doctest::Approx(pulse_shape_eval(kSinc, -p * one_bin.cell_delay()).real()));
  }

  // Nulls fall where p / (N delta_f) is a multiple of 1/B_p: with B_p = 2 delta_f, every 16 cells.
  RadarConfig aligned = kCfg;
  aligned.pulse_bandwidth = 2 * aligned.delta_f;
  aligned.delta_t = 1 / aligned.pulse_bandwidth;
  aligned.l_bins = 2;
  const PulseShape s2 = PulseShape::ideal_sinc(aligned.pulse_bandwidth);
  const CVector nulls = projection_row(aligned, s2, 0, 0.0);
  CHECK(std::abs(nulls[16]) < 1e-15);
  CHECK(std::abs(nulls[32]) < 1e-15);
  CHECK(std::abs(nulls[48]) < 1e-15);

  const CVector alt = projection_row(kCfg, kSinc, 16, 0.0);
  for (int p = 0; p < 64; ++p) {
    const double r = pulse_shape_eval(kSinc, -p * kCfg.cell_delay()).real();
    CHECK(std::abs(alt[p] - Complex(p % 2 == 0 ? r : -r, 0.0)) < 1e-15);
  }
  CHECK_THROWS_AS(projection_row(kCfg, kSinc, 32, 0.0), ConfigError);
}

TEST_CASE("projection row inner product reproduces the echo sum") {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> pulse(0, 31);
  std::uniform_real_distribution<double> tau(0.0, 17 * kCfg.delta_t);
  for (int trial = 0; trial < 100; ++trial) {
    const RangeProfile h(kCfg, testing::random_complex(kCfg.profile_length(), gen));
    const int c = pulse(gen);
    const double t = tau(gen);
    const Complex got = projection_row(kCfg, kSinc, c, t).transpose() * h.values();
    const auto want = testing::echo_oracle(kCfg, h.values(), kSinc.bandwidth, c, t);
    CHECK(std::abs(std::complex<long double>(got.real(), got.imag()) - want) <= 1e-12L * std::abs(want));
  }
}

TEST_CASE("sensing system shapes") {
  const RangeProfile zero(kCfg);
  const PulseSchedule sched = random_missing_schedule(32, 12, 2);
  const SensingSystem sys = system_for(zero, sched);
  CHECK(sys.phi.rows() == 360);
  CHECK(sys.phi.cols() == 384);
  CHECK(sys.y.size() == 360);
  CHECK(sys.y.isZero(0.0));
  CHECK(sys.underdetermined);
  CHECK(sys.noise_sigma == 0.0);

  const SensingSystem full = system_for(zero, PulseSchedule::full(32));
  CHECK(full.phi.rows() == 576);
  CHECK_FALSE(full.underdetermined);

  // Column-major over the TRM.
  for (Eigen::Index r = 0; r < sys.n_observations(); ++r) {
    CHECK(sys.row_keys[static_cast<std::size_t>(r)] == RowKey{sched[static_cast<int>(r % 20)], static_cast<int>(r / 20)});
  }
}

TEST_CASE("sensing system rejects mismatched inputs") {
  const RangeProfile zero(kCfg);
  const PulseSchedule sched = random_missing_schedule(32, 12, 2);
  const Trm trm = build_trm(zero, kSinc, sched);
  CHECK_THROWS_AS(build_sensing_system(kCfg, kSinc, PulseSchedule::full(32), trm), DimensionError);
  CHECK_THROWS_AS(build_sensing_system(kCfg, kSinc, random_missing_schedule(32, 12, 3), trm), DimensionError);
  RadarConfig shorter = kCfg;
  shorter.l_bins = 6;
  CHECK_THROWS_AS(build_sensing_system(shorter, kSinc, sched, trm), DimensionError);
}

TEST_CASE("Phi h equals the vectorized synthesized TRM") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 30; ++trial) {
    const RangeProfile h = testing::random_sparse_profile(kCfg, 24, gen);
    const PulseSchedule sched = random_missing_schedule(32, 12, 500 + trial);
    const SensingSystem sys = system_for(h, sched);
    CHECK((sys.phi * h.values() - sys.y).norm() <= 1e-12 * sys.y.norm());
  }
}

TEST_CASE("adjoint consistency") {
  std::mt19937_64 gen(12);
  const PulseSchedule sched = random_missing_schedule(32, 12, 12);
  const SensingSystem sys = system_for(RangeProfile(kCfg), sched);
  for (int trial = 0; trial < 20; ++trial) {
    const CVector h = testing::random_complex(sys.n_cells(), gen);
    const CVector y = testing::random_complex(sys.n_observations(), gen);
    const Complex lhs = y.dot(sys.phi * h);
    const Complex rhs = (sys.phi.adjoint() * y).dot(h);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
  }
}

TEST_CASE("no dead columns") {
  for (int missing : {0, 12, 20}) {
    const SensingSystem sys = system_for(RangeProfile(kCfg), random_missing_schedule(32, missing, 1));
    const Eigen::VectorXd norms = sys.phi.colwise().norm();
    CHECK(norms.allFinite());
    CHECK(norms.minCoeff() > 0.0);
  }
}

TEST_CASE("noise level is carried into the system") {
  std::mt19937_64 gen(13);
  const RangeProfile h = testing::random_sparse_profile(kCfg, 10, gen);
  const PulseSchedule sched = random_missing_schedule(32, 4, 13);
  const Trm trm = build_trm(h, kSinc, sched, NoiseModel{20.0, 9});
  const SensingSystem sys = build_sensing_system(kCfg, kSinc, sched, trm);
  CHECK(sys.noise_sigma == trm.noise_sigma);
  CHECK(sys.noise_sigma > 0.0);
  CHECK(sys.y == vectorize(trm));
}
