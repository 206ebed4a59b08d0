#include <doctest.h>

#include <cmath>

#include "cohcorr/correlations.hpp"
#include "cohcorr/dephasing.hpp"
#include "cohcorr/errors.hpp"
#include "cohcorr/oracle.hpp"
#include "support/generators.hpp"

using namespace cohcorr;
using namespace cohcorr::testing;
using oracle::discord_by_measurement_search;

namespace {

const auto First = MeasurementSide::FirstQubit;
const auto Second = MeasurementSide::SecondQubit;

TwoQubitDensity bell_state() {
  Vec4c phi(1, 0, 0, 1);
  return TwoQubitDensity::pure(phi / std::sqrt(2.0));
}

}  // namespace

TEST_CASE("measurement basis") {
  CHECK_NOTHROW(oracle::MeasurementBasis(Vec3(0, 0, 1)));
  CHECK_THROWS_AS(oracle::MeasurementBasis(Vec3(0, 0, 1.001)), DomainError);
  CHECK_THROWS_AS(oracle::MeasurementBasis::along(Vec3::Zero()), DomainError);
  const auto b = oracle::MeasurementBasis::along(Vec3(1, 1, 0));
  CHECK(std::abs(b.axis().norm() - 1) < 1e-15);
  const Eigen::Matrix2cd sum = b.projector(+1) + b.projector(-1);
  CHECK((sum - Eigen::Matrix2cd::Identity()).norm() < 1e-15);
  CHECK((b.projector(+1) * b.projector(+1) - b.projector(+1)).norm() < 1e-15);
}

TEST_CASE("Fibonacci grid lies on the sphere") {
  const auto pts = oracle::fibonacci_sphere(512);
  CHECK(pts.size() == 512);
  for (const auto& v : pts) CHECK(std::abs(v.norm() - 1) < 1e-14);
}

TEST_CASE("Gram-path pair density") {
  const auto bell = oracle::pair_density_from_overlaps(SuperpositionSpec({0.0, 0.0}, Parity::Even), 0, 1);
  CHECK((bell.matrix() - bell_state().matrix()).cwiseAbs().maxCoeff() < 1e-15);

  const SuperpositionSpec s3({0.5, 0.5, 0.5}, Parity::Even);
  CHECK((oracle::pair_density_from_overlaps(s3, 0, 1).matrix() - reduced_pair_density(s3, 0, 1).matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  Rng rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const auto spec = random_spec(rng, 2, 9);
    std::uniform_int_distribution<std::size_t> pick(0, spec.modes() - 1);
    std::size_t i = pick(rng), j = pick(rng);
    while (j == i) j = pick(rng);
    const Mat4c diff = oracle::pair_density_from_overlaps(spec, i, j).matrix() - reduced_pair_density(spec, i, j).matrix();
    CHECK(diff.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("measurement search examples") {
  CHECK(discord_by_measurement_search(TwoQubitDensity::maximally_mixed(), First).discord == doctest::Approx(0.0));
  for (const auto& e : oracle::fibonacci_sphere(32))
    CHECK(oracle::measurement_distance(TwoQubitDensity::maximally_mixed(), First, oracle::MeasurementBasis(e)) <
          1e-30);
  CHECK(discord_by_measurement_search(bell_state(), First).discord == doctest::Approx(0.5).epsilon(1e-12));
  const auto rho = reduced_pair_density(SuperpositionSpec({0.5, 0.5, 0.5}, Parity::Even), 0, 1);
  CHECK(std::abs(discord_by_measurement_search(rho, First).discord - 0.138889) < 1e-6);
  CHECK(std::abs(discord_by_measurement_search(rho, First).discord - 5.0 / 36.0) < 1e-8);
  CHECK_THROWS_AS(discord_by_measurement_search(rho, First, {15, 1e-8}), DomainError);
}

TEST_CASE("measurement search agrees with the K eigensolve") {
  Rng rng(14);
  for (int trial = 0; trial < 60; ++trial) {
    const auto rho = random_density(rng, 1 + trial % 4);
    for (auto side : {First, Second}) {
      const double search = discord_by_measurement_search(rho, side).discord;
      CHECK(std::abs(search - geometric_discord_numeric(rho, side).discord) < 1e-8);
    }
  }
}

TEST_CASE("measurement search is invariant under local unitaries") {
  Rng rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const auto rho = random_density(rng);
    const auto rotated = locally_rotated(rho, random_unitary2(rng), random_unitary2(rng));
    CHECK(std::abs(discord_by_measurement_search(rho, First).discord -
                   discord_by_measurement_search(rotated, First).discord) < 1e-8);
  }
}

TEST_CASE("refined minimum does not increase as the grid doubles") {
  Rng rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = random_density(rng);
    double prev = 1.0;
    for (int steps = 16; steps <= 1024; steps *= 2) {
      const double d = discord_by_measurement_search(rho, Second, {steps, 1e-8}).discord;
      CHECK(d <= prev + 1e-9);
      prev = d;
    }
  }
}

TEST_CASE("search is deterministic") {
  Rng rng(18);
  const auto rho = random_density(rng);
  const auto a = discord_by_measurement_search(rho, First);
  const auto b = discord_by_measurement_search(rho, First);
  CHECK(a.discord == b.discord);
  CHECK(a.axis == b.axis);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("X-shaped states are optimised along a coordinate axis") {
  Rng rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const auto spec = random_spec(rng, 2, 7);
    std::uniform_real_distribution<double> gd(0.0, 1.0);
    const auto rho = apply_dephasing(reduced_pair_density(spec, 0, 1), gd(rng));
    for (auto side : {First, Second}) {
      const auto axes = oracle::axis_distances(rho, side);
      const double best_axis = std::min({axes[0], axes[1], axes[2]});
      CHECK(std::abs(best_axis - geometric_discord_numeric(rho, side).discord) < 1e-12);
      CHECK(discord_by_measurement_search(rho, side).discord >= best_axis - 1e-9);
    }
  }
}

TEST_CASE("null state is rejected before either path runs") {
  CHECK_THROWS_AS(SuperpositionSpec({1.0, 1.0, 1.0}, Parity::Odd), DivergentNormalization);
}
