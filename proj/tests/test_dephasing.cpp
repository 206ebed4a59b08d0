#include <doctest.h>

#include <cmath>
#include <variant>

#include "cohcorr/dephasing.hpp"
#include "cohcorr/errors.hpp"
#include "support/generators.hpp"

using namespace cohcorr;
using namespace cohcorr::testing;

namespace {

double max_abs_diff(const Mat4c& a, const Mat4c& b) { return (a - b).cwiseAbs().maxCoeff(); }

TwoQubitDensity bell_state() {
  Vec4c phi(1, 0, 0, 1);
  return TwoQubitDensity::pure(phi / std::sqrt(2.0));
}

// A spec with 0 < q < 1 for pair (0, 1).
SuperpositionSpec random_dying_spec(Rng& rng) {
  for (;;) {
    auto spec = random_spec(rng, 3, 8);
    const double q = spec.environment_overlap(0, 1);
    if (q > 0.0 && q < 1.0 && concurrence_pair_closed(spec, 0, 1) > 0.0) return spec;
  }
}

// sum_{mu,nu} (E_mu (x) E_nu) rho (E_mu (x) E_nu)^dagger, written out literally.
Mat4c kraus_sum(const Mat4c& rho, double gamma) {
  const auto k = kraus_ops(gamma);
  const Eigen::Matrix2cd ops[2] = {k.e0.cast<cplx>(), k.e1.cast<cplx>()};
  Mat4c out = Mat4c::Zero();
  for (const auto& a : ops)
    for (const auto& b : ops) {
      const Mat4c e = kron2(a, b);
      out += e * rho * e.adjoint();
    }
  return out;
}

}  // namespace

TEST_CASE("dephasing parameters") {
  CHECK(DephasingParams(1.0, 0.0).gamma() == 0.0);
  CHECK(DephasingParams(2.0, 0.5).gamma() == doctest::Approx(1 - std::exp(-1.0)));
  CHECK(DephasingParams(2.0, 0.5).survival() == doctest::Approx(std::exp(-1.0)));
  double prev = -1;
  for (double t = 0; t < 50; t += 0.25) {
    const double g = DephasingParams(0.7, t).gamma();
    CHECK(g >= 0.0);
    CHECK(g < 1.0);
    CHECK(g >= prev);
    prev = g;
  }
  CHECK_THROWS_AS(DephasingParams(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(DephasingParams(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(DephasingParams(1.0, -0.1), DomainError);
  CHECK_THROWS_AS(DephasingParams(1.0, INFINITY), DomainError);
}

TEST_CASE("Kraus operators") {
  const auto id = kraus_ops(0.0);
  CHECK(id.e0.isIdentity(0.0));
  CHECK(id.e1.isZero(0.0));
  const auto full = kraus_ops(1.0);
  CHECK(full.e0 == Eigen::Vector2d(1, 0).asDiagonal().toDenseMatrix());
  CHECK(full.e1 == Eigen::Vector2d(0, 1).asDiagonal().toDenseMatrix());
  const auto q = kraus_ops(0.75);
  CHECK(q.e0(0, 0) == 1.0);
  CHECK(q.e0(1, 1) == doctest::Approx(0.5).epsilon(1e-15));
  for (double g = 0; g <= 1.0; g += 0.01) {
    const auto k = kraus_ops(g);
    const Eigen::Matrix2d sum = k.e0.transpose() * k.e0 + k.e1.transpose() * k.e1;
    CHECK((sum - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
  }
  CHECK_THROWS_AS(kraus_ops(-0.01), DomainError);
  CHECK_THROWS_AS(kraus_ops(1.01), DomainError);
}

TEST_CASE("channel examples") {
  Rng rng(1);
  const auto rho = random_density(rng);
  CHECK(max_abs_diff(apply_dephasing(rho, 0.0).matrix(), rho.matrix()) == 0.0);

  Mat4c expected = Mat4c::Zero();
  expected(0, 0) = expected(3, 3) = 0.5;
  CHECK(max_abs_diff(apply_dephasing(bell_state(), 1.0).matrix(), expected) < 1e-15);

  const auto pair = reduced_pair_density(SuperpositionSpec({0.5, 0.5, 0.5}, Parity::Even), 0, 1);
  const auto out = apply_dephasing(pair, 0.5);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const cplx want = r == c ? pair(r, c) : 0.5 * pair(r, c);
      CHECK(std::abs(out(r, c) - want) < 1e-15);
    }
  const auto b0 = bloch_decompose(pair);
  const auto bt = bloch_decompose(out);
  CHECK(std::abs(bt.R(0, 0) - 0.5 * b0.R(0, 0)) < 1e-12);
  CHECK(std::abs(bt.R(1, 1) - 0.5 * b0.R(1, 1)) < 1e-12);
  CHECK(std::abs(bt.R(2, 2) - b0.R(2, 2)) < 1e-12);
}

TEST_CASE("channel equals the literal Kraus sum") {
  Rng rng(22);
  std::uniform_real_distribution<double> gd(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = random_density(rng, 1 + trial % 4);
    const double g = trial == 0 ? 0.0 : trial == 1 ? 1.0 : gd(rng);
    CHECK(max_abs_diff(apply_dephasing(rho, g).matrix(), kraus_sum(rho.matrix(), g)) < 1e-15);
  }
}

TEST_CASE("Kraus sum equals Bloch-space scaling") {
  Rng rng(2);
  std::uniform_real_distribution<double> gd(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = random_density(rng, 1 + trial % 4);
    const double g = gd(rng);
    const Mat4c via_bloch = bloch_reconstruct(dephase_bloch(bloch_decompose(rho), g));
    CHECK(max_abs_diff(apply_dephasing(rho, g).matrix(), via_bloch) < 1e-12);
  }
}

TEST_CASE("channel laws on random densities") {
  Rng rng(3);
  std::uniform_real_distribution<double> gd(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = random_density(rng, 1 + trial % 4);
    const double g1 = gd(rng), g2 = gd(rng);
    const auto out = apply_dephasing(rho, g1);
    CHECK(std::abs(out.matrix().trace() - cplx(1.0)) < 1e-12);
    CHECK(max_abs_diff(out.matrix(), out.matrix().adjoint()) == 0.0);
    CHECK(eig_herm(out.matrix()).values.minCoeff() >= -1e-12);
    for (int d = 0; d < 4; ++d) CHECK(out(d, d) == rho(d, d));

    const auto twice = apply_dephasing(out, g2);
    const auto once = apply_dephasing(rho, 1 - (1 - g1) * (1 - g2));
    CHECK(max_abs_diff(twice.matrix(), once.matrix()) < 1e-12);
  }
}

TEST_CASE("coherences scale as (1 - gamma) and sqrt(1 - gamma)") {
  Rng rng(4);
  const auto rho = random_density(rng);
  const double g = 0.36;
  const auto out = apply_dephasing(rho, g);
  CHECK(std::abs(out(0, 3) - 0.64 * rho(0, 3)) < 1e-15);
  CHECK(std::abs(out(1, 2) - 0.64 * rho(1, 2)) < 1e-15);
  CHECK(std::abs(out(0, 1) - 0.8 * rho(0, 1)) < 1e-15);
  CHECK(std::abs(out(0, 2) - 0.8 * rho(0, 2)) < 1e-15);
}

TEST_CASE("concurrence trajectory") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto spec = random_spec(rng, 2, 7);
    std::uniform_real_distribution<double> td(0.0, 3.0);
    const DephasingParams params(0.5 + td(rng), td(rng));
    const auto rho = reduced_pair_density(spec, 0, 1);
    const double closed = concurrence_trajectory(spec, 0, 1, params);
    const double numeric = concurrence_mixed(apply_dephasing(rho, params.gamma()));
    CHECK(std::abs(closed - numeric) < 1e-10);
    CHECK(concurrence_trajectory(spec, 0, 1, DephasingParams(1.0, 0.0)) ==
          doctest::Approx(concurrence_pair_closed(spec, 0, 1)).epsilon(1e-14));
  }

  const SuperpositionSpec no_env({0.3, 0.6, 0.0}, Parity::Even);
  for (double t : {0.0, 0.1, 1.0, 10.0}) CHECK(concurrence_trajectory(no_env, 0, 1, DephasingParams(1.0, t)) == 0.0);

  const SuperpositionSpec s4({0.5, 0.5, 0.5, 0.5}, Parity::Even);
  const double t0 = std::get<double>(sudden_death_time(s4, 0, 1, 1.0));
  CHECK(t0 == doctest::Approx(std::log(5.0 / 3.0)).epsilon(1e-14));
  CHECK(t0 == doctest::Approx(0.5108).epsilon(1e-4));
  CHECK(concurrence_trajectory(s4, 0, 1, DephasingParams(1.0, t0 / 2)) > 0.0);
  CHECK(concurrence_trajectory(s4, 0, 1, DephasingParams(1.0, 2 * t0)) == 0.0);
  CHECK(concurrence_mixed(apply_dephasing(reduced_pair_density(s4, 0, 1), DephasingParams(1.0, t0 / 2).gamma())) > 0.0);
  CHECK(concurrence_mixed(apply_dephasing(reduced_pair_density(s4, 0, 1), DephasingParams(1.0, 2 * t0).gamma())) == 0.0);
}

TEST_CASE("sudden-death time") {
  const SuperpositionSpec half({0.3, 0.4, 0.5}, Parity::Even);
  CHECK(std::get<double>(sudden_death_time(half, 0, 1, 1.0)) == doctest::Approx(1.098612).epsilon(1e-6));
  CHECK(std::get<double>(sudden_death_time(half, 0, 1, 2.0)) == doctest::Approx(std::log(3.0) / 2).epsilon(1e-14));
  CHECK(std::get<double>(sudden_death_time(SuperpositionSpec({0.3, 0.4, 0.0}, Parity::Odd), 0, 1, 1.0)) == 0.0);
  CHECK(std::holds_alternative<NeverDies>(sudden_death_time(SuperpositionSpec({0.5, 0.5}, Parity::Even), 0, 1, 1.0)));
  CHECK(std::holds_alternative<NeverDies>(
      sudden_death_time(SuperpositionSpec({0.5, 0.5, 1.0, 1.0}, Parity::Odd), 0, 1, 1.0)));
  CHECK_THROWS_AS(sudden_death_time(half, 0, 1, 0.0), DomainError);
}

TEST_CASE("sudden-death bracketing") {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto spec = random_dying_spec(rng);
    const double rate = 0.5 + trial / 50.0;
    const double t0 = std::get<double>(sudden_death_time(spec, 0, 1, rate));
    REQUIRE(t0 > 0.0);
    const auto rho = reduced_pair_density(spec, 0, 1);
    const auto before = apply_dephasing(rho, DephasingParams(rate, t0 * (1 - 1e-3)).gamma());
    const auto after = apply_dephasing(rho, DephasingParams(rate, t0 * (1 + 1e-3)).gamma());
    CHECK(concurrence_mixed(before) > 0.0);
    CHECK(concurrence_mixed(after) <= 1e-12);
  }
}

TEST_CASE("discord trajectory") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto spec = random_spec(rng, 2, 7);
    std::uniform_real_distribution<double> td(0.0, 4.0);
    const DephasingParams params(0.25 + td(rng), td(rng));
    for (auto side : {MeasurementSide::FirstQubit, MeasurementSide::SecondQubit}) {
      const auto closed = discord_trajectory(spec, 0, 1, params, side);
      const auto numeric =
          geometric_discord_numeric(apply_dephasing(reduced_pair_density(spec, 0, 1), params.gamma()), side);
      CHECK(std::abs(closed.discord - numeric.discord) < 1e-10);
      CHECK(std::abs(closed.concurrence - numeric.concurrence) < 1e-10);
      const auto at0 = discord_trajectory(spec, 0, 1, DephasingParams(1.0, 0.0), side);
      CHECK(at0.discord == doctest::Approx(mixed_discord_closed(spec, 0, 1, side).discord).epsilon(1e-14));
    }
  }
}

TEST_CASE("discord persists while entanglement dies") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto spec = random_spec(rng, 3, 7, 0.01, 0.99);
    const double rate = 1.0;
    for (double t : {0.5, 1.0, 10.0, 50.0, 100.0})
      CHECK(discord_trajectory(spec, 0, 1, DephasingParams(rate, t)).discord > 0.0);
    const double t0 = std::get<double>(sudden_death_time(spec, 0, 1, rate));
    CHECK(concurrence_trajectory(spec, 0, 1, DephasingParams(rate, 2 * t0)) == 0.0);
  }
}

TEST_CASE("pure pair: concurrence decays as e^{-rate t}, discord as e^{-2 rate t}") {
  const SuperpositionSpec spec({0.5, 0.5}, Parity::Even);
  const auto split = pure_split(spec, 1);
  const double c0 = concurrence_pure(spec, 1);
  for (double t : {0.1, 0.5, 1.0, 3.0}) {
    const DephasingParams params(1.0, t);
    const double c = concurrence_trajectory(spec, 0, 1, params);
    CHECK(c == doctest::Approx(std::exp(-t) * c0).epsilon(1e-12));
    CHECK(std::abs(c - std::exp(-2 * t) * c0) > 1e-3);
    const double d = discord_trajectory(spec, 0, 1, params).discord;
    CHECK(d == doctest::Approx(2 * std::exp(-2 * t) * split.schmidt_plus * split.schmidt_minus).epsilon(1e-12));
    CHECK(d == doctest::Approx(0.5 * c * c).epsilon(1e-12));
  }
}
