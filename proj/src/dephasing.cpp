#include "cohcorr/dephasing.hpp"

#include <algorithm>
#include <cmath>

#include "cohcorr/errors.hpp"

namespace cohcorr {

DephasingParams::DephasingParams(double rate, double time) : rate_(rate), time_(time) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("dephasing: decay rate must be positive and finite");
  if (!(time >= 0.0) || !std::isfinite(time)) throw DomainError("dephasing: time must be nonnegative and finite");
}

double DephasingParams::gamma() const { return -std::expm1(-rate_ * time_); }

double DephasingParams::survival() const { return std::exp(-rate_ * time_); }

KrausPair kraus_ops(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("kraus_ops: gamma must lie in [0,1]");
  KrausPair k;
  k.e0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - gamma);
  k.e1 << 0.0, 0.0, 0.0, std::sqrt(gamma);
  return k;
}

// Both Kraus operators are diagonal, so sum_{mu,nu} E rho E^dagger only rescales
// entries: qubit-wise by sum_mu E_mu(a,a) E_mu(b,b), which is sqrt(1-gamma) for
// a != b and exactly 1 (completeness) for a == b. Populations are left bit-exact.
TwoQubitDensity apply_dephasing(const TwoQubitDensity& rho, double gamma) {
  const KrausPair k = kraus_ops(gamma);
  const double coherence = k.e0(0, 0) * k.e0(1, 1) + k.e1(0, 0) * k.e1(1, 1);
  const Eigen::Matrix2d single{{1.0, coherence}, {coherence, 1.0}};
  Mat4c out = rho.matrix();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) *= single(r >> 1, c >> 1) * single(r & 1, c & 1);
  return TwoQubitDensity(out);
}

BlochForm dephase_bloch(const BlochForm& bloch, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("dephase_bloch: gamma must lie in [0,1]");
  const double s = std::sqrt(1.0 - gamma);
  const Vec3 factor(s, s, 1.0);
  BlochForm out = bloch;
  out.x = bloch.x.cwiseProduct(factor);
  out.y = bloch.y.cwiseProduct(factor);
  out.R = factor.asDiagonal() * bloch.R * factor.asDiagonal();
  return out;
}

double concurrence_trajectory(const SuperpositionSpec& spec, std::size_t i, std::size_t j,
                              const DephasingParams& params) {
  const double q = spec.environment_overlap(i, j);
  const double q_comp = spec.environment_overlap_complement(i, j);
  const double pi = spec.overlap(i);
  const double pj = spec.overlap(j);
  const double w = std::sqrt((1.0 - pi) * (1.0 + pi) * (1.0 - pj) * (1.0 + pj));
  const double value = 0.5 * w / spec.branch_norm() * (params.survival() * (1.0 + q) - q_comp);
  return std::clamp(value, 0.0, 1.0);
}

SuddenDeathTime sudden_death_time(const SuperpositionSpec& spec, std::size_t i, std::size_t j, double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("sudden_death_time: decay rate must be positive");
  if (concurrence_pair_closed(spec, i, j) <= 0.0) return 0.0;
  const double q = spec.environment_overlap(i, j);
  const double q_comp = spec.environment_overlap_complement(i, j);
  if (q_comp <= 0.0) return NeverDies{};
  return (std::log1p(q) - std::log(q_comp)) / rate;
}

CorrelationReport discord_trajectory(const SuperpositionSpec& spec, std::size_t i, std::size_t j,
                                     const DephasingParams& params, MeasurementSide side) {
  const PairKSpectrum k0 = pair_k_spectrum(spec, i, j, side);
  const double decay = params.survival() * params.survival();
  const double lambda1 = k0.longitudinal;
  const double lambda2 = decay * k0.transverse_x;
  const double lambda3 = decay * k0.transverse_y;

  CorrelationReport report;
  if (lambda1 >= lambda2) {
    report.branch = Branch::MixedPlus;
    report.discord = 0.25 * (lambda2 + lambda3);
  } else {
    report.branch = Branch::MixedMinus;
    report.discord = 0.25 * (lambda1 + lambda3);
  }
  std::array<double, 3> desc{lambda1, lambda2, lambda3};
  std::sort(desc.begin(), desc.end(), std::greater<>());
  report.k_eigenvalues = desc;
  report.concurrence = concurrence_trajectory(spec, i, j, params);
  report.side = side;
  return report;
}

}  // namespace cohcorr
