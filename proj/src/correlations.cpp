#include "cohcorr/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>

#include "cohcorr/errors.hpp"
#include "cohcorr/products.hpp"

namespace cohcorr {
namespace {

constexpr double kRankTol = 1e-10;
// Eigenvalues of rho below this fraction of the largest are treated as exact zeros
// when factoring rho = W W^dagger for the Wootters spectrum.
constexpr double kRankTruncation = 1e-13;

std::array<double, 3> sorted_descending(double a, double b, double c) {
  std::array<double, 3> v{a, b, c};
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

// One quarter of the smallest pair-sum = (trace - largest) / 4.
double quarter_min_pair_sum(const std::array<double, 3>& desc) {
  return std::max(0.0, 0.25 * (desc[1] + desc[2]));
}

// (1 - p^2) for p in [0,1], without cancellation near p = 1.
double one_minus_square(double p) { return (1.0 - p) * (1.0 + p); }

}  // namespace

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::PurePath: return "pure";
    case Branch::MixedPlus: return "mixed_plus";
    case Branch::MixedMinus: return "mixed_minus";
    case Branch::NumericK: return "numeric_k";
    case Branch::OracleSearch: return "oracle_search";
  }
  return "unknown";
}

std::string_view to_string(MeasurementSide s) {
  return s == MeasurementSide::FirstQubit ? "first" : "second";
}

Mat3 k_matrix(const BlochForm& bloch, MeasurementSide side) {
  if (side == MeasurementSide::FirstQubit) return bloch.x * bloch.x.transpose() + bloch.R * bloch.R.transpose();
  return bloch.y * bloch.y.transpose() + bloch.R.transpose() * bloch.R;
}

CorrelationReport geometric_discord_numeric(const TwoQubitDensity& rho, MeasurementSide side) {
  const Mat3 k = k_matrix(bloch_decompose(rho), side);
  const auto eig = eig_sym(k);
  CorrelationReport report;
  report.k_eigenvalues = {eig.values(0), eig.values(1), eig.values(2)};
  report.discord = quarter_min_pair_sum(report.k_eigenvalues);
  report.branch = Branch::NumericK;
  report.concurrence = concurrence_mixed(rho);
  report.side = side;
  return report;
}

double concurrence_pure(const SuperpositionSpec& spec, std::size_t k) {
  spec.check_split(k);
  const std::size_t n = spec.modes();
  const double first = spec.group_overlap(0, k);
  const double second = spec.group_overlap(k, n);
  const double first_comp = spec.group_overlap_complement(0, k) * (1.0 + first);    // 1 - P_k^2
  const double second_comp = spec.group_overlap_complement(k, n) * (1.0 + second);  // 1 - P_{n-k}^2
  return std::min(1.0, std::sqrt(first_comp) * std::sqrt(second_comp) / spec.branch_norm());
}

double geometric_discord_pure_closed(const SuperpositionSpec& spec, std::size_t k) {
  spec.check_split(k);
  const std::size_t n = spec.modes();
  const double first_comp = spec.group_overlap_complement(0, k) * (1.0 + spec.group_overlap(0, k));
  const double second_comp = spec.group_overlap_complement(k, n) * (1.0 + spec.group_overlap(k, n));
  const double denom = spec.branch_norm();
  return 0.5 * first_comp * second_comp / (denom * denom);
}

CorrelationReport pure_report(const SuperpositionSpec& spec, std::size_t k) {
  const double c = concurrence_pure(spec, k);
  CorrelationReport report;
  report.discord = geometric_discord_pure_closed(spec, k);
  report.branch = Branch::PurePath;
  // Schmidt form: K = diag(4 l+ l-, 4 l+ l-, 2(l+^2 + l-^2)) = diag(C^2, C^2, 2 - C^2).
  report.k_eigenvalues = sorted_descending(2.0 - c * c, c * c, c * c);
  report.concurrence = c;
  report.side = MeasurementSide::FirstQubit;
  return report;
}

double concurrence_mixed(const TwoQubitDensity& rho) {
  const HermitianEigen eig = eig_herm(rho.matrix());
  const double cutoff = kRankTruncation * std::max(eig.values(0), 0.0);
  Mat4c w = Mat4c::Zero();
  for (int k = 0; k < 4; ++k)
    if (eig.values(k) > cutoff) w.col(k) = std::sqrt(eig.values(k)) * eig.vectors.col(k);

  // Singular values of W^T (sigma_y x sigma_y) W are the Wootters c_i.
  const Mat4c tau = w.transpose() * pauli_product(2, 2) * w;
  const HermitianEigen sq = eig_herm(tau.adjoint() * tau);
  std::array<double, 4> c{};
  for (int k = 0; k < 4; ++k) c[k] = std::sqrt(std::max(0.0, sq.values(k)));
  return std::clamp(c[0] - c[1] - c[2] - c[3], 0.0, 1.0);
}

double concurrence_pair_closed(const SuperpositionSpec& spec, std::size_t i, std::size_t j) {
  const double q = spec.environment_overlap(i, j);
  const double w = std::sqrt(one_minus_square(spec.overlap(i)) * one_minus_square(spec.overlap(j)));
  return std::min(1.0, q * w / spec.branch_norm());
}

PairKSpectrum pair_k_spectrum(const SuperpositionSpec& spec, std::size_t i, std::size_t j,
                              MeasurementSide side) {
  spec.check_pair(i, j);
  const double pi = spec.overlap(i);
  const double pj = spec.overlap(j);
  const double q = spec.environment_overlap(i, j);
  const double norm = spec.branch_norm();
  const double scale = 1.0 / (norm * norm);  // 4 N^4
  const double transverse = one_minus_square(pi) * one_minus_square(pj) * scale;

  const std::size_t measured = side == MeasurementSide::FirstQubit ? i : j;
  const std::size_t other = side == MeasurementSide::FirstQubit ? j : i;
  const double pm = spec.overlap(measured);
  const double po = spec.overlap(other);

  // Local Bloch z-component and zz correlation, each divided by 2N^2:
  //   p_measured + cos(m pi) p_other q   and   p_i p_j + cos(m pi) q.
  // The expanded bracket (1+p_o^2)(p_m^2+q^2) + 4 prod p cos m pi equals the sum of
  // their squares; the factored form avoids cancellation for odd parity near p = 1.
  double local = 0.0;
  double zz = 0.0;
  if (spec.parity() == Parity::Even) {
    local = pm + po * q;
    zz = pi * pj + q;
  } else {
    const std::array<double, 2> pair{pi, pj};
    local = spec.complement_without(measured) - (1.0 - pm);
    zz = spec.environment_overlap_complement(i, j) - one_minus_product(pair);
  }
  return {(local * local + zz * zz) * scale, transverse, transverse * q * q};
}

CorrelationReport mixed_discord_closed(const SuperpositionSpec& spec, std::size_t i, std::size_t j,
                                       MeasurementSide side) {
  const PairKSpectrum k = pair_k_spectrum(spec, i, j, side);
  CorrelationReport report;
  // a few ulps either way count as a tie, which goes to MixedPlus
  const double tie = 8.0 * std::numeric_limits<double>::epsilon() * std::max(k.longitudinal, k.transverse_x);
  if (k.longitudinal >= k.transverse_x - tie) {
    report.branch = Branch::MixedPlus;
    report.discord = 0.25 * (k.transverse_x + k.transverse_y);
  } else {
    report.branch = Branch::MixedMinus;
    report.discord = 0.25 * (k.longitudinal + k.transverse_y);
  }
  report.k_eigenvalues = sorted_descending(k.longitudinal, k.transverse_x, k.transverse_y);
  report.concurrence = concurrence_pair_closed(spec, i, j);
  report.side = side;
  return report;
}

double equal_overlap_branch_margin(double p, std::size_t n, Parity parity) {
  if (n < 2) throw DomainError("equal_overlap_branch_margin: n must be >= 2");
  const double c = parity_sign(parity);
  return (p * p + 1.0) * (1.0 + std::pow(p, static_cast<double>(n - 2)) * c) - 2.0 * (1.0 - p * p);
}

WStateLimit w_state_limit(std::size_t n) {
  if (n < 2) throw DomainError("w_state_limit: n must be >= 2");
  const double nn = static_cast<double>(n);
  WStateLimit out{};
  out.lambda1 = (1.0 - 4.0 / nn) * (1.0 - 4.0 / nn) + (1.0 - 2.0 / nn) * (1.0 - 2.0 / nn);
  out.lambda2 = 4.0 / (nn * nn);
  out.lambda3 = out.lambda2;
  out.discord = quarter_min_pair_sum(sorted_descending(out.lambda1, out.lambda2, out.lambda3));
  out.asymptotic_formula = 2.0 / (nn * nn);
  return out;
}

int correlation_rank(const BlochForm& bloch) {
  Mat4 t = Mat4::Zero();
  t(0, 0) = 1.0;
  t.block<3, 1>(1, 0) = bloch.x;
  t.block<1, 3>(0, 1) = bloch.y.transpose();
  t.block<3, 3>(1, 1) = bloch.R;
  const Vec4 sv = Eigen::JacobiSVD<Mat4>(t).singularValues();
  return static_cast<int>((sv.array() > kRankTol).count());
}

DiscordWitness zero_discord_witness(const BlochForm& bloch) {
  return correlation_rank(bloch) > 2 ? DiscordWitness::NonZeroDiscord : DiscordWitness::ZeroDiscordPossible;
}

}  // namespace cohcorr
