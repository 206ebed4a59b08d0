#include "cohcorr/state.hpp"

#include <cmath>
#include <string>

#include "cohcorr/errors.hpp"
#include "cohcorr/products.hpp"

namespace cohcorr {
namespace {

constexpr double kNullTol = 1e-14;
constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPositivityTol = 1e-10;

std::vector<double> without(std::span<const double> values, std::size_t i, std::size_t j) {
  std::vector<double> rest;
  rest.reserve(values.size());
  for (std::size_t m = 0; m < values.size(); ++m)
    if (m != i && m != j) rest.push_back(values[m]);
  return rest;
}

// 1 + sign * product, given the product and its complement.
double signed_one_plus(double sign, double prod, double complement) {
  return sign > 0 ? 1.0 + prod : complement;
}

// 1 - sign * product.
double signed_one_minus(double sign, double prod, double complement) {
  return sign > 0 ? complement : 1.0 + prod;
}

}  // namespace

SuperpositionSpec::SuperpositionSpec(std::vector<double> overlaps, Parity parity)
    : overlaps_(std::move(overlaps)), parity_(parity) {
  if (overlaps_.size() < 2)
    throw DomainError("superposition needs n >= 2 modes, got " + std::to_string(overlaps_.size()));
  for (std::size_t m = 0; m < overlaps_.size(); ++m) {
    const double p = overlaps_[m];
    if (!(p >= 0.0 && p <= 1.0))
      throw DomainError("overlap p_" + std::to_string(m + 1) + " = " + std::to_string(p) + " is outside [0,1]");
  }
  if (parity_ == Parity::Odd && one_minus_product(overlaps_) <= kNullTol)
    throw DivergentNormalization("divergent normalization: odd parity with prod p_i = 1 is the null state");
}

double SuperpositionSpec::total_overlap() const { return product(overlaps_); }

double SuperpositionSpec::branch_norm() const {
  return signed_one_plus(sign(), total_overlap(), one_minus_product(overlaps_));
}

double SuperpositionSpec::group_overlap(std::size_t first, std::size_t last) const {
  return product(std::span(overlaps_).subspan(first, last - first));
}

double SuperpositionSpec::group_overlap_complement(std::size_t first, std::size_t last) const {
  return one_minus_product(std::span(overlaps_).subspan(first, last - first));
}

double SuperpositionSpec::environment_overlap(std::size_t i, std::size_t j) const {
  check_pair(i, j);
  return product(without(overlaps_, i, j));
}

double SuperpositionSpec::environment_overlap_complement(std::size_t i, std::size_t j) const {
  check_pair(i, j);
  return one_minus_product(without(overlaps_, i, j));
}

double SuperpositionSpec::complement_without(std::size_t mode) const {
  return one_minus_product(without(overlaps_, mode, mode));
}

void SuperpositionSpec::check_pair(std::size_t i, std::size_t j) const {
  if (i >= modes() || j >= modes())
    throw IndexError("mode index out of range: need i, j < n = " + std::to_string(modes()));
  if (i == j) throw IndexError("pair needs two distinct modes, got i = j = " + std::to_string(i));
}

void SuperpositionSpec::check_split(std::size_t k) const {
  if (k < 1 || k + 1 > modes())
    throw IndexError("split size k = " + std::to_string(k) + " must satisfy 1 <= k <= n-1 = " +
                     std::to_string(modes() - 1));
}

double normalization(const SuperpositionSpec& spec) {
  const double denom = 2.0 * spec.branch_norm();
  if (denom <= kNullTol) throw DivergentNormalization("divergent normalization: 2 + 2 prod p cos m pi <= 0");
  return 1.0 / std::sqrt(denom);
}

QubitMapCoeffs qubit_map_coeffs(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("qubit_map_coeffs: p must lie in [0,1]");
  return {std::sqrt((1.0 + p) / 2.0), std::sqrt((1.0 - p) / 2.0)};
}

PureSplit pure_split(const SuperpositionSpec& spec, std::size_t k) {
  spec.check_split(k);
  const std::size_t n = spec.modes();
  const double nrm = normalization(spec);
  const double first = spec.group_overlap(0, k);
  const double second = spec.group_overlap(k, n);
  const double a_k = std::sqrt((1.0 + first) / 2.0);
  const double b_k = std::sqrt(spec.group_overlap_complement(0, k) / 2.0);
  const double a_rest = std::sqrt((1.0 + second) / 2.0);
  const double b_rest = std::sqrt(spec.group_overlap_complement(k, n) / 2.0);

  const double same = 1.0 + spec.sign();  // 1 + e^{i m pi}
  const double flip = 1.0 - spec.sign();  // 1 - e^{i m pi}

  PureSplit out{};
  out.k = k;
  out.c00 = nrm * same * a_k * a_rest;
  out.c01 = nrm * flip * a_k * b_rest;
  out.c10 = nrm * flip * a_rest * b_k;
  out.c11 = nrm * same * b_k * b_rest;

  const double conc = std::min(1.0, 2.0 * std::abs(out.c00 * out.c11 - out.c10 * out.c01));
  // 1 - C^2 = (P_k + cos(m pi) P_{n-k})^2 / (1 + cos(m pi) prod p)^2, free of cancellation near C = 1
  const double gap = std::min(1.0, std::abs(first + spec.sign() * second) / spec.branch_norm());
  out.schmidt_plus = 0.5 * (1.0 + gap);
  // lambda+ lambda- = C^2/4 keeps the small value accurate.
  out.schmidt_minus = conc * conc / (4.0 * out.schmidt_plus);
  return out;
}

Mat4c pure_density(const PureSplit& split) {
  const Vec4c psi = split.amplitudes().cast<cplx>();
  return psi * psi.adjoint();
}

TwoQubitDensity::TwoQubitDensity(const Mat4c& m) {
  if (!m.allFinite()) throw InvalidDensity("density has non-finite entries");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
    throw InvalidDensity("density is not Hermitian within 1e-12");
  m_ = 0.5 * (m + m.adjoint());
  const double trace = m_.trace().real();
  if (std::abs(trace - 1.0) > kTraceTol)
    throw InvalidDensity("density trace " + std::to_string(trace) + " differs from 1 by more than 1e-12");
  const HermitianEigen eig = eig_herm(m_);
  if (eig.values.minCoeff() < -kPositivityTol)
    throw InvalidDensity("density has a negative eigenvalue " + std::to_string(eig.values.minCoeff()));
}

TwoQubitDensity TwoQubitDensity::maximally_mixed() { return TwoQubitDensity(Mat4c::Identity() / 4.0); }

TwoQubitDensity TwoQubitDensity::pure(const Vec4c& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw InvalidDensity("pure: zero state vector");
  const Vec4c unit = psi / norm;
  return TwoQubitDensity(unit * unit.adjoint());
}

TwoQubitDensity TwoQubitDensity::swapped() const {
  static const std::array<int, 4> swap_index{0, 2, 1, 3};
  Mat4c out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(swap_index[r], swap_index[c]) = m_(r, c);
  return TwoQubitDensity(out);
}

Mat2c TwoQubitDensity::first_marginal() const {
  Mat2c out = Mat2c::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int s = 0; s < 2; ++s) out(a, b) += m_(2 * a + s, 2 * b + s);
  return out;
}

Mat2c TwoQubitDensity::second_marginal() const {
  Mat2c out = Mat2c::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int s = 0; s < 2; ++s) out(a, b) += m_(2 * s + a, 2 * s + b);
  return out;
}

TwoQubitDensity reduced_pair_density(const SuperpositionSpec& spec, std::size_t i, std::size_t j) {
  spec.check_pair(i, j);
  const double nrm = normalization(spec);
  const double n2 = nrm * nrm;
  const auto [ai, bi] = qubit_map_coeffs(spec.overlap(i));
  const auto [aj, bj] = qubit_map_coeffs(spec.overlap(j));
  const double q = spec.environment_overlap(i, j);
  const double q_comp = spec.environment_overlap_complement(i, j);
  const double plus = signed_one_plus(spec.sign(), q, q_comp);    // 1 + q cos m pi
  const double minus = signed_one_minus(spec.sign(), q, q_comp);  // 1 - q cos m pi
  const double cross = ai * aj * bi * bj;

  Mat4c rho = Mat4c::Zero();
  rho(0, 0) = 2.0 * n2 * ai * ai * aj * aj * plus;
  rho(1, 1) = 2.0 * n2 * ai * ai * bj * bj * minus;
  rho(2, 2) = 2.0 * n2 * aj * aj * bi * bi * minus;
  rho(3, 3) = 2.0 * n2 * bi * bi * bj * bj * plus;
  rho(0, 3) = rho(3, 0) = 2.0 * n2 * cross * plus;
  rho(1, 2) = rho(2, 1) = 2.0 * n2 * cross * minus;

  const double trace = rho.trace().real();
  if (std::abs(trace - 1.0) > kTraceTol)
    throw std::logic_error("reduced_pair_density: closed form lost unit trace (" + std::to_string(trace) + ")");
  return TwoQubitDensity(rho);
}

BlochForm bloch_decompose(const TwoQubitDensity& rho) {
  BlochForm out;
  const Mat4c& m = rho.matrix();
  auto expect = [&](int a, int b) { return (m * pauli_product(a, b)).trace().real(); };
  for (int a = 1; a <= 3; ++a) {
    out.x(a - 1) = expect(a, 0);
    out.y(a - 1) = expect(0, a);
    for (int b = 1; b <= 3; ++b) out.R(a - 1, b - 1) = expect(a, b);
  }
  return out;
}

Mat4c bloch_reconstruct(const BlochForm& bloch) {
  Mat4c m = pauli_product(0, 0);
  for (int a = 1; a <= 3; ++a) {
    m += bloch.x(a - 1) * pauli_product(a, 0);
    m += bloch.y(a - 1) * pauli_product(0, a);
    for (int b = 1; b <= 3; ++b) m += bloch.R(a - 1, b - 1) * pauli_product(a, b);
  }
  return m / 4.0;
}

}  // namespace cohcorr
