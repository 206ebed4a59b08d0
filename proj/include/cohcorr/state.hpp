#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cohcorr/linalg.hpp"

namespace cohcorr {

// The relative phase e^{i m pi} of the two branches; only its sign matters.
enum class Parity { Even, Odd };

inline double parity_sign(Parity p) { return p == Parity::Even ? 1.0 : -1.0; }

// N (|Omega_1 ... Omega_n> + e^{i m pi} |Omega'_1 ... Omega'_n>), described by the
// real branch overlaps p_i = <Omega_i|Omega'_i> and the parity of m.
class SuperpositionSpec {
 public:
  // Throws DomainError unless n >= 2 and every p_i is in [0,1];
  // throws DivergentNormalization for the odd-parity null state (prod p_i = 1).
  SuperpositionSpec(std::vector<double> overlaps, Parity parity);

  std::size_t modes() const { return overlaps_.size(); }
  std::span<const double> overlaps() const { return overlaps_; }
  double overlap(std::size_t mode) const { return overlaps_.at(mode); }
  Parity parity() const { return parity_; }
  double sign() const { return parity_sign(parity_); }

  // prod p_i over all modes.
  double total_overlap() const;
  // 1 + cos(m pi) prod p_i, evaluated without cancellation. Strictly positive.
  double branch_norm() const;

  // Product over modes [first, last), and its complement 1 - product.
  double group_overlap(std::size_t first, std::size_t last) const;
  double group_overlap_complement(std::size_t first, std::size_t last) const;

  // q_ij: product of all overlaps except modes i and j; and 1 - q_ij.
  double environment_overlap(std::size_t i, std::size_t j) const;
  double environment_overlap_complement(std::size_t i, std::size_t j) const;

  // 1 - prod of all overlaps except `mode`.
  double complement_without(std::size_t mode) const;

  void check_pair(std::size_t i, std::size_t j) const;
  void check_split(std::size_t k) const;

 private:
  std::vector<double> overlaps_;
  Parity parity_;
};

// [2 + 2 prod p_i cos(m pi)]^{-1/2}
double normalization(const SuperpositionSpec& spec);

struct QubitMapCoeffs {
  double a;  // sqrt((1+p)/2)
  double b;  // sqrt((1-p)/2)
};

// Coordinates of |Omega> = a|0> + b|1>, |Omega'> = a|0> - b|1>. Throws DomainError unless p in [0,1].
QubitMapCoeffs qubit_map_coeffs(double p);

// Modes [0,k) against [k,n), mapped onto two logical qubits.
struct PureSplit {
  std::size_t k;
  double c00, c01, c10, c11;
  double schmidt_plus, schmidt_minus;

  Vec4 amplitudes() const { return {c00, c01, c10, c11}; }
};

// Throws IndexError unless 1 <= k <= n-1.
PureSplit pure_split(const SuperpositionSpec& spec, std::size_t k);

// Projector onto the mapped pure state of a split.
Mat4c pure_density(const PureSplit& split);

// 4x4 density in the basis {|00>,|01>,|10>,|11>}. Construction validates
// Hermiticity (1e-12), unit trace (1e-12) and positivity (eigenvalues >= -1e-10),
// throwing InvalidDensity otherwise; the stored matrix is exactly Hermitian.
class TwoQubitDensity {
 public:
  explicit TwoQubitDensity(const Mat4c& m);

  static TwoQubitDensity maximally_mixed();
  static TwoQubitDensity pure(const Vec4c& psi);

  const Mat4c& matrix() const { return m_; }
  cplx operator()(int r, int c) const { return m_(r, c); }

  // Exchanges the two qubits.
  TwoQubitDensity swapped() const;
  // Single-qubit marginals.
  Mat2c first_marginal() const;
  Mat2c second_marginal() const;

 private:
  Mat4c m_;
};

// Closed-form X-shaped pair density of modes i and j (0-based), with
// 2 N^2 a_i a_j b_i b_j (1 +/- q_ij cos m pi) coherences.
TwoQubitDensity reduced_pair_density(const SuperpositionSpec& spec, std::size_t i, std::size_t j);

// rho = 1/4 [ I + x.sigma (x) I + I (x) y.sigma + sum R_ab sigma_a (x) sigma_b ]
struct BlochForm {
  Vec3 x;
  Vec3 y;
  Mat3 R;
};

BlochForm bloch_decompose(const TwoQubitDensity& rho);
Mat4c bloch_reconstruct(const BlochForm& bloch);

}  // namespace cohcorr
