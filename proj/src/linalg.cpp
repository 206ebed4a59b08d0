#include "cohcorr/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "cohcorr/errors.hpp"

namespace cohcorr {
namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTol = 1e-14;
constexpr double kSymmetryTol = 1e-10;

inline double conj_if(double v) { return v; }
inline cplx conj_if(cplx v) { return std::conj(v); }

template <typename Matrix>
double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (r != c) sum += std::norm(a(r, c));
  return std::sqrt(sum);
}

// Cyclic Jacobi for real symmetric or complex Hermitian matrices. On return `a`
// is diagonal (to tolerance) and a_in = v a v^dagger.
template <typename Matrix>
void jacobi_diagonalize(Matrix& a, Matrix& v) {
  using Scalar = typename Matrix::Scalar;
  const int n = static_cast<int>(a.rows());
  v.setIdentity();
  const double scale = std::max(a.norm(), 1e-300);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= kOffDiagonalTol * scale) return;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        const double magnitude = std::abs(apq);
        if (magnitude == 0.0) continue;
        const Scalar phase = apq / magnitude;

        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double theta = (aqq - app) / (2.0 * magnitude);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // Plane unitary G = diag(1, conj(phase)) * [[c, s], [-s, c]].
        const Scalar g_pp = c;
        const Scalar g_pq = s;
        const Scalar g_qp = -s * conj_if(phase);
        const Scalar g_qq = c * conj_if(phase);

        // a <- a G
        for (int r = 0; r < n; ++r) {
          const Scalar arp = a(r, p);
          const Scalar arq = a(r, q);
          a(r, p) = arp * g_pp + arq * g_qp;
          a(r, q) = arp * g_pq + arq * g_qq;
        }
        // a <- G^dagger a
        for (int col = 0; col < n; ++col) {
          const Scalar apc = a(p, col);
          const Scalar aqc = a(q, col);
          a(p, col) = conj_if(g_pp) * apc + conj_if(g_qp) * aqc;
          a(q, col) = conj_if(g_pq) * apc + conj_if(g_qq) * aqc;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        a(p, p) = Scalar(std::real(a(p, p)));
        a(q, q) = Scalar(std::real(a(q, q)));

        for (int r = 0; r < n; ++r) {
          const Scalar vrp = v(r, p);
          const Scalar vrq = v(r, q);
          v(r, p) = vrp * g_pp + vrq * g_qp;
          v(r, q) = vrp * g_pq + vrq * g_qq;
        }
      }
    }
  }
}

template <typename Matrix>
void check_self_adjoint(const Matrix& m) {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = r; c < m.cols(); ++c)
      if (std::abs(m(r, c) - conj_if(m(c, r))) > kSymmetryTol)
        throw AsymmetricInput("eigensolver: input is not self-adjoint within 1e-10");
}

template <typename Matrix, typename Values>
void sort_descending(const Matrix& diag, const Matrix& vecs, Values& values, Matrix& sorted_vecs) {
  const int n = static_cast<int>(diag.rows());
  std::array<int, 4> order{};
  std::iota(order.begin(), order.begin() + n, 0);
  std::stable_sort(order.begin(), order.begin() + n,
                   [&](int l, int r) { return std::real(diag(l, l)) > std::real(diag(r, r)); });
  for (int k = 0; k < n; ++k) {
    values(k) = std::real(diag(order[k], order[k]));
    sorted_vecs.col(k) = vecs.col(order[k]);
  }
}

template <int Dim>
SymmetricEigen<Dim> eig_sym_impl(const Eigen::Matrix<double, Dim, Dim>& m) {
  check_self_adjoint(m);
  Eigen::Matrix<double, Dim, Dim> a = 0.5 * (m + m.transpose());
  Eigen::Matrix<double, Dim, Dim> v;
  jacobi_diagonalize(a, v);
  SymmetricEigen<Dim> out;
  sort_descending(a, v, out.values, out.vectors);
  return out;
}

}  // namespace

SymmetricEigen<3> eig_sym(const Mat3& m) { return eig_sym_impl<3>(m); }
SymmetricEigen<4> eig_sym(const Mat4& m) { return eig_sym_impl<4>(m); }

HermitianEigen eig_herm(const Mat4c& m) {
  check_self_adjoint(m);
  Mat4c a = 0.5 * (m + m.adjoint());
  Mat4c v;
  jacobi_diagonalize(a, v);
  HermitianEigen out;
  sort_descending(a, v, out.values, out.vectors);
  return out;
}

const Eigen::Matrix2cd& pauli(int index) {
  static const std::array<Eigen::Matrix2cd, 4> matrices = [] {
    std::array<Eigen::Matrix2cd, 4> s;
    const cplx i(0.0, 1.0);
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, -i, i, 0;
    s[3] << 1, 0, 0, -1;
    return s;
  }();
  return matrices.at(static_cast<std::size_t>(index));
}

Mat4c pauli_product(int a, int b) {
  const auto& sa = pauli(a);
  const auto& sb = pauli(b);
  Mat4c out;
  for (int r1 = 0; r1 < 2; ++r1)
    for (int c1 = 0; c1 < 2; ++c1)
      for (int r2 = 0; r2 < 2; ++r2)
        for (int c2 = 0; c2 < 2; ++c2) out(2 * r1 + r2, 2 * c1 + c2) = sa(r1, c1) * sb(r2, c2);
  return out;
}

}  // namespace cohcorr
