#pragma once

#include <Eigen/Core>
#include <complex>

namespace cohcorr {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Mat2c = Eigen::Matrix2cd;
using Vec4c = Eigen::Vector4cd;
using Mat4c = Eigen::Matrix4cd;

// Eigenpairs sorted by descending eigenvalue; column k of `vectors` belongs to values(k).
template <int Dim>
struct SymmetricEigen {
  Eigen::Matrix<double, Dim, 1> values;
  Eigen::Matrix<double, Dim, Dim> vectors;
};

struct HermitianEigen {
  Vec4 values;
  Mat4c vectors;
};

// Cyclic Jacobi rotations, iterated until the off-diagonal Frobenius norm drops
// below 1e-14 of the matrix norm. Rotations on exactly-zero elements are skipped,
// so block structure in the input (e.g. X-shaped densities) survives exactly.
// Throws AsymmetricInput if |M - M^T| > 1e-10 anywhere.
SymmetricEigen<3> eig_sym(const Mat3& m);
SymmetricEigen<4> eig_sym(const Mat4& m);

// Same scheme for complex Hermitian 4x4: each pivot is first made real by a
// diagonal phase, then zeroed by a real rotation.
HermitianEigen eig_herm(const Mat4c& m);

// Pauli matrices, index 0 = identity.
const Eigen::Matrix2cd& pauli(int index);

// sigma_a (x) sigma_b.
Mat4c pauli_product(int a, int b);

}  // namespace cohcorr
