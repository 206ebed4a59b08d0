#pragma once

#include <cstddef>
#include <vector>

#include "cohcorr/correlations.hpp"
#include "cohcorr/linalg.hpp"
#include "cohcorr/state.hpp"

// Brute-force paths used to check the closed forms. Nothing here calls into the
// closed-form code in state.cpp / correlations.cpp.
namespace cohcorr::oracle {

// Unit Bloch vector e defining the projectors (I +/- e.sigma)/2.
class MeasurementBasis {
 public:
  // Throws DomainError unless |e| = 1 within 1e-12.
  explicit MeasurementBasis(const Vec3& e);
  static MeasurementBasis along(const Vec3& direction);

  const Vec3& axis() const { return e_; }
  Eigen::Matrix2cd projector(int sign) const;

 private:
  Vec3 e_;
};

// rho_ij assembled from the branch vectors of modes i and j: each mode's pair
// {|Omega>, |Omega'>} is realised by Gram-Schmidt from its overlap, the
// environment enters as the coherence weight q_ij, and the result is rotated into
// the symmetric/antisymmetric qubit basis and normalised by its own trace.
TwoQubitDensity pair_density_from_overlaps(const SuperpositionSpec& spec, std::size_t i, std::size_t j);

// ||rho - chi(e)||^2 with chi(e) = sum_+- (Pi_+- on the measured qubit) rho (same).
double measurement_distance(const TwoQubitDensity& rho, MeasurementSide side, const MeasurementBasis& basis);

struct SearchOptions {
  int coarse_steps = 512;
  double refinement_tol = 1e-8;
};

struct SearchResult {
  double discord;
  Vec3 axis;
  int evaluations;
};

// Fibonacci-sphere grid, then a Nelder-Mead simplex in the tangent plane of the
// best grid point (ties go to the lowest index). Deterministic.
// Throws DomainError if coarse_steps < 16.
SearchResult discord_by_measurement_search(const TwoQubitDensity& rho, MeasurementSide side,
                                           const SearchOptions& options = {});

// measurement_distance along x, y, z.
std::array<double, 3> axis_distances(const TwoQubitDensity& rho, MeasurementSide side);

std::vector<Vec3> fibonacci_sphere(int count);

}  // namespace cohcorr::oracle
