#include "cohcorr/kernels.hpp"

#include <cmath>
#include <string>

#include "cohcorr/errors.hpp"

namespace cohcorr {

FamilyParams FamilyParams::weyl_heisenberg() { return {Family::WeylHeisenberg, 0, 0.0}; }

FamilyParams FamilyParams::su2(int twice_spin) {
  if (twice_spin < 1) throw DomainError("su2: spin must be a positive half-integer (2j >= 1)");
  return {Family::SU2, twice_spin, 0.0};
}

FamilyParams FamilyParams::su11(double bargmann_index) {
  if (!(bargmann_index > 0.0) || !std::isfinite(bargmann_index))
    throw DomainError("su11: Bargmann index must be a positive real");
  return {Family::SU11, 0, bargmann_index};
}

int FamilyParams::twice_spin() const {
  if (family_ != Family::SU2) throw DomainError("spin is only defined for the SU(2) family");
  return twice_spin_;
}

double FamilyParams::bargmann_index() const {
  if (family_ != Family::SU11) throw DomainError("Bargmann index is only defined for the SU(1,1) family");
  return bargmann_;
}

namespace {

// (1 - r2) / (1 + r2) raised to an integer power, exact in sign.
double disc_ratio_pow(double r2, int exponent) {
  return std::pow((1.0 - r2) / (1.0 + r2), exponent);
}

}  // namespace

double overlap(std::complex<double> z, const FamilyParams& params) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("overlap: z must be finite");
  const double r2 = std::norm(z);
  switch (params.family()) {
    case Family::WeylHeisenberg:
      return std::exp(-2.0 * r2);
    case Family::SU11: {
      if (r2 >= 1.0) throw DomainError("overlap: SU(1,1) label must lie in the unit disc, got |z|^2 = " + std::to_string(r2));
      return std::pow((1.0 - r2) / (1.0 + r2), 2.0 * params.bargmann_index());
    }
    case Family::SU2: {
      const double value = disc_ratio_pow(r2, params.twice_spin());
      if (value < 0.0)
        throw UnsupportedOverlap("overlap: SU(2) kernel is negative for |z| > 1 with odd 2j = " +
                                 std::to_string(params.twice_spin()));
      return value;
    }
  }
  throw DomainError("overlap: unknown family");
}

}  // namespace cohcorr
