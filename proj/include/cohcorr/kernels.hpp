#pragma once

#include <complex>

namespace cohcorr {

enum class Family { WeylHeisenberg, SU2, SU11 };

// Coherent-state family plus the one representation parameter it carries.
// Build through the named constructors; they enforce j in {1/2, 1, ...} and k > 0.
class FamilyParams {
 public:
  static FamilyParams weyl_heisenberg();
  // Spin j given as the integer 2j (>= 1) so half-integers are exact.
  static FamilyParams su2(int twice_spin);
  static FamilyParams su11(double bargmann_index);

  Family family() const { return family_; }
  int twice_spin() const;
  double spin() const { return 0.5 * twice_spin(); }
  double bargmann_index() const;

 private:
  FamilyParams(Family f, int twice_spin, double k) : family_(f), twice_spin_(twice_spin), bargmann_(k) {}

  Family family_;
  int twice_spin_;
  double bargmann_;
};

// Overlap <z|-z> between the two branch states of one mode.
//   Weyl-Heisenberg: exp(-2|z|^2)
//   SU(2), spin j:   ((1-|z|^2)/(1+|z|^2))^{2j}
//   SU(1,1), index k: ((1-|z|^2)/(1+|z|^2))^{2k}, |z| < 1
// Throws DomainError for SU(1,1) outside the unit disc and UnsupportedOverlap when
// an SU(2) kernel with |z| > 1 and odd 2j turns negative.
double overlap(std::complex<double> z, const FamilyParams& params);

}  // namespace cohcorr
