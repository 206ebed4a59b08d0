#pragma once

#include <cstddef>
#include <variant>

#include <Eigen/Core>

#include "cohcorr/correlations.hpp"
#include "cohcorr/state.hpp"

namespace cohcorr {

// Decay rate and elapsed time of the two-sided dephasing channel.
class DephasingParams {
 public:
  // Throws DomainError unless rate > 0 and time >= 0 (both finite).
  DephasingParams(double rate, double time);

  double rate() const { return rate_; }
  double time() const { return time_; }
  // 1 - exp(-rate t), in [0, 1).
  double gamma() const;
  // exp(-rate t) = 1 - gamma.
  double survival() const;

 private:
  double rate_;
  double time_;
};

struct KrausPair {
  Eigen::Matrix2d e0;  // diag(1, sqrt(1-gamma))
  Eigen::Matrix2d e1;  // diag(0, sqrt(gamma))
};

// Throws DomainError unless gamma in [0,1].
KrausPair kraus_ops(double gamma);

// sum_{mu,nu} (E_mu (x) E_nu) rho (E_mu (x) E_nu)^dagger
TwoQubitDensity apply_dephasing(const TwoQubitDensity& rho, double gamma);

// The same channel acting on the Bloch form: every transverse (x or y) index of
// x, y and R is scaled by sqrt(1-gamma).
BlochForm dephase_bloch(const BlochForm& bloch, double gamma);

// 1/2 sqrt((1-p_i^2)(1-p_j^2)) / (1 + prod p cos m pi) [e^{-rate t}(1+q) - (1-q)], clipped at 0.
double concurrence_trajectory(const SuperpositionSpec& spec, std::size_t i, std::size_t j,
                              const DephasingParams& params);

struct NeverDies {
  bool operator==(const NeverDies&) const = default;
};

// Finite time after which the pair concurrence stays zero, or NeverDies.
using SuddenDeathTime = std::variant<double, NeverDies>;

// (1/rate) ln((1+q)/(1-q)); 0 if the pair starts unentangled; NeverDies when q = 1.
SuddenDeathTime sudden_death_time(const SuperpositionSpec& spec, std::size_t i, std::size_t j, double rate);

// K(t) = diag(lambda1, e^{-2 rate t} lambda2, e^{-2 rate t} lambda3).
CorrelationReport discord_trajectory(const SuperpositionSpec& spec, std::size_t i, std::size_t j,
                                     const DephasingParams& params,
                                     MeasurementSide side = MeasurementSide::FirstQubit);

}  // namespace cohcorr
