#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "cohcorr/linalg.hpp"
#include "cohcorr/state.hpp"

namespace cohcorr {

// Which qubit the zero-discord measurement acts on.
enum class MeasurementSide { FirstQubit, SecondQubit };

enum class Branch {
  PurePath,      // pure split, D_g = C^2 / 2
  MixedPlus,     // longitudinal eigenvalue dominates: D_g = (lambda2 + lambda3) / 4
  MixedMinus,    // transverse eigenvalue dominates:   D_g = (lambda1 + lambda3) / 4
  NumericK,      // eigensolve of K for an arbitrary density
  OracleSearch,  // direct minimisation over projective measurements
};

std::string_view to_string(Branch b);
std::string_view to_string(MeasurementSide s);

struct CorrelationReport {
  double discord = 0.0;
  Branch branch = Branch::NumericK;
  std::array<double, 3> k_eigenvalues{};  // descending
  double concurrence = 0.0;
  MeasurementSide side = MeasurementSide::FirstQubit;
};

// K = x x^T + R R^T (first qubit measured) or y y^T + R^T R (second).
Mat3 k_matrix(const BlochForm& bloch, MeasurementSide side);

// One quarter of the smallest pair-sum of K's eigenvalues.
CorrelationReport geometric_discord_numeric(const TwoQubitDensity& rho,
                                            MeasurementSide side = MeasurementSide::FirstQubit);

double concurrence_pure(const SuperpositionSpec& spec, std::size_t k);
double geometric_discord_pure_closed(const SuperpositionSpec& spec, std::size_t k);
CorrelationReport pure_report(const SuperpositionSpec& spec, std::size_t k);

// Wootters concurrence max(0, c1 - c2 - c3 - c4).
double concurrence_mixed(const TwoQubitDensity& rho);

// Closed-form concurrence of rho_ij: q_ij sqrt((1-p_i^2)(1-p_j^2)) / (1 + prod p cos m pi).
double concurrence_pair_closed(const SuperpositionSpec& spec, std::size_t i, std::size_t j);

// Diagonal of K for rho_ij, labelled by axis. `longitudinal` is the zz entry
// (lambda1), `transverse_x` and `transverse_y` the xx and yy entries (lambda2, lambda3).
struct PairKSpectrum {
  double longitudinal;
  double transverse_x;
  double transverse_y;
};

// For SecondQubit this is lambda1 = 4N^4[(1+p_i^2)(p_j^2+q^2) + 4 prod p cos m pi];
// FirstQubit swaps the roles of p_i and p_j in the first term.
PairKSpectrum pair_k_spectrum(const SuperpositionSpec& spec, std::size_t i, std::size_t j,
                              MeasurementSide side);

// Branch selected by comparing lambda1 and lambda2; ties go to MixedPlus.
CorrelationReport mixed_discord_closed(const SuperpositionSpec& spec, std::size_t i, std::size_t j,
                                       MeasurementSide side = MeasurementSide::FirstQubit);

// Equal overlaps p on n modes: (p^2+1)(1+p^{n-2} cos m pi) - 2(1-p^2).
// Its sign matches lambda1 - lambda2, so >= 0 selects MixedPlus.
double equal_overlap_branch_margin(double p, std::size_t n, Parity parity);

// p -> 1 limit of odd-parity rho_ij (the W-state pair marginal).
struct WStateLimit {
  double lambda1;  // (1-4/n)^2 + (1-2/n)^2
  double lambda2;  // 4/n^2
  double lambda3;  // 4/n^2
  double discord;  // smallest pair-sum / 4
  double asymptotic_formula;  // 2/n^2, equal to `discord` for n >= 4
};

WStateLimit w_state_limit(std::size_t n);

enum class DiscordWitness { ZeroDiscordPossible, NonZeroDiscord };

// Rank of the 4x4 correlation matrix T_{ab} = Tr rho sigma_a (x) sigma_b
// (singular values above 1e-10). Rank > 2 certifies nonzero discord.
DiscordWitness zero_discord_witness(const BlochForm& bloch);
int correlation_rank(const BlochForm& bloch);

}  // namespace cohcorr
