#include "cohcorr/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "cohcorr/errors.hpp"
#include "cohcorr/products.hpp"

namespace cohcorr::oracle {
namespace {

using Vec2 = Eigen::Vector2d;

// Coordinates of |Omega> and |Omega'> in the basis {(Omega+Omega')/|.|, (Omega-Omega')/|.|},
// starting from the Gram-Schmidt realisation |Omega> = (1,0), |Omega'> = (p, sqrt(1-p^2)).
std::pair<Vec2, Vec2> branch_pair_in_qubit_basis(double p) {
  const Vec2 omega(1.0, 0.0);
  const Vec2 omega_prime(p, std::sqrt((1.0 - p) * (1.0 + p)));
  const Vec2 basis0 = (omega + omega_prime).normalized();
  const Vec2 anti = omega - omega_prime;
  const Vec2 basis1 = anti.norm() > 0.0 ? Vec2(anti.normalized()) : Vec2(basis0(1), -basis0(0));
  return {Vec2(basis0.dot(omega), basis1.dot(omega)), Vec2(basis0.dot(omega_prime), basis1.dot(omega_prime))};
}

Vec4 kron(const Vec2& a, const Vec2& b) { return {a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1)}; }

Mat4c embed(const Eigen::Matrix2cd& op, MeasurementSide side) {
  const Eigen::Matrix2cd& id = pauli(0);
  const Eigen::Matrix2cd& left = side == MeasurementSide::FirstQubit ? op : id;
  const Eigen::Matrix2cd& right = side == MeasurementSide::FirstQubit ? id : op;
  Mat4c out;
  for (int r1 = 0; r1 < 2; ++r1)
    for (int c1 = 0; c1 < 2; ++c1)
      for (int r2 = 0; r2 < 2; ++r2)
        for (int c2 = 0; c2 < 2; ++c2) out(2 * r1 + r2, 2 * c1 + c2) = left(r1, c1) * right(r2, c2);
  return out;
}

struct TangentChart {
  Vec3 origin;
  Vec3 t1;
  Vec3 t2;

  explicit TangentChart(const Vec3& e) : origin(e) {
    int least = 0;
    for (int k = 1; k < 3; ++k)
      if (std::abs(e(k)) < std::abs(e(least))) least = k;
    t1 = e.cross(Vec3::Unit(least)).normalized();
    t2 = e.cross(t1);
  }

  Vec3 point(const Eigen::Vector2d& uv) const { return (origin + uv(0) * t1 + uv(1) * t2).normalized(); }
};

struct Vertex {
  Eigen::Vector2d uv;
  double value;
};

// Nelder-Mead on the tangent plane; returns the best vertex.
template <typename Objective>
Vertex nelder_mead(Objective&& f, double step, double tol, int max_iterations) {
  std::array<Vertex, 3> s{};
  s[0].uv = {0.0, 0.0};
  s[1].uv = {step, 0.0};
  s[2].uv = {0.0, step};
  for (auto& v : s) v.value = f(v.uv);

  for (int it = 0; it < max_iterations; ++it) {
    std::sort(s.begin(), s.end(), [](const Vertex& l, const Vertex& r) { return l.value < r.value; });
    const double size = std::max((s[1].uv - s[0].uv).norm(), (s[2].uv - s[0].uv).norm());
    if (s[2].value - s[0].value < tol && size < 1e-9) break;
    if (size < 1e-12) break;

    const Eigen::Vector2d centroid = 0.5 * (s[0].uv + s[1].uv);
    const Eigen::Vector2d reflected = centroid + (centroid - s[2].uv);
    const double fr = f(reflected);
    if (fr < s[0].value) {
      const Eigen::Vector2d expanded = centroid + 2.0 * (centroid - s[2].uv);
      const double fe = f(expanded);
      s[2] = fe < fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
    } else if (fr < s[1].value) {
      s[2] = {reflected, fr};
    } else {
      const bool outside = fr < s[2].value;
      const Eigen::Vector2d contracted =
          outside ? Eigen::Vector2d(centroid + 0.5 * (reflected - centroid))
                  : Eigen::Vector2d(centroid + 0.5 * (s[2].uv - centroid));
      const double fc = f(contracted);
      if (fc < std::min(fr, s[2].value)) {
        s[2] = {contracted, fc};
      } else {
        for (int k = 1; k < 3; ++k) {
          s[k].uv = s[0].uv + 0.5 * (s[k].uv - s[0].uv);
          s[k].value = f(s[k].uv);
        }
      }
    }
  }
  return *std::min_element(s.begin(), s.end(), [](const Vertex& l, const Vertex& r) { return l.value < r.value; });
}

}  // namespace

MeasurementBasis::MeasurementBasis(const Vec3& e) : e_(e) {
  if (!e.allFinite() || std::abs(e.norm() - 1.0) > 1e-12)
    throw DomainError("measurement basis: Bloch vector must have unit length");
}

MeasurementBasis MeasurementBasis::along(const Vec3& direction) {
  const double n = direction.norm();
  if (!(n > 0.0)) throw DomainError("measurement basis: zero direction");
  return MeasurementBasis(direction / n);
}

Eigen::Matrix2cd MeasurementBasis::projector(int sign) const {
  Eigen::Matrix2cd out = pauli(0);
  const double s = sign >= 0 ? 1.0 : -1.0;
  for (int a = 1; a <= 3; ++a) out += s * e_(a - 1) * pauli(a);
  return 0.5 * out;
}

TwoQubitDensity pair_density_from_overlaps(const SuperpositionSpec& spec, std::size_t i, std::size_t j) {
  spec.check_pair(i, j);
  const auto [omega_i, omega_prime_i] = branch_pair_in_qubit_basis(spec.overlap(i));
  const auto [omega_j, omega_prime_j] = branch_pair_in_qubit_basis(spec.overlap(j));
  const Vec4 u = kron(omega_i, omega_j);
  const Vec4 v = kron(omega_prime_i, omega_prime_j);

  std::vector<double> environment;
  for (std::size_t m = 0; m < spec.modes(); ++m)
    if (m != i && m != j) environment.push_back(spec.overlap(m));
  const double q = product(environment);
  const double q_comp = one_minus_product(environment);
  const bool even = spec.parity() == Parity::Even;
  const double with_phase = even ? 1.0 + q : q_comp;   // 1 + e^{i m pi} q
  const double against = even ? q_comp : 1.0 + q;     // 1 - e^{i m pi} q

  // u u^T + v v^T + e^{i m pi} q (v u^T + u v^T), regrouped over u +/- v.
  const Vec4 sum = u + v;
  const Vec4 diff = u - v;
  const Mat4 unnormalised = 0.5 * (with_phase * sum * sum.transpose() + against * diff * diff.transpose());
  const double trace = unnormalised.trace();
  if (!(trace > 1e-14)) throw DivergentNormalization("divergent normalization: branch superposition is null");
  return TwoQubitDensity((unnormalised / trace).cast<cplx>());
}

double measurement_distance(const TwoQubitDensity& rho, MeasurementSide side, const MeasurementBasis& basis) {
  const Mat4c plus = embed(basis.projector(+1), side);
  const Mat4c minus = embed(basis.projector(-1), side);
  const Mat4c& m = rho.matrix();
  const Mat4c chi = plus * m * plus + minus * m * minus;
  return (m - chi).squaredNorm();
}

std::vector<Vec3> fibonacci_sphere(int count) {
  std::vector<Vec3> points;
  points.reserve(static_cast<std::size_t>(std::max(count, 0)));
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * k;
    points.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return points;
}

SearchResult discord_by_measurement_search(const TwoQubitDensity& rho, MeasurementSide side,
                                           const SearchOptions& options) {
  if (options.coarse_steps < 16) throw DomainError("measurement search: coarse_steps must be >= 16");
  if (!(options.refinement_tol > 0.0)) throw DomainError("measurement search: refinement_tol must be positive");

  int evaluations = 0;
  auto distance = [&](const Vec3& e) {
    ++evaluations;
    return measurement_distance(rho, side, MeasurementBasis(e));
  };

  const std::vector<Vec3> grid = fibonacci_sphere(options.coarse_steps);
  std::size_t best_index = 0;
  double best_value = distance(grid[0]);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double value = distance(grid[k]);
    if (value < best_value) {
      best_value = value;
      best_index = k;
    }
  }

  Vec3 best_axis = grid[best_index];
  double step = 0.5 * std::sqrt(4.0 * std::numbers::pi / options.coarse_steps);
  const double stop_tol = 1e-3 * options.refinement_tol;
  for (int restart = 0; restart < 4; ++restart) {
    const TangentChart chart(best_axis);
    const Vertex v = nelder_mead([&](const Eigen::Vector2d& uv) { return distance(chart.point(uv)); }, step,
                                 stop_tol, 2000);
    const double improvement = best_value - v.value;
    if (v.value < best_value) {
      best_value = v.value;
      best_axis = chart.point(v.uv);
    }
    if (improvement < options.refinement_tol) break;
    step *= 0.1;
  }
  return {std::max(0.0, best_value), best_axis, evaluations};
}

std::array<double, 3> axis_distances(const TwoQubitDensity& rho, MeasurementSide side) {
  std::array<double, 3> out{};
  for (int k = 0; k < 3; ++k) out[k] = measurement_distance(rho, side, MeasurementBasis(Vec3::Unit(k)));
  return out;
}

}  // namespace cohcorr::oracle
