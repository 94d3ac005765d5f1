#include "fo/oracles.hpp"

#include <cmath>

namespace fo::oracles {

double slerp_angle(const Vec3& a, const Vec3& b) {
  double c = dot(a, b);
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  const double w = std::acos(c);
  if (std::abs(std::sin(w)) < 1e-12)
    if (c < 0.0)
      throw OracleError("slerp endpoints are antipodal");
  return w;
}

Vec3 slerp(const Vec3& a, const Vec3& b, double x) {
  const double w = slerp_angle(a, b);
  if (w < 1e-12) return a;  // coincident endpoints
  const double s = std::sin(w);
  return (std::sin(w * (1.0 - x)) / s) * a + (std::sin(w * x) / s) * b;
}

Vec3 hedgehog(const Vec3& x) {
  const double r = norm(x);
  if (r < 1e-300) throw OracleError("hedgehog is undefined at the origin");
  return (1.0 / r) * x;
}

Vec3 apply_matrix(const std::array<Vec3, 3>& Q, const Vec3& x) {
  return {dot(Q[0], x), dot(Q[1], x), dot(Q[2], x)};
}

Vec3 rotated_hedgehog(const std::array<Vec3, 3>& Q, const Vec3& x) {
  const std::array<Vec3, 3> Qt = {Vec3{Q[0][0], Q[1][0], Q[2][0]},
                                  Vec3{Q[0][1], Q[1][1], Q[2][1]},
                                  Vec3{Q[0][2], Q[1][2], Q[2][2]}};
  return apply_matrix(Q, hedgehog(apply_matrix(Qt, x)));
}

std::array<Vec3, 3> axis_angle_rotation(const Vec3& axis, double angle) {
  const Vec3 u = normalized(axis);
  const double c = std::cos(angle), s = std::sin(angle);
  std::array<Vec3, 3> R;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double outer = u[i] * u[j] * (1.0 - c);
      R[i][j] = outer + (i == j ? c : 0.0);
    }
  R[0][1] -= s * u[2];
  R[0][2] += s * u[1];
  R[1][0] += s * u[2];
  R[1][2] -= s * u[0];
  R[2][0] -= s * u[1];
  R[2][1] += s * u[0];
  return R;
}

double ring_alpha(double r, double rho, double R, double alpha0) {
  return alpha0 * std::log(r / R) / std::log(rho / R);
}

Vec3 ring_solution(double x, double y, double rho, double R, double alpha0) {
  const double r = std::sqrt(x * x + y * y);
  if (!(r >= rho * (1.0 - 1e-9) && r <= R * (1.0 + 1e-9)))
    throw OracleError("ring solution evaluated outside the annulus");
  const double theta = std::atan2(y, x);
  const Vec3 d0{-std::sin(theta), std::cos(theta), 0.0};
  const double alpha = ring_alpha(r, rho, R, alpha0);
  const double c = std::cos(alpha), s = std::sin(alpha);
  return {c * d0[0] - s * d0[1], s * d0[0] + c * d0[1], 0.0};
}

}  // namespace fo::oracles
