#pragma once
// Closed-form reference solutions used to validate the solvers.  These are
// written directly from the analytic formulas and must not depend on the
// finite element implementation.

#include <stdexcept>

#include "fo/vec3.hpp"

namespace fo::oracles {

struct OracleError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Geodesic interpolation on the unit sphere between unit vectors a and b:
//   d(x) = [sin(w(1-x)) a + sin(wx) b] / sin(w),  cos(w) = <a, b>.
// Throws for antipodal endpoints (the geodesic is not unique).
Vec3 slerp(const Vec3& a, const Vec3& b, double x);

// Opening angle w of the slerp pair.
double slerp_angle(const Vec3& a, const Vec3& b);

// Radial unit field x/|x|; undefined at the origin.
Vec3 hedgehog(const Vec3& x);

// Hedgehog conjugated with a constant rotation: Q hedgehog(Q^T x).
Vec3 rotated_hedgehog(const std::array<Vec3, 3>& Q, const Vec3& x);

// Apply a 3x3 matrix given as rows.
Vec3 apply_matrix(const std::array<Vec3, 3>& Q, const Vec3& x);

// Rotation by angle about a unit axis (Rodrigues), returned as rows.
std::array<Vec3, 3> axis_angle_rotation(const Vec3& axis, double angle);

// In-plane ring solution on the annulus rho < r < R:
//   u(r, theta) = Q_{alpha(r)} d0(theta),  d0 = (-sin theta, cos theta, 0),
//   alpha(r) = alpha0 log(r/R) / log(rho/R),
// where Q_alpha rotates in the plane.  alpha(R) = 0, alpha(rho) = alpha0.
Vec3 ring_solution(double x, double y, double rho, double R, double alpha0);

double ring_alpha(double r, double rho, double R, double alpha0);

}  // namespace fo::oracles
