#pragma once
// Fiber pipelines on tagged ventricle meshes.
//
// Both pipelines build the local frame (transversal, apicobasal, transmural)
// and rotate the transversal direction by a transmurally varying angle.  The
// potential pipeline reads the rotation weight from a scalar harmonic field
// and applies the rotation nodewise; the director pipeline imposes the
// rotated values as boundary data and lets the energy minimization
// interpolate them through the wall.
//
// Orientation convention: transmural points endocardium -> epicardium
// (-N on endo, +N on epi), apicobasal points apex -> base (N on the base,
// zero at the apex vertex).  Potentials are 1 on endo / 0 on epi and 1 at
// the apex / 0 on the base, so the matching potential-based directions are
// the descending (negative) normalized gradients.

#include <string>

#include "fo/fem.hpp"
#include "fo/frankoseen.hpp"
#include "fo/mesh.hpp"

namespace fo {

struct RotationParams {
  double alpha_endo = 60.0 * kPi / 180.0;
  double alpha_epi = -60.0 * kPi / 180.0;

  // Rotation angle at transmural weight phi (1 = endo, 0 = epi).
  double alpha(double phi) const {
    return phi * alpha_endo + (1.0 - phi) * alpha_epi;
  }
};

struct FiberBundle {
  VectorField f;  // fiber
  VectorField s;  // sheet (transmural)
  VectorField n;  // cross-fiber
  std::string method;  // "rbm" or "frank-oseen"
  RotationParams rotation;
  ConvergenceLog fiber_log;       // populated by the director pipeline
  double max_basis_defect = 0.0;  // worst |B'B - I| entry over all rotations
};

// Descending normalized gradient -grad(phi)/|grad(phi)| from the recovered
// nodal gradient, regularized like the sphere projection.
VectorField descending_gradient_direction(const ScalarField& phi,
                                          double eps = 1e-8);

// Nodewise v - (v.ref/|ref|^2) ref followed by the regularized projection.
VectorField orthogonalized(const VectorField& v, const VectorField& ref,
                           double eps = 1e-8);

// Nodewise cross product d_trans x d_ab, regularized projection applied.
VectorField transversal(const VectorField& d_trans, const VectorField& d_ab,
                        double eps = 1e-8);

// Q = B R(alpha) B' with basis columns B = [d, d_ab, d_trans] and R the
// rotation about the third axis.  Returns Q rows; *defect receives the
// largest |B'B - I| entry when given.
std::array<Vec3, 3> rotation_operator(const Vec3& d, const Vec3& d_ab,
                                      const Vec3& d_trans, double alpha,
                                      double* defect = nullptr);

// Director solve for the transmural direction: -N on endo, +N on epi, slip
// condition on the base.  Initial guess interpolates the boundary data
// radially; non-convergence is reported through the log.
PpgdResult transmural_vector_fo(const Mesh& mesh, const SolverConfig& config);

// Director solve for the apicobasal direction: N on the base, zero at the
// apex vertex, slip condition on endo and epi; the result is orthogonalized
// against d_trans nodewise.
PpgdResult apicobasal_vector_fo(const Mesh& mesh, std::int32_t apex,
                                const VectorField& d_trans,
                                const SolverConfig& config);

// Potential pipeline: f_i = Q(alpha(phi_i)) d_i with d the transversal
// field; s = d_trans, n = cross-fiber d_ab - (d_ab.f) f renormalized.
FiberBundle fibers_rbm(const Mesh& mesh, const ScalarField& phi_trans,
                       const VectorField& d_trans, const VectorField& d_ab,
                       const RotationParams& rotation, double eps = 1e-8);

// Director pipeline: Dirichlet f = Q(alpha_endo) d on endo and
// f = Q(alpha_epi) d on epi (apex vertex pinned to zero), natural on the
// base; the rotated boundary values match fibers_rbm exactly.
FiberBundle fibers_fo(const Mesh& mesh, const VectorField& d_trans,
                      const VectorField& d_ab, const RotationParams& rotation,
                      const SolverConfig& config);

// Nodewise angle between two direction fields, in degrees.
ScalarField angle_error(const VectorField& f1, const VectorField& f2);

// Nodewise projection r_i . f_i of the nonlinear residual onto the field;
// a discrete proxy for the tangential load consistency check.
ScalarField nematic_deviation(const VectorField& f, const DirectorSystem& sys);

// Nodewise largest |F'F - I| entry for F = [f s n]; apex neighborhoods are
// excluded by callers, not here.
ScalarField bundle_defect(const FiberBundle& bundle);

}  // namespace fo
