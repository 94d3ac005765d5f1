#pragma once
// Unit-norm director fields minimizing the one-constant Frank-Oseen energy
// 1/2 int |grad d|^2 by preconditioned projected gradient descent.
//
// One outer iteration solves P dd = -r(d) with a fixed SPD approximate
// inverse P of the linear operator, updates d, and renormalizes free nodes
// with the regularized projection v -> v / (eps + |v|).  The nonlinear
// residual is r(d) = A d - lambda d - M g with the multiplier term
// eliminated nodewise (lambda_i d_i is the component of A d - M g along
// d_i, the discrete realization of |grad d|^2 d); rows of constrained DOFs
// are zeroed.  Convergence is declared when the scaled l2 norm (1/N) sqrt(sum
// r_i^2) over the N free scalar DOFs drops below rtol times its initial
// value.

#include <functional>
#include <string>
#include <vector>

#include "fo/fem.hpp"
#include "fo/linalg.hpp"
#include "fo/mesh.hpp"

namespace fo {

struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverConfig {
  double epsilon = 1e-8;         // projection regularization
  double nitsche_penalty = 10.0; // C in the C/h_T slip penalty
  double rtol = 1e-8;            // relative residual stopping criterion
  int max_iterations = 500;
  PreconditionerSpec preconditioner{};  // CgInner(30) by default
  bool freeze_dirichlet = true;  // never project Dirichlet nodes
  double divergence_guard = 1e3; // abort when err exceeds this times the scale
};

struct VectorBc {
  enum class Kind { Dirichlet, Slip, Natural };
  int tag = 0;
  Kind kind = Kind::Natural;
  // Dirichlet data per boundary vertex; unused for Slip/Natural.
  std::function<Vec3(int vertex, const Vec3& pos)> value;
};

struct PointConstraint {
  int vertex = -1;
  Vec3 value{0, 0, 0};
};

struct DirectorSystem {
  const Mesh* mesh = nullptr;
  NormalField normals;
  SparseMatrix A_full;   // stiffness + Nitsche terms, no elimination
  SparseMatrix A_elim;   // constrained rows/columns eliminated (SPD)
  SparseMatrix mass;     // scalar mass matrix, applied per component
  std::vector<char> node_dirichlet;      // per vertex
  std::vector<double> dirichlet_values;  // component-major, 3N
  std::vector<double> project_mask;      // per vertex, 1.0 = project
  int n_free_dofs = 0;
  SolverConfig config;
};

// Assembles operators and boundary data.  Point constraints win over tag
// Dirichlet data at the same vertex; where two tagged surfaces share a
// vertex (corners, edges) the later condition in bcs wins.  Throws
// std::invalid_argument for more than one condition per tag, contradictory
// point constraints, or non-unit Dirichlet data (point constraints may be
// zero).
DirectorSystem build_director_system(const Mesh& mesh,
                                     const std::vector<VectorBc>& bcs,
                                     const std::vector<PointConstraint>& points,
                                     const SolverConfig& config);

// Tangential optimality residual with optional load g; constrained rows are
// zeroed.  Nodewise orthogonal to d by construction.
std::vector<double> residual(const DirectorSystem& sys, const VectorField& d,
                             const VectorField* load = nullptr);

// Scaled l2 norm (1/N_free) sqrt(sum a_i^2).
double scaled_l2(const DirectorSystem& sys, const std::vector<double>& a);

// 1/2 d' A d with the full operator (includes Nitsche boundary terms).
double director_energy(const DirectorSystem& sys, const VectorField& d);

// Nodewise regularized projection of v onto the unit sphere.
Vec3 project_sphere(const Vec3& v, double eps);

// Lagrange multiplier estimate -1/2 |grad d|^2 from the recovered gradient.
ScalarField lambda_field(const VectorField& d);

struct ConvergenceRecord {
  int iteration = 0;
  double residual = 0.0;       // scaled l2 of the nonlinear residual
  double energy = 0.0;
  double max_unit_deviation = 0.0;  // max over free nodes of |1 - |d_i||
};

enum class SolveStatus { Converged, MaxIterations };

struct ConvergenceLog {
  SolveStatus status = SolveStatus::MaxIterations;
  int iterations = 0;
  double initial_residual = 0.0;
  double final_residual = 0.0;
  std::vector<ConvergenceRecord> records;
};

struct PpgdResult {
  VectorField d;
  ConvergenceLog log;
  // |d + dd| per node before the final projection; minima locate defects.
  std::vector<double> pre_projection_norm;
};

// Algorithm: preconditioned projected gradient descent.  The initial guess
// must be unit at free nodes; Dirichlet values are imposed exactly.  Throws
// SolveError when the iteration produces NaNs or the residual grows past
// the divergence guard factor times the initial scale.
PpgdResult ppgd_solve(const DirectorSystem& sys, const VectorField& d0);

}  // namespace fo
