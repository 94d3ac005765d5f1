#pragma once
// P1 finite element spaces on simplicial meshes: nodal fields, assembly of
// stiffness, mass and Nitsche boundary terms, gradient recovery and norms.
//
// Vector fields always carry 3 components stored component-major (all x,
// then all y, then all z); the scalar DOF (c, i) maps to index c*N + i.
// Problems posed in the plane keep the third component exactly zero.

#include <functional>
#include <vector>

#include "fo/linalg.hpp"
#include "fo/mesh.hpp"
#include "fo/vec3.hpp"

namespace fo {

struct ScalarField {
  const Mesh* mesh = nullptr;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const Mesh& m, double fill = 0.0)
      : mesh(&m), values(m.n_vertices(), fill) {}
};

struct VectorField {
  const Mesh* mesh = nullptr;
  std::vector<double> values;  // component-major, size 3*n_vertices

  VectorField() = default;
  explicit VectorField(const Mesh& m)
      : mesh(&m), values(static_cast<std::size_t>(m.n_vertices()) * 3, 0.0) {}

  int n() const { return mesh ? mesh->n_vertices() : 0; }
  double* comp(int c) { return values.data() + static_cast<std::size_t>(c) * n(); }
  const double* comp(int c) const {
    return values.data() + static_cast<std::size_t>(c) * n();
  }
  Vec3 at(int i) const {
    const int nv = n();
    return {values[i], values[nv + i], values[2 * nv + i]};
  }
  void set(int i, const Vec3& v) {
    const int nv = n();
    values[i] = v[0];
    values[nv + i] = v[1];
    values[2 * nv + i] = v[2];
  }
};

// Barycentric quadrature rule on the reference simplex; weights sum to 1 and
// the rule is exact for polynomials up to the stated degree (Grundmann-
// Moller construction, degree 5).
struct Quadrature {
  int degree = 0;
  std::vector<std::vector<double>> points;  // barycentric, dim+1 entries
  std::vector<double> weights;
};

Quadrature simplex_quadrature(int dim);

// Scalar P1 stiffness: A_ij = sum_T vol grad_i . grad_j.
SparseMatrix assemble_stiffness_scalar(const Mesh& mesh);

// Consistent P1 mass matrix; row sums equal the lumped nodal volumes.
SparseMatrix assemble_mass_scalar(const Mesh& mesh);

struct NitscheParams {
  double penalty = 10.0;     // C in the C/h_T penalty
  std::vector<int> tags;     // facet tags carrying the slip condition d.N = 0
};

// Vector Laplace operator: three scalar stiffness blocks plus, on the listed
// facets, the symmetric Nitsche terms for the slip condition d.N = 0
// (consistency term, its transpose and the C/h_T penalty).  The result is
// symmetric.
SparseMatrix assemble_vector_operator(const Mesh& mesh,
                                      const NormalField& normals,
                                      const NitscheParams& nitsche);

// Quadratic form of the Nitsche boundary terms alone (diagnostics).
double nitsche_boundary_form(const Mesh& mesh, const NormalField& normals,
                             const NitscheParams& nitsche,
                             const VectorField& d);

// Constant per-cell gradients.
std::vector<Vec3> cell_gradients(const ScalarField& f);
// Per-cell 3x3 gradients, G[r][c] = d(comp r)/d(x_c).
std::vector<std::array<Vec3, 3>> cell_gradients(const VectorField& f);

// Volume-weighted average of adjacent cell gradients at each vertex.
std::vector<Vec3> recover_nodal_gradient(const ScalarField& f);
std::vector<std::array<Vec3, 3>> recover_nodal_gradient(const VectorField& f);

// Squared Frobenius norm of the recovered gradient per node.
std::vector<double> recovered_gradient_norm_sq(const VectorField& f);

double l2_error(const ScalarField& f, const std::function<double(Vec3)>& exact);
double l2_error(const VectorField& f, const std::function<Vec3(Vec3)>& exact);

double h1_seminorm(const ScalarField& f);
double h1_seminorm(const VectorField& f);

// sqrt(int |grad f_h - exact_gradient|^2): cellwise constant discrete
// gradient against the exact one (rows = components) under the degree-5
// quadrature.
double h1_seminorm_error(
    const VectorField& f,
    const std::function<std::array<Vec3, 3>(Vec3)>& exact_gradient);

// 0.5 * f' A f for an assembled operator.
double quadratic_energy(const SparseMatrix& A, const std::vector<double>& f);

}  // namespace fo
