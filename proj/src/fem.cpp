#include "fo/fem.hpp"

#include <cmath>

#include "fo/kernels.hpp"

namespace fo {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double ipow(double x, int e) {
  double r = 1.0;
  for (int k = 0; k < e; ++k) r *= x;
  return r;
}

// Facet measure (1 for points, length for edges, area for triangles).
double facet_measure(const Mesh& mesh, int f) {
  const auto fv = mesh.facet(f);
  switch (mesh.dim) {
    case 1:
      return 1.0;
    case 2:
      return norm(mesh.vertices[fv[1]] - mesh.vertices[fv[0]]);
    default:
      return 0.5 * norm(cross(mesh.vertices[fv[1]] - mesh.vertices[fv[0]],
                              mesh.vertices[fv[2]] - mesh.vertices[fv[0]]));
  }
}

}  // namespace

Quadrature simplex_quadrature(int dim) {
  // Grundmann-Moller rule with s = 2, degree 2s+1 = 5.
  const int s = 2;
  const int d = 2 * s + 1;
  const int n = dim;
  Quadrature q;
  q.degree = d;
  double raw_sum = 0.0;
  for (int i = 0; i <= s; ++i) {
    const double w = ipow(-1.0, i) * std::pow(2.0, -2.0 * s) *
                     ipow(static_cast<double>(d + n - 2 * i), d) /
                     (factorial(i) * factorial(d + n - i));
    // Enumerate multi-indices beta of length dim+1 with |beta| = s - i.
    const int total = s - i;
    std::vector<int> beta(n + 1, 0);
    beta[0] = total;
    while (true) {
      std::vector<double> pt(n + 1);
      for (int k = 0; k <= n; ++k)
        pt[k] = static_cast<double>(2 * beta[k] + 1) / (d + n - 2 * i);
      q.points.push_back(pt);
      q.weights.push_back(w);
      raw_sum += w;
      // Next composition of `total` into n+1 parts.
      int k = 0;
      while (k < n && beta[k] == 0) ++k;
      if (k == n) break;
      const int carry = beta[k];
      beta[k] = 0;
      beta[0] = carry - 1;
      beta[k + 1] += 1;
    }
  }
  for (auto& w : q.weights) w /= raw_sum;
  return q;
}

SparseMatrix assemble_stiffness_scalar(const Mesh& mesh) {
  const int nv = mesh.n_vertices();
  TripletBuilder builder(nv, nv);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto cv = mesh.cell(c);
    const auto g = mesh.cell_shape_grads(c);
    const double vol = mesh.cell_volume[c];
    for (int i = 0; i <= mesh.dim; ++i)
      for (int j = 0; j <= mesh.dim; ++j)
        builder.add(cv[i], cv[j], vol * dot(g[i], g[j]));
  }
  return builder.compress();
}

SparseMatrix assemble_mass_scalar(const Mesh& mesh) {
  const int nv = mesh.n_vertices();
  TripletBuilder builder(nv, nv);
  const double nd = mesh.dim + 1;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto cv = mesh.cell(c);
    // P1 mass on a simplex: vol/((n+1)(n+2)) * (1 + delta_ij).
    const double base = mesh.cell_volume[c] / (nd * (nd + 1.0));
    for (int i = 0; i <= mesh.dim; ++i)
      for (int j = 0; j <= mesh.dim; ++j)
        builder.add(cv[i], cv[j], base * (i == j ? 2.0 : 1.0));
  }
  return builder.compress();
}

namespace {

void add_nitsche_terms(const Mesh& mesh, const NormalField& normals,
                       const NitscheParams& nitsche, TripletBuilder& builder) {
  const int nv = mesh.n_vertices();
  for (int f = 0; f < mesh.n_facets(); ++f) {
    bool active = false;
    for (int t : nitsche.tags) active = active || mesh.facet_tags[f] == t;
    if (!active) continue;
    const int cell = mesh.facet_cell[f];
    const auto cv = mesh.cell(cell);
    const auto grads = mesh.cell_shape_grads(cell);
    const Vec3 N = normals.facet_normal[f];
    const double measure = facet_measure(mesh, f);
    const double h_t = mesh.cell_diameter[cell];
    const auto fv = mesh.facet(f);

    // Integrals of cell shape functions over the facet: measure/dim for the
    // facet's own vertices (evaluation for point facets), 0 otherwise.
    std::vector<double> psi_int(mesh.dim + 1, 0.0);
    std::vector<char> on_facet(mesh.dim + 1, 0);
    for (int i = 0; i <= mesh.dim; ++i)
      for (auto v : fv)
        if (cv[i] == v) {
          psi_int[i] = mesh.dim == 1 ? 1.0 : measure / mesh.dim;
          on_facet[i] = 1;
        }

    for (int i = 0; i <= mesh.dim; ++i) {
      for (int j = 0; j <= mesh.dim; ++j) {
        // Consistency term and its transpose, both with negative sign so the
        // operator stays symmetric: -(v.N)(N' grad(d) N) - (d.N)(N' grad(v) N).
        const double consistency =
            -(psi_int[i] * dot(grads[j], N) + psi_int[j] * dot(grads[i], N));
        // Facet P1 mass for the penalty; only facet vertices contribute.
        double mass = 0.0;
        if (on_facet[i] && on_facet[j]) {
          if (mesh.dim == 1)
            mass = 1.0;
          else
            mass = measure / (mesh.dim * (mesh.dim + 1.0)) *
                   (cv[i] == cv[j] ? 2.0 : 1.0);
        }
        const double penalty = nitsche.penalty / h_t * mass;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            const double v = N[a] * N[b] * (consistency + penalty);
            if (v != 0.0)
              builder.add(a * nv + cv[i], b * nv + cv[j], v);
          }
      }
    }
  }
}

}  // namespace

SparseMatrix assemble_vector_operator(const Mesh& mesh,
                                      const NormalField& normals,
                                      const NitscheParams& nitsche) {
  const int nv = mesh.n_vertices();
  TripletBuilder builder(3 * nv, 3 * nv);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto cv = mesh.cell(c);
    const auto g = mesh.cell_shape_grads(c);
    const double vol = mesh.cell_volume[c];
    for (int i = 0; i <= mesh.dim; ++i)
      for (int j = 0; j <= mesh.dim; ++j) {
        const double v = vol * dot(g[i], g[j]);
        for (int comp = 0; comp < 3; ++comp)
          builder.add(comp * nv + cv[i], comp * nv + cv[j], v);
      }
  }
  if (!nitsche.tags.empty())
    add_nitsche_terms(mesh, normals, nitsche, builder);
  return builder.compress();
}

double nitsche_boundary_form(const Mesh& mesh, const NormalField& normals,
                             const NitscheParams& nitsche,
                             const VectorField& d) {
  const int nv = mesh.n_vertices();
  TripletBuilder builder(3 * nv, 3 * nv);
  add_nitsche_terms(mesh, normals, nitsche, builder);
  const SparseMatrix B = builder.compress();
  std::vector<double> Bd(3 * nv, 0.0);
  B.apply(d.values.data(), Bd.data());
  return kernels::dot(d.values.data(), Bd.data(), Bd.size());
}

std::vector<Vec3> cell_gradients(const ScalarField& f) {
  const Mesh& mesh = *f.mesh;
  std::vector<Vec3> g(mesh.n_cells(), Vec3{0, 0, 0});
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto cv = mesh.cell(c);
    const auto grads = mesh.cell_shape_grads(c);
    Vec3 acc{0, 0, 0};
    for (int i = 0; i <= mesh.dim; ++i)
      acc = acc + f.values[cv[i]] * grads[i];
    g[c] = acc;
  }
  return g;
}

std::vector<std::array<Vec3, 3>> cell_gradients(const VectorField& f) {
  const Mesh& mesh = *f.mesh;
  std::vector<std::array<Vec3, 3>> g(mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto cv = mesh.cell(c);
    const auto grads = mesh.cell_shape_grads(c);
    std::array<Vec3, 3> G{Vec3{0, 0, 0}, Vec3{0, 0, 0}, Vec3{0, 0, 0}};
    for (int i = 0; i <= mesh.dim; ++i) {
      const Vec3 di = f.at(cv[i]);
      for (int r = 0; r < 3; ++r) G[r] = G[r] + di[r] * grads[i];
    }
    g[c] = G;
  }
  return g;
}

std::vector<Vec3> recover_nodal_gradient(const ScalarField& f) {
  const Mesh& mesh = *f.mesh;
  const auto cg = cell_gradients(f);
  std::vector<Vec3> out(mesh.n_vertices(), Vec3{0, 0, 0});
  std::vector<double> weight(mesh.n_vertices(), 0.0);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const double vol = mesh.cell_volume[c];
    for (auto v : mesh.cell(c)) {
      out[v] = out[v] + vol * cg[c];
      weight[v] += vol;
    }
  }
  for (int v = 0; v < mesh.n_vertices(); ++v)
    out[v] = (1.0 / weight[v]) * out[v];
  return out;
}

std::vector<std::array<Vec3, 3>> recover_nodal_gradient(const VectorField& f) {
  const Mesh& mesh = *f.mesh;
  const auto cg = cell_gradients(f);
  std::vector<std::array<Vec3, 3>> out(
      mesh.n_vertices(), {Vec3{0, 0, 0}, Vec3{0, 0, 0}, Vec3{0, 0, 0}});
  std::vector<double> weight(mesh.n_vertices(), 0.0);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const double vol = mesh.cell_volume[c];
    for (auto v : mesh.cell(c)) {
      for (int r = 0; r < 3; ++r) out[v][r] = out[v][r] + vol * cg[c][r];
      weight[v] += vol;
    }
  }
  for (int v = 0; v < mesh.n_vertices(); ++v)
    for (int r = 0; r < 3; ++r) out[v][r] = (1.0 / weight[v]) * out[v][r];
  return out;
}

std::vector<double> recovered_gradient_norm_sq(const VectorField& f) {
  const auto G = recover_nodal_gradient(f);
  std::vector<double> out(G.size(), 0.0);
  for (std::size_t v = 0; v < G.size(); ++v)
    out[v] = dot(G[v][0], G[v][0]) + dot(G[v][1], G[v][1]) +
             dot(G[v][2], G[v][2]);
  return out;
}

namespace {

template <typename Eval, typename Exact, typename Sq>
double l2_error_impl(const Mesh& mesh, const Quadrature& q, Eval eval,
                     Exact exact, Sq sq) {
  double total = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto cv = mesh.cell(c);
    double cell_err = 0.0;
    for (std::size_t p = 0; p < q.points.size(); ++p) {
      Vec3 x{0, 0, 0};
      for (int k = 0; k <= mesh.dim; ++k)
        x = x + q.points[p][k] * mesh.vertices[cv[k]];
      cell_err += q.weights[p] * sq(eval(c, q.points[p]), exact(x));
    }
    total += mesh.cell_volume[c] * cell_err;
  }
  return std::sqrt(total);
}

}  // namespace

double l2_error(const ScalarField& f,
                const std::function<double(Vec3)>& exact) {
  const Mesh& mesh = *f.mesh;
  const Quadrature q = simplex_quadrature(mesh.dim);
  return l2_error_impl(
      mesh, q,
      [&](int c, const std::vector<double>& bary) {
        const auto cv = mesh.cell(c);
        double v = 0.0;
        for (int k = 0; k <= mesh.dim; ++k) v += bary[k] * f.values[cv[k]];
        return v;
      },
      exact, [](double a, double b) { return (a - b) * (a - b); });
}

double l2_error(const VectorField& f, const std::function<Vec3(Vec3)>& exact) {
  const Mesh& mesh = *f.mesh;
  const Quadrature q = simplex_quadrature(mesh.dim);
  return l2_error_impl(
      mesh, q,
      [&](int c, const std::vector<double>& bary) {
        const auto cv = mesh.cell(c);
        Vec3 v{0, 0, 0};
        for (int k = 0; k <= mesh.dim; ++k) v = v + bary[k] * f.at(cv[k]);
        return v;
      },
      exact,
      [](const Vec3& a, const Vec3& b) {
        const Vec3 d = a - b;
        return dot(d, d);
      });
}

double h1_seminorm(const ScalarField& f) {
  const Mesh& mesh = *f.mesh;
  const auto g = cell_gradients(f);
  double total = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c)
    total += mesh.cell_volume[c] * dot(g[c], g[c]);
  return std::sqrt(total);
}

double h1_seminorm(const VectorField& f) {
  const Mesh& mesh = *f.mesh;
  const auto g = cell_gradients(f);
  double total = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c)
    total += mesh.cell_volume[c] * (dot(g[c][0], g[c][0]) +
                                    dot(g[c][1], g[c][1]) +
                                    dot(g[c][2], g[c][2]));
  return std::sqrt(total);
}

double h1_seminorm_error(
    const VectorField& f,
    const std::function<std::array<Vec3, 3>(Vec3)>& exact_gradient) {
  const Mesh& mesh = *f.mesh;
  const Quadrature q = simplex_quadrature(mesh.dim);
  const auto g = cell_gradients(f);
  double total = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto cv = mesh.cell(c);
    double cell_err = 0.0;
    for (std::size_t p = 0; p < q.points.size(); ++p) {
      Vec3 x{0, 0, 0};
      for (int k = 0; k <= mesh.dim; ++k)
        x = x + q.points[p][k] * mesh.vertices[cv[k]];
      const std::array<Vec3, 3> ge = exact_gradient(x);
      for (int r = 0; r < 3; ++r) {
        const Vec3 diff = g[c][r] - ge[r];
        cell_err += q.weights[p] * dot(diff, diff);
      }
    }
    total += mesh.cell_volume[c] * cell_err;
  }
  return std::sqrt(total);
}

double quadratic_energy(const SparseMatrix& A, const std::vector<double>& f) {
  std::vector<double> Af(f.size(), 0.0);
  A.apply(f.data(), Af.data());
  return 0.5 * kernels::dot(f.data(), Af.data(), f.size());
}

}  // namespace fo
