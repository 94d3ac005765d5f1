#include "fo/fibers.hpp"

#include <cmath>
#include <stdexcept>

namespace fo {

namespace {

Vec3 apply_rows(const std::array<Vec3, 3>& Q, const Vec3& x) {
  return {dot(Q[0], x), dot(Q[1], x), dot(Q[2], x)};
}

Vec3 safe_unit(const Vec3& v, const Vec3& fallback) {
  const double n = norm(v);
  if (n < 1e-12) return fallback;
  return (1.0 / n) * v;
}

}  // namespace

VectorField descending_gradient_direction(const ScalarField& phi, double eps) {
  const std::vector<Vec3> grad = recover_nodal_gradient(phi);
  VectorField out(*phi.mesh);
  for (int i = 0; i < out.n(); ++i)
    out.set(i, project_sphere(-1.0 * grad[i], eps));
  return out;
}

VectorField orthogonalized(const VectorField& v, const VectorField& ref,
                           double eps) {
  if (v.mesh != ref.mesh)
    throw std::invalid_argument("fields live on different meshes");
  VectorField out(*v.mesh);
  for (int i = 0; i < out.n(); ++i) {
    const Vec3 a = v.at(i);
    const Vec3 r = ref.at(i);
    const double rr = dot(r, r);
    Vec3 t = a;
    if (rr > 1e-24) t = a - (dot(a, r) / rr) * r;
    out.set(i, project_sphere(t, eps));
  }
  return out;
}

VectorField transversal(const VectorField& d_trans, const VectorField& d_ab,
                        double eps) {
  if (d_trans.mesh != d_ab.mesh)
    throw std::invalid_argument("fields live on different meshes");
  VectorField out(*d_trans.mesh);
  for (int i = 0; i < out.n(); ++i)
    out.set(i, project_sphere(cross(d_trans.at(i), d_ab.at(i)), eps));
  return out;
}

std::array<Vec3, 3> rotation_operator(const Vec3& d, const Vec3& d_ab,
                                      const Vec3& d_trans, double alpha,
                                      double* defect) {
  const std::array<Vec3, 3> b{d, d_ab, d_trans};  // basis columns
  if (defect) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double g = dot(b[i], b[j]) - (i == j ? 1.0 : 0.0);
        worst = std::max(worst, std::abs(g));
      }
    *defect = std::max(*defect, worst);
  }
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  // Rows of R(alpha) B': the third basis direction is the rotation axis.
  const Vec3 m0 = c * b[0] - s * b[1];
  const Vec3 m1 = s * b[0] + c * b[1];
  const Vec3& m2 = b[2];
  std::array<Vec3, 3> Q;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      Q[i][j] = b[0][i] * m0[j] + b[1][i] * m1[j] + b[2][i] * m2[j];
  return Q;
}

PpgdResult transmural_vector_fo(const Mesh& mesh, const SolverConfig& config) {
  const int endo = mesh.tag_id("endo");
  const int epi = mesh.tag_id("epi");
  const int base = mesh.tag_id("base");
  const std::vector<Vec3> n_endo = vertex_normals_for_tag(mesh, endo);
  const std::vector<Vec3> n_epi = vertex_normals_for_tag(mesh, epi);

  std::vector<VectorBc> bcs(3);
  bcs[0] = {endo, VectorBc::Kind::Dirichlet,
            [&n_endo](int v, const Vec3&) { return -1.0 * n_endo[v]; }};
  bcs[1] = {epi, VectorBc::Kind::Dirichlet,
            [&n_epi](int v, const Vec3&) { return n_epi[v]; }};
  bcs[2] = {base, VectorBc::Kind::Slip, nullptr};

  const DirectorSystem sys = build_director_system(mesh, bcs, {}, config);

  Vec3 center{0, 0, 0};
  for (const Vec3& x : mesh.vertices) center = center + x;
  center = (1.0 / mesh.n_vertices()) * center;

  VectorField d0(mesh);
  for (int v = 0; v < d0.n(); ++v)
    d0.set(v, safe_unit(mesh.vertices[v] - center, Vec3{1, 0, 0}));
  return ppgd_solve(sys, d0);
}

PpgdResult apicobasal_vector_fo(const Mesh& mesh, std::int32_t apex,
                                const VectorField& d_trans,
                                const SolverConfig& config) {
  const int endo = mesh.tag_id("endo");
  const int epi = mesh.tag_id("epi");
  const int base = mesh.tag_id("base");
  const std::vector<Vec3> n_base = vertex_normals_for_tag(mesh, base);

  std::vector<VectorBc> bcs(3);
  bcs[0] = {base, VectorBc::Kind::Dirichlet,
            [&n_base](int v, const Vec3&) { return n_base[v]; }};
  bcs[1] = {endo, VectorBc::Kind::Slip, nullptr};
  bcs[2] = {epi, VectorBc::Kind::Slip, nullptr};
  const std::vector<PointConstraint> points{{apex, Vec3{0, 0, 0}}};

  const DirectorSystem sys = build_director_system(mesh, bcs, points, config);

  // Constant apex-to-base axis guess.
  Vec3 base_centroid{0, 0, 0};
  int n_on_base = 0;
  const std::vector<char> on_base = mesh.vertices_on_tag(base);
  for (int v = 0; v < mesh.n_vertices(); ++v)
    if (on_base[v]) {
      base_centroid = base_centroid + mesh.vertices[v];
      ++n_on_base;
    }
  base_centroid = (1.0 / n_on_base) * base_centroid;
  const Vec3 axis =
      safe_unit(base_centroid - mesh.vertices[apex], Vec3{0, 0, 1});

  VectorField d0(mesh);
  for (int v = 0; v < d0.n(); ++v) d0.set(v, axis);
  PpgdResult result = ppgd_solve(sys, d0);
  result.d = orthogonalized(result.d, d_trans, config.epsilon);
  return result;
}

FiberBundle fibers_rbm(const Mesh& mesh, const ScalarField& phi_trans,
                       const VectorField& d_trans, const VectorField& d_ab,
                       const RotationParams& rotation, double eps) {
  if (phi_trans.mesh != &mesh || d_trans.mesh != &mesh || d_ab.mesh != &mesh)
    throw std::invalid_argument("fields live on different meshes");
  FiberBundle bundle;
  bundle.method = "rbm";
  bundle.rotation = rotation;

  const VectorField d = transversal(d_trans, d_ab, eps);
  bundle.f = VectorField(mesh);
  for (int i = 0; i < bundle.f.n(); ++i) {
    const auto Q =
        rotation_operator(d.at(i), d_ab.at(i), d_trans.at(i),
                          rotation.alpha(phi_trans.values[i]),
                          &bundle.max_basis_defect);
    bundle.f.set(i, apply_rows(Q, d.at(i)));
  }
  bundle.s = d_trans;
  bundle.n = orthogonalized(d_ab, bundle.f, eps);
  return bundle;
}

FiberBundle fibers_fo(const Mesh& mesh, const VectorField& d_trans,
                      const VectorField& d_ab, const RotationParams& rotation,
                      const SolverConfig& config) {
  if (d_trans.mesh != &mesh || d_ab.mesh != &mesh)
    throw std::invalid_argument("fields live on different meshes");
  const int endo = mesh.tag_id("endo");
  const int epi = mesh.tag_id("epi");

  FiberBundle bundle;
  bundle.method = "frank-oseen";
  bundle.rotation = rotation;

  const VectorField d = transversal(d_trans, d_ab, config.epsilon);
  // Rotated boundary values; computed exactly as in fibers_rbm so the two
  // pipelines agree bitwise on endo and epi nodes.
  auto rotated = [&](int v, double alpha) {
    const auto Q = rotation_operator(d.at(v), d_ab.at(v), d_trans.at(v), alpha,
                                     &bundle.max_basis_defect);
    return apply_rows(Q, d.at(v));
  };

  std::vector<VectorBc> bcs(2);
  bcs[0] = {endo, VectorBc::Kind::Dirichlet, [&](int v, const Vec3&) {
              return rotated(v, rotation.alpha(1.0));
            }};
  bcs[1] = {epi, VectorBc::Kind::Dirichlet, [&](int v, const Vec3&) {
              return rotated(v, rotation.alpha(0.0));
            }};
  std::vector<PointConstraint> points;
  const std::int32_t apex =
      mesh.apex_vertex >= 0 ? mesh.apex_vertex : locate_apex(mesh);
  points.push_back({apex, Vec3{0, 0, 0}});

  const DirectorSystem sys = build_director_system(mesh, bcs, points, config);

  VectorField d0(mesh);
  for (int v = 0; v < d0.n(); ++v)
    d0.set(v, safe_unit(d.at(v), Vec3{1, 0, 0}));
  PpgdResult result = ppgd_solve(sys, d0);

  bundle.f = std::move(result.d);
  bundle.fiber_log = std::move(result.log);
  bundle.s = d_trans;
  bundle.n = orthogonalized(d_ab, bundle.f, config.epsilon);
  return bundle;
}

ScalarField angle_error(const VectorField& f1, const VectorField& f2) {
  if (f1.mesh != f2.mesh)
    throw std::invalid_argument("fields live on different meshes");
  ScalarField out(*f1.mesh);
  for (int i = 0; i < f1.n(); ++i) {
    const Vec3 a = f1.at(i);
    const Vec3 b = f2.at(i);
    if (norm(a) < 1e-12 || norm(b) < 1e-12) continue;  // singular nodes
    out.values[i] = angle_between(a, b) * 180.0 / kPi;
  }
  return out;
}

ScalarField nematic_deviation(const VectorField& f, const DirectorSystem& sys) {
  const std::vector<double> r = residual(sys, f);
  const int nv = f.n();
  ScalarField out(*f.mesh);
  for (int i = 0; i < nv; ++i) {
    const Vec3 ri{r[i], r[nv + i], r[2 * nv + i]};
    out.values[i] = dot(ri, f.at(i));
  }
  return out;
}

ScalarField bundle_defect(const FiberBundle& bundle) {
  ScalarField out(*bundle.f.mesh);
  for (int i = 0; i < bundle.f.n(); ++i) {
    const std::array<Vec3, 3> cols{bundle.f.at(i), bundle.s.at(i),
                                   bundle.n.at(i)};
    double worst = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        worst = std::max(worst, std::abs(dot(cols[a], cols[b]) -
                                         (a == b ? 1.0 : 0.0)));
    out.values[i] = worst;
  }
  return out;
}

}  // namespace fo
