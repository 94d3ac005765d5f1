#include "fo/frankoseen.hpp"

#include <algorithm>
#include <cmath>

#include "fo/kernels.hpp"

namespace fo {

Vec3 project_sphere(const Vec3& v, double eps) {
  return (1.0 / (eps + norm(v))) * v;
}

DirectorSystem build_director_system(const Mesh& mesh,
                                     const std::vector<VectorBc>& bcs,
                                     const std::vector<PointConstraint>& points,
                                     const SolverConfig& config) {
  const int nv = mesh.n_vertices();
  DirectorSystem sys;
  sys.mesh = &mesh;
  sys.config = config;
  sys.normals = boundary_normals(mesh);

  NitscheParams nitsche;
  nitsche.penalty = config.nitsche_penalty;
  sys.node_dirichlet.assign(nv, 0);
  sys.dirichlet_values.assign(static_cast<std::size_t>(nv) * 3, 0.0);
  auto set_value = [&](int v, const Vec3& g, bool allow_zero) {
    if (!allow_zero && std::abs(norm(g) - 1.0) > 1e-3)
      throw std::invalid_argument(
          "Dirichlet data is not unit length at vertex " + std::to_string(v));
    sys.node_dirichlet[v] = 1;
    sys.dirichlet_values[v] = g[0];
    sys.dirichlet_values[nv + v] = g[1];
    sys.dirichlet_values[2 * nv + v] = g[2];
  };

  // Point constraints take precedence over tag data (the apex vertex lies on
  // the epicardial surface, so the fiber solve needs the override); distinct
  // point constraints on one vertex must agree.
  std::vector<char> point_constrained(nv, 0);
  for (const auto& pc : points) {
    if (pc.vertex < 0 || pc.vertex >= nv)
      throw std::invalid_argument("point constraint vertex out of range");
    if (point_constrained[pc.vertex]) {
      const Vec3 old{sys.dirichlet_values[pc.vertex],
                     sys.dirichlet_values[nv + pc.vertex],
                     sys.dirichlet_values[2 * nv + pc.vertex]};
      if (norm(old - pc.value) > 1e-10)
        throw std::invalid_argument("contradictory point constraints at vertex " +
                                    std::to_string(pc.vertex));
    }
    set_value(pc.vertex, pc.value, true);
    point_constrained[pc.vertex] = 1;
  }

  std::vector<int> used;
  for (const auto& bc : bcs) {
    if (!mesh.tag_names.contains(bc.tag))
      throw std::invalid_argument("boundary condition on unknown tag " +
                                  std::to_string(bc.tag));
    if (std::find(used.begin(), used.end(), bc.tag) != used.end())
      throw std::invalid_argument("duplicate boundary condition on tag " +
                                  std::to_string(bc.tag));
    used.push_back(bc.tag);
    switch (bc.kind) {
      case VectorBc::Kind::Dirichlet: {
        if (!bc.value)
          throw std::invalid_argument("Dirichlet condition without data");
        const auto mask = mesh.vertices_on_tag(bc.tag);
        for (int v = 0; v < nv; ++v)
          if (mask[v] && !point_constrained[v])
            set_value(v, bc.value(v, mesh.vertices[v]), false);
        break;
      }
      case VectorBc::Kind::Slip:
        nitsche.tags.push_back(bc.tag);
        break;
      case VectorBc::Kind::Natural:
        break;
    }
  }

  sys.A_full = assemble_vector_operator(mesh, sys.normals, nitsche);
  sys.mass = assemble_mass_scalar(mesh);

  std::vector<char> constrained(static_cast<std::size_t>(nv) * 3, 0);
  for (int v = 0; v < nv; ++v)
    if (sys.node_dirichlet[v])
      for (int c = 0; c < 3; ++c) constrained[c * nv + v] = 1;
  sys.A_elim = sys.A_full;
  std::vector<double> scratch(static_cast<std::size_t>(nv) * 3, 0.0);
  eliminate_dirichlet(sys.A_elim, constrained, sys.dirichlet_values, scratch);

  sys.project_mask.assign(nv, 1.0);
  if (config.freeze_dirichlet)
    for (int v = 0; v < nv; ++v)
      if (sys.node_dirichlet[v]) sys.project_mask[v] = 0.0;

  int n_constrained = 0;
  for (char c : constrained) n_constrained += c;
  sys.n_free_dofs = 3 * nv - n_constrained;
  if (sys.n_free_dofs <= 0)
    throw std::invalid_argument("no free degrees of freedom");
  return sys;
}

std::vector<double> residual(const DirectorSystem& sys, const VectorField& d,
                             const VectorField* load) {
  const Mesh& mesh = *sys.mesh;
  const int nv = mesh.n_vertices();
  std::vector<double> r(static_cast<std::size_t>(nv) * 3, 0.0);
  sys.A_full.apply(d.values.data(), r.data());

  if (load) {
    std::vector<double> Mg(nv);
    for (int c = 0; c < 3; ++c) {
      sys.mass.apply(load->comp(c), Mg.data());
      kernels::axpy(-1.0, Mg.data(),
                    r.data() + static_cast<std::size_t>(c) * nv, nv);
    }
  }

  // Eliminate the multiplier term nodewise: the component of the gradient
  // along d is lambda*d with lambda the discrete multiplier, so removing it
  // leaves the tangential optimality residual.  At solutions lambda recovers
  // the mass-weighted |grad d|^2.
  for (int v = 0; v < nv; ++v) {
    const Vec3 dv = d.at(v);
    const double nsq = dot(dv, dv);
    if (nsq < 1e-30) continue;
    const Vec3 rv{r[v], r[nv + v], r[2 * nv + v]};
    const double lam = dot(rv, dv) / nsq;
    r[v] -= lam * dv[0];
    r[nv + v] -= lam * dv[1];
    r[2 * nv + v] -= lam * dv[2];
  }
  for (int v = 0; v < nv; ++v)
    if (sys.node_dirichlet[v])
      for (int c = 0; c < 3; ++c) r[static_cast<std::size_t>(c) * nv + v] = 0.0;
  return r;
}

double scaled_l2(const DirectorSystem& sys, const std::vector<double>& a) {
  return std::sqrt(kernels::nrm2sq(a.data(), a.size())) / sys.n_free_dofs;
}

double director_energy(const DirectorSystem& sys, const VectorField& d) {
  return quadratic_energy(sys.A_full, d.values);
}

ScalarField lambda_field(const VectorField& d) {
  ScalarField out(*d.mesh);
  const auto g2 = recovered_gradient_norm_sq(d);
  for (std::size_t i = 0; i < g2.size(); ++i) out.values[i] = -0.5 * g2[i];
  return out;
}

namespace {

double max_unit_deviation(const DirectorSystem& sys, const VectorField& d) {
  double dev = 0.0;
  for (int v = 0; v < d.n(); ++v) {
    if (sys.project_mask[v] == 0.0) continue;
    dev = std::max(dev, std::abs(1.0 - norm(d.at(v))));
  }
  return dev;
}

}  // namespace

PpgdResult ppgd_solve(const DirectorSystem& sys, const VectorField& d0) {
  const Mesh& mesh = *sys.mesh;
  const int nv = mesh.n_vertices();
  if (d0.mesh != &mesh || static_cast<int>(d0.values.size()) != 3 * nv)
    throw std::invalid_argument("initial guess does not match the system mesh");

  PpgdResult result;
  result.d = d0;
  VectorField& d = result.d;
  // Impose Dirichlet data exactly; validate unit norm at free nodes.
  for (int v = 0; v < nv; ++v) {
    if (sys.node_dirichlet[v]) {
      d.set(v, {sys.dirichlet_values[v], sys.dirichlet_values[nv + v],
                sys.dirichlet_values[2 * nv + v]});
    } else if (std::abs(norm(d.at(v)) - 1.0) > 1e-6) {
      throw std::invalid_argument("initial guess is not unit at free vertex " +
                                  std::to_string(v));
    }
  }
  result.pre_projection_norm.assign(nv, 0.0);
  for (int v = 0; v < nv; ++v) result.pre_projection_norm[v] = norm(d.at(v));

  ConvergenceLog& log = result.log;
  // Stopping scale: the unconstrained gradient A d0 at the initial iterate,
  // all rows.  For constant initial fields it equals the constrained
  // gradient (the multiplier term vanishes there), and unlike the tangential
  // norm it does not collapse when the initial boundary mismatch is radial.
  std::vector<double> raw(static_cast<std::size_t>(nv) * 3, 0.0);
  sys.A_full.apply(d.values.data(), raw.data());
  const double scale = scaled_l2(sys, raw);

  // Roundoff floor of evaluating A d: data whose exact residual vanishes
  // (constant-compatible boundary values) must not chase a purely relative
  // target that sits below accumulation noise.
  SparseMatrix a_abs = sys.A_full;
  for (double& v : a_abs.values) v = std::abs(v);
  for (double& v : raw) v = 0.0;
  std::vector<double> d_abs(d.values.size());
  for (std::size_t i = 0; i < d_abs.size(); ++i)
    d_abs[i] = std::abs(d.values[i]);
  a_abs.apply(d_abs.data(), raw.data());
  const double noise_floor = 1e-13 * scaled_l2(sys, raw);

  std::vector<double> r = residual(sys, d);
  double err = scaled_l2(sys, r);
  log.initial_residual = scale;
  log.records.push_back({0, scale, director_energy(sys, d),
                         max_unit_deviation(sys, d)});
  const double target = std::max(sys.config.rtol * scale, noise_floor);
  if (err <= target) {
    log.status = SolveStatus::Converged;
    log.final_residual = err;
    return result;
  }
  const Preconditioner precond(sys.A_elim, sys.config.preconditioner);
  std::vector<double> dd(static_cast<std::size_t>(nv) * 3, 0.0);

  int k = 0;
  while (k < sys.config.max_iterations) {
    ++k;
    kernels::scal(-1.0, r.data(), r.size());
    precond.apply(r.data(), dd.data());
    kernels::axpy(1.0, dd.data(), d.values.data(), d.values.size());
    for (int v = 0; v < nv; ++v) result.pre_projection_norm[v] = norm(d.at(v));
    kernels::project_unit3(d.comp(0), d.comp(1), d.comp(2),
                           sys.project_mask.data(), sys.config.epsilon, nv);

    r = residual(sys, d);
    err = scaled_l2(sys, r);
    log.records.push_back({k, err, director_energy(sys, d),
                           max_unit_deviation(sys, d)});
    if (std::isnan(err))
      throw SolveError("iteration diverged (NaN residual) at iteration " +
                       std::to_string(k));
    if (err <= target) {
      log.status = SolveStatus::Converged;
      break;
    }
    // Transient residual growth is normal when the iterate escapes a saddle,
    // so divergence is judged against the initial scale, not the running
    // minimum.
    if (err > sys.config.divergence_guard * scale)
      throw SolveError("iteration diverged: residual reached " +
                       std::to_string(err) + " against initial scale " +
                       std::to_string(scale) + " at iteration " +
                       std::to_string(k));
  }
  log.iterations = k;
  log.final_residual = err;
  if (log.status != SolveStatus::Converged)
    log.status = SolveStatus::MaxIterations;
  return result;
}

}  // namespace fo
