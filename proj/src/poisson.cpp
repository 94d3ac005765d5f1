#include "fo/poisson.hpp"

#include <stdexcept>
#include <string>

namespace fo {

ScalarField solve_potential(const Mesh& mesh, const std::vector<ScalarBc>& bcs,
                            const std::vector<ScalarPointBc>& points,
                            double rtol, int max_iterations) {
  const std::size_t n = mesh.vertices.size();
  std::vector<char> constrained(n, 0);
  std::vector<double> values(n, 0.0);

  for (const ScalarBc& bc : bcs) {
    if (!mesh.tag_names.contains(bc.tag))
      throw std::invalid_argument("boundary condition references unknown tag " +
                                  std::to_string(bc.tag));
    const std::vector<char> on_tag = mesh.vertices_on_tag(bc.tag);
    for (std::size_t v = 0; v < n; ++v) {
      if (!on_tag[v]) continue;
      if (constrained[v] && values[v] != bc.value)
        throw std::invalid_argument(
            "contradictory Dirichlet values at vertex " + std::to_string(v));
      constrained[v] = 1;
      values[v] = bc.value;
    }
  }
  for (const ScalarPointBc& p : points) {
    if (p.vertex < 0 || static_cast<std::size_t>(p.vertex) >= n)
      throw std::invalid_argument("point constraint vertex out of range");
    if (constrained[p.vertex] && values[p.vertex] != p.value)
      throw std::invalid_argument(
          "point constraint contradicts tag value at vertex " +
          std::to_string(p.vertex));
    constrained[p.vertex] = 1;
    values[p.vertex] = p.value;
  }

  bool any = false;
  for (char c : constrained) any |= (c != 0);
  if (!any)
    throw LinalgError(
        "potential solve has no Dirichlet constraint; system is singular");

  SparseMatrix A = assemble_stiffness_scalar(mesh);
  std::vector<double> b(n, 0.0);
  eliminate_dirichlet(A, constrained, values, b);

  ScalarField phi(mesh, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    if (constrained[i]) phi.values[i] = values[i];

  Preconditioner M(A, PreconditionerSpec{
                          PreconditionerSpec::Kind::SymmetricGaussSeidel, 0});
  CgResult cg = cg_solve(A, b, phi.values, M, rtol, max_iterations);
  if (!cg.converged)
    throw LinalgError("potential solve failed to converge: residual " +
                      std::to_string(cg.residual) + " after " +
                      std::to_string(cg.iterations) + " iterations");
  return phi;
}

ScalarField transmural_potential(const Mesh& mesh) {
  return solve_potential(
      mesh, {{mesh.tag_id("endo"), 1.0}, {mesh.tag_id("epi"), 0.0}});
}

ScalarField apicobasal_potential(const Mesh& mesh) {
  const std::int32_t apex =
      mesh.apex_vertex >= 0 ? mesh.apex_vertex : locate_apex(mesh);
  return solve_potential(mesh, {{mesh.tag_id("base"), 0.0}},
                         {{apex, 1.0}});
}

}  // namespace fo
