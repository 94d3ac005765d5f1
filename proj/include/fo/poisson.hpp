#pragma once
// Scalar Laplace solves used for the anatomical potentials of the
// rule-based pipeline: homogeneous-conductivity problems with constant
// Dirichlet values per tag, natural conditions elsewhere.

#include <vector>

#include "fo/fem.hpp"
#include "fo/linalg.hpp"
#include "fo/mesh.hpp"

namespace fo {

struct ScalarBc {
  int tag = 0;
  double value = 0.0;
};

struct ScalarPointBc {
  int vertex = -1;
  double value = 0.0;
};

// Solves -laplace(phi) = 0 with the given Dirichlet data to the requested CG
// tolerance.  Throws LinalgError when no Dirichlet constraint is present
// (singular pure-Neumann system) and std::invalid_argument for unknown tags.
ScalarField solve_potential(const Mesh& mesh, const std::vector<ScalarBc>& bcs,
                            const std::vector<ScalarPointBc>& points = {},
                            double rtol = 1e-10, int max_iterations = 20000);

// Transmural potential: 1 on endo, 0 on epi, natural on the base.
ScalarField transmural_potential(const Mesh& mesh);

// Apicobasal potential: 1 at the apex vertex, 0 on the base, natural on the
// walls.
ScalarField apicobasal_potential(const Mesh& mesh);

}  // namespace fo
