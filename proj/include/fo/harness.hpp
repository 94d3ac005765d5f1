#pragma once
// Quantitative studies: named parameter sweeps over the solvers with
// deterministic CSV-ready tables and pass/fail verdicts against pinned
// bounds.
//
// Reports never contain wall-clock values (those stay in memory) so a rerun
// on the same machine produces byte-identical tables.

#include <string>
#include <vector>

#include "fo/fibers.hpp"
#include "fo/io.hpp"

namespace fo {

struct StudyReport {
  std::string id;
  CsvTable table;                    // one row per grid point
  std::vector<std::string> summary;  // deterministic key=value lines
  std::vector<double> wall_seconds;  // per row, excluded from the table
  bool passed = false;

  const std::string& value(std::size_t row, const std::string& column) const;
};

// Unit square, opposing vertical Dirichlet data on left/right, natural top
// and bottom; constant initial guess (cos theta, sin theta, 0) swept over
// n_theta points in [0, theta_max].  Passes when every run converges within
// [15, 30] iterations.
StudyReport study_robustness(int n = 20, int n_theta = 32,
                             double theta_max = 3.1);

// Same sweep with Dirichlet data on all four sides chosen so a defect forms
// at the center: left (0,-1), right (0,1), top (-1,0), bottom (1,0).
// Passes when every run converges within 250 iterations, the smallest
// pre-projection update norm sits at the center vertex, and the in-plane
// angle is monotone along vertical slices clear of the defect.
StudyReport study_singularity(int n = 20, int n_theta = 32,
                              double theta_max = 3.1);

// Robustness setup at theta = 0 for n = 32, 64, ... while the vector DOF
// count stays at or below max_dof.  Passes when iteration counts grow by at
// most 6 from the coarsest level to the finest.
StudyReport study_optimality(int max_dof = 400000);

// Unit square with the geodesic profile between a=(1,0,0) and b=(0,1,0) as
// the exact solution; L2 and H1 errors over `levels` meshes n = 4, 8, ...
// Passes when the last L2 rates lie in [1.85, 2.15], the H1 rates in
// [0.85, 1.15], and errors decrease monotonically.
StudyReport study_convergence(int levels = 6);

// Annulus rho=0.5, R=1 with boundary data winding alpha0 in {pi, 3*pi},
// each solve started from the matching analytic profile.  Reports energy,
// the rotation angle at r = sqrt(rho*R) against the logarithmic profile
// (5 degree tolerance), and the accumulated twist along a radial line.
// Passes only when the alpha0 = 3*pi run keeps its winding and ends at
// strictly higher energy than the alpha0 = pi run.
StudyReport study_ring(int n_theta = 96);

// Idealized left ventricle: run both fiber pipelines with the same rotation
// angles and compare transmural / apicobasal / fiber fields nodewise.
// Writes VTU fields into vtu_dir when nonempty.  Passes when all solves
// converge, the transmural 99th-percentile error is at most 20 degrees, at
// least 90% of the top-decile apicobasal error nodes lie within 20% of the
// apex-to-base distance from the apex, and the fiber error away from the
// apex stays at or below 35 degrees.
StudyReport study_lv_comparison(const RotationParams& rotation = {},
                                const std::string& vtu_dir = "");

// Convergence log as a CSV table (iteration, residual, energy, unit
// deviation).
CsvTable convergence_table(const ConvergenceLog& log);

const std::vector<std::string>& study_ids();
StudyReport run_study(const std::string& id);

}  // namespace fo
