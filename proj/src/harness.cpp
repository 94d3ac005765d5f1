#include "fo/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "fo/oracles.hpp"
#include "fo/poisson.hpp"

namespace fo {

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string fmt_int(long long v) { return std::to_string(v); }
std::string fmt_bool(bool v) { return v ? "1" : "0"; }

double percentile(std::vector<double> v, double p) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t idx = static_cast<std::size_t>(std::max(
      0.0, std::ceil(p / 100.0 * static_cast<double>(v.size())) - 1.0));
  return v[std::min(idx, v.size() - 1)];
}

VectorField constant_field(const Mesh& mesh, const Vec3& v) {
  VectorField f(mesh);
  for (int i = 0; i < f.n(); ++i) f.set(i, v);
  return f;
}

}  // namespace

const std::string& StudyReport::value(std::size_t row,
                                      const std::string& column) const {
  for (std::size_t i = 0; i < table.header.size(); ++i)
    if (table.header[i] == column) return table.rows.at(row)[i];
  throw std::out_of_range("study table has no column " + column);
}

CsvTable convergence_table(const ConvergenceLog& log) {
  CsvTable t;
  t.header = {"iteration", "residual", "energy", "max_unit_deviation"};
  for (const ConvergenceRecord& r : log.records)
    t.rows.push_back({fmt_int(r.iteration), format_double(r.residual),
                      format_double(r.energy),
                      format_double(r.max_unit_deviation)});
  return t;
}

StudyReport study_robustness(int n, int n_theta, double theta_max) {
  StudyReport report;
  report.id = "robustness";
  report.table.header = {"theta", "iterations", "converged", "residual",
                         "energy"};

  const Mesh mesh = generate_unit_square(n);
  std::vector<VectorBc> bcs(2);
  bcs[0] = {mesh.tag_id("left"), VectorBc::Kind::Dirichlet,
            [](int, const Vec3&) { return Vec3{0, -1, 0}; }};
  bcs[1] = {mesh.tag_id("right"), VectorBc::Kind::Dirichlet,
            [](int, const Vec3&) { return Vec3{0, 1, 0}; }};
  const DirectorSystem sys = build_director_system(mesh, bcs, {}, {});

  bool all_ok = true;
  int min_it = 1 << 30, max_it = 0;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = theta_max * i / (n_theta - 1);
    const double t0 = now_seconds();
    const PpgdResult run = ppgd_solve(
        sys, constant_field(mesh, {std::cos(theta), std::sin(theta), 0.0}));
    report.wall_seconds.push_back(now_seconds() - t0);
    const bool ok = run.log.status == SolveStatus::Converged;
    all_ok = all_ok && ok && run.log.iterations >= 15 &&
             run.log.iterations <= 30;
    min_it = std::min(min_it, run.log.iterations);
    max_it = std::max(max_it, run.log.iterations);
    report.table.rows.push_back(
        {format_double(theta), fmt_int(run.log.iterations), fmt_bool(ok),
         format_double(run.log.final_residual),
         format_double(director_energy(sys, run.d))});
  }
  report.summary = {"runs=" + fmt_int(n_theta),
                    "iterations_min=" + fmt_int(min_it),
                    "iterations_max=" + fmt_int(max_it),
                    "bound=[15,30]"};
  report.passed = all_ok;
  return report;
}

StudyReport study_singularity(int n, int n_theta, double theta_max) {
  StudyReport report;
  report.id = "singularity";
  report.table.header = {"theta",    "iterations", "converged",
                         "residual", "energy",     "min_node_x",
                         "min_node_y", "min_update_norm"};

  const Mesh mesh = generate_unit_square(n);
  std::vector<VectorBc> bcs(4);
  bcs[0] = {mesh.tag_id("left"), VectorBc::Kind::Dirichlet,
            [](int, const Vec3&) { return Vec3{0, -1, 0}; }};
  bcs[1] = {mesh.tag_id("right"), VectorBc::Kind::Dirichlet,
            [](int, const Vec3&) { return Vec3{0, 1, 0}; }};
  bcs[2] = {mesh.tag_id("top"), VectorBc::Kind::Dirichlet,
            [](int, const Vec3&) { return Vec3{-1, 0, 0}; }};
  bcs[3] = {mesh.tag_id("bottom"), VectorBc::Kind::Dirichlet,
            [](int, const Vec3&) { return Vec3{1, 0, 0}; }};
  const DirectorSystem sys = build_director_system(mesh, bcs, {}, {});

  bool all_ok = true;
  int max_it = 0;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = theta_max * i / (n_theta - 1);
    const double t0 = now_seconds();
    const PpgdResult run = ppgd_solve(
        sys, constant_field(mesh, {std::cos(theta), std::sin(theta), 0.0}));
    report.wall_seconds.push_back(now_seconds() - t0);

    int min_node = 0;
    for (int v = 1; v < mesh.n_vertices(); ++v)
      if (run.pre_projection_norm[v] < run.pre_projection_norm[min_node])
        min_node = v;
    const Vec3 x = mesh.vertices[min_node];
    const bool centered =
        std::abs(x[0] - 0.5) < 1e-12 && std::abs(x[1] - 0.5) < 1e-12;

    const bool ok = run.log.status == SolveStatus::Converged &&
                    run.log.iterations <= 250;
    all_ok = all_ok && ok && centered;
    max_it = std::max(max_it, run.log.iterations);
    report.table.rows.push_back(
        {format_double(theta), fmt_int(run.log.iterations), fmt_bool(ok),
         format_double(run.log.final_residual),
         format_double(director_energy(sys, run.d)), format_double(x[0]),
         format_double(x[1]),
         format_double(run.pre_projection_norm[min_node])});
  }
  // Rotation-speed profile of the first run: along vertical grid lines away
  // from the defect the in-plane angle must turn monotonically from the
  // bottom value to the top value.
  bool slices_ok = true;
  {
    const PpgdResult run = ppgd_solve(sys, constant_field(mesh, {1, 0, 0}));
    for (double xs : {0.25, 0.75}) {
      std::vector<std::pair<double, double>> slice;  // (y, angle)
      for (int v = 0; v < mesh.n_vertices(); ++v) {
        if (std::abs(mesh.vertices[v][0] - xs) > 1e-12) continue;
        const Vec3 dv = run.d.at(v);
        slice.emplace_back(mesh.vertices[v][1], std::atan2(dv[1], dv[0]));
      }
      std::sort(slice.begin(), slice.end());
      int sign = 0;
      for (std::size_t i = 1; i < slice.size() && slices_ok; ++i) {
        double delta = slice[i].second - slice[i - 1].second;
        if (delta > kPi) delta -= 2 * kPi;
        if (delta < -kPi) delta += 2 * kPi;
        if (std::abs(delta) <= 1e-9) continue;
        const int s = delta > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        slices_ok = slices_ok && s == sign;
      }
    }
  }
  all_ok = all_ok && slices_ok;
  report.summary = {"runs=" + fmt_int(n_theta),
                    "iterations_max=" + fmt_int(max_it), "bound=250",
                    "defect_node=(0.5,0.5)",
                    std::string("slices_monotone=") + (slices_ok ? "1" : "0")};
  report.passed = all_ok;
  return report;
}

StudyReport study_optimality(int max_dof) {
  StudyReport report;
  report.id = "optimality";
  report.table.header = {"n", "dof", "iterations", "converged", "residual"};

  bool all_ok = true;
  int first_it = -1, max_it = 0;
  std::vector<double> log_dof, log_tpi;
  for (int n = 32; 3 * ((n + 1) * (n + 1) + n * n) <= max_dof; n *= 2) {
    const Mesh mesh = generate_unit_square(n);
    std::vector<VectorBc> bcs(2);
    bcs[0] = {mesh.tag_id("left"), VectorBc::Kind::Dirichlet,
              [](int, const Vec3&) { return Vec3{0, -1, 0}; }};
    bcs[1] = {mesh.tag_id("right"), VectorBc::Kind::Dirichlet,
              [](int, const Vec3&) { return Vec3{0, 1, 0}; }};
    // The approximate inverse must stay uniformly accurate under refinement
    // for the outer iteration count to stay flat, so the inner iteration
    // count grows with the per-side resolution.
    SolverConfig config;
    config.preconditioner.inner_iterations = std::max(30, n / 2);
    const DirectorSystem sys = build_director_system(mesh, bcs, {}, config);

    const double t0 = now_seconds();
    const PpgdResult run = ppgd_solve(sys, constant_field(mesh, {1, 0, 0}));
    report.wall_seconds.push_back(now_seconds() - t0);

    const bool ok = run.log.status == SolveStatus::Converged;
    all_ok = all_ok && ok;
    if (first_it < 0) first_it = run.log.iterations;
    max_it = std::max(max_it, run.log.iterations);
    const int dof = 3 * mesh.n_vertices();
    log_dof.push_back(std::log(static_cast<double>(dof)));
    log_tpi.push_back(std::log(report.wall_seconds.back() /
                               std::max(1, run.log.iterations)));
    report.table.rows.push_back({fmt_int(n), fmt_int(dof),
                                 fmt_int(run.log.iterations), fmt_bool(ok),
                                 format_double(run.log.final_residual)});
  }
  // Least-squares slope of log(time per iteration) against log(dof).
  double slope = 0.0;
  if (log_dof.size() >= 2) {
    double mx = 0, my = 0, sxx = 0, sxy = 0;
    for (double x : log_dof) mx += x;
    for (double y : log_tpi) my += y;
    mx /= log_dof.size();
    my /= log_tpi.size();
    for (std::size_t i = 0; i < log_dof.size(); ++i) {
      sxx += (log_dof[i] - mx) * (log_dof[i] - mx);
      sxy += (log_dof[i] - mx) * (log_tpi[i] - my);
    }
    slope = sxy / sxx;
  }
  report.summary = {"iterations_first=" + fmt_int(first_it),
                    "iterations_max=" + fmt_int(max_it),
                    "growth=" + fmt_int(max_it - first_it), "growth_bound=6",
                    "time_per_iteration_exponent=" + format_double(slope)};
  report.passed = all_ok && (max_it - first_it) <= 6;
  return report;
}

StudyReport study_convergence(int levels) {
  StudyReport report;
  report.id = "convergence";
  report.table.header = {"n",        "h",       "dof",     "iterations",
                         "converged", "l2_error", "l2_rate", "h1_error",
                         "h1_rate"};

  const Vec3 a{1, 0, 0};
  const Vec3 b{0, 1, 0};
  const double omega = oracles::slerp_angle(a, b);
  const auto exact = [&](const Vec3& x) { return oracles::slerp(a, b, x[0]); };
  const auto exact_grad = [&](const Vec3& x) {
    return std::array<Vec3, 3>{
        Vec3{-omega * std::sin(omega * x[0]), 0, 0},
        Vec3{omega * std::cos(omega * x[0]), 0, 0}, Vec3{0, 0, 0}};
  };

  bool all_ok = true;
  std::vector<double> l2s, h1s;
  for (int level = 0; level < levels; ++level) {
    const int n = 4 << level;
    const Mesh mesh = generate_unit_square(n);
    std::vector<VectorBc> bcs(2);
    bcs[0] = {mesh.tag_id("left"), VectorBc::Kind::Dirichlet,
              [&](int, const Vec3&) { return a; }};
    bcs[1] = {mesh.tag_id("right"), VectorBc::Kind::Dirichlet,
              [&](int, const Vec3&) { return b; }};
    SolverConfig config;
    config.preconditioner.inner_iterations = std::max(30, n / 2);
    const DirectorSystem sys = build_director_system(mesh, bcs, {}, config);

    const double t0 = now_seconds();
    const PpgdResult run = ppgd_solve(sys, constant_field(mesh, a));
    report.wall_seconds.push_back(now_seconds() - t0);

    const bool ok = run.log.status == SolveStatus::Converged;
    all_ok = all_ok && ok;
    const double l2 = l2_error(run.d, exact);
    const double h1 = h1_seminorm_error(run.d, exact_grad);
    const double l2_rate = l2s.empty() ? 0.0 : std::log2(l2s.back() / l2);
    const double h1_rate = h1s.empty() ? 0.0 : std::log2(h1s.back() / h1);
    l2s.push_back(l2);
    h1s.push_back(h1);
    double h = 0.0;
    for (double ch : mesh.cell_diameter) h = std::max(h, ch);
    report.table.rows.push_back(
        {fmt_int(n), format_double(h), fmt_int(3 * mesh.n_vertices()),
         fmt_int(run.log.iterations), fmt_bool(ok), format_double(l2),
         format_double(l2_rate), format_double(h1), format_double(h1_rate)});
  }

  bool rates_ok = true;
  for (std::size_t i = l2s.size() - 2; i < l2s.size(); ++i) {
    const double r = std::log2(l2s[i - 1] / l2s[i]);
    rates_ok = rates_ok && r >= 1.85 && r <= 2.15;
    const double rh = std::log2(h1s[i - 1] / h1s[i]);
    rates_ok = rates_ok && rh >= 0.85 && rh <= 1.15;
  }
  bool monotone = true;
  for (std::size_t i = 1; i < l2s.size(); ++i)
    monotone = monotone && l2s[i] < l2s[i - 1];

  report.summary = {
      "levels=" + fmt_int(levels),
      "l2_final=" + format_double(l2s.back()),
      "l2_rate_final=" +
          format_double(std::log2(l2s[l2s.size() - 2] / l2s.back())),
      "rate_bounds=[1.85,2.15]"};
  report.passed = all_ok && rates_ok && monotone;
  return report;
}

StudyReport study_ring(int n_theta) {
  StudyReport report;
  report.id = "ring";
  report.table.header = {"alpha0",       "iterations",
                         "converged",    "residual",
                         "energy",       "mid_angle_deg",
                         "expected_deg", "radial_twist_deg",
                         "max_unit_deviation"};

  const double rho = 0.5, R = 1.0;
  const Mesh mesh = generate_annulus(rho, R, n_theta);
  const double r_mid = std::sqrt(rho * R);

  // The full mesh layer nearest to the geometric mean radius.
  double r_star = 0.0, best = 1e300;
  for (const Vec3& x : mesh.vertices) {
    const double r = std::hypot(x[0], x[1]);
    if (std::abs(r - r_mid) < best) {
      best = std::abs(r - r_mid);
      r_star = r;
    }
  }

  bool all_ok = true;
  std::vector<double> energies;
  for (const double alpha0 : {kPi, 3.0 * kPi}) {
    std::vector<VectorBc> bcs(2);
    bcs[0] = {mesh.tag_id("inner"), VectorBc::Kind::Dirichlet,
              [&](int, const Vec3& x) {
                return oracles::ring_solution(x[0], x[1], rho, R, alpha0);
              }};
    bcs[1] = {mesh.tag_id("outer"), VectorBc::Kind::Dirichlet,
              [&](int, const Vec3& x) {
                return oracles::ring_solution(x[0], x[1], rho, R, alpha0);
              }};
    const DirectorSystem sys = build_director_system(mesh, bcs, {}, {});

    VectorField d0(mesh);
    for (int v = 0; v < d0.n(); ++v)
      d0.set(v, oracles::ring_solution(mesh.vertices[v][0],
                                       mesh.vertices[v][1], rho, R, alpha0));

    const double t0 = now_seconds();
    const PpgdResult run = ppgd_solve(sys, d0);
    report.wall_seconds.push_back(now_seconds() - t0);
    const bool ok = run.log.status == SolveStatus::Converged;

    double angle_sum = 0.0;
    int n_mid = 0;
    double max_dev = 0.0;
    for (int v = 0; v < mesh.n_vertices(); ++v) {
      const Vec3 x = mesh.vertices[v];
      max_dev = std::max(max_dev, std::abs(1.0 - norm(run.d.at(v))));
      const double r = std::hypot(x[0], x[1]);
      if (std::abs(r - r_star) > 1e-9) continue;
      const double theta = std::atan2(x[1], x[0]);
      const Vec3 azimuthal{-std::sin(theta), std::cos(theta), 0.0};
      angle_sum += angle_between(run.d.at(v), azimuthal) * 180.0 / kPi;
      ++n_mid;
    }
    const double mid_angle = angle_sum / n_mid;
    const double alpha_mid =
        oracles::ring_alpha(r_star, rho, R, alpha0);
    const double expected =
        std::acos(std::cos(alpha_mid)) * 180.0 / kPi;

    // Accumulated in-plane rotation along the radial line theta = 0; a run
    // that keeps its winding shows |twist| = alpha0.
    std::vector<std::pair<double, double>> line;  // (r, angle)
    for (int v = 0; v < mesh.n_vertices(); ++v) {
      const Vec3 x = mesh.vertices[v];
      if (std::abs(x[1]) > 1e-12 || x[0] <= 0.0) continue;
      const Vec3 dv = run.d.at(v);
      line.emplace_back(x[0], std::atan2(dv[1], dv[0]));
    }
    std::sort(line.begin(), line.end());
    double twist = 0.0;
    for (std::size_t i = 1; i < line.size(); ++i) {
      double delta = line[i].second - line[i - 1].second;
      if (delta > kPi) delta -= 2 * kPi;
      if (delta < -kPi) delta += 2 * kPi;
      twist += delta;
    }

    const double energy = director_energy(sys, run.d);
    energies.push_back(energy);
    all_ok = all_ok && ok && std::abs(mid_angle - expected) <= 5.0 &&
             max_dev <= 1e-6;
    report.table.rows.push_back(
        {format_double(alpha0), fmt_int(run.log.iterations), fmt_bool(ok),
         format_double(run.log.final_residual), format_double(energy),
         format_double(mid_angle), format_double(expected),
         format_double(std::abs(twist) * 180.0 / kPi),
         format_double(max_dev)});
  }
  // Strict inequality up to rounding noise: two runs that collapse into the
  // same basin must not pass on last-digit luck.
  const bool ordered =
      energies.size() == 2 &&
      energies[1] > energies[0] + 0.01 * (std::abs(energies[0]) + 1.0);
  report.summary = {"energy_low=" + format_double(energies[0]),
                    "energy_high=" + format_double(energies[1]),
                    "higher_winding_higher_energy=" + fmt_bool(ordered)};
  report.passed = all_ok && ordered;
  return report;
}

StudyReport study_lv_comparison(const RotationParams& rotation,
                                const std::string& vtu_dir) {
  StudyReport report;
  report.id = "lv";
  report.table.header = {"field",        "p50",          "p90",
                         "p99",          "max",          "interior_max",
                         "apex_fraction"};

  const Mesh mesh = generate_lv_ellipsoid({});
  const std::int32_t apex = mesh.apex_vertex;
  SolverConfig config;
  // The apicobasal field carries a point defect at the pinned apex whose
  // core relaxes at a contraction rate of roughly 0.9965 per iteration, so
  // the relative residual target of 1e-8 needs a few thousand iterations.
  config.max_iterations = 3000;

  const double t0 = now_seconds();

  // Potential pipeline.
  const ScalarField phi_trans = transmural_potential(mesh);
  const ScalarField phi_ab = apicobasal_potential(mesh);
  const VectorField dt_rbm = descending_gradient_direction(phi_trans);
  const VectorField dab_rbm =
      orthogonalized(descending_gradient_direction(phi_ab), dt_rbm);
  const FiberBundle rbm = fibers_rbm(mesh, phi_trans, dt_rbm, dab_rbm,
                                     rotation);

  // Director pipeline.
  const PpgdResult rt = transmural_vector_fo(mesh, config);
  const PpgdResult rab = apicobasal_vector_fo(mesh, apex, rt.d, config);
  const FiberBundle fo = fibers_fo(mesh, rt.d, rab.d, rotation, config);

  report.wall_seconds.push_back(now_seconds() - t0);

  const bool solves_ok =
      rt.log.status == SolveStatus::Converged &&
      rab.log.status == SolveStatus::Converged &&
      fo.fiber_log.status == SolveStatus::Converged;

  // Apex neighborhood: 20% of the apex-to-base distance.
  Vec3 base_centroid{0, 0, 0};
  int n_base = 0;
  const std::vector<char> on_base =
      mesh.vertices_on_tag(mesh.tag_id("base"));
  for (int v = 0; v < mesh.n_vertices(); ++v)
    if (on_base[v]) {
      base_centroid = base_centroid + mesh.vertices[v];
      ++n_base;
    }
  base_centroid = (1.0 / n_base) * base_centroid;
  const double lv_length = norm(base_centroid - mesh.vertices[apex]);
  std::vector<char> near_apex(mesh.n_vertices(), 0);
  for (int v = 0; v < mesh.n_vertices(); ++v)
    near_apex[v] =
        norm(mesh.vertices[v] - mesh.vertices[apex]) <= 0.2 * lv_length;

  struct Comparison {
    std::string name;
    ScalarField err;
  };
  std::vector<Comparison> comparisons;
  comparisons.push_back({"transmural", angle_error(dt_rbm, rt.d)});
  comparisons.push_back({"apicobasal", angle_error(dab_rbm, rab.d)});
  comparisons.push_back({"fiber", angle_error(rbm.f, fo.f)});

  double trans_p99 = 0.0, fiber_interior_max = 0.0;
  double ab_fraction = 0.0, fiber_fraction = 0.0;
  for (const Comparison& cmp : comparisons) {
    const std::vector<double>& e = cmp.err.values;
    std::vector<double> all(e);
    double interior_max = 0.0;
    for (int v = 0; v < mesh.n_vertices(); ++v)
      if (!near_apex[v]) interior_max = std::max(interior_max, e[v]);

    // Fraction of the top-decile error nodes inside the apex neighborhood.
    std::vector<int> order(mesh.n_vertices());
    for (int v = 0; v < mesh.n_vertices(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](int p, int q) {
      return e[p] != e[q] ? e[p] > e[q] : p < q;
    });
    const int decile = std::max(1, mesh.n_vertices() / 10);
    int inside = 0;
    for (int i = 0; i < decile; ++i)
      if (near_apex[order[i]]) ++inside;
    const double fraction = static_cast<double>(inside) / decile;

    const double p99 = percentile(all, 99.0);
    if (cmp.name == "transmural") trans_p99 = p99;
    if (cmp.name == "apicobasal") ab_fraction = fraction;
    if (cmp.name == "fiber") {
      fiber_fraction = fraction;
      fiber_interior_max = interior_max;
    }
    report.table.rows.push_back(
        {cmp.name, format_double(percentile(all, 50.0)),
         format_double(percentile(all, 90.0)), format_double(p99),
         format_double(percentile(all, 100.0)), format_double(interior_max),
         format_double(fraction)});
  }

  if (!vtu_dir.empty()) {
    VtuBuilder rbm_out(mesh);
    rbm_out.add_point_vector("fiber", rbm.f);
    rbm_out.add_point_vector("sheet", rbm.s);
    rbm_out.add_point_vector("normal", rbm.n);
    rbm_out.add_point_scalar("potential", phi_trans.values);
    rbm_out.write(vtu_dir + "/lv_rbm.vtu");

    VtuBuilder fo_out(mesh);
    fo_out.add_point_vector("fiber", fo.f);
    fo_out.add_point_vector("sheet", fo.s);
    fo_out.add_point_vector("normal", fo.n);
    fo_out.add_point_vector("director", rt.d);
    fo_out.write(vtu_dir + "/lv_fo.vtu");

    for (const Comparison& cmp : comparisons) {
      VtuBuilder err_out(mesh);
      err_out.add_point_scalar("angle_error", cmp.err.values);
      err_out.write(vtu_dir + "/lv_error_" + cmp.name + ".vtu");
    }
  }

  report.summary = {
      "solves_converged=" + fmt_bool(solves_ok),
      "transmural_iterations=" + fmt_int(rt.log.iterations),
      "apicobasal_iterations=" + fmt_int(rab.log.iterations),
      "fiber_iterations=" + fmt_int(fo.fiber_log.iterations),
      "transmural_p99=" + format_double(trans_p99),
      "apicobasal_apex_fraction=" + format_double(ab_fraction),
      "fiber_apex_fraction=" + format_double(fiber_fraction),
      "fiber_interior_max=" + format_double(fiber_interior_max)};
  report.passed = solves_ok && trans_p99 <= 20.0 && ab_fraction >= 0.9 &&
                  fiber_interior_max <= 35.0;
  return report;
}

const std::vector<std::string>& study_ids() {
  static const std::vector<std::string> ids{
      "robustness", "singularity", "optimality",
      "convergence", "ring",       "lv"};
  return ids;
}

StudyReport run_study(const std::string& id) {
  if (id == "robustness") return study_robustness();
  if (id == "singularity") return study_singularity();
  if (id == "optimality") return study_optimality();
  if (id == "convergence") return study_convergence();
  if (id == "ring") return study_ring();
  if (id == "lv") return study_lv_comparison();
  std::string known;
  for (const std::string& s : study_ids()) known += " " + s;
  throw std::invalid_argument("unknown study '" + id + "'; available:" +
                              known);
}

}  // namespace fo
