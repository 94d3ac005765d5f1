// fiberfo: meshes, scalar potentials, unit-norm director solves, fiber
// pipelines and reproduction studies from one binary.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 solver
// non-convergence or divergence, 3 file I/O error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fo/fibers.hpp"
#include "fo/frankoseen.hpp"
#include "fo/harness.hpp"
#include "fo/io.hpp"
#include "fo/mesh.hpp"
#include "fo/poisson.hpp"

using nlohmann::json;

namespace {

constexpr const char* kSchema = "fiberfo-config/1";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PotentialOptions {
  double rtol = 1e-10;
  int max_iterations = 20000;
};

// Whole-file configuration; CLI flags override file values.
struct Config {
  fo::SolverConfig solver;
  PotentialOptions potential;
  fo::RotationParams rotation;
  json problem = json::object();
};

void require_keys(const json& obj, const std::vector<std::string>& allowed,
                  const std::string& where) {
  if (!obj.is_object()) throw UsageError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const std::string& a : allowed) ok = ok || key == a;
    if (!ok) throw UsageError("unknown key \"" + key + "\" in " + where);
  }
}

const char* precon_name(fo::PreconditionerSpec::Kind kind) {
  switch (kind) {
    case fo::PreconditionerSpec::Kind::Jacobi: return "jacobi";
    case fo::PreconditionerSpec::Kind::SymmetricGaussSeidel: return "sgs";
    case fo::PreconditionerSpec::Kind::CgInner: return "cg-inner";
  }
  return "cg-inner";
}

fo::PreconditionerSpec::Kind precon_kind(const std::string& name) {
  if (name == "jacobi") return fo::PreconditionerSpec::Kind::Jacobi;
  if (name == "sgs") return fo::PreconditionerSpec::Kind::SymmetricGaussSeidel;
  if (name == "cg-inner") return fo::PreconditionerSpec::Kind::CgInner;
  throw UsageError("unknown preconditioner \"" + name +
                   "\" (expected jacobi, sgs or cg-inner)");
}

json default_config_json() {
  const Config c;
  json j;
  j["schema"] = kSchema;
  j["solver"] = {{"epsilon", c.solver.epsilon},
                 {"nitsche_penalty", c.solver.nitsche_penalty},
                 {"rtol", c.solver.rtol},
                 {"max_iterations", c.solver.max_iterations},
                 {"preconditioner", precon_name(c.solver.preconditioner.kind)},
                 {"inner_iterations", c.solver.preconditioner.inner_iterations}};
  j["potential"] = {{"rtol", c.potential.rtol},
                    {"max_iterations", c.potential.max_iterations}};
  j["rotation"] = {{"alpha_endo_deg", c.rotation.alpha_endo * 180.0 / fo::kPi},
                   {"alpha_epi_deg", c.rotation.alpha_epi * 180.0 / fo::kPi}};
  j["problem"] = json::object();
  return j;
}

Config load_config(const std::string& path) {
  Config c;
  if (path.empty()) return c;
  json j;
  try {
    j = json::parse(fo::read_file(path));
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
  require_keys(j, {"schema", "solver", "potential", "rotation", "problem"},
               path);
  if (!j.contains("schema") || j["schema"] != kSchema)
    throw UsageError(path + ": missing or unsupported schema (expected \"" +
                     kSchema + "\")");
  if (j.contains("solver")) {
    const json& s = j["solver"];
    require_keys(s,
                 {"epsilon", "nitsche_penalty", "rtol", "max_iterations",
                  "preconditioner", "inner_iterations"},
                 "solver");
    if (s.contains("epsilon")) c.solver.epsilon = s["epsilon"];
    if (s.contains("nitsche_penalty"))
      c.solver.nitsche_penalty = s["nitsche_penalty"];
    if (s.contains("rtol")) c.solver.rtol = s["rtol"];
    if (s.contains("max_iterations"))
      c.solver.max_iterations = s["max_iterations"];
    if (s.contains("preconditioner"))
      c.solver.preconditioner.kind =
          precon_kind(s["preconditioner"].get<std::string>());
    if (s.contains("inner_iterations"))
      c.solver.preconditioner.inner_iterations = s["inner_iterations"];
  }
  if (j.contains("potential")) {
    const json& p = j["potential"];
    require_keys(p, {"rtol", "max_iterations"}, "potential");
    if (p.contains("rtol")) c.potential.rtol = p["rtol"];
    if (p.contains("max_iterations"))
      c.potential.max_iterations = p["max_iterations"];
  }
  if (j.contains("rotation")) {
    const json& r = j["rotation"];
    require_keys(r, {"alpha_endo_deg", "alpha_epi_deg"}, "rotation");
    if (r.contains("alpha_endo_deg"))
      c.rotation.alpha_endo = r["alpha_endo_deg"].get<double>() * fo::kPi / 180.0;
    if (r.contains("alpha_epi_deg"))
      c.rotation.alpha_epi = r["alpha_epi_deg"].get<double>() * fo::kPi / 180.0;
  }
  if (j.contains("problem")) c.problem = j["problem"];
  return c;
}

fo::Vec3 parse_vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3)
    throw UsageError(where + " must be an array of 3 numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

int solve_potential_cmd(const fo::Mesh& mesh, const Config& config,
                        const std::string& out, const std::string& log_path,
                        bool legacy) {
  require_keys(config.problem, {"dirichlet", "apex_value"}, "problem");
  if (!config.problem.contains("dirichlet"))
    throw UsageError("potential solve needs problem.dirichlet in the config");
  std::vector<fo::ScalarBc> bcs;
  for (const auto& [name, value] : config.problem["dirichlet"].items()) {
    if (!value.is_number())
      throw UsageError("problem.dirichlet." + name + " must be a number");
    bcs.push_back({mesh.tag_id(name), value.get<double>()});
  }
  std::vector<fo::ScalarPointBc> points;
  if (config.problem.contains("apex_value")) {
    const int apex =
        mesh.apex_vertex >= 0 ? mesh.apex_vertex : fo::locate_apex(mesh);
    points.push_back({apex, config.problem["apex_value"].get<double>()});
  }
  const fo::ScalarField phi =
      fo::solve_potential(mesh, bcs, points, config.potential.rtol,
                          config.potential.max_iterations);
  fo::VtuBuilder vtu(mesh);
  vtu.add_point_scalar("potential", phi.values);
  vtu.write(out, legacy);
  if (!log_path.empty()) {
    fo::CsvTable t;
    t.header = {"converged"};
    t.rows.push_back({"1"});
    fo::write_csv(log_path, t);
  }
  std::printf("potential solve converged, wrote %s\n", out.c_str());
  return 0;
}

int solve_director_cmd(const fo::Mesh& mesh, const Config& config,
                       const std::string& out, const std::string& log_path,
                       bool legacy) {
  require_keys(config.problem, {"dirichlet", "slip", "initial"}, "problem");
  std::vector<fo::VectorBc> bcs;
  if (config.problem.contains("dirichlet")) {
    for (const auto& [name, value] : config.problem["dirichlet"].items()) {
      const int tag = mesh.tag_id(name);
      fo::VectorBc bc{tag, fo::VectorBc::Kind::Dirichlet, nullptr};
      if (value.is_string()) {
        const std::string s = value.get<std::string>();
        const double sign = s == "normal" ? 1.0 : s == "-normal" ? -1.0 : 0.0;
        if (sign == 0.0)
          throw UsageError("problem.dirichlet." + name +
                           ": expected a 3-vector, \"normal\" or \"-normal\"");
        bc.value = [sign, normals = fo::vertex_normals_for_tag(mesh, tag)](
                       int v, const fo::Vec3&) { return sign * normals[v]; };
      } else {
        const fo::Vec3 g = parse_vec3(value, "problem.dirichlet." + name);
        bc.value = [g](int, const fo::Vec3&) { return g; };
      }
      bcs.push_back(std::move(bc));
    }
  }
  if (config.problem.contains("slip"))
    for (const json& name : config.problem["slip"])
      bcs.push_back({mesh.tag_id(name.get<std::string>()),
                     fo::VectorBc::Kind::Slip, nullptr});

  fo::Vec3 d0_value{1, 0, 0};
  if (config.problem.contains("initial"))
    d0_value = parse_vec3(config.problem["initial"], "problem.initial");
  if (std::abs(fo::norm(d0_value) - 1.0) > 1e-6)
    throw UsageError("problem.initial must be a unit vector");

  const fo::DirectorSystem sys =
      fo::build_director_system(mesh, bcs, {}, config.solver);
  fo::VectorField d0(mesh);
  for (int v = 0; v < d0.n(); ++v) d0.set(v, d0_value);
  const fo::PpgdResult result = fo::ppgd_solve(sys, d0);

  fo::VtuBuilder vtu(mesh);
  vtu.add_point_vector("director", result.d);
  vtu.write(out, legacy);
  if (!log_path.empty())
    fo::write_csv(log_path, fo::convergence_table(result.log));

  const bool converged = result.log.status == fo::SolveStatus::Converged;
  std::printf("director solve: %s after %d iterations, residual %.3e\n",
              converged ? "converged" : "NOT converged", result.log.iterations,
              result.log.final_residual);
  std::printf("wrote %s\n", out.c_str());
  return converged ? 0 : 2;
}

void print_bundle_report(const fo::FiberBundle& bundle, const fo::Mesh& mesh) {
  const fo::ScalarField defect = fo::bundle_defect(bundle);
  const std::int32_t apex =
      mesh.apex_vertex >= 0 ? mesh.apex_vertex : fo::locate_apex(mesh);
  double worst = 0.0, worst_away = 0.0;
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    worst = std::max(worst, defect.values[v]);
    if (fo::norm(mesh.vertices[v] - mesh.vertices[apex]) > 2.0)
      worst_away = std::max(worst_away, defect.values[v]);
  }
  std::printf("method=%s\n", bundle.method.c_str());
  std::printf("orthonormality_defect_max=%.3e\n", worst);
  std::printf("orthonormality_defect_away_from_apex=%.3e\n", worst_away);
  std::printf("boundary_basis_defect=%.3e\n", bundle.max_basis_defect);
}

int fibers_cmd(const std::string& method, const fo::Mesh& mesh,
               const Config& config, const std::string& out,
               const std::string& compare, bool legacy) {
  const std::int32_t apex =
      mesh.apex_vertex >= 0 ? mesh.apex_vertex : fo::locate_apex(mesh);

  fo::FiberBundle bundle;
  int exit_code = 0;
  if (method == "rbm") {
    const fo::ScalarField phi_trans = fo::transmural_potential(mesh);
    const fo::ScalarField phi_ab = fo::apicobasal_potential(mesh);
    const fo::VectorField dt = fo::descending_gradient_direction(phi_trans);
    const fo::VectorField dab =
        fo::orthogonalized(fo::descending_gradient_direction(phi_ab), dt);
    bundle = fo::fibers_rbm(mesh, phi_trans, dt, dab, config.rotation);
  } else {
    const fo::PpgdResult rt = fo::transmural_vector_fo(mesh, config.solver);
    const fo::PpgdResult rab =
        fo::apicobasal_vector_fo(mesh, apex, rt.d, config.solver);
    bundle = fo::fibers_fo(mesh, rt.d, rab.d, config.rotation, config.solver);
    const bool ok = rt.log.status == fo::SolveStatus::Converged &&
                    rab.log.status == fo::SolveStatus::Converged &&
                    bundle.fiber_log.status == fo::SolveStatus::Converged;
    std::printf("solves: transmural %d its, apicobasal %d its, fiber %d its\n",
                rt.log.iterations, rab.log.iterations,
                bundle.fiber_log.iterations);
    if (!ok) exit_code = 2;
  }

  fo::VtuBuilder vtu(mesh);
  vtu.add_point_vector("fiber", bundle.f);
  vtu.add_point_vector("sheet", bundle.s);
  vtu.add_point_vector("normal", bundle.n);

  if (!compare.empty()) {
    const std::vector<fo::Vec3> other =
        fo::read_vtu_point_vectors(compare, "fiber");
    if (static_cast<int>(other.size()) != mesh.n_vertices())
      throw UsageError("compare file " + compare + " has " +
                       std::to_string(other.size()) + " points, mesh has " +
                       std::to_string(mesh.n_vertices()));
    fo::VectorField other_field(mesh);
    for (int v = 0; v < mesh.n_vertices(); ++v) other_field.set(v, other[v]);
    const fo::ScalarField err = fo::angle_error(bundle.f, other_field);
    vtu.add_point_scalar("angle_error", err.values);
    std::vector<double> sorted = err.values;
    std::sort(sorted.begin(), sorted.end());
    auto pct = [&](double p) {
      const std::size_t idx = static_cast<std::size_t>(std::max(
          0.0, std::ceil(p / 100.0 * static_cast<double>(sorted.size())) - 1.0));
      return sorted[std::min(idx, sorted.size() - 1)];
    };
    std::printf("angle_error_deg: p50=%.3f p90=%.3f p99=%.3f max=%.3f\n",
                pct(50), pct(90), pct(99), sorted.back());
  }

  vtu.write(out, legacy);
  print_bundle_report(bundle, mesh);
  std::printf("wrote %s\n", out.c_str());
  return exit_code;
}

int study_cmd(const std::string& id, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  fo::StudyReport report;
  if (id == "lv")
    report = fo::study_lv_comparison({}, out_dir);
  else
    report = fo::run_study(id);
  const std::string csv_path = out_dir + "/" + report.id + ".csv";
  fo::write_csv(csv_path, report.table);
  for (const std::string& line : report.summary)
    std::printf("%s\n", line.c_str());
  std::printf("table: %s\n", csv_path.c_str());
  std::printf("%s: %s\n", report.id.c_str(),
              report.passed ? "PASS" : "FAIL");
  return report.passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unit-norm director fields and cardiac fiber pipelines"};
  app.require_subcommand(0, 1);
  bool print_defaults = false;
  app.add_flag("--print-defaults", print_defaults,
               "print the default JSON config and exit");

  // mesh
  CLI::App* mesh_cmd = app.add_subcommand("mesh", "generate or refine meshes");
  mesh_cmd->require_subcommand(1);
  struct MeshArgs {
    int n = 20;
    double rho = 0.5, radius = 1.0;
    double r_in = 0.5, r_out = 1.0;
    fo::LvGeometry lv;
    std::string in, out, preview;
    std::string split = "crossed";
    int levels = 1;
    bool legacy = false;
  } margs;
  auto add_mesh_common = [&](CLI::App* sub) {
    sub->add_option("--out", margs.out, "mesh file to write")->required();
    sub->add_option("--preview", margs.preview, "also write a VTU preview");
    sub->add_flag("--legacy", margs.legacy, "legacy VTK preview format");
  };
  CLI::App* m_interval = mesh_cmd->add_subcommand("interval", "unit interval");
  m_interval->add_option("--n", margs.n, "cells");
  add_mesh_common(m_interval);
  CLI::App* m_square = mesh_cmd->add_subcommand("square", "unit square");
  m_square->add_option("--n", margs.n, "grid squares per side");
  m_square
      ->add_option("--split", margs.split,
                   "crossed: 4 triangles per square around its center "
                   "(4n^2 cells); diagonal: alternating diagonals "
                   "(2n^2 cells)")
      ->check(CLI::IsMember({"crossed", "diagonal"}));
  add_mesh_common(m_square);
  CLI::App* m_annulus = mesh_cmd->add_subcommand("annulus", "planar annulus");
  m_annulus->add_option("--rho", margs.rho, "inner radius");
  m_annulus->add_option("--radius", margs.radius, "outer radius");
  m_annulus->add_option("--n-theta", margs.n, "angular segments");
  add_mesh_common(m_annulus);
  CLI::App* m_shell = mesh_cmd->add_subcommand("shell", "spherical shell");
  m_shell->add_option("--r-in", margs.r_in, "inner radius");
  m_shell->add_option("--r-out", margs.r_out, "outer radius");
  m_shell->add_option("--n", margs.n, "quads per cube face side");
  add_mesh_common(m_shell);
  CLI::App* m_lv = mesh_cmd->add_subcommand("lv", "idealized left ventricle");
  m_lv->add_option("--endo-short", margs.lv.endo_short, "endo short semi-axis");
  m_lv->add_option("--endo-long", margs.lv.endo_long, "endo long semi-axis");
  m_lv->add_option("--epi-short", margs.lv.epi_short, "epi short semi-axis");
  m_lv->add_option("--epi-long", margs.lv.epi_long, "epi long semi-axis");
  m_lv->add_option("--base-cut", margs.lv.base_cut, "base plane height");
  m_lv->add_option("--target-h", margs.lv.target_h, "target edge length");
  add_mesh_common(m_lv);
  CLI::App* m_refine = mesh_cmd->add_subcommand("refine", "uniform refinement");
  m_refine->add_option("--in", margs.in, "input mesh")->required();
  m_refine->add_option("--levels", margs.levels, "refinement levels");
  add_mesh_common(m_refine);

  // solve
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "potential or director solve");
  std::string solve_problem, solve_mesh, solve_out, solve_config;
  std::string solve_log;
  bool solve_legacy = false;
  std::optional<double> opt_rtol, opt_eps, opt_penalty;
  std::optional<int> opt_maxit, opt_inner;
  std::string opt_precon;
  solve_cmd->add_option("problem", solve_problem, "potential or frank-oseen")
      ->required()
      ->check(CLI::IsMember({"potential", "frank-oseen"}));
  solve_cmd->add_option("--mesh", solve_mesh, "mesh file")->required();
  solve_cmd->add_option("--out", solve_out, "VTU output")->required();
  solve_cmd->add_option("--config", solve_config, "JSON config file");
  solve_cmd->add_option("--log", solve_log, "convergence log CSV");
  solve_cmd->add_option("--rtol", opt_rtol, "relative tolerance");
  solve_cmd->add_option("--maxit", opt_maxit, "iteration cap");
  solve_cmd->add_option("--epsilon", opt_eps, "projection regularization");
  solve_cmd->add_option("--penalty", opt_penalty, "slip penalty constant");
  solve_cmd->add_option("--precon", opt_precon,
                        "preconditioner: jacobi, sgs or cg-inner");
  solve_cmd->add_option("--inner-iterations", opt_inner,
                        "inner iterations of cg-inner");
  solve_cmd->add_flag("--legacy", solve_legacy, "legacy VTK output");

  // fibers
  CLI::App* fibers_cmd_app =
      app.add_subcommand("fibers", "fiber bundle pipelines");
  std::string fib_method, fib_mesh, fib_out, fib_config, fib_compare;
  std::optional<double> fib_alpha_endo, fib_alpha_epi;
  bool fib_legacy = false;
  fibers_cmd_app->add_option("method", fib_method, "rbm or fo")
      ->required()
      ->check(CLI::IsMember({"rbm", "fo"}));
  fibers_cmd_app->add_option("--mesh", fib_mesh, "mesh file")->required();
  fibers_cmd_app->add_option("--out", fib_out, "VTU output")->required();
  fibers_cmd_app->add_option("--config", fib_config, "JSON config file");
  fibers_cmd_app->add_option("--alpha-endo", fib_alpha_endo,
                             "endocardial angle (degrees)");
  fibers_cmd_app->add_option("--alpha-epi", fib_alpha_epi,
                             "epicardial angle (degrees)");
  fibers_cmd_app->add_option("--compare", fib_compare,
                             "VTU with a fiber array to compare against");
  fibers_cmd_app->add_flag("--legacy", fib_legacy, "legacy VTK output");

  // study
  CLI::App* study_cmd_app = app.add_subcommand("study", "reproduction studies");
  std::string study_id, study_out_dir = ".";
  std::string ids_help;
  for (const std::string& s : fo::study_ids()) ids_help += s + " ";
  study_cmd_app->add_option("id", study_id, "one of: " + ids_help)->required();
  study_cmd_app->add_option("--out-dir", study_out_dir,
                            "directory for CSV (and VTU) outputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (print_defaults) {
    std::printf("%s\n", default_config_json().dump(2).c_str());
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::fputs(app.help().c_str(), stderr);
    return 1;
  }

  try {
    if (mesh_cmd->parsed()) {
      fo::Mesh mesh;
      if (m_interval->parsed()) mesh = fo::generate_interval(margs.n);
      else if (m_square->parsed())
        mesh = fo::generate_unit_square(margs.n, margs.split == "diagonal"
                                                     ? fo::SquareSplit::Diagonal
                                                     : fo::SquareSplit::Crossed);
      else if (m_annulus->parsed())
        mesh = fo::generate_annulus(margs.rho, margs.radius, margs.n);
      else if (m_shell->parsed())
        mesh = fo::generate_spherical_shell(margs.r_in, margs.r_out, margs.n);
      else if (m_lv->parsed()) mesh = fo::generate_lv_ellipsoid(margs.lv);
      else if (m_refine->parsed()) {
        mesh = fo::load_mesh(margs.in);
        for (int l = 0; l < margs.levels; ++l) mesh = fo::refine_uniform(mesh);
      }
      fo::save_mesh(mesh, margs.out);
      std::printf("mesh: dim=%d vertices=%d cells=%d facets=%d -> %s\n",
                  mesh.dim, mesh.n_vertices(), mesh.n_cells(), mesh.n_facets(),
                  margs.out.c_str());
      if (!margs.preview.empty()) {
        fo::write_mesh_preview_vtu(mesh, margs.preview, margs.legacy);
        std::printf("preview: %s\n", margs.preview.c_str());
      }
      return 0;
    }
    if (solve_cmd->parsed()) {
      Config config = load_config(solve_config);
      if (opt_rtol) config.solver.rtol = *opt_rtol;
      if (opt_maxit) config.solver.max_iterations = *opt_maxit;
      if (opt_eps) config.solver.epsilon = *opt_eps;
      if (opt_penalty) config.solver.nitsche_penalty = *opt_penalty;
      if (!opt_precon.empty())
        config.solver.preconditioner.kind = precon_kind(opt_precon);
      if (opt_inner) config.solver.preconditioner.inner_iterations = *opt_inner;
      if (opt_rtol) config.potential.rtol = *opt_rtol;
      if (opt_maxit) config.potential.max_iterations = *opt_maxit;
      const fo::Mesh mesh = fo::load_mesh(solve_mesh);
      if (solve_problem == "potential")
        return solve_potential_cmd(mesh, config, solve_out, solve_log,
                                   solve_legacy);
      return solve_director_cmd(mesh, config, solve_out, solve_log,
                                solve_legacy);
    }
    if (fibers_cmd_app->parsed()) {
      Config config = load_config(fib_config);
      if (fib_alpha_endo)
        config.rotation.alpha_endo = *fib_alpha_endo * fo::kPi / 180.0;
      if (fib_alpha_epi)
        config.rotation.alpha_epi = *fib_alpha_epi * fo::kPi / 180.0;
      const fo::Mesh mesh = fo::load_mesh(fib_mesh);
      return fibers_cmd(fib_method, mesh, config, fib_out, fib_compare,
                        fib_legacy);
    }
    if (study_cmd_app->parsed()) return study_cmd(study_id, study_out_dir);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const fo::SolveError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 2;
  } catch (const fo::LinalgError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 2;
  } catch (const fo::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 3;
  } catch (const fo::MeshError& e) {
    std::fprintf(stderr, "mesh error: %s\n", e.what());
    return 3;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  }
  return 1;
}
