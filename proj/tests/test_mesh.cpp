// Generators, finalize validation and the gmsh reader.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <string>

#include "fo/mesh.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string data_path(const char* name) {
  return std::string(TEST_DATA_DIR) + "/" + name;
}

int facet_count_for_tag(const fo::Mesh& mesh, int tag) {
  int count = 0;
  for (int tg : mesh.facet_tags)
    if (tg == tag) ++count;
  return count;
}

}  // namespace

TEST_CASE("interval generator produces a tagged unit interval") {
  const fo::Mesh mesh = fo::generate_interval(10);
  CHECK(mesh.dim == 1);
  CHECK(mesh.n_vertices() == 11);
  CHECK(mesh.n_cells() == 10);
  CHECK(mesh.total_volume() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mesh.has_tag("left"));
  CHECK(mesh.has_tag("right"));
  CHECK(mesh.vertices_on_tag(mesh.tag_id("left")).size() == 1);
  CHECK(mesh.vertices_on_tag(mesh.tag_id("right")).size() == 1);
}

TEST_CASE("crossed square counts vertices and cells") {
  const fo::Mesh m4 = fo::generate_unit_square(4, fo::SquareSplit::Crossed);
  CHECK(m4.n_vertices() == 41);  // (n+1)^2 + n^2
  CHECK(m4.n_cells() == 64);     // 4 n^2
  CHECK(m4.total_volume() == doctest::Approx(1.0).epsilon(1e-12));

  const fo::Mesh m20 = fo::generate_unit_square(20, fo::SquareSplit::Crossed);
  CHECK(m20.n_vertices() == 841);
  CHECK(m20.n_cells() == 1600);
}

TEST_CASE("diagonal square counts vertices and cells") {
  const fo::Mesh m4 = fo::generate_unit_square(4, fo::SquareSplit::Diagonal);
  CHECK(m4.n_vertices() == 25);
  CHECK(m4.n_cells() == 32);  // 2 n^2
  CHECK(m4.total_volume() == doctest::Approx(1.0).epsilon(1e-12));

  const fo::Mesh m20 = fo::generate_unit_square(20, fo::SquareSplit::Diagonal);
  CHECK(m20.n_vertices() == 441);
  CHECK(m20.n_cells() == 800);
}

TEST_CASE("crossed square with even n has a vertex at the center") {
  const fo::Mesh mesh = fo::generate_unit_square(20, fo::SquareSplit::Crossed);
  bool found = false;
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    const fo::Vec3 x = mesh.vertices[v];
    if (std::abs(x[0] - 0.5) < 1e-14 && std::abs(x[1] - 0.5) < 1e-14)
      found = true;
  }
  CHECK(found);
}

TEST_CASE("square boundary facets partition into the four side tags") {
  const int n = 6;
  const fo::Mesh mesh = fo::generate_unit_square(n, fo::SquareSplit::Crossed);
  CHECK(mesh.n_facets() == 4 * n);
  for (const char* name : {"left", "right", "bottom", "top"}) {
    CHECK(mesh.has_tag(name));
    CHECK(facet_count_for_tag(mesh, mesh.tag_id(name)) == n);
  }
}

TEST_CASE("boundary normals are unit and sides point outward") {
  const fo::Mesh mesh = fo::generate_unit_square(4, fo::SquareSplit::Crossed);
  const fo::NormalField nf = fo::boundary_normals(mesh);
  for (int f = 0; f < mesh.n_facets(); ++f)
    CHECK(norm(nf.facet_normal[f]) == doctest::Approx(1.0).epsilon(1e-12));
  const int left = mesh.tag_id("left");
  for (int f = 0; f < mesh.n_facets(); ++f) {
    if (mesh.facet_tags[f] != left) continue;
    CHECK(nf.facet_normal[f][0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(nf.facet_normal[f][1] == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("vertex normals average at corners and follow tags") {
  const fo::Mesh mesh = fo::generate_unit_square(4, fo::SquareSplit::Crossed);
  const fo::NormalField nf = fo::boundary_normals(mesh);
  int corner = -1;
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    const fo::Vec3 x = mesh.vertices[v];
    if (std::abs(x[0]) < 1e-14 && std::abs(x[1]) < 1e-14) corner = v;
  }
  REQUIRE(corner >= 0);
  CHECK(nf.is_boundary_vertex[corner]);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(nf.vertex_normal[corner][0] == doctest::Approx(-s).epsilon(1e-12));
  CHECK(nf.vertex_normal[corner][1] == doctest::Approx(-s).epsilon(1e-12));

  // Restricted to one tag the corner sees only that side.
  const auto left_normals =
      fo::vertex_normals_for_tag(mesh, mesh.tag_id("left"));
  CHECK(left_normals.at(corner)[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(left_normals.at(corner)[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("annulus area converges to the exact ring area") {
  const double rho = 0.05, R = 1.0;
  const fo::Mesh mesh = fo::generate_annulus(rho, R, 96);
  const double exact = kPi * (R * R - rho * rho);
  CHECK(mesh.total_volume() ==
        doctest::Approx(exact).epsilon(5e-3));  // O(h^2) polygonal deficit
  CHECK(mesh.has_tag("inner"));
  CHECK(mesh.has_tag("outer"));
  for (std::int32_t v : mesh.vertices_on_tag(mesh.tag_id("inner")))
    CHECK(norm(mesh.vertices[v]) == doctest::Approx(rho).epsilon(1e-12));
  for (std::int32_t v : mesh.vertices_on_tag(mesh.tag_id("outer")))
    CHECK(norm(mesh.vertices[v]) == doctest::Approx(R).epsilon(1e-12));
}

TEST_CASE("spherical shell volume approximates the exact shell") {
  const double r_in = 0.5, r_out = 1.0;
  const fo::Mesh mesh = fo::generate_spherical_shell(r_in, r_out, 12);
  const double exact =
      4.0 / 3.0 * kPi * (r_out * r_out * r_out - r_in * r_in * r_in);
  CHECK(mesh.total_volume() == doctest::Approx(exact).epsilon(0.05));
  CHECK(mesh.has_tag("endo"));
  CHECK(mesh.has_tag("epi"));
}

TEST_CASE("ventricle mesh pins the apex and tags its three surfaces") {
  const fo::Mesh mesh = fo::generate_lv_ellipsoid({});
  CHECK(mesh.dim == 3);
  CHECK(mesh.has_tag("endo"));
  CHECK(mesh.has_tag("epi"));
  CHECK(mesh.has_tag("base"));
  REQUIRE(mesh.apex_vertex >= 0);
  const fo::Vec3 apex = mesh.vertices[mesh.apex_vertex];
  CHECK(apex[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(apex[1] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(apex[2] == doctest::Approx(-20.0).epsilon(1e-10));
  CHECK(fo::locate_apex(mesh) == mesh.apex_vertex);
}

TEST_CASE("uniform refinement quadruples triangles and keeps volume") {
  const fo::Mesh coarse = fo::generate_unit_square(4, fo::SquareSplit::Crossed);
  const fo::Mesh fine = fo::refine_uniform(coarse);
  CHECK(fine.n_cells() == 4 * coarse.n_cells());
  CHECK(fine.n_facets() == 2 * coarse.n_facets());
  CHECK(fine.total_volume() ==
        doctest::Approx(coarse.total_volume()).epsilon(1e-12));
  CHECK(fine.tag_names == coarse.tag_names);
  for (const char* name : {"left", "right", "bottom", "top"})
    CHECK(facet_count_for_tag(fine, fine.tag_id(name)) ==
          2 * facet_count_for_tag(coarse, coarse.tag_id(name)));
}

TEST_CASE("gmsh reader loads a crossed unit square") {
  const fo::Mesh mesh = fo::load_gmsh(data_path("square.msh"));
  CHECK(mesh.dim == 2);
  CHECK(mesh.n_vertices() == 5);
  CHECK(mesh.n_cells() == 4);
  CHECK(mesh.n_facets() == 4);
  CHECK(mesh.total_volume() == doctest::Approx(1.0).epsilon(1e-12));
  for (const char* name : {"left", "right", "bottom", "top"}) {
    CHECK(mesh.has_tag(name));
    CHECK(facet_count_for_tag(mesh, mesh.tag_id(name)) == 1);
  }
  const auto left = mesh.vertices_on_tag(mesh.tag_id("left"));
  REQUIRE(left.size() == 2);
  for (std::int32_t v : left)
    CHECK(mesh.vertices[v][0] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("gmsh reader rejects malformed files") {
  CHECK_THROWS_WITH_AS(fo::load_gmsh(data_path("empty.msh")),
                       doctest::Contains("empty mesh file"), fo::MeshError);
  CHECK_THROWS_WITH_AS(fo::load_gmsh(data_path("bad_version.msh")),
                       doctest::Contains("unsupported MSH version"),
                       fo::MeshError);
  CHECK_THROWS_WITH_AS(fo::load_gmsh(data_path("square_nophys.msh")),
                       doctest::Contains("untagged boundary facet"),
                       fo::MeshError);
  CHECK_THROWS_AS(fo::load_gmsh(data_path("does_not_exist.msh")),
                  fo::MeshError);
}

TEST_CASE("finalize rejects degenerate cells") {
  fo::Mesh mesh;
  mesh.dim = 2;
  mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
  mesh.cells = {0, 1, 2};  // collinear
  CHECK_THROWS_AS(mesh.finalize(), fo::MeshError);
}

TEST_CASE("finalize rejects facets that are not boundary faces") {
  fo::Mesh mesh;
  mesh.dim = 2;
  mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  mesh.cells = {0, 1, 2, 0, 2, 3};
  mesh.facets = {0, 2};  // shared diagonal
  mesh.facet_tags = {1};
  mesh.tag_names[1] = "diag";
  CHECK_THROWS_AS(mesh.finalize(), fo::MeshError);
}

TEST_CASE("finalize requires every boundary face to carry a tag") {
  fo::Mesh mesh;
  mesh.dim = 2;
  mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  mesh.cells = {0, 1, 2, 0, 2, 3};
  mesh.facets = {0, 1};  // bottom only; other three sides untagged
  mesh.facet_tags = {1};
  mesh.tag_names[1] = "bottom";
  CHECK_THROWS_AS(mesh.finalize(), fo::MeshError);
}

TEST_CASE("cells are oriented with positive volume after finalize") {
  fo::Mesh mesh;
  mesh.dim = 2;
  mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  mesh.cells = {0, 2, 1};  // clockwise on input
  mesh.facets = {0, 1, 1, 2, 2, 0};
  mesh.facet_tags = {1, 1, 1};
  mesh.tag_names[1] = "rim";
  mesh.finalize();
  CHECK(mesh.cell_volume[0] == doctest::Approx(0.5).epsilon(1e-14));
}
