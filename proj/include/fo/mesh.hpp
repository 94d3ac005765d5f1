#pragma once
// Simplicial meshes in 1, 2 and 3 dimensions with tagged boundary facets.
//
// Conventions:
//  - vertices always carry 3 coordinates; unused trailing coordinates are 0,
//  - cells are stored flat with stride dim+1 and positive signed volume,
//  - a boundary facet has dim vertices, exactly one tag and exactly one
//    adjacent cell,
//  - tag_names maps every used tag id to a name; LV meshes additionally set
//    apex_vertex and reserve a tag name for it.

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fo/vec3.hpp"

namespace fo {

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Mesh {
  int dim = 0;
  std::vector<Vec3> vertices;
  std::vector<std::int32_t> cells;   // stride dim+1
  std::vector<std::int32_t> facets;  // stride dim, boundary only
  std::vector<std::int32_t> facet_tags;
  std::map<int, std::string> tag_names;
  int apex_vertex = -1;

  // Filled by finalize().
  std::vector<std::int32_t> facet_cell;
  std::vector<double> cell_volume;
  std::vector<double> cell_diameter;   // longest edge
  std::vector<Vec3> shape_grads;       // stride dim+1, per cell

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_cells() const { return static_cast<int>(cells.size()) / (dim + 1); }
  int n_facets() const {
    return dim == 0 ? 0 : static_cast<int>(facets.size()) / dim;
  }
  std::span<const std::int32_t> cell(int c) const {
    return {cells.data() + static_cast<std::size_t>(c) * (dim + 1),
            static_cast<std::size_t>(dim + 1)};
  }
  std::span<const std::int32_t> facet(int f) const {
    return {facets.data() + static_cast<std::size_t>(f) * dim,
            static_cast<std::size_t>(dim)};
  }
  std::span<const Vec3> cell_shape_grads(int c) const {
    return {shape_grads.data() + static_cast<std::size_t>(c) * (dim + 1),
            static_cast<std::size_t>(dim + 1)};
  }

  // Tag id for a name; throws MeshError if the name is unknown.
  int tag_id(const std::string& name) const;
  bool has_tag(const std::string& name) const;

  // 1 for every vertex incident to a facet with the given tag.
  std::vector<char> vertices_on_tag(int tag) const;
  std::vector<char> boundary_vertices() const;

  double total_volume() const;

  // Orients cells, computes volumes/diameters/shape gradients and the
  // facet-to-cell map, and validates the boundary invariants.  Throws
  // MeshError on degenerate cells, untagged or non-boundary facets.
  void finalize();
};

// Outward unit normals: exact per boundary facet, area-weighted averages at
// boundary vertices (renormalized).  Interior vertices hold zero.
struct NormalField {
  std::vector<Vec3> facet_normal;
  std::vector<Vec3> vertex_normal;
  std::vector<char> is_boundary_vertex;
};

NormalField boundary_normals(const Mesh& mesh);

// Vertex normals averaged over facets of a single tag; entries are zero off
// that tag.  Used for boundary data on surfaces meeting at edges.
std::vector<Vec3> vertex_normals_for_tag(const Mesh& mesh, int tag);

// Uniform interval [0,1] into n cells; tags {left, right}.
Mesh generate_interval(int n);

enum class SquareSplit { Crossed, Diagonal };

// Unit square on an n x n grid; tags {left, right, bottom, top}.  Crossed
// places a vertex at every square center with four triangles around it
// (4n^2 cells), so the midpoint (0.5, 0.5) is a grid vertex for even n.
// Diagonal splits each square in two along alternating diagonals (2n^2
// cells).
Mesh generate_unit_square(int n, SquareSplit split = SquareSplit::Crossed);

// Annulus with radii rho < R, n_theta angular segments; tags {inner, outer}.
Mesh generate_annulus(double rho, double R, int n_theta);

// Spherical shell r_in < r_out built from a projected cube surface with n x n
// quads per face and radial layers; tags {endo, epi}.
Mesh generate_spherical_shell(double r_in, double r_out, int n);

struct LvGeometry {
  double endo_short = 7.0;   // endocardial semi-axes (mm)
  double endo_long = 17.0;
  double epi_short = 10.0;   // epicardial semi-axes (mm)
  double epi_long = 20.0;
  double base_cut = 5.0;     // base plane height z = base_cut
  double target_h = 2.0;     // requested edge length (mm)
};

// Idealized left ventricle: truncated prolate spheroid shell with a flat
// base, tags {endo, epi, base} plus the apex vertex.  The epicardial apex is
// an exact mesh vertex.
Mesh generate_lv_ellipsoid(const LvGeometry& geom);

// Epicardial vertex with minimal z; ties broken by smallest index.  Falls
// back to all vertices when no "epi" tag exists.
int locate_apex(const Mesh& mesh);

// One level of uniform refinement (red subdivision): cell count times 2^dim,
// boundary tags preserved.
Mesh refine_uniform(const Mesh& mesh);

// Gmsh MSH 4.1 ASCII reader.  Requires physical names on all boundary
// entities; throws MeshError with the offending entity otherwise.
Mesh load_gmsh(const std::string& path);

}  // namespace fo
