#include "fo/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <unordered_map>

namespace fo {

namespace {

using FaceKey = std::array<std::int32_t, 3>;  // sorted, -1 padded

FaceKey face_key(std::span<const std::int32_t> verts) {
  FaceKey k{-1, -1, -1};
  for (std::size_t i = 0; i < verts.size(); ++i) k[i] = verts[i];
  std::sort(k.begin(), k.end());
  return k;
}

double signed_volume(const Mesh& m, const std::int32_t* c) {
  const auto& v = m.vertices;
  switch (m.dim) {
    case 1:
      return v[c[1]][0] - v[c[0]][0];
    case 2: {
      const Vec3 e1 = v[c[1]] - v[c[0]];
      const Vec3 e2 = v[c[2]] - v[c[0]];
      return 0.5 * (e1[0] * e2[1] - e1[1] * e2[0]);
    }
    default: {
      const Vec3 e1 = v[c[1]] - v[c[0]];
      const Vec3 e2 = v[c[2]] - v[c[0]];
      const Vec3 e3 = v[c[3]] - v[c[0]];
      return dot(e1, cross(e2, e3)) / 6.0;
    }
  }
}

Vec3 centroid(const Mesh& m, std::span<const std::int32_t> verts) {
  Vec3 c{0, 0, 0};
  for (auto vi : verts) c = c + m.vertices[vi];
  return (1.0 / static_cast<double>(verts.size())) * c;
}

}  // namespace

int Mesh::tag_id(const std::string& name) const {
  for (const auto& [id, n] : tag_names)
    if (n == name) return id;
  throw MeshError("unknown boundary tag name: " + name);
}

bool Mesh::has_tag(const std::string& name) const {
  for (const auto& [id, n] : tag_names)
    if (n == name) return true;
  return false;
}

std::vector<char> Mesh::vertices_on_tag(int tag) const {
  std::vector<char> mask(vertices.size(), 0);
  for (int f = 0; f < n_facets(); ++f)
    if (facet_tags[f] == tag)
      for (auto vi : facet(f)) mask[vi] = 1;
  return mask;
}

std::vector<char> Mesh::boundary_vertices() const {
  std::vector<char> mask(vertices.size(), 0);
  for (int f = 0; f < n_facets(); ++f)
    for (auto vi : facet(f)) mask[vi] = 1;
  return mask;
}

double Mesh::total_volume() const {
  double s = 0.0;
  for (double v : cell_volume) s += v;
  return s;
}

void Mesh::finalize() {
  if (dim < 1 || dim > 3) throw MeshError("mesh dimension must be 1, 2 or 3");
  const int nc = n_cells();
  const int nv = n_vertices();
  for (auto vi : cells)
    if (vi < 0 || vi >= nv) throw MeshError("cell vertex index out of range");
  for (auto vi : facets)
    if (vi < 0 || vi >= nv) throw MeshError("facet vertex index out of range");

  // Canonical orientation: positive signed volume.
  cell_volume.assign(nc, 0.0);
  cell_diameter.assign(nc, 0.0);
  for (int c = 0; c < nc; ++c) {
    std::int32_t* cv = cells.data() + static_cast<std::size_t>(c) * (dim + 1);
    double vol = signed_volume(*this, cv);
    if (vol < 0.0) {
      std::swap(cv[0], cv[1]);
      vol = -vol;
    }
    if (!(vol > 0.0))
      throw MeshError("degenerate cell " + std::to_string(c) +
                      " with zero volume");
    cell_volume[c] = vol;
    double diam = 0.0;
    for (int i = 0; i <= dim; ++i)
      for (int j = i + 1; j <= dim; ++j)
        diam = std::max(diam, norm(vertices[cv[i]] - vertices[cv[j]]));
    cell_diameter[c] = diam;
  }

  // Shape function gradients (P1 barycentric), constant per cell.
  shape_grads.assign(static_cast<std::size_t>(nc) * (dim + 1), Vec3{0, 0, 0});
  for (int c = 0; c < nc; ++c) {
    const auto cv = cell(c);
    Vec3* g = shape_grads.data() + static_cast<std::size_t>(c) * (dim + 1);
    switch (dim) {
      case 1: {
        const double h = vertices[cv[1]][0] - vertices[cv[0]][0];
        g[0] = {-1.0 / h, 0, 0};
        g[1] = {1.0 / h, 0, 0};
        break;
      }
      case 2: {
        const Vec3 p0 = vertices[cv[0]], p1 = vertices[cv[1]],
                   p2 = vertices[cv[2]];
        const double two_a = 2.0 * cell_volume[c];
        g[0] = {(p1[1] - p2[1]) / two_a, (p2[0] - p1[0]) / two_a, 0};
        g[1] = {(p2[1] - p0[1]) / two_a, (p0[0] - p2[0]) / two_a, 0};
        g[2] = {(p0[1] - p1[1]) / two_a, (p1[0] - p0[0]) / two_a, 0};
        break;
      }
      default: {
        const Vec3 e1 = vertices[cv[1]] - vertices[cv[0]];
        const Vec3 e2 = vertices[cv[2]] - vertices[cv[0]];
        const Vec3 e3 = vertices[cv[3]] - vertices[cv[0]];
        const double det = 6.0 * cell_volume[c];
        g[1] = (1.0 / det) * cross(e2, e3);
        g[2] = (1.0 / det) * cross(e3, e1);
        g[3] = (1.0 / det) * cross(e1, e2);
        g[0] = {-(g[1][0] + g[2][0] + g[3][0]),
                -(g[1][1] + g[2][1] + g[3][1]),
                -(g[1][2] + g[2][2] + g[3][2])};
        break;
      }
    }
  }

  // Map each face of each cell; boundary faces are those seen exactly once.
  std::map<FaceKey, std::pair<int, int>> face_count;  // key -> (count, cell)
  for (int c = 0; c < nc; ++c) {
    const auto cv = cell(c);
    for (int omit = 0; omit <= dim; ++omit) {
      std::array<std::int32_t, 3> fv{-1, -1, -1};
      int k = 0;
      for (int i = 0; i <= dim; ++i)
        if (i != omit) fv[k++] = cv[i];
      FaceKey key = face_key({fv.data(), static_cast<std::size_t>(dim)});
      auto [it, inserted] = face_count.try_emplace(key, std::pair{0, c});
      it->second.first += 1;
      it->second.second = c;
    }
  }

  const int nf = n_facets();
  if (static_cast<int>(facet_tags.size()) != nf)
    throw MeshError("facet tag list does not match facet list");
  facet_cell.assign(nf, -1);
  std::map<FaceKey, int> tagged;
  for (int f = 0; f < nf; ++f) {
    FaceKey key = face_key(facet(f));
    auto it = face_count.find(key);
    if (it == face_count.end() || it->second.first > 2)
      throw MeshError("facet " + std::to_string(f) +
                      " does not match any cell face");
    if (it->second.first != 1)
      throw MeshError("facet " + std::to_string(f) +
                      " is interior: shared by two cells");
    facet_cell[f] = it->second.second;
    if (!tagged.try_emplace(key, f).second)
      throw MeshError("facet " + std::to_string(f) + " is tagged twice");
  }
  for (const auto& [key, cc] : face_count) {
    if (cc.first == 1 && !tagged.contains(key)) {
      std::string verts;
      for (auto vi : key)
        if (vi >= 0) verts += " " + std::to_string(vi);
      throw MeshError("untagged boundary facet with vertices" + verts);
    }
  }
  for (int f = 0; f < nf; ++f)
    if (!tag_names.contains(facet_tags[f]))
      throw MeshError("facet tag " + std::to_string(facet_tags[f]) +
                      " has no name");
}

NormalField boundary_normals(const Mesh& mesh) {
  NormalField nf;
  const int n_facets = mesh.n_facets();
  nf.facet_normal.assign(n_facets, Vec3{0, 0, 0});
  nf.vertex_normal.assign(mesh.vertices.size(), Vec3{0, 0, 0});
  nf.is_boundary_vertex.assign(mesh.vertices.size(), 0);

  for (int f = 0; f < n_facets; ++f) {
    const auto fv = mesh.facet(f);
    Vec3 n{0, 0, 0};
    double area = 0.0;
    switch (mesh.dim) {
      case 1:
        n = {1, 0, 0};
        area = 1.0;
        break;
      case 2: {
        const Vec3 t = mesh.vertices[fv[1]] - mesh.vertices[fv[0]];
        area = norm(t);
        if (area <= 0.0)
          throw MeshError("degenerate boundary facet " + std::to_string(f));
        n = {t[1] / area, -t[0] / area, 0};
        break;
      }
      default: {
        const Vec3 e1 = mesh.vertices[fv[1]] - mesh.vertices[fv[0]];
        const Vec3 e2 = mesh.vertices[fv[2]] - mesh.vertices[fv[0]];
        Vec3 c = cross(e1, e2);
        const double len = norm(c);
        if (len <= 0.0)
          throw MeshError("degenerate boundary facet " + std::to_string(f));
        area = 0.5 * len;
        n = (1.0 / len) * c;
        break;
      }
    }
    // Orient outward relative to the adjacent cell.
    const Vec3 fc = centroid(mesh, fv);
    const Vec3 cc = centroid(mesh, mesh.cell(mesh.facet_cell[f]));
    if (dot(n, fc - cc) < 0.0) n = -1.0 * n;
    nf.facet_normal[f] = n;
    for (auto vi : fv) {
      nf.vertex_normal[vi] = nf.vertex_normal[vi] + area * n;
      nf.is_boundary_vertex[vi] = 1;
    }
  }
  for (std::size_t v = 0; v < nf.vertex_normal.size(); ++v)
    if (nf.is_boundary_vertex[v]) {
      const double len = norm(nf.vertex_normal[v]);
      if (len <= 0.0)
        throw MeshError("zero averaged normal at vertex " + std::to_string(v));
      nf.vertex_normal[v] = (1.0 / len) * nf.vertex_normal[v];
    }
  return nf;
}

std::vector<Vec3> vertex_normals_for_tag(const Mesh& mesh, int tag) {
  NormalField all = boundary_normals(mesh);
  std::vector<Vec3> out(mesh.vertices.size(), Vec3{0, 0, 0});
  for (int f = 0; f < mesh.n_facets(); ++f) {
    if (mesh.facet_tags[f] != tag) continue;
    const auto fv = mesh.facet(f);
    double area = 1.0;
    if (mesh.dim == 2) {
      area = norm(mesh.vertices[fv[1]] - mesh.vertices[fv[0]]);
    } else if (mesh.dim == 3) {
      area = 0.5 * norm(cross(mesh.vertices[fv[1]] - mesh.vertices[fv[0]],
                              mesh.vertices[fv[2]] - mesh.vertices[fv[0]]));
    }
    for (auto vi : fv) out[vi] = out[vi] + area * all.facet_normal[f];
  }
  for (auto& n : out) {
    const double len = norm(n);
    if (len > 0.0) n = (1.0 / len) * n;
  }
  return out;
}

Mesh generate_interval(int n) {
  if (n < 1) throw MeshError("interval mesh needs at least one cell");
  Mesh m;
  m.dim = 1;
  m.vertices.resize(n + 1);
  for (int i = 0; i <= n; ++i)
    m.vertices[i] = {static_cast<double>(i) / n, 0, 0};
  for (int i = 0; i < n; ++i) {
    m.cells.push_back(i);
    m.cells.push_back(i + 1);
  }
  m.facets = {0, n};
  m.facet_tags = {1, 2};
  m.tag_names = {{1, "left"}, {2, "right"}};
  m.finalize();
  return m;
}

Mesh generate_unit_square(int n, SquareSplit split) {
  if (n < 1) throw MeshError("square mesh needs at least one cell per side");
  Mesh m;
  m.dim = 2;
  const int stride = n + 1;
  m.vertices.resize(static_cast<std::size_t>(stride) * stride);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      m.vertices[j * stride + i] = {static_cast<double>(i) / n,
                                    static_cast<double>(j) / n, 0};
  auto vid = [stride](int i, int j) { return j * stride + i; };
  if (split == SquareSplit::Crossed) {
    // Four triangles around each square center.  Keeps the full dihedral
    // symmetry of the square and puts (0.5, 0.5) on the grid for even n.
    m.vertices.resize(static_cast<std::size_t>(stride) * stride +
                      static_cast<std::size_t>(n) * n);
    auto cid = [stride, n](int i, int j) {
      return stride * stride + j * n + i;
    };
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        m.vertices[cid(i, j)] = {(i + 0.5) / n, (j + 0.5) / n, 0};
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1),
                  v11 = vid(i + 1, j + 1), c = cid(i, j);
        m.cells.insert(m.cells.end(), {v00, v10, c});
        m.cells.insert(m.cells.end(), {v10, v11, c});
        m.cells.insert(m.cells.end(), {v11, v01, c});
        m.cells.insert(m.cells.end(), {v01, v00, c});
      }
  } else {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1),
                  v11 = vid(i + 1, j + 1);
        if ((i + j) % 2 == 0) {
          m.cells.insert(m.cells.end(), {v00, v10, v11});
          m.cells.insert(m.cells.end(), {v00, v11, v01});
        } else {
          m.cells.insert(m.cells.end(), {v00, v10, v01});
          m.cells.insert(m.cells.end(), {v10, v11, v01});
        }
      }
  }
  for (int j = 0; j < n; ++j) {  // left, right
    m.facets.insert(m.facets.end(), {vid(0, j), vid(0, j + 1)});
    m.facet_tags.push_back(1);
    m.facets.insert(m.facets.end(), {vid(n, j), vid(n, j + 1)});
    m.facet_tags.push_back(2);
  }
  for (int i = 0; i < n; ++i) {  // bottom, top
    m.facets.insert(m.facets.end(), {vid(i, 0), vid(i + 1, 0)});
    m.facet_tags.push_back(3);
    m.facets.insert(m.facets.end(), {vid(i, n), vid(i + 1, n)});
    m.facet_tags.push_back(4);
  }
  m.tag_names = {{1, "left"}, {2, "right"}, {3, "bottom"}, {4, "top"}};
  m.finalize();
  return m;
}

Mesh generate_annulus(double rho, double R, int n_theta) {
  if (!(0.0 < rho && rho < R))
    throw MeshError("annulus needs 0 < rho < R");
  if (n_theta < 8) throw MeshError("annulus needs at least 8 angular segments");
  const double d_theta = 2.0 * std::numbers::pi * 0.5 * (rho + R) / n_theta;
  const int nr = std::max(2, static_cast<int>(std::lround((R - rho) / d_theta)));
  Mesh m;
  m.dim = 2;
  auto vid = [n_theta](int i, int j) { return i * n_theta + (j % n_theta); };
  m.vertices.resize(static_cast<std::size_t>(nr + 1) * n_theta);
  for (int i = 0; i <= nr; ++i) {
    const double r = rho + (R - rho) * i / nr;
    for (int j = 0; j < n_theta; ++j) {
      const double th = 2.0 * std::numbers::pi * j / n_theta;
      m.vertices[vid(i, j)] = {r * std::cos(th), r * std::sin(th), 0};
    }
  }
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < n_theta; ++j) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1),
                v11 = vid(i + 1, j + 1);
      if ((i + j) % 2 == 0) {
        m.cells.insert(m.cells.end(), {v00, v10, v11});
        m.cells.insert(m.cells.end(), {v00, v11, v01});
      } else {
        m.cells.insert(m.cells.end(), {v00, v10, v01});
        m.cells.insert(m.cells.end(), {v10, v11, v01});
      }
    }
  for (int j = 0; j < n_theta; ++j) {
    m.facets.insert(m.facets.end(), {vid(0, j), vid(0, j + 1)});
    m.facet_tags.push_back(1);
    m.facets.insert(m.facets.end(), {vid(nr, j), vid(nr, j + 1)});
    m.facet_tags.push_back(2);
  }
  m.tag_names = {{1, "inner"}, {2, "outer"}};
  m.finalize();
  return m;
}

namespace {

// Split the triangular prism (bottom a,b,c / top a',b',c') into three
// tetrahedra cutting every quad face along the diagonal through the smallest
// global vertex id, so neighboring prisms agree on shared faces.
void split_prism(const std::array<std::int32_t, 6>& p,
                 std::vector<std::int32_t>& cells) {
  static const int perms[6][6] = {
      {0, 1, 2, 3, 4, 5}, {1, 2, 0, 4, 5, 3}, {2, 0, 1, 5, 3, 4},
      {3, 5, 4, 0, 2, 1}, {4, 3, 5, 1, 0, 2}, {5, 4, 3, 2, 1, 0}};
  int best = 0;
  for (int i = 1; i < 6; ++i)
    if (p[i] < p[best]) best = i;
  const int* perm = perms[0];
  for (const auto& pr : perms)
    if (pr[0] == best) {
      perm = pr;
      break;
    }
  std::array<std::int32_t, 6> v;
  for (int i = 0; i < 6; ++i) v[i] = p[perm[i]];
  if (std::min(v[1], v[5]) < std::min(v[2], v[4])) {
    cells.insert(cells.end(), {v[0], v[1], v[2], v[5]});
    cells.insert(cells.end(), {v[0], v[1], v[5], v[4]});
    cells.insert(cells.end(), {v[0], v[4], v[5], v[3]});
  } else {
    cells.insert(cells.end(), {v[0], v[1], v[2], v[4]});
    cells.insert(cells.end(), {v[0], v[4], v[2], v[5]});
    cells.insert(cells.end(), {v[0], v[4], v[5], v[3]});
  }
}

// Quad (q0,q1,q2,q3) in cyclic order split along the diagonal through its
// smallest vertex id; matches the prism rule on shared faces.
void split_quad_facet(std::int32_t q0, std::int32_t q1, std::int32_t q2,
                      std::int32_t q3, int tag, std::vector<std::int32_t>& facets,
                      std::vector<std::int32_t>& tags) {
  const std::int32_t m = std::min({q0, q1, q2, q3});
  if (m == q0 || m == q2) {
    facets.insert(facets.end(), {q0, q1, q2});
    facets.insert(facets.end(), {q0, q2, q3});
  } else {
    facets.insert(facets.end(), {q1, q2, q3});
    facets.insert(facets.end(), {q1, q3, q0});
  }
  tags.push_back(tag);
  tags.push_back(tag);
}

}  // namespace

Mesh generate_spherical_shell(double r_in, double r_out, int n) {
  if (!(0.0 < r_in && r_in < r_out))
    throw MeshError("spherical shell needs 0 < r_in < r_out");
  if (n < 2) throw MeshError("spherical shell needs n >= 2");

  // Lattice points on the surface of the [0,n]^3 cube, deduplicated.
  std::map<std::array<int, 3>, int> surf_id;
  std::vector<Vec3> directions;
  auto surf_vertex = [&](int i, int j, int k) {
    auto [it, inserted] = surf_id.try_emplace({i, j, k}, -1);
    if (inserted) {
      it->second = static_cast<int>(directions.size());
      const Vec3 c = {2.0 * i / n - 1.0, 2.0 * j / n - 1.0, 2.0 * k / n - 1.0};
      directions.push_back(normalized(c));
    }
    return it->second;
  };

  std::vector<std::array<int, 3>> tris;
  auto add_face_quads = [&](auto corner) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const int v00 = corner(a, b), v10 = corner(a + 1, b),
                  v01 = corner(a, b + 1), v11 = corner(a + 1, b + 1);
        if ((a + b) % 2 == 0) {
          tris.push_back({v00, v10, v11});
          tris.push_back({v00, v11, v01});
        } else {
          tris.push_back({v00, v10, v01});
          tris.push_back({v10, v11, v01});
        }
      }
  };
  add_face_quads([&](int a, int b) { return surf_vertex(0, a, b); });
  add_face_quads([&](int a, int b) { return surf_vertex(n, a, b); });
  add_face_quads([&](int a, int b) { return surf_vertex(a, 0, b); });
  add_face_quads([&](int a, int b) { return surf_vertex(a, n, b); });
  add_face_quads([&](int a, int b) { return surf_vertex(a, b, 0); });
  add_face_quads([&](int a, int b) { return surf_vertex(a, b, n); });

  const int n_surf = static_cast<int>(directions.size());
  const double spacing = (r_in + r_out) * 0.5 * 2.0 / n;  // rough arc length
  const int nl =
      std::max(1, static_cast<int>(std::lround((r_out - r_in) / spacing)));

  Mesh m;
  m.dim = 3;
  m.vertices.resize(static_cast<std::size_t>(nl + 1) * n_surf);
  for (int l = 0; l <= nl; ++l) {
    const double r = r_in + (r_out - r_in) * l / nl;
    for (int s = 0; s < n_surf; ++s)
      m.vertices[static_cast<std::size_t>(l) * n_surf + s] =
          r * directions[s];
  }
  auto lid = [n_surf](int l, int s) { return l * n_surf + s; };
  for (int l = 0; l < nl; ++l)
    for (const auto& t : tris)
      split_prism({lid(l, t[0]), lid(l, t[1]), lid(l, t[2]),
                   lid(l + 1, t[0]), lid(l + 1, t[1]), lid(l + 1, t[2])},
                  m.cells);
  for (const auto& t : tris) {
    m.facets.insert(m.facets.end(), {lid(0, t[0]), lid(0, t[1]), lid(0, t[2])});
    m.facet_tags.push_back(1);
    m.facets.insert(m.facets.end(),
                    {lid(nl, t[0]), lid(nl, t[1]), lid(nl, t[2])});
    m.facet_tags.push_back(2);
  }
  m.tag_names = {{1, "endo"}, {2, "epi"}};
  m.finalize();
  return m;
}

Mesh generate_lv_ellipsoid(const LvGeometry& geom) {
  if (!(geom.endo_short < geom.epi_short && geom.endo_long < geom.epi_long))
    throw MeshError("LV epicardial semi-axes must exceed endocardial ones");
  if (!(geom.base_cut > -geom.endo_long && geom.base_cut < geom.endo_long))
    throw MeshError("LV base cut must intersect the endocardial shell");
  if (!(geom.target_h > 0.0)) throw MeshError("LV target_h must be positive");

  const double phi_max_epi = std::acos(-geom.base_cut / geom.epi_long);
  const double meridian = phi_max_epi * 0.5 * (geom.epi_short + geom.epi_long);
  const int n_phi =
      std::max(3, static_cast<int>(std::lround(meridian / geom.target_h)));
  const int n_theta = std::max(
      8, static_cast<int>(std::lround(2.0 * std::numbers::pi * geom.epi_short /
                                      geom.target_h)));
  const double wall = geom.epi_short - geom.endo_short;
  const int n_u =
      std::max(2, static_cast<int>(std::lround(wall / geom.target_h)));

  // Surface topology shared by all transmural layers: pole + n_phi rings of
  // n_theta vertices.  Surface vertex 0 is the pole.
  const int n_surf = 1 + n_phi * n_theta;
  auto sid = [n_theta](int j, int k) {
    return 1 + (j - 1) * n_theta + (k % n_theta);
  };
  std::vector<std::array<int, 3>> tris;
  for (int k = 0; k < n_theta; ++k) tris.push_back({0, sid(1, k), sid(1, k + 1)});
  for (int j = 1; j < n_phi; ++j)
    for (int k = 0; k < n_theta; ++k) {
      const int v00 = sid(j, k), v10 = sid(j, k + 1), v01 = sid(j + 1, k),
                v11 = sid(j + 1, k + 1);
      if ((j + k) % 2 == 0) {
        tris.push_back({v00, v10, v11});
        tris.push_back({v00, v11, v01});
      } else {
        tris.push_back({v00, v10, v01});
        tris.push_back({v10, v11, v01});
      }
    }

  Mesh m;
  m.dim = 3;
  m.vertices.resize(static_cast<std::size_t>(n_u + 1) * n_surf);
  auto lid = [n_surf](int i, int s) { return i * n_surf + s; };
  for (int i = 0; i <= n_u; ++i) {
    const double t = static_cast<double>(i) / n_u;
    const double a = geom.endo_short + t * (geom.epi_short - geom.endo_short);
    const double b = geom.endo_long + t * (geom.epi_long - geom.endo_long);
    const double phi_max = std::acos(-geom.base_cut / b);
    m.vertices[lid(i, 0)] = {0, 0, -b};
    for (int j = 1; j <= n_phi; ++j) {
      const double phi = phi_max * j / n_phi;
      for (int k = 0; k < n_theta; ++k) {
        const double th = 2.0 * std::numbers::pi * k / n_theta;
        m.vertices[lid(i, sid(j, k))] = {a * std::sin(phi) * std::cos(th),
                                         a * std::sin(phi) * std::sin(th),
                                         -b * std::cos(phi)};
      }
    }
  }
  for (int i = 0; i < n_u; ++i)
    for (const auto& t : tris)
      split_prism({lid(i, t[0]), lid(i, t[1]), lid(i, t[2]),
                   lid(i + 1, t[0]), lid(i + 1, t[1]), lid(i + 1, t[2])},
                  m.cells);

  for (const auto& t : tris) {
    m.facets.insert(m.facets.end(), {lid(0, t[0]), lid(0, t[1]), lid(0, t[2])});
    m.facet_tags.push_back(1);  // endo
    m.facets.insert(m.facets.end(),
                    {lid(n_u, t[0]), lid(n_u, t[1]), lid(n_u, t[2])});
    m.facet_tags.push_back(2);  // epi
  }
  // Base annulus: quads between consecutive layers along the outermost ring,
  // all at z = base_cut.
  for (int i = 0; i < n_u; ++i)
    for (int k = 0; k < n_theta; ++k)
      split_quad_facet(lid(i, sid(n_phi, k)), lid(i, sid(n_phi, k + 1)),
                       lid(i + 1, sid(n_phi, k + 1)), lid(i + 1, sid(n_phi, k)),
                       3, m.facets, m.facet_tags);

  m.tag_names = {{1, "endo"}, {2, "epi"}, {3, "base"}, {4, "apex"}};
  m.finalize();
  m.apex_vertex = locate_apex(m);
  return m;
}

int locate_apex(const Mesh& mesh) {
  std::vector<char> candidates;
  if (mesh.has_tag("epi"))
    candidates = mesh.vertices_on_tag(mesh.tag_id("epi"));
  else
    candidates.assign(mesh.vertices.size(), 1);
  int best = -1;
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    if (!candidates[v]) continue;
    if (best < 0 || mesh.vertices[v][2] < mesh.vertices[best][2]) best = v;
  }
  if (best < 0) throw MeshError("no candidate apex vertex");
  return best;
}

Mesh refine_uniform(const Mesh& mesh) {
  Mesh out;
  out.dim = mesh.dim;
  out.vertices = mesh.vertices;
  out.tag_names = mesh.tag_names;
  out.apex_vertex = mesh.apex_vertex;

  std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> midpoint;
  auto mid = [&](std::int32_t a, std::int32_t b) {
    const auto key = std::minmax(a, b);
    auto [it, inserted] = midpoint.try_emplace(key, -1);
    if (inserted) {
      it->second = static_cast<std::int32_t>(out.vertices.size());
      out.vertices.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
    }
    return it->second;
  };

  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto cv = mesh.cell(c);
    switch (mesh.dim) {
      case 1: {
        const std::int32_t m01 = mid(cv[0], cv[1]);
        out.cells.insert(out.cells.end(), {cv[0], m01});
        out.cells.insert(out.cells.end(), {m01, cv[1]});
        break;
      }
      case 2: {
        const std::int32_t m01 = mid(cv[0], cv[1]), m12 = mid(cv[1], cv[2]),
                           m02 = mid(cv[0], cv[2]);
        out.cells.insert(out.cells.end(), {cv[0], m01, m02});
        out.cells.insert(out.cells.end(), {cv[1], m12, m01});
        out.cells.insert(out.cells.end(), {cv[2], m02, m12});
        out.cells.insert(out.cells.end(), {m01, m12, m02});
        break;
      }
      default: {
        const std::int32_t m01 = mid(cv[0], cv[1]), m02 = mid(cv[0], cv[2]),
                           m03 = mid(cv[0], cv[3]), m12 = mid(cv[1], cv[2]),
                           m13 = mid(cv[1], cv[3]), m23 = mid(cv[2], cv[3]);
        out.cells.insert(out.cells.end(), {cv[0], m01, m02, m03});
        out.cells.insert(out.cells.end(), {cv[1], m01, m12, m13});
        out.cells.insert(out.cells.end(), {cv[2], m02, m12, m23});
        out.cells.insert(out.cells.end(), {cv[3], m03, m13, m23});
        // Interior octahedron split along the fixed diagonal (m02, m13).
        out.cells.insert(out.cells.end(), {m02, m13, m01, m03});
        out.cells.insert(out.cells.end(), {m02, m13, m03, m23});
        out.cells.insert(out.cells.end(), {m02, m13, m23, m12});
        out.cells.insert(out.cells.end(), {m02, m13, m12, m01});
        break;
      }
    }
  }

  for (int f = 0; f < mesh.n_facets(); ++f) {
    const auto fv = mesh.facet(f);
    const int tag = mesh.facet_tags[f];
    switch (mesh.dim) {
      case 1:
        out.facets.push_back(fv[0]);
        out.facet_tags.push_back(tag);
        break;
      case 2: {
        const std::int32_t m01 = mid(fv[0], fv[1]);
        out.facets.insert(out.facets.end(), {fv[0], m01});
        out.facets.insert(out.facets.end(), {m01, fv[1]});
        out.facet_tags.insert(out.facet_tags.end(), {tag, tag});
        break;
      }
      default: {
        const std::int32_t m01 = mid(fv[0], fv[1]), m12 = mid(fv[1], fv[2]),
                           m02 = mid(fv[0], fv[2]);
        out.facets.insert(out.facets.end(), {fv[0], m01, m02});
        out.facets.insert(out.facets.end(), {fv[1], m12, m01});
        out.facets.insert(out.facets.end(), {fv[2], m02, m12});
        out.facets.insert(out.facets.end(), {m01, m12, m02});
        out.facet_tags.insert(out.facet_tags.end(), {tag, tag, tag, tag});
        break;
      }
    }
  }
  out.finalize();
  return out;
}

}  // namespace fo
