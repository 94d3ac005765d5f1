// Reader for Gmsh MSH 4.1 ASCII files.  Supports the sections $MeshFormat,
// $PhysicalNames, $Entities, $Nodes and $Elements; other sections are
// skipped.  Boundary elements must live on entities with exactly one
// physical group, which provides the facet tag.

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "fo/mesh.hpp"

namespace fo {

namespace {

struct Tokens {
  std::istringstream in;
  std::string path;

  explicit Tokens(std::string text, std::string p)
      : in(std::move(text)), path(std::move(p)) {}

  std::string next() {
    std::string t;
    if (!(in >> t))
      throw MeshError(path + ": unexpected end of file");
    return t;
  }
  long long next_int() {
    try {
      return std::stoll(next());
    } catch (const std::exception&) {
      throw MeshError(path + ": expected an integer");
    }
  }
  double next_double() {
    try {
      return std::stod(next());
    } catch (const std::exception&) {
      throw MeshError(path + ": expected a number");
    }
  }
};

int element_node_count(int type) {
  switch (type) {
    case 15: return 1;  // point
    case 1: return 2;   // line
    case 2: return 3;   // triangle
    case 4: return 4;   // tetrahedron
    default: return -1;
  }
}

int element_dim(int type) {
  switch (type) {
    case 15: return 0;
    case 1: return 1;
    case 2: return 2;
    case 4: return 3;
    default: return -1;
  }
}

}  // namespace

Mesh load_gmsh(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw MeshError(path + ": cannot open file");
  std::stringstream buf;
  buf << file.rdbuf();
  std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos)
    throw MeshError(path + ": empty mesh file");
  Tokens tok(std::move(text), path);

  std::map<std::pair<int, int>, std::string> physical_names;  // (dim, tag)
  std::map<std::pair<int, int>, std::vector<int>> entity_phys;  // (dim, tag)
  std::unordered_map<long long, std::int32_t> node_index;
  std::vector<Vec3> coords;
  // Elements grouped by topological dimension; each entry holds the entity
  // tag followed by the node indices.
  std::vector<std::vector<std::int32_t>> elems_by_dim(4);
  std::vector<std::vector<int>> elem_entity_by_dim(4);
  bool saw_format = false;

  std::string section;
  while (tok.in >> section) {
    if (section == "$MeshFormat") {
      const std::string version = tok.next();
      if (version != "4.1")
        throw MeshError(path + ": unsupported MSH version " + version +
                        " (need 4.1 ASCII)");
      const long long file_type = tok.next_int();
      if (file_type != 0)
        throw MeshError(path + ": binary MSH files are not supported");
      tok.next_int();  // data size
      saw_format = true;
    } else if (section == "$PhysicalNames") {
      const long long n = tok.next_int();
      for (long long i = 0; i < n; ++i) {
        const int dim = static_cast<int>(tok.next_int());
        const int tag = static_cast<int>(tok.next_int());
        std::string name = tok.next();
        while (name.size() < 2 || name.back() != '"') name += " " + tok.next();
        physical_names[{dim, tag}] = name.substr(1, name.size() - 2);
      }
    } else if (section == "$Entities") {
      const long long np = tok.next_int();
      const long long nc = tok.next_int();
      const long long ns = tok.next_int();
      const long long nv = tok.next_int();
      for (long long i = 0; i < np; ++i) {
        const int tag = static_cast<int>(tok.next_int());
        for (int k = 0; k < 3; ++k) tok.next_double();
        const long long nphys = tok.next_int();
        for (long long k = 0; k < nphys; ++k)
          entity_phys[{0, tag}].push_back(static_cast<int>(tok.next_int()));
      }
      const long long counts[3] = {nc, ns, nv};
      for (int dim = 1; dim <= 3; ++dim) {
        for (long long i = 0; i < counts[dim - 1]; ++i) {
          const int tag = static_cast<int>(tok.next_int());
          for (int k = 0; k < 6; ++k) tok.next_double();
          const long long nphys = tok.next_int();
          for (long long k = 0; k < nphys; ++k)
            entity_phys[{dim, tag}].push_back(static_cast<int>(tok.next_int()));
          const long long nbound = tok.next_int();
          for (long long k = 0; k < nbound; ++k) tok.next_int();
        }
      }
    } else if (section == "$Nodes") {
      const long long n_blocks = tok.next_int();
      const long long n_nodes = tok.next_int();
      tok.next_int();  // min tag
      tok.next_int();  // max tag
      coords.reserve(coords.size() + n_nodes);
      for (long long b = 0; b < n_blocks; ++b) {
        tok.next_int();  // entity dim
        tok.next_int();  // entity tag
        const long long parametric = tok.next_int();
        const long long in_block = tok.next_int();
        std::vector<long long> tags(in_block);
        for (auto& t : tags) t = tok.next_int();
        for (long long i = 0; i < in_block; ++i) {
          Vec3 p{tok.next_double(), tok.next_double(), tok.next_double()};
          if (parametric)
            throw MeshError(path + ": parametric nodes are not supported");
          node_index[tags[i]] = static_cast<std::int32_t>(coords.size());
          coords.push_back(p);
        }
      }
    } else if (section == "$Elements") {
      const long long n_blocks = tok.next_int();
      tok.next_int();  // total elements
      tok.next_int();  // min tag
      tok.next_int();  // max tag
      for (long long b = 0; b < n_blocks; ++b) {
        const int ent_dim = static_cast<int>(tok.next_int());
        const int ent_tag = static_cast<int>(tok.next_int());
        const int type = static_cast<int>(tok.next_int());
        const long long in_block = tok.next_int();
        const int nn = element_node_count(type);
        if (nn < 0 || element_dim(type) != ent_dim)
          throw MeshError(path + ": unsupported element type " +
                          std::to_string(type) + " on entity " +
                          std::to_string(ent_tag));
        for (long long i = 0; i < in_block; ++i) {
          tok.next_int();  // element tag
          for (int k = 0; k < nn; ++k) {
            const long long node = tok.next_int();
            auto it = node_index.find(node);
            if (it == node_index.end())
              throw MeshError(path + ": element references unknown node " +
                              std::to_string(node));
            elems_by_dim[ent_dim].push_back(it->second);
          }
          elem_entity_by_dim[ent_dim].push_back(ent_tag);
        }
      }
    } else if (!section.empty() && section[0] == '$' &&
               section.rfind("$End", 0) != 0) {
      // Skip unknown sections up to their matching $End marker.
      const std::string end = "$End" + section.substr(1);
      std::string t;
      while (tok.in >> t)
        if (t == end) break;
    }
  }

  if (!saw_format) throw MeshError(path + ": missing $MeshFormat section");
  int dim = 0;
  for (int d = 3; d >= 1; --d)
    if (!elems_by_dim[d].empty()) {
      dim = d;
      break;
    }
  if (dim == 0) throw MeshError(path + ": no cells found");

  Mesh m;
  m.dim = dim;
  m.vertices = std::move(coords);
  m.cells = std::move(elems_by_dim[dim]);

  const int facet_dim = dim - 1;
  const auto& fnodes = elems_by_dim[facet_dim];
  const auto& fentities = elem_entity_by_dim[facet_dim];
  const int per_facet = dim;  // facet elements carry facet_dim + 1 nodes
  for (std::size_t e = 0; e < fentities.size(); ++e) {
    const int ent = fentities[e];
    auto it = entity_phys.find({facet_dim, ent});
    const std::vector<int>* phys =
        it == entity_phys.end() ? nullptr : &it->second;
    if (phys && phys->size() > 1)
      throw MeshError(path + ": boundary entity " + std::to_string(ent) +
                      " carries multiple physical groups");
    if (!phys || phys->empty()) continue;  // untagged: caught in finalize
    for (int k = 0; k < per_facet; ++k)
      m.facets.push_back(fnodes[e * per_facet + k]);
    m.facet_tags.push_back(phys->front());
  }
  for (int f = 0; f < m.n_facets(); ++f) {
    const int tag = m.facet_tags[f];
    if (m.tag_names.contains(tag)) continue;
    auto it = physical_names.find({facet_dim, tag});
    if (it == physical_names.end())
      throw MeshError(path + ": physical group " + std::to_string(tag) +
                      " of dimension " + std::to_string(facet_dim) +
                      " has no name");
    m.tag_names[tag] = it->second;
  }
  try {
    m.finalize();
  } catch (const MeshError& err) {
    throw MeshError(path + ": " + err.what());
  }
  return m;
}

}  // namespace fo
