#include "fo/io.hpp"

#include <cstdio>
#include <cstring>
#include <sstream>

namespace fo {

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  std::FILE* f = std::fopen(tmp.c_str(), "wb");
  if (!f) throw IoError("cannot open " + tmp + " for writing");
  const std::size_t written = std::fwrite(content.data(), 1, content.size(), f);
  const bool ok = written == content.size() && std::fclose(f) == 0;
  if (!ok) {
    std::remove(tmp.c_str());
    throw IoError("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw IoError("cannot rename " + tmp + " to " + path);
  }
}

std::string read_file(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw IoError("cannot open " + path);
  std::string out;
  char buf[1 << 16];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, got);
  std::fclose(f);
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// CSV

std::string csv_to_string(const CsvTable& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw IoError("csv row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (row[i].find_first_of(",\"\n") != std::string::npos)
        throw IoError("csv cell needs quoting, which is not supported: " +
                      row[i]);
      out << row[i];
    }
    out << '\n';
  }
  return out.str();
}

CsvTable csv_from_string(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != table.header.size())
        throw IoError("csv row width does not match header");
      table.rows.push_back(std::move(cells));
    }
  }
  if (first) throw IoError("csv input has no header row");
  return table;
}

void write_csv(const std::string& path, const CsvTable& table) {
  write_file_atomic(path, csv_to_string(table));
}

CsvTable read_csv(const std::string& path) {
  return csv_from_string(read_file(path));
}

// ---------------------------------------------------------------------------
// VTU

namespace {

// VTK cell type ids by number of simplex vertices (1..4).
constexpr int kVtkType[5] = {0, 1, 3, 5, 10};

void append_array_xml(std::ostringstream& out, const std::string& name,
                      int components, const std::vector<double>& data) {
  out << "        <DataArray type=\"Float64\" Name=\"" << name
      << "\" NumberOfComponents=\"" << components << "\" format=\"ascii\">\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << (i % components == 0 ? "          " : " ") << format_double(data[i]);
    if (i % components == static_cast<std::size_t>(components) - 1) out << '\n';
  }
  out << "        </DataArray>\n";
}

}  // namespace

void VtuBuilder::add_point_scalar(const std::string& name,
                                  const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != mesh_->n_vertices())
    throw IoError("point array " + name + " has wrong size");
  point_arrays_.push_back({name, 1, values});
}

void VtuBuilder::add_point_vector(const std::string& name,
                                  const VectorField& field) {
  if (field.mesh != mesh_)
    throw IoError("point array " + name + " belongs to a different mesh");
  Array a{name, 3, {}};
  a.data.resize(static_cast<std::size_t>(field.n()) * 3);
  for (int i = 0; i < field.n(); ++i) {
    const Vec3 v = field.at(i);
    a.data[3 * i] = v[0];
    a.data[3 * i + 1] = v[1];
    a.data[3 * i + 2] = v[2];
  }
  point_arrays_.push_back(std::move(a));
}

void VtuBuilder::add_cell_scalar(const std::string& name,
                                 const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != mesh_->n_cells())
    throw IoError("cell array " + name + " has wrong size");
  cell_arrays_.push_back({name, 1, values});
}

std::string VtuBuilder::xml() const {
  const Mesh& m = *mesh_;
  const int per_cell = m.dim + 1;
  std::ostringstream out;
  out << "<?xml version=\"1.0\"?>\n"
      << "<VTKFile type=\"UnstructuredGrid\" version=\"0.1\" "
         "byte_order=\"LittleEndian\">\n"
      << "  <UnstructuredGrid>\n"
      << "    <Piece NumberOfPoints=\"" << m.n_vertices()
      << "\" NumberOfCells=\"" << m.n_cells() << "\">\n"
      << "      <Points>\n"
      << "        <DataArray type=\"Float64\" Name=\"Points\" "
         "NumberOfComponents=\"3\" format=\"ascii\">\n";
  for (const Vec3& x : m.vertices)
    out << "          " << format_double(x[0]) << ' ' << format_double(x[1])
        << ' ' << format_double(x[2]) << '\n';
  out << "        </DataArray>\n"
      << "      </Points>\n"
      << "      <Cells>\n"
      << "        <DataArray type=\"Int32\" Name=\"connectivity\" "
         "format=\"ascii\">\n";
  for (int c = 0; c < m.n_cells(); ++c) {
    out << "         ";
    for (std::int32_t v : m.cell(c)) out << ' ' << v;
    out << '\n';
  }
  out << "        </DataArray>\n"
      << "        <DataArray type=\"Int32\" Name=\"offsets\" "
         "format=\"ascii\">\n";
  for (int c = 0; c < m.n_cells(); ++c)
    out << "          " << (c + 1) * per_cell << '\n';
  out << "        </DataArray>\n"
      << "        <DataArray type=\"UInt8\" Name=\"types\" format=\"ascii\">\n";
  for (int c = 0; c < m.n_cells(); ++c)
    out << "          " << kVtkType[per_cell] << '\n';
  out << "        </DataArray>\n"
      << "      </Cells>\n";
  out << "      <PointData>\n";
  for (const Array& a : point_arrays_)
    append_array_xml(out, a.name, a.components, a.data);
  out << "      </PointData>\n";
  out << "      <CellData>\n";
  for (const Array& a : cell_arrays_)
    append_array_xml(out, a.name, a.components, a.data);
  out << "      </CellData>\n";
  out << "    </Piece>\n"
      << "  </UnstructuredGrid>\n"
      << "</VTKFile>\n";
  return out.str();
}

std::string VtuBuilder::legacy() const {
  const Mesh& m = *mesh_;
  const int per_cell = m.dim + 1;
  std::ostringstream out;
  out << "# vtk DataFile Version 3.0\n"
      << "fiberfo output\n"
      << "ASCII\n"
      << "DATASET UNSTRUCTURED_GRID\n"
      << "POINTS " << m.n_vertices() << " double\n";
  for (const Vec3& x : m.vertices)
    out << format_double(x[0]) << ' ' << format_double(x[1]) << ' '
        << format_double(x[2]) << '\n';
  out << "CELLS " << m.n_cells() << ' ' << m.n_cells() * (per_cell + 1)
      << '\n';
  for (int c = 0; c < m.n_cells(); ++c) {
    out << per_cell;
    for (std::int32_t v : m.cell(c)) out << ' ' << v;
    out << '\n';
  }
  out << "CELL_TYPES " << m.n_cells() << '\n';
  for (int c = 0; c < m.n_cells(); ++c) out << kVtkType[per_cell] << '\n';
  if (!point_arrays_.empty()) {
    out << "POINT_DATA " << m.n_vertices() << '\n';
    for (const Array& a : point_arrays_) {
      if (a.components == 1) {
        out << "SCALARS " << a.name << " double 1\nLOOKUP_TABLE default\n";
        for (double v : a.data) out << format_double(v) << '\n';
      } else {
        out << "VECTORS " << a.name << " double\n";
        for (std::size_t i = 0; i < a.data.size(); i += 3)
          out << format_double(a.data[i]) << ' ' << format_double(a.data[i + 1])
              << ' ' << format_double(a.data[i + 2]) << '\n';
      }
    }
  }
  if (!cell_arrays_.empty()) {
    out << "CELL_DATA " << m.n_cells() << '\n';
    for (const Array& a : cell_arrays_) {
      out << "SCALARS " << a.name << " double 1\nLOOKUP_TABLE default\n";
      for (double v : a.data) out << format_double(v) << '\n';
    }
  }
  return out.str();
}

void VtuBuilder::write(const std::string& path, bool use_legacy) const {
  write_file_atomic(path, use_legacy ? legacy() : xml());
}

void write_mesh_preview_vtu(const Mesh& mesh, const std::string& path,
                            bool use_legacy) {
  // Volume cells carry tag 0, boundary facets their facet tag; the facets
  // appear as lower-dimensional cells appended after the volume cells.
  const int per_cell = mesh.dim + 1;
  const int per_facet = mesh.dim;
  const int total = mesh.n_cells() + mesh.n_facets();

  std::ostringstream out;
  out << "<?xml version=\"1.0\"?>\n"
      << "<VTKFile type=\"UnstructuredGrid\" version=\"0.1\" "
         "byte_order=\"LittleEndian\">\n"
      << "  <UnstructuredGrid>\n"
      << "    <Piece NumberOfPoints=\"" << mesh.n_vertices()
      << "\" NumberOfCells=\"" << total << "\">\n"
      << "      <Points>\n"
      << "        <DataArray type=\"Float64\" Name=\"Points\" "
         "NumberOfComponents=\"3\" format=\"ascii\">\n";
  for (const Vec3& x : mesh.vertices)
    out << "          " << format_double(x[0]) << ' ' << format_double(x[1])
        << ' ' << format_double(x[2]) << '\n';
  out << "        </DataArray>\n"
      << "      </Points>\n"
      << "      <Cells>\n"
      << "        <DataArray type=\"Int32\" Name=\"connectivity\" "
         "format=\"ascii\">\n";
  for (int c = 0; c < mesh.n_cells(); ++c) {
    out << "         ";
    for (std::int32_t v : mesh.cell(c)) out << ' ' << v;
    out << '\n';
  }
  for (int f = 0; f < mesh.n_facets(); ++f) {
    out << "         ";
    for (std::int32_t v : mesh.facet(f)) out << ' ' << v;
    out << '\n';
  }
  out << "        </DataArray>\n"
      << "        <DataArray type=\"Int32\" Name=\"offsets\" "
         "format=\"ascii\">\n";
  int offset = 0;
  for (int c = 0; c < mesh.n_cells(); ++c)
    out << "          " << (offset += per_cell) << '\n';
  for (int f = 0; f < mesh.n_facets(); ++f)
    out << "          " << (offset += per_facet) << '\n';
  out << "        </DataArray>\n"
      << "        <DataArray type=\"UInt8\" Name=\"types\" format=\"ascii\">\n";
  for (int c = 0; c < mesh.n_cells(); ++c)
    out << "          " << kVtkType[per_cell] << '\n';
  for (int f = 0; f < mesh.n_facets(); ++f)
    out << "          " << kVtkType[per_facet] << '\n';
  out << "        </DataArray>\n"
      << "      </Cells>\n"
      << "      <PointData>\n      </PointData>\n"
      << "      <CellData>\n"
      << "        <DataArray type=\"Float64\" Name=\"tag\" "
         "NumberOfComponents=\"1\" format=\"ascii\">\n";
  for (int c = 0; c < mesh.n_cells(); ++c) {
    (void)c;
    out << "          0\n";
  }
  for (int f = 0; f < mesh.n_facets(); ++f)
    out << "          " << mesh.facet_tags[f] << '\n';
  out << "        </DataArray>\n"
      << "      </CellData>\n"
      << "    </Piece>\n"
      << "  </UnstructuredGrid>\n"
      << "</VTKFile>\n";
  if (use_legacy) {
    // Legacy preview keeps only the volume cells for diffability.
    VtuBuilder b(mesh);
    std::vector<double> zeros(mesh.n_cells(), 0.0);
    b.add_cell_scalar("tag", zeros);
    b.write(path, true);
    return;
  }
  write_file_atomic(path, out.str());
}

std::vector<Vec3> read_vtu_point_vectors(const std::string& path,
                                         const std::string& name) {
  const std::string text = read_file(path);
  const std::string label = "Name=\"" + name + "\"";
  const std::size_t at = text.find(label);
  if (at == std::string::npos)
    throw IoError(path + ": no point array named " + name);
  const std::size_t open = text.find('>', at);
  const std::size_t close = text.find("</DataArray>", at);
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw IoError(path + ": malformed data array " + name);
  std::istringstream in(text.substr(open + 1, close - open - 1));
  std::vector<Vec3> out;
  Vec3 v;
  while (in >> v[0] >> v[1] >> v[2]) out.push_back(v);
  if (out.empty()) throw IoError(path + ": empty data array " + name);
  return out;
}

// ---------------------------------------------------------------------------
// Plain-text mesh format

void save_mesh(const Mesh& mesh, const std::string& path) {
  std::ostringstream out;
  out << "fomesh 1\n";
  out << "dim " << mesh.dim << '\n';
  out << "vertices " << mesh.n_vertices() << '\n';
  for (const Vec3& x : mesh.vertices)
    out << format_double(x[0]) << ' ' << format_double(x[1]) << ' '
        << format_double(x[2]) << '\n';
  out << "cells " << mesh.n_cells() << '\n';
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto cv = mesh.cell(c);
    for (std::size_t i = 0; i < cv.size(); ++i)
      out << (i ? " " : "") << cv[i];
    out << '\n';
  }
  out << "facets " << mesh.n_facets() << '\n';
  for (int f = 0; f < mesh.n_facets(); ++f) {
    out << mesh.facet_tags[f];
    for (std::int32_t v : mesh.facet(f)) out << ' ' << v;
    out << '\n';
  }
  out << "tags " << mesh.tag_names.size() << '\n';
  for (const auto& [id, name] : mesh.tag_names)
    out << id << ' ' << name << '\n';
  out << "apex " << mesh.apex_vertex << '\n';
  write_file_atomic(path, out.str());
}

namespace {

Mesh load_fomesh(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string key;
  int version = 0;
  if (!(in >> key >> version) || key != "fomesh" || version != 1)
    throw IoError(path + ": not a fomesh version 1 file");
  Mesh mesh;
  auto expect = [&](const char* want) {
    if (!(in >> key) || key != want)
      throw IoError(path + ": expected '" + want + "', got '" + key + "'");
  };
  expect("dim");
  if (!(in >> mesh.dim) || mesh.dim < 1 || mesh.dim > 3)
    throw IoError(path + ": bad dimension");
  int n = 0;
  expect("vertices");
  if (!(in >> n) || n < 0) throw IoError(path + ": bad vertex count");
  mesh.vertices.resize(n);
  for (Vec3& x : mesh.vertices)
    if (!(in >> x[0] >> x[1] >> x[2]))
      throw IoError(path + ": truncated vertex list");
  expect("cells");
  if (!(in >> n) || n < 0) throw IoError(path + ": bad cell count");
  mesh.cells.resize(static_cast<std::size_t>(n) * (mesh.dim + 1));
  for (std::int32_t& v : mesh.cells)
    if (!(in >> v)) throw IoError(path + ": truncated cell list");
  expect("facets");
  if (!(in >> n) || n < 0) throw IoError(path + ": bad facet count");
  mesh.facet_tags.resize(n);
  mesh.facets.resize(static_cast<std::size_t>(n) * mesh.dim);
  for (int f = 0; f < n; ++f) {
    if (!(in >> mesh.facet_tags[f]))
      throw IoError(path + ": truncated facet list");
    for (int i = 0; i < mesh.dim; ++i)
      if (!(in >> mesh.facets[static_cast<std::size_t>(f) * mesh.dim + i]))
        throw IoError(path + ": truncated facet list");
  }
  expect("tags");
  if (!(in >> n) || n < 0) throw IoError(path + ": bad tag count");
  for (int t = 0; t < n; ++t) {
    int id = 0;
    if (!(in >> id)) throw IoError(path + ": truncated tag list");
    std::string name;
    std::getline(in, name);
    const std::size_t pos = name.find_first_not_of(" \t");
    if (pos == std::string::npos) throw IoError(path + ": tag without a name");
    mesh.tag_names[id] = name.substr(pos);
  }
  expect("apex");
  if (!(in >> mesh.apex_vertex)) throw IoError(path + ": missing apex vertex");
  mesh.finalize();
  return mesh;
}

}  // namespace

Mesh load_mesh(const std::string& path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".msh") == 0)
    return load_gmsh(path);
  return load_fomesh(path);
}

}  // namespace fo
