#pragma once
// File emission and parsing: atomic writes, VTU (XML UnstructuredGrid) and
// legacy VTK output, CSV tables, and the plain-text mesh format.
//
// All writers go through write_file_atomic (write to a temp file in the
// target directory, then rename) so readers never observe partial files.
// Doubles are printed with %.17g and round-trip exactly.

#include <string>
#include <vector>

#include "fo/fem.hpp"
#include "fo/mesh.hpp"

namespace fo {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

std::string format_double(double v);

// ---------------------------------------------------------------------------
// CSV

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  bool operator==(const CsvTable&) const = default;
};

std::string csv_to_string(const CsvTable& table);
CsvTable csv_from_string(const std::string& text);
void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

// ---------------------------------------------------------------------------
// VTU / legacy VTK

// Collects point and cell arrays over a mesh and renders them as XML
// UnstructuredGrid (ASCII, Float64) or legacy ASCII VTK.
class VtuBuilder {
 public:
  explicit VtuBuilder(const Mesh& mesh) : mesh_(&mesh) {}

  void add_point_scalar(const std::string& name,
                        const std::vector<double>& values);
  void add_point_vector(const std::string& name, const VectorField& field);
  void add_cell_scalar(const std::string& name,
                       const std::vector<double>& values);

  std::string xml() const;
  std::string legacy() const;
  void write(const std::string& path, bool use_legacy = false) const;

 private:
  struct Array {
    std::string name;
    int components = 1;
    std::vector<double> data;  // interleaved per entity
  };
  const Mesh* mesh_;
  std::vector<Array> point_arrays_;
  std::vector<Array> cell_arrays_;
};

// Mesh preview: volume cells plus tagged boundary facets as extra cells,
// with a "tag" cell array (0 on volume cells).
void write_mesh_preview_vtu(const Mesh& mesh, const std::string& path,
                            bool use_legacy = false);

// Reads back a 3-component Float64 point array from an XML file written by
// VtuBuilder.  Throws IoError when the array is missing or malformed.
std::vector<Vec3> read_vtu_point_vectors(const std::string& path,
                                         const std::string& name);

// ---------------------------------------------------------------------------
// Plain-text mesh format

void save_mesh(const Mesh& mesh, const std::string& path);

// Loads .msh (Gmsh 4.1 ASCII) or the plain-text format by extension.
Mesh load_mesh(const std::string& path);

}  // namespace fo
