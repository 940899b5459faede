#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "linesource/mesh.hpp"
#include "linesource/types.hpp"

namespace linesource {

/// Legacy ASCII VTK (version 3.0) unstructured grid with cell data
/// scalars "u" and vectors "q". Values are printed in shortest round-trip form.
void write_vtk(std::ostream& out, const SimplicialMesh& mesh, const std::vector<double>& pressure,
               const std::vector<Vec3>& flux, const std::string& title = "linesource");

/// Throws IoError naming the path when the file cannot be written.
void write_vtk(const std::filesystem::path& path, const SimplicialMesh& mesh,
               const std::vector<double>& pressure, const std::vector<Vec3>& flux,
               const std::string& title = "linesource");

} // namespace linesource
