#include "linesource/vtk.hpp"

#include <charconv>
#include <fstream>

#include "linesource/errors.hpp"

namespace linesource {

namespace {

// Shortest round-trip representation, locale independent.
void put(std::ostream& out, double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, res.ptr - buf);
}

} // namespace

void write_vtk(std::ostream& out, const SimplicialMesh& mesh, const std::vector<double>& pressure,
               const std::vector<Vec3>& flux, const std::string& title)
{
    const int nc = mesh.num_cells();
    if (static_cast<int>(pressure.size()) != nc || static_cast<int>(flux.size()) != nc) {
        throw ValidationError("cell data must have one entry per cell");
    }
    const int nv = mesh.dim() + 1;

    out << "# vtk DataFile Version 3.0\n";
    out << (title.empty() ? std::string("linesource") : title.substr(0, title.find('\n'))) << '\n';
    out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << mesh.num_vertices() << " double\n";
    for (const auto& p : mesh.vertices()) {
        put(out, p.x());
        out << ' ';
        put(out, p.y());
        out << ' ';
        put(out, p.z());
        out << '\n';
    }
    out << "CELLS " << nc << ' ' << nc * (nv + 1) << '\n';
    for (int k = 0; k < nc; ++k) {
        out << nv;
        for (int i = 0; i < nv; ++i) {
            out << ' ' << mesh.cell(k)[i];
        }
        out << '\n';
    }
    out << "CELL_TYPES " << nc << '\n';
    const char* type = mesh.dim() == 2 ? "5\n" : "10\n";
    for (int k = 0; k < nc; ++k) {
        out << type;
    }
    out << "CELL_DATA " << nc << '\n';
    out << "SCALARS u double 1\nLOOKUP_TABLE default\n";
    for (double v : pressure) {
        put(out, v);
        out << '\n';
    }
    out << "VECTORS q double\n";
    for (const auto& q : flux) {
        put(out, q.x());
        out << ' ';
        put(out, q.y());
        out << ' ';
        put(out, q.z());
        out << '\n';
    }
}

void write_vtk(const std::filesystem::path& path, const SimplicialMesh& mesh,
               const std::vector<double>& pressure, const std::vector<Vec3>& flux,
               const std::string& title)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    write_vtk(out, mesh, pressure, flux, title);
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

} // namespace linesource
