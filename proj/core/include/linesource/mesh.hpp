#pragma once

#include <array>
#include <optional>
#include <vector>

#include "linesource/line_network.hpp"
#include "linesource/types.hpp"

namespace linesource {

/// Structured origin of a box mesh; enables O(1) cell lookup.
struct BoxGrid {
    Point lower;
    Point upper;
    int n;
};

/// Facet as seen from one cell: global index and +1/-1 when the global
/// normal points out of / into the cell.
struct CellFacet {
    int facet;
    int sign;
};

struct Facet {
    std::array<int, 3> vertices; ///< sorted; last entry is -1 in 2D
    int owner;                   ///< lowest-index incident cell; normal points out of it
    int neighbor;                ///< -1 on the boundary
    Vec3 normal;                 ///< unit, global orientation
    double measure;
    Point centroid;

    [[nodiscard]] bool on_boundary() const noexcept { return neighbor < 0; }
};

/// Conforming triangulation (dim 2) or tetrahedralization (dim 3).
/// Cell vertices are stored positively oriented; local facet i is opposite local vertex i.
class SimplicialMesh {
public:
    /// Builds facets, orientations and geometry. Throws ValidationError on
    /// degenerate cells or facets shared by more than two cells.
    static SimplicialMesh from_cells(int dim, std::vector<Point> vertices,
                                     std::vector<std::array<int, 4>> cells,
                                     std::optional<BoxGrid> grid = std::nullopt);

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] int num_vertices() const noexcept { return static_cast<int>(vertices_.size()); }
    [[nodiscard]] int num_cells() const noexcept { return static_cast<int>(cells_.size()); }
    [[nodiscard]] int num_facets() const noexcept { return static_cast<int>(facets_.size()); }

    [[nodiscard]] const std::vector<Point>& vertices() const noexcept { return vertices_; }
    [[nodiscard]] const std::array<int, 4>& cell(int k) const { return cells_[k]; }
    [[nodiscard]] const Point& cell_vertex(int k, int local) const
    {
        return vertices_[cells_[k][local]];
    }
    [[nodiscard]] const std::array<CellFacet, 4>& cell_facets(int k) const
    {
        return cell_facets_[k];
    }
    [[nodiscard]] const Facet& facet(int f) const { return facets_[f]; }
    [[nodiscard]] const std::vector<int>& boundary_facets() const noexcept
    {
        return boundary_facets_;
    }

    [[nodiscard]] double volume(int k) const { return volumes_[k]; }
    [[nodiscard]] double diameter(int k) const { return diameters_[k]; }
    [[nodiscard]] const Point& centroid(int k) const { return centroids_[k]; }
    /// Largest distance from the centroid to a vertex.
    [[nodiscard]] double centroid_radius(int k) const { return radii_[k]; }

    /// Maximum cell diameter.
    [[nodiscard]] double h() const noexcept { return h_; }
    [[nodiscard]] const std::optional<BoxGrid>& grid() const noexcept { return grid_; }

    /// Vertex coordinates of cell k (dim + 1 entries used).
    [[nodiscard]] std::array<Point, 4> cell_points(int k) const;

    /// Barycentric coordinates of x with respect to cell k.
    [[nodiscard]] std::array<double, 4> barycentric(int k, const Point& x) const;

private:
    SimplicialMesh() = default;

    int dim_ = 0;
    std::vector<Point> vertices_;
    std::vector<std::array<int, 4>> cells_;
    std::vector<std::array<CellFacet, 4>> cell_facets_;
    std::vector<Facet> facets_;
    std::vector<int> boundary_facets_;
    std::vector<double> volumes_;
    std::vector<double> diameters_;
    std::vector<double> radii_;
    std::vector<Point> centroids_;
    double h_ = 0.0;
    std::optional<BoxGrid> grid_;

    friend SimplicialMesh build_box_mesh(int, const Point&, const Point&, int);
};

/// Signed measure of a simplex given dim + 1 points (area in 2D, volume in 3D).
[[nodiscard]] double simplex_measure(int dim, const std::array<Point, 4>& p);

/// n^d squares split into 2 triangles, or n^3 cubes split into the 6 Kuhn
/// tetrahedra sharing the cube's main diagonal.
[[nodiscard]] SimplicialMesh build_box_mesh(int dim, const Point& lower, const Point& upper,
                                            int n);

/// Lowest-index cell whose closed simplex contains x. Throws LocationError outside the mesh.
[[nodiscard]] int locate_cell(const SimplicialMesh& mesh, const Point& x);

struct SegmentPiece {
    int cell;
    double s0; ///< arc-length parameters along the segment, s0 < s1
    double s1;
};

/// Clips the segment against candidate cells. Pieces are disjoint, ordered
/// along the segment, and overlaps on shared facets go to the lowest cell index.
[[nodiscard]] std::vector<SegmentPiece> intersect_segment_cells(const SimplicialMesh& mesh,
                                                                const Segment& seg);

} // namespace linesource
