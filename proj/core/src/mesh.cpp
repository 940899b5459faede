#include "linesource/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "linesource/errors.hpp"

namespace linesource {

double simplex_measure(int dim, const std::array<Point, 4>& p)
{
    if (dim == 2) {
        const Vec3 e1 = p[1] - p[0];
        const Vec3 e2 = p[2] - p[0];
        return 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
    }
    return (p[1] - p[0]).dot((p[2] - p[0]).cross(p[3] - p[0])) / 6.0;
}

namespace {

std::array<int, 3> facet_key(int dim, const std::array<int, 4>& cell, int opposite)
{
    std::array<int, 3> key{-1, -1, -1};
    int j = 0;
    for (int i = 0; i <= dim; ++i) {
        if (i != opposite) {
            key[j++] = cell[i];
        }
    }
    std::sort(key.begin(), key.begin() + dim);
    return key;
}

} // namespace

SimplicialMesh SimplicialMesh::from_cells(int dim, std::vector<Point> vertices,
                                          std::vector<std::array<int, 4>> cells,
                                          std::optional<BoxGrid> grid)
{
    if (dim != 2 && dim != 3) {
        throw ValidationError("mesh dimension must be 2 or 3");
    }
    SimplicialMesh m;
    m.dim_ = dim;
    m.vertices_ = std::move(vertices);
    m.cells_ = std::move(cells);
    m.grid_ = grid;

    const int nc = m.num_cells();
    m.volumes_.resize(nc);
    m.diameters_.resize(nc);
    m.radii_.resize(nc);
    m.centroids_.resize(nc);
    m.cell_facets_.resize(nc);

    for (int k = 0; k < nc; ++k) {
        auto& c = m.cells_[k];
        for (int i = 0; i <= dim; ++i) {
            if (c[i] < 0 || c[i] >= m.num_vertices()) {
                throw ValidationError("cell " + std::to_string(k) + " has invalid vertex index");
            }
        }
        if (dim == 2) {
            c[3] = -1;
        }
        double vol = simplex_measure(dim, m.cell_points(k));
        if (vol < 0.0) {
            std::swap(c[dim - 1], c[dim]);
            vol = -vol;
        }
        if (!(vol > 0.0)) {
            throw ValidationError("degenerate cell " + std::to_string(k));
        }
        m.volumes_[k] = vol;

        const auto pts = m.cell_points(k);
        Point centroid = Point::Zero();
        double diam = 0.0;
        for (int i = 0; i <= dim; ++i) {
            centroid += pts[i];
            for (int j = i + 1; j <= dim; ++j) {
                diam = std::max(diam, (pts[i] - pts[j]).norm());
            }
        }
        centroid /= dim + 1;
        double radius = 0.0;
        for (int i = 0; i <= dim; ++i) {
            radius = std::max(radius, (pts[i] - centroid).norm());
        }
        m.centroids_[k] = centroid;
        m.diameters_[k] = diam;
        m.radii_[k] = radius;
    }
    m.h_ = nc > 0 ? *std::max_element(m.diameters_.begin(), m.diameters_.end()) : 0.0;

    std::map<std::array<int, 3>, int> lookup;
    for (int k = 0; k < nc; ++k) {
        const auto& c = m.cells_[k];
        for (int i = 0; i <= dim; ++i) {
            const auto key = facet_key(dim, c, i);
            const auto [it, inserted] = lookup.try_emplace(key, m.num_facets());
            if (inserted) {
                Facet f;
                f.vertices = key;
                f.owner = k;
                f.neighbor = -1;
                const Point& p0 = m.vertices_[key[0]];
                const Point& p1 = m.vertices_[key[1]];
                Vec3 n;
                if (dim == 2) {
                    const Vec3 t = p1 - p0;
                    n = Vec3(t.y(), -t.x(), 0.0);
                    f.measure = t.norm();
                    f.centroid = 0.5 * (p0 + p1);
                } else {
                    const Point& p2 = m.vertices_[key[2]];
                    n = (p1 - p0).cross(p2 - p0);
                    f.measure = 0.5 * n.norm();
                    f.centroid = (p0 + p1 + p2) / 3.0;
                }
                n.normalize();
                if (n.dot(p0 - m.vertices_[c[i]]) < 0.0) {
                    n = -n;
                }
                f.normal = n;
                m.facets_.push_back(f);
                m.cell_facets_[k][i] = {it->second, +1};
            } else {
                auto& f = m.facets_[it->second];
                if (f.neighbor >= 0) {
                    throw ValidationError("facet shared by more than two cells");
                }
                f.neighbor = k;
                m.cell_facets_[k][i] = {it->second, -1};
            }
        }
        if (dim == 2) {
            m.cell_facets_[k][3] = {-1, 0};
        }
    }
    for (int f = 0; f < m.num_facets(); ++f) {
        if (m.facets_[f].on_boundary()) {
            m.boundary_facets_.push_back(f);
        }
    }
    return m;
}

std::array<Point, 4> SimplicialMesh::cell_points(int k) const
{
    std::array<Point, 4> p;
    for (int i = 0; i <= dim_; ++i) {
        p[i] = vertices_[cells_[k][i]];
    }
    if (dim_ == 2) {
        p[3] = p[0];
    }
    return p;
}

std::array<double, 4> SimplicialMesh::barycentric(int k, const Point& x) const
{
    const auto p = cell_points(k);
    std::array<double, 4> lambda{0.0, 0.0, 0.0, 0.0};
    if (dim_ == 2) {
        Eigen::Matrix2d T;
        T << p[1].x() - p[0].x(), p[2].x() - p[0].x(), p[1].y() - p[0].y(), p[2].y() - p[0].y();
        const Eigen::Vector2d rhs(x.x() - p[0].x(), x.y() - p[0].y());
        const Eigen::Vector2d l = T.partialPivLu().solve(rhs);
        lambda = {1.0 - l.sum(), l[0], l[1], 0.0};
    } else {
        Eigen::Matrix3d T;
        T.col(0) = p[1] - p[0];
        T.col(1) = p[2] - p[0];
        T.col(2) = p[3] - p[0];
        const Eigen::Vector3d l = T.partialPivLu().solve(x - p[0]);
        lambda = {1.0 - l.sum(), l[0], l[1], l[2]};
    }
    return lambda;
}

SimplicialMesh build_box_mesh(int dim, const Point& lower, const Point& upper, int n)
{
    if (dim != 2 && dim != 3) {
        throw ValidationError("mesh dimension must be 2 or 3");
    }
    if (n < 1) {
        throw ValidationError("box mesh needs at least one subdivision");
    }
    for (int k = 0; k < dim; ++k) {
        if (!(upper[k] > lower[k])) {
            throw ValidationError("inverted box");
        }
    }
    const Vec3 extent = upper - lower;
    auto coord = [&](int axis, int i) {
        return i == n ? upper[axis] : lower[axis] + extent[axis] * i / n;
    };

    std::vector<Point> vertices;
    std::vector<std::array<int, 4>> cells;
    if (dim == 2) {
        auto vid = [n](int i, int j) { return i + (n + 1) * j; };
        for (int j = 0; j <= n; ++j) {
            for (int i = 0; i <= n; ++i) {
                vertices.emplace_back(coord(0, i), coord(1, j), 0.0);
            }
        }
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                const int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1),
                          v11 = vid(i + 1, j + 1);
                cells.push_back({v00, v10, v11, -1});
                cells.push_back({v00, v11, v01, -1});
            }
        }
    } else {
        auto vid = [n](int i, int j, int k) { return i + (n + 1) * (j + (n + 1) * k); };
        for (int k = 0; k <= n; ++k) {
            for (int j = 0; j <= n; ++j) {
                for (int i = 0; i <= n; ++i) {
                    vertices.emplace_back(coord(0, i), coord(1, j), coord(2, k));
                }
            }
        }
        std::array<int, 3> perm{0, 1, 2};
        std::vector<std::array<int, 3>> perms;
        do {
            perms.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));

        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < n; ++j) {
                for (int i = 0; i < n; ++i) {
                    for (const auto& p : perms) {
                        std::array<int, 3> idx{i, j, k};
                        std::array<int, 4> tet{};
                        tet[0] = vid(idx[0], idx[1], idx[2]);
                        for (int step = 0; step < 3; ++step) {
                            ++idx[p[step]];
                            tet[step + 1] = vid(idx[0], idx[1], idx[2]);
                        }
                        cells.push_back(tet);
                    }
                }
            }
        }
    }

    auto mesh = SimplicialMesh::from_cells(dim, std::move(vertices), std::move(cells),
                                           BoxGrid{lower, upper, n});
    // Exact diameter of the congruent cells: the diagonal of one grid box.
    double diag2 = 0.0;
    for (int k = 0; k < dim; ++k) {
        const double step = extent[k] / n;
        diag2 += step * step;
    }
    mesh.h_ = std::sqrt(diag2);
    return mesh;
}

namespace {

constexpr double kLocateTol = 1e-12;

/// Cells of the grid boxes overlapping [lo, hi] (inclusive, with tolerance), in ascending order.
std::vector<int> candidate_cells(const SimplicialMesh& mesh, const Point& lo, const Point& hi)
{
    const auto& grid = mesh.grid();
    std::vector<int> out;
    if (!grid) {
        out.resize(mesh.num_cells());
        std::iota(out.begin(), out.end(), 0);
        return out;
    }
    const int dim = mesh.dim();
    const int n = grid->n;
    std::array<int, 3> first{0, 0, 0};
    std::array<int, 3> last{0, 0, 0};
    for (int k = 0; k < dim; ++k) {
        const double step = (grid->upper[k] - grid->lower[k]) / n;
        const double a = (lo[k] - grid->lower[k]) / step;
        const double b = (hi[k] - grid->lower[k]) / step;
        first[k] = std::clamp(static_cast<int>(std::floor(a - 1e-9)), 0, n - 1);
        last[k] = std::clamp(static_cast<int>(std::floor(b + 1e-9)), 0, n - 1);
    }
    const int per_box = dim == 2 ? 2 : 6;
    for (int k = first[2]; k <= last[2]; ++k) {
        for (int j = first[1]; j <= last[1]; ++j) {
            for (int i = first[0]; i <= last[0]; ++i) {
                const int box = dim == 2 ? i + n * j : i + n * (j + n * k);
                for (int t = 0; t < per_box; ++t) {
                    out.push_back(box * per_box + t);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double box_scale(const SimplicialMesh& mesh)
{
    return mesh.grid() ? (mesh.grid()->upper - mesh.grid()->lower).norm() : 1.0;
}

} // namespace

int locate_cell(const SimplicialMesh& mesh, const Point& x)
{
    if (const auto& grid = mesh.grid()) {
        const double tol = kLocateTol * box_scale(mesh);
        for (int k = 0; k < mesh.dim(); ++k) {
            if (x[k] < grid->lower[k] - tol || x[k] > grid->upper[k] + tol) {
                throw LocationError("point outside the mesh box");
            }
        }
    }
    for (const int cell : candidate_cells(mesh, x, x)) {
        const auto lambda = mesh.barycentric(cell, x);
        bool inside = true;
        for (int i = 0; i <= mesh.dim(); ++i) {
            inside = inside && lambda[i] >= -kLocateTol;
        }
        if (inside) {
            return cell;
        }
    }
    throw LocationError("point not contained in any cell");
}

namespace {

/// Parameter interval of the segment inside the closed cell, slightly inflated.
std::optional<std::pair<double, double>> clip_to_cell(const SimplicialMesh& mesh, int cell,
                                                      const Segment& seg)
{
    const double eps = 1e-12 * mesh.diameter(cell);
    double s0 = 0.0;
    double s1 = seg.length();
    for (int i = 0; i <= mesh.dim(); ++i) {
        const auto [fidx, sign] = mesh.cell_facets(cell)[i];
        const auto& f = mesh.facet(fidx);
        const Vec3 outward = sign * f.normal;
        const double num = (seg.a() - f.centroid).dot(outward);
        const double den = seg.tangent().dot(outward);
        if (std::abs(den) < 1e-14) {
            if (num > eps) {
                return std::nullopt;
            }
            continue;
        }
        const double bound = (eps - num) / den;
        if (den > 0.0) {
            s1 = std::min(s1, bound);
        } else {
            s0 = std::max(s0, bound);
        }
        if (s1 <= s0) {
            return std::nullopt;
        }
    }
    return std::make_pair(s0, s1);
}

} // namespace

std::vector<SegmentPiece> intersect_segment_cells(const SimplicialMesh& mesh, const Segment& seg)
{
    const Point lo = seg.a().cwiseMin(seg.b());
    const Point hi = seg.a().cwiseMax(seg.b());
    const double min_piece = 1e-12 * seg.length();

    std::vector<std::pair<double, double>> claimed;
    std::vector<SegmentPiece> pieces;
    for (const int cell : candidate_cells(mesh, lo, hi)) {
        const auto clipped = clip_to_cell(mesh, cell, seg);
        if (!clipped || clipped->second - clipped->first <= min_piece) {
            continue;
        }
        // Remove whatever lower-index cells already took.
        std::vector<std::pair<double, double>> rest{*clipped};
        for (const auto& [c0, c1] : claimed) {
            std::vector<std::pair<double, double>> next;
            for (const auto& [r0, r1] : rest) {
                if (c1 <= r0 || c0 >= r1) {
                    next.emplace_back(r0, r1);
                    continue;
                }
                if (r0 < c0) {
                    next.emplace_back(r0, c0);
                }
                if (c1 < r1) {
                    next.emplace_back(c1, r1);
                }
            }
            rest = std::move(next);
        }
        for (const auto& [r0, r1] : rest) {
            if (r1 - r0 > min_piece) {
                pieces.push_back({cell, r0, r1});
                claimed.emplace_back(r0, r1);
            }
        }
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const SegmentPiece& l, const SegmentPiece& r) { return l.s0 < r.s0; });
    return pieces;
}

} // namespace linesource
