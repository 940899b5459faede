#include "linesource/quadrature.hpp"

#include <numbers>

namespace linesource {

double reference_measure(int dim)
{
    switch (dim) {
    case 1:
        return 1.0;
    case 2:
        return 0.5;
    case 3:
        return 1.0 / 6.0;
    default:
        throw ValidationError("quadrature dimension must be 1, 2 or 3");
    }
}

QuadratureRule gauss_legendre(int npoints)
{
    if (npoints < 1) {
        throw ValidationError("Gauss-Legendre rule needs at least one point");
    }
    QuadratureRule rule;
    rule.dim = 1;
    rule.order = 2 * npoints - 1;
    const int n = npoints;
    for (int i = 0; i < n; ++i) {
        // Newton on P_n starting from the Chebyshev-like guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            if (n == 1) {
                p0 = 1.0;
                p1 = x;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const double t = 0.5 * (1.0 - x);
        rule.points.push_back({1.0 - t, t, 0.0, 0.0});
        rule.weights.push_back(0.5 * w);
    }
    return rule;
}

namespace {

void add_orbit_3(QuadratureRule& r, double a, double w)
{
    const double b = 1.0 - 2.0 * a;
    r.points.push_back({a, a, b, 0.0});
    r.points.push_back({a, b, a, 0.0});
    r.points.push_back({b, a, a, 0.0});
    for (int i = 0; i < 3; ++i) {
        r.weights.push_back(w);
    }
}

void add_orbit_4(QuadratureRule& r, double a, double w)
{
    const double b = 1.0 - 3.0 * a;
    r.points.push_back({a, a, a, b});
    r.points.push_back({a, a, b, a});
    r.points.push_back({a, b, a, a});
    r.points.push_back({b, a, a, a});
    for (int i = 0; i < 4; ++i) {
        r.weights.push_back(w);
    }
}

void add_orbit_6(QuadratureRule& r, double a, double w)
{
    const double b = 0.5 - a;
    r.points.push_back({a, a, b, b});
    r.points.push_back({a, b, a, b});
    r.points.push_back({a, b, b, a});
    r.points.push_back({b, a, a, b});
    r.points.push_back({b, a, b, a});
    r.points.push_back({b, b, a, a});
    for (int i = 0; i < 6; ++i) {
        r.weights.push_back(w);
    }
}

void scale_weights(QuadratureRule& r, double factor)
{
    for (auto& w : r.weights) {
        w *= factor;
    }
}

} // namespace

QuadratureRule simplex_rule(int dim, int order)
{
    if (dim == 1) {
        return gauss_legendre(std::max(1, (order + 2) / 2));
    }
    QuadratureRule r;
    r.dim = dim;
    if (dim == 2) {
        if (order <= 1) {
            r.order = 1;
            r.points.push_back({1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0});
            r.weights.push_back(1.0);
        } else if (order == 2) {
            r.order = 2;
            add_orbit_3(r, 1.0 / 6.0, 1.0 / 3.0);
        } else if (order <= 4) {
            // Dunavant, degree 4.
            r.order = 4;
            add_orbit_3(r, 0.445948490915965, 0.223381589678011);
            add_orbit_3(r, 0.091576213509771, 0.109951743655322);
        } else {
            return conical_product_rule(2, order / 2 + 2);
        }
        scale_weights(r, 0.5);
        return r;
    }
    if (dim == 3) {
        if (order <= 1) {
            r.order = 1;
            r.points.push_back({0.25, 0.25, 0.25, 0.25});
            r.weights.push_back(1.0);
        } else if (order == 2) {
            r.order = 2;
            add_orbit_4(r, 0.1381966011250105, 0.25);
        } else if (order <= 5) {
            // Walkington's 14-point rule, degree 5.
            r.order = 5;
            add_orbit_4(r, 0.0927352503108912, 0.0734930431163620);
            add_orbit_4(r, 0.3108859192633006, 0.1126879257180159);
            add_orbit_6(r, 0.0455037041256496, 0.0425460207770815);
        } else {
            return conical_product_rule(3, order / 2 + 2);
        }
        scale_weights(r, 1.0 / 6.0);
        return r;
    }
    throw ValidationError("quadrature dimension must be 1, 2 or 3");
}

QuadratureRule conical_product_rule(int dim, int npoints)
{
    const auto gl = gauss_legendre(npoints);
    QuadratureRule r;
    r.dim = dim;
    r.order = 2 * npoints - 1 - (dim - 1);
    if (dim == 1) {
        return gl;
    }
    for (std::size_t i = 0; i < gl.size(); ++i) {
        const double u = gl.points[i][1];
        for (std::size_t j = 0; j < gl.size(); ++j) {
            const double v = gl.points[j][1];
            if (dim == 2) {
                const double x = u;
                const double y = v * (1.0 - u);
                r.points.push_back({1.0 - x - y, x, y, 0.0});
                r.weights.push_back(gl.weights[i] * gl.weights[j] * (1.0 - u));
                continue;
            }
            for (std::size_t k = 0; k < gl.size(); ++k) {
                const double w = gl.points[k][1];
                const double x = u;
                const double y = v * (1.0 - u);
                const double z = w * (1.0 - u) * (1.0 - v);
                r.points.push_back({1.0 - x - y - z, x, y, z});
                r.weights.push_back(gl.weights[i] * gl.weights[j] * gl.weights[k] *
                                    (1.0 - u) * (1.0 - u) * (1.0 - v));
            }
        }
    }
    return r;
}

std::vector<std::array<Point, 4>> red_refine(int dim, const std::array<Point, 4>& s)
{
    auto mid = [&](int i, int j) -> Point { return 0.5 * (s[i] + s[j]); };
    if (dim == 2) {
        const Point m01 = mid(0, 1), m02 = mid(0, 2), m12 = mid(1, 2);
        return {{{s[0], m01, m02, s[0]}},
                {{m01, s[1], m12, m01}},
                {{m02, m12, s[2], m02}},
                {{m01, m12, m02, m01}}};
    }
    const Point m01 = mid(0, 1), m02 = mid(0, 2), m03 = mid(0, 3), m12 = mid(1, 2),
                m13 = mid(1, 3), m23 = mid(2, 3);
    // Corner tetrahedra plus the inner octahedron cut along m02-m13.
    return {{{s[0], m01, m02, m03}}, {{m01, s[1], m12, m13}}, {{m02, m12, s[2], m23}},
            {{m03, m13, m23, s[3]}}, {{m01, m02, m03, m13}}, {{m01, m02, m12, m13}},
            {{m02, m03, m13, m23}},  {{m02, m12, m13, m23}}};
}

CellIntegrator::CellIntegrator(const SimplicialMesh& mesh, int order,
                               std::optional<DistanceFn> distance, int levels)
    : mesh_(mesh), rule_(simplex_rule(mesh.dim(), order)), near_(mesh.num_cells(), 0),
      levels_(levels)
{
    if (distance) {
        for (int k = 0; k < mesh.num_cells(); ++k) {
            const double lower_bound = (*distance)(mesh.centroid(k)) - mesh.centroid_radius(k);
            near_[k] = lower_bound < mesh.diameter(k) ? 1 : 0;
        }
    }
}

bool CellIntegrator::is_near(int cell) const
{
    return near_[cell] != 0;
}

} // namespace linesource
