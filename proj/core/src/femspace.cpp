#include "linesource/femspace.hpp"

namespace linesource {

Vec3 MixedSpace::rt0_basis_at(int cell, int local, const Point& x) const
{
    const int sign = mesh_.cell_facets(cell)[local].sign;
    const Point& opposite = mesh_.cell_vertex(cell, local);
    return sign * (x - opposite) / (mesh_.dim() * mesh_.volume(cell));
}

double MixedSpace::rt0_div(int cell, int local) const
{
    return mesh_.cell_facets(cell)[local].sign / mesh_.volume(cell);
}

Vec3 MixedSpace::flux_at(int cell, const Eigen::VectorXd& dofs, const Point& x) const
{
    Vec3 q = Vec3::Zero();
    for (int i = 0; i <= mesh_.dim(); ++i) {
        q += dofs[mesh_.cell_facets(cell)[i].facet] * rt0_basis_at(cell, i, x);
    }
    return q;
}

double MixedSpace::flux_divergence(int cell, const Eigen::VectorXd& dofs) const
{
    double div = 0.0;
    for (int i = 0; i <= mesh_.dim(); ++i) {
        div += dofs[mesh_.cell_facets(cell)[i].facet] * rt0_div(cell, i);
    }
    return div;
}

QuadratureRule facet_rule(int mesh_dim, int order)
{
    if (mesh_dim == 2) {
        return gauss_legendre(std::max(1, (order + 2) / 2));
    }
    return simplex_rule(2, order);
}

Eigen::VectorXd interpolate_flux(const VectorFn& field, const MixedSpace& space)
{
    const auto& mesh = space.mesh();
    const auto rule = mesh.dim() == 2 ? gauss_legendre(3) : simplex_rule(2, 2);
    Eigen::VectorXd dofs(space.num_flux_dofs());
    for (int f = 0; f < mesh.num_facets(); ++f) {
        const Vec3& n = mesh.facet(f).normal;
        double flux = 0.0;
        for_each_facet_point(mesh, f, rule, [&](const Point& x, double w) {
            flux += w * field(x).dot(n);
        });
        dofs[f] = flux;
    }
    return dofs;
}

} // namespace linesource
