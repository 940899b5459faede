#include "linesource/assembly.hpp"

#include <vector>

#include "linesource/quadrature.hpp"

namespace linesource {

DarcyBlocks assemble_darcy(const MixedSpace& space, double kappa)
{
    if (!(kappa > 0.0)) {
        throw ValidationError("kappa must be positive");
    }
    const auto& mesh = space.mesh();
    const int dim = mesh.dim();
    const auto rule = simplex_rule(dim, 2);

    std::vector<Eigen::Triplet<double>> a_entries;
    std::vector<Eigen::Triplet<double>> b_entries;
    a_entries.reserve(static_cast<std::size_t>(mesh.num_cells()) * (dim + 1) * (dim + 1));
    b_entries.reserve(static_cast<std::size_t>(mesh.num_cells()) * (dim + 1));

    for (int k = 0; k < mesh.num_cells(); ++k) {
        const auto pts = mesh.cell_points(k);
        const double scale = mesh.volume(k) / reference_measure(dim);
        const auto& facets = mesh.cell_facets(k);
        double local[4][4] = {};
        for (std::size_t q = 0; q < rule.size(); ++q) {
            Point x = Point::Zero();
            for (int i = 0; i <= dim; ++i) {
                x += rule.points[q][i] * pts[i];
            }
            std::array<Vec3, 4> phi;
            for (int i = 0; i <= dim; ++i) {
                phi[i] = space.rt0_basis_at(k, i, x);
            }
            const double w = rule.weights[q] * scale / kappa;
            for (int i = 0; i <= dim; ++i) {
                for (int j = 0; j <= dim; ++j) {
                    local[i][j] += w * phi[i].dot(phi[j]);
                }
            }
        }
        for (int i = 0; i <= dim; ++i) {
            for (int j = 0; j <= dim; ++j) {
                a_entries.emplace_back(facets[i].facet, facets[j].facet, local[i][j]);
            }
            // (div phi_i, 1)_K = sign_i
            b_entries.emplace_back(k, facets[i].facet, static_cast<double>(facets[i].sign));
        }
    }
    DarcyBlocks blocks;
    blocks.A.resize(mesh.num_facets(), mesh.num_facets());
    blocks.A.setFromTriplets(a_entries.begin(), a_entries.end());
    blocks.B.resize(mesh.num_cells(), mesh.num_facets());
    blocks.B.setFromTriplets(b_entries.begin(), b_entries.end());
    return blocks;
}

Eigen::VectorXd assemble_boundary_term(const MixedSpace& space, const ScalarFn& trace)
{
    const auto& mesh = space.mesh();
    const auto rule = facet_rule(mesh.dim(), 3);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(space.num_flux_dofs());
    for (const int f : mesh.boundary_facets()) {
        const auto& facet = mesh.facet(f);
        const int owner = facet.owner;
        int local = 0;
        while (mesh.cell_facets(owner)[local].facet != f) {
            ++local;
        }
        double sum = 0.0;
        for_each_facet_point(mesh, f, rule, [&](const Point& x, double w) {
            const double flux = space.rt0_basis_at(owner, local, x).dot(facet.normal);
            sum += w * flux * evaluate_guarded(trace, x, facet.centroid);
        });
        g[f] = -sum;
    }
    return g;
}

Eigen::VectorXd assemble_source_regular(const MixedSpace& space, const ScalarFn& source,
                                        std::optional<DistanceFn> refine_near, int levels)
{
    const CellIntegrator integrator(space.mesh(), 4, std::move(refine_near), levels);
    Eigen::VectorXd b(space.num_pressure_dofs());
    for (int k = 0; k < space.mesh().num_cells(); ++k) {
        b[k] = integrator.integrate(k, source);
    }
    return b;
}

Eigen::VectorXd assemble_source_regular(const MixedSpace& space, const ScalarFn& source,
                                        const LineNetwork& refine_near, int levels)
{
    return assemble_source_regular(
        space, source, DistanceFn([refine_near](const Point& x) {
            return distance_to_network(x, refine_near);
        }),
        levels);
}

Eigen::VectorXd assemble_source_line(const MixedSpace& space, const LineNetwork& net,
                                     const ScalarFn& scale)
{
    const auto gauss = gauss_legendre(2);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(space.num_pressure_dofs());
    for (const auto& seg : net.segments()) {
        for (const auto& piece : intersect_segment_cells(space.mesh(), seg)) {
            const double len = piece.s1 - piece.s0;
            for (std::size_t q = 0; q < gauss.size(); ++q) {
                const double s = piece.s0 + gauss.points[q][1] * len;
                const Point x = seg.a() + s * seg.tangent();
                const double factor = scale ? scale(x) : 1.0;
                b[piece.cell] += gauss.weights[q] * len * intensity_at(seg, x) * factor;
            }
        }
    }
    return b;
}

Eigen::VectorXd assemble_source_point(const MixedSpace& space, const Point& x0, double intensity)
{
    Eigen::VectorXd b = Eigen::VectorXd::Zero(space.num_pressure_dofs());
    b[locate_cell(space.mesh(), x0)] = intensity;
    return b;
}

MixedSystem assemble_removal_system(const MixedSpace& space, const SplitProblem& p,
                                    const ScalarFn& background)
{
    p.validate();
    auto blocks = assemble_darcy(space, p.params.kappa);
    MixedSystem sys;
    sys.A = std::move(blocks.A);
    sys.B = std::move(blocks.B);
    sys.g = assemble_boundary_term(space, [&p](const Point& x) {
        return remainder_boundary(x, p);
    });
    sys.b = assemble_source_regular(
        space,
        [&](const Point& x) {
            const double extra = background ? background(x) : 0.0;
            return remainder_source(x, p) + extra;
        },
        p.network);
    return sys;
}

} // namespace linesource
