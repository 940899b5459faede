#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "linesource/assembly.hpp"
#include "linesource/errors.hpp"
#include "linesource/mesh.hpp"
#include "oracles.hpp"

using namespace linesource;

namespace {

constexpr double kPi = std::numbers::pi;

SimplicialMesh unit_mesh(int dim, int n)
{
    return build_box_mesh(dim, Point::Zero(), dim == 2 ? Point(1, 1, 0) : Point(1, 1, 1), n);
}

// Basis function of local facet i written out independently: s (x - p_i) / (d |K|).
Vec3 basis(const SimplicialMesh& mesh, int k, int i, const Point& x)
{
    const int d = mesh.dim();
    const double vol = std::abs(simplex_measure(d, mesh.cell_points(k)));
    return mesh.cell_facets(k)[i].sign * (x - mesh.cell_vertex(k, i)) / (d * vol);
}

} // namespace

TEST(Darcy, MassMatrixMatchesDenseOracle)
{
    for (int dim : {2, 3}) {
        const auto mesh = unit_mesh(dim, 1);
        const MixedSpace space(mesh);
        const auto blocks = assemble_darcy(space, 1.0);
        Eigen::MatrixXd oracle_A = Eigen::MatrixXd::Zero(mesh.num_facets(), mesh.num_facets());
        for (int k = 0; k < mesh.num_cells(); ++k) {
            for (int i = 0; i <= dim; ++i) {
                for (int j = 0; j <= dim; ++j) {
                    oracle_A(mesh.cell_facets(k)[i].facet, mesh.cell_facets(k)[j].facet) +=
                        oracle::simplex_integral<4>(dim, mesh.cell_points(k), [&](const Vec3& x) {
                            return basis(mesh, k, i, x).dot(basis(mesh, k, j, x));
                        });
                }
            }
        }
        EXPECT_LE((Eigen::MatrixXd(blocks.A) - oracle_A).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Darcy, InverseKappaScaling)
{
    const auto mesh = unit_mesh(3, 2);
    const MixedSpace space(mesh);
    const auto a1 = assemble_darcy(space, 1.0);
    const auto a4 = assemble_darcy(space, 4.0);
    EXPECT_EQ((Eigen::MatrixXd(a4.A) * 4.0 - Eigen::MatrixXd(a1.A)).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((Eigen::MatrixXd(a4.B) - Eigen::MatrixXd(a1.B)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Darcy, StructuralInvariants)
{
    std::mt19937_64 rng(71);
    for (int dim : {2, 3}) {
        const auto mesh = unit_mesh(dim, 3);
        const MixedSpace space(mesh);
        const auto blocks = assemble_darcy(space, 1.7);
        const Eigen::MatrixXd A(blocks.A);
        EXPECT_LE((A - A.transpose()).cwiseAbs().maxCoeff(), 1e-12 * A.cwiseAbs().maxCoeff());
        for (int t = 0; t < 20; ++t) {
            const Eigen::VectorXd v = Eigen::VectorXd::Random(A.rows());
            EXPECT_GT(v.dot(A * v), 0.0);
        }
        const Eigen::MatrixXd B(blocks.B);
        for (int k = 0; k < mesh.num_cells(); ++k) {
            EXPECT_EQ((B.row(k).array() != 0.0).count(), dim + 1);
        }
        const Eigen::VectorXd ones = Eigen::VectorXd::Ones(mesh.num_facets());
        const Eigen::VectorXd net = blocks.B * ones;
        for (int k = 0; k < mesh.num_cells(); ++k) {
            double outflux = 0.0;
            for (int i = 0; i <= dim; ++i) {
                outflux += mesh.cell_facets(k)[i].sign;
            }
            EXPECT_NEAR(net[k], outflux, 1e-12);
        }
    }
}

TEST(BoundaryTerm, ZeroAndUnitTraces)
{
    const auto mesh = unit_mesh(2, 3);
    const MixedSpace space(mesh);
    EXPECT_EQ(assemble_boundary_term(space, [](const Point&) { return 0.0; }).cwiseAbs().maxCoeff(), 0.0);
    const auto g = assemble_boundary_term(space, [](const Point&) { return 1.0; });
    for (int f = 0; f < mesh.num_facets(); ++f) {
        EXPECT_NEAR(g[f], mesh.facet(f).on_boundary() ? -1.0 : 0.0, 1e-14);
    }
}

TEST(BoundaryTerm, LinearTraceMatchesOracle)
{
    for (int dim : {2, 3}) {
        const auto mesh = unit_mesh(dim, 2);
        const MixedSpace space(mesh);
        const auto trace = [](const Point& x) { return x.x() + 2 * x.y() * x.y() - x.z(); };
        const auto g = assemble_boundary_term(space, trace);
        for (int f : mesh.boundary_facets()) {
            const auto& facet = mesh.facet(f);
            // phi_f . n = 1 / |f| on its own facet.
            double avg = 0.0;
            if (dim == 2) {
                const Point a = mesh.vertices()[facet.vertices[0]];
                const Point b = mesh.vertices()[facet.vertices[1]];
                avg = oracle::adaptive([&](double t) { return trace(a + t * (b - a)); }, 0.0, 1.0);
            } else {
                std::array<Vec3, 4> tri{mesh.vertices()[facet.vertices[0]], mesh.vertices()[facet.vertices[1]],
                                        mesh.vertices()[facet.vertices[2]], Vec3::Zero()};
                avg = oracle::simplex_integral<10>(2, tri, trace) / facet.measure;
            }
            EXPECT_NEAR(g[f], -avg, 1e-12);
        }
    }
}

TEST(SourceRegular, ConstantSource)
{
    const auto mesh = unit_mesh(3, 2);
    const MixedSpace space(mesh);
    const auto b = assemble_source_regular(space, [](const Point&) { return 3.0; }, std::nullopt);
    for (int k = 0; k < mesh.num_cells(); ++k) {
        EXPECT_NEAR(b[k], 3.0 * mesh.volume(k), 1e-15);
    }
}

TEST(SourceRegular, LogSourceFarFromLineMatchesOracle)
{
    const auto mesh = unit_mesh(3, 4);
    const MixedSpace space(mesh);
    const LineNetwork net({Segment(Point(0.5, 0.5, 0), Point(0.5, 0.5, 1))});
    const auto f = [](const Point& x) { return std::log(std::hypot(x.x() - 0.5, x.y() - 0.5)); };
    const auto b = assemble_source_regular(space, f, net);
    int checked = 0;
    for (int k = 0; k < mesh.num_cells(); ++k) {
        if (distance_to_network(mesh.centroid(k), net) < 0.35) {
            continue;
        }
        EXPECT_NEAR(b[k], oracle::simplex_integral<10>(3, mesh.cell_points(k), f), 1e-8);
        ++checked;
    }
    EXPECT_GT(checked, 0);
}

TEST(SourceRegular, TotalLogSourceMatchesPolarOracle)
{
    // Integral of -(1/pi) ln r over the unit cube, r the distance to the vertical centreline.
    const double quarter = oracle::adaptive(
        [](double theta) {
            const double R = 0.5 / std::cos(theta);
            return R * R / 2 * std::log(R) - R * R / 4;
        },
        0.0, kPi / 4);
    const double exact = -8 * quarter / kPi;
    const LineNetwork net({Segment(Point(0.5, 0.5, 0), Point(0.5, 0.5, 1))});
    const auto f = [](const Point& x) { return -std::log(std::hypot(x.x() - 0.5, x.y() - 0.5)) / kPi; };
    for (int n : {2, 4, 8}) {
        const auto mesh = unit_mesh(3, n);
        const MixedSpace space(mesh);
        const double total = assemble_source_regular(space, f, net).sum();
        EXPECT_NEAR(total, exact, 1e-4 * std::abs(exact)) << "n = " << n;
    }
}

TEST(SourceRegular, SubdivisionIsARefinementOnlyNearTheLine)
{
    const auto mesh = unit_mesh(3, 4);
    const MixedSpace space(mesh);
    const LineNetwork net({Segment(Point(0.5, 0.5, 0), Point(0.5, 0.5, 1))});
    const auto smooth = [](const Point& x) { return std::sin(x.x()) * std::exp(x.y()) + x.z() * x.z(); };
    const auto plain = assemble_source_regular(space, smooth, std::nullopt);
    const auto refined = assemble_source_regular(space, smooth, net);
    EXPECT_LE((plain - refined).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(SourceLine, PointSource)
{
    const auto mesh = unit_mesh(2, 16);
    const MixedSpace space(mesh);
    const auto b = assemble_source_point(space, Point(0.5, 0.5, 0), 2.0);
    EXPECT_EQ((b.array() != 0.0).count(), 1);
    EXPECT_EQ(b.sum(), 2.0);
    EXPECT_EQ(b[locate_cell(mesh, Point(0.5, 0.5, 0))], 2.0);
    EXPECT_THROW((void)assemble_source_point(space, Point(1.5, 0.5, 0), 2.0), LocationError);
}

TEST(SourceLine, PartitionOfTheLine)
{
    for (int n : {1, 2, 3, 4}) {
        const auto mesh = unit_mesh(3, n);
        const MixedSpace space(mesh);
        const LineNetwork vertical({Segment(Point(0.5, 0.5, 0), Point(0.5, 0.5, 1))});
        EXPECT_NEAR(assemble_source_line(space, vertical).sum(), 1.0, 1e-12);
        // integral over [0, 1] of 1 + 2 s
        const LineNetwork growing({Segment(Point(0.1, 0.2, 0), Point(0.1, 0.2, 1), 1.0, 2.0)});
        EXPECT_NEAR(assemble_source_line(space, growing).sum(), 2.0, 1e-12);
        const LineNetwork diagonal({Segment(Point(0, 0, 0), Point(1, 1, 1) / std::sqrt(3.0), 1.0, 2.0)});
        EXPECT_NEAR(assemble_source_line(space, diagonal).sum(), 2.0, 1e-12);
    }
}

TEST(SourceLine, ScaleMultipliesIntensity)
{
    const auto mesh = unit_mesh(3, 3);
    const MixedSpace space(mesh);
    const LineNetwork net({Segment(Point(0.5, 0.5, 0), Point(0.5, 0.5, 1))});
    // integral over [0, 1] of z^2 + 1 = 4 / 3; exact for 2-point Gauss per piece.
    const auto b = assemble_source_line(space, net, [](const Point& x) { return x.z() * x.z() + 1; });
    EXPECT_NEAR(b.sum(), 4.0 / 3.0, 1e-12);
}
