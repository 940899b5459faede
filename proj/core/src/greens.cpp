#include "linesource/greens.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Geometry>

#include "linesource/errors.hpp"

namespace linesource {

KernelParams KernelParams::for_domain(double kappa, double domain_diameter)
{
    KernelParams p{kappa, 1e-12 * domain_diameter};
    p.validate();
    return p;
}

void KernelParams::validate() const
{
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw ValidationError("kappa must be positive");
    }
    if (!(floor_radius >= 0.0)) {
        throw ValidationError("floor_radius must be non-negative");
    }
}

namespace {

struct SegmentGeometry {
    Vec3 xa;
    Vec3 xb;
    double ra;
    double rb;
    double sum_plus;  // ra + rb + L
    double sum_minus; // ra + rb - L, cancellation-free
};

SegmentGeometry segment_geometry(const Point& x, const Segment& seg, const KernelParams& params,
                                 int index)
{
    if (distance_to_segment(x, seg) <= params.floor_radius) {
        throw SingularEvaluationError(index, "kernel evaluated on segment " +
                                                 std::to_string(index));
    }
    SegmentGeometry g;
    g.xa = x - seg.a();
    g.xb = x - seg.b();
    g.ra = g.xa.norm();
    g.rb = g.xb.norm();
    const double L = seg.length();
    g.sum_plus = g.ra + g.rb + L;
    const double d = g.xa.dot(g.xb);
    if (d < 0.0) {
        // (ra + rb)^2 - L^2 = 2 (ra rb + d) = 2 |xa x xb|^2 / (ra rb - d)
        g.sum_minus = 2.0 * g.xa.cross(g.xb).squaredNorm() / ((g.ra * g.rb - d) * g.sum_plus);
    } else {
        g.sum_minus = g.ra + g.rb - L;
    }
    if (!(g.sum_minus > 0.0) || g.ra == 0.0 || g.rb == 0.0) {
        throw SingularEvaluationError(index, "kernel evaluated on segment " +
                                                 std::to_string(index));
    }
    return g;
}

} // namespace

double greens_segment(const Point& x, const Segment& seg, const KernelParams& params, int index)
{
    const auto g = segment_geometry(x, seg, params, index);
    return std::log(g.sum_plus / g.sum_minus) / (4.0 * std::numbers::pi * params.kappa);
}

Vec3 greens_segment_gradient(const Point& x, const Segment& seg, const KernelParams& params,
                             int index)
{
    const auto g = segment_geometry(x, seg, params, index);
    const Vec3 grad_sum = g.xa / g.ra + g.xb / g.rb;
    return grad_sum * (1.0 / g.sum_plus - 1.0 / g.sum_minus) /
           (4.0 * std::numbers::pi * params.kappa);
}

double greens_network(const Point& x, const LineNetwork& net, const KernelParams& params)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < net.size(); ++i) {
        sum += greens_segment(x, net[i], params, static_cast<int>(i));
    }
    return sum;
}

Vec3 greens_network_gradient(const Point& x, const LineNetwork& net, const KernelParams& params)
{
    Vec3 sum = Vec3::Zero();
    for (std::size_t i = 0; i < net.size(); ++i) {
        sum += greens_segment_gradient(x, net[i], params, static_cast<int>(i));
    }
    return sum;
}

namespace {

Vec3 axis_offset(const Point& x, const Point& axis_point, const Vec3& axis_dir,
                 const KernelParams& params, int index)
{
    const Vec3 rel = x - axis_point;
    const Vec3 perp = rel - rel.dot(axis_dir) * axis_dir;
    if (!(perp.norm() > params.floor_radius) || perp.norm() == 0.0) {
        throw SingularEvaluationError(index, "kernel evaluated on line " + std::to_string(index));
    }
    return perp;
}

} // namespace

double greens_infinite_line(const Point& x, const Point& axis_point, const Vec3& axis_dir,
                            const KernelParams& params, int index)
{
    const double r = axis_offset(x, axis_point, axis_dir, params, index).norm();
    return -std::log(r) / (2.0 * std::numbers::pi * params.kappa);
}

Vec3 greens_infinite_line_gradient(const Point& x, const Point& axis_point, const Vec3& axis_dir,
                                   const KernelParams& params, int index)
{
    const Vec3 perp = axis_offset(x, axis_point, axis_dir, params, index);
    return -perp / (perp.squaredNorm() * 2.0 * std::numbers::pi * params.kappa);
}

} // namespace linesource
