#pragma once

#include "linesource/line_network.hpp"
#include "linesource/types.hpp"

namespace linesource {

/// Constant permeability and the radius inside which kernels refuse to evaluate.
struct KernelParams {
    double kappa = 1.0;
    double floor_radius = 1e-12;

    /// floor_radius = 1e-12 * domain diameter.
    static KernelParams for_domain(double kappa, double domain_diameter);
    /// Throws ValidationError unless kappa > 0 and floor_radius >= 0.
    void validate() const;
};

enum class LineKernelKind { segment, infinite_line };

/// Potential of a uniformly charged segment, 1/(4 pi kappa) * ln((ra + rb + L) / (ra + rb - L)).
/// `index` only labels the SingularEvaluationError thrown within floor_radius of the segment.
[[nodiscard]] double greens_segment(const Point& x, const Segment& seg, const KernelParams& params,
                                    int index = 0);
[[nodiscard]] Vec3 greens_segment_gradient(const Point& x, const Segment& seg,
                                           const KernelParams& params, int index = 0);

[[nodiscard]] double greens_network(const Point& x, const LineNetwork& net,
                                    const KernelParams& params);
[[nodiscard]] Vec3 greens_network_gradient(const Point& x, const LineNetwork& net,
                                           const KernelParams& params);

/// -1/(2 pi kappa) ln r with r the distance to the infinite line through
/// axis_point with unit direction axis_dir.
[[nodiscard]] double greens_infinite_line(const Point& x, const Point& axis_point,
                                          const Vec3& axis_dir, const KernelParams& params,
                                          int index = 0);
[[nodiscard]] Vec3 greens_infinite_line_gradient(const Point& x, const Point& axis_point,
                                                 const Vec3& axis_dir, const KernelParams& params,
                                                 int index = 0);

} // namespace linesource
