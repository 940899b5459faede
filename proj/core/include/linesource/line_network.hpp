#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "linesource/types.hpp"

namespace linesource {

/// Straight source segment a -> b carrying the affine intensity
/// base + slope * tangent . (x - a).
class Segment {
public:
    /// Throws ValidationError for non-finite or coincident endpoints.
    Segment(const Point& a, const Point& b, double intensity_base = 1.0,
            double intensity_slope = 0.0);

    [[nodiscard]] const Point& a() const noexcept { return a_; }
    [[nodiscard]] const Point& b() const noexcept { return b_; }
    [[nodiscard]] double intensity_base() const noexcept { return base_; }
    [[nodiscard]] double intensity_slope() const noexcept { return slope_; }
    [[nodiscard]] double length() const noexcept { return length_; }
    /// Unit vector (b - a) / length.
    [[nodiscard]] const Vec3& tangent() const noexcept { return tangent_; }

    /// Closest point on the closed segment.
    [[nodiscard]] Point closest_point(const Point& x) const;

private:
    Point a_;
    Point b_;
    double base_;
    double slope_;
    double length_;
    Vec3 tangent_;
};

class LineNetwork {
public:
    /// Throws ValidationError("empty network") when no segments are given.
    explicit LineNetwork(std::vector<Segment> segments);

    [[nodiscard]] const std::vector<Segment>& segments() const noexcept { return segments_; }
    [[nodiscard]] std::size_t size() const noexcept { return segments_.size(); }
    [[nodiscard]] const Segment& operator[](std::size_t i) const { return segments_[i]; }

private:
    std::vector<Segment> segments_;
};

[[nodiscard]] double distance_to_segment(const Point& x, const Segment& seg);

/// Minimum exact point-to-segment distance; linear scan over segments.
[[nodiscard]] double distance_to_network(const Point& x, const LineNetwork& net);

/// intensity_base + intensity_slope * tangent . (x - a).
[[nodiscard]] double intensity_at(const Segment& seg, const Point& x);

/// Parses the network CSV format: `ax,ay,az,bx,by,bz,base,slope` per line,
/// `#` comment lines and blank lines ignored.
[[nodiscard]] LineNetwork parse_network(std::istream& in);
[[nodiscard]] LineNetwork parse_network(std::string_view text);
[[nodiscard]] LineNetwork load_network(const std::filesystem::path& path);

/// Renders with round-trip precision; parse_network(render_network(n)) reproduces n exactly.
[[nodiscard]] std::string render_network(const LineNetwork& net);

/// Seeded random network in [lo, hi]^3 with base intensity 1 and slopes in
/// [-0.5, 0.5]. Uses mt19937_64 raw output so the result is portable.
[[nodiscard]] LineNetwork synthetic_network(std::uint64_t seed, int count, double lo = 0.2,
                                            double hi = 0.8);

/// Seed of the bundled 20-segment network in data/synthetic_network.csv.
inline constexpr std::uint64_t kSyntheticNetworkSeed = 20190531;
inline constexpr int kSyntheticNetworkSize = 20;

} // namespace linesource
