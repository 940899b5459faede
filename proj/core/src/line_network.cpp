#include "linesource/line_network.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "linesource/errors.hpp"

namespace linesource {

Segment::Segment(const Point& a, const Point& b, double intensity_base, double intensity_slope)
    : a_(a), b_(b), base_(intensity_base), slope_(intensity_slope)
{
    if (!a.allFinite() || !b.allFinite() || !std::isfinite(intensity_base) ||
        !std::isfinite(intensity_slope)) {
        throw ValidationError("segment has non-finite data");
    }
    length_ = (b - a).norm();
    if (!(length_ > 0.0)) {
        throw ValidationError("degenerate segment");
    }
    tangent_ = (b - a) / length_;
}

Point Segment::closest_point(const Point& x) const
{
    const double s = std::clamp(tangent_.dot(x - a_), 0.0, length_);
    return a_ + s * tangent_;
}

LineNetwork::LineNetwork(std::vector<Segment> segments) : segments_(std::move(segments))
{
    if (segments_.empty()) {
        throw ValidationError("empty network");
    }
}

double distance_to_segment(const Point& x, const Segment& seg)
{
    return (x - seg.closest_point(x)).norm();
}

double distance_to_network(const Point& x, const LineNetwork& net)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& seg : net.segments()) {
        best = std::min(best, distance_to_segment(x, seg));
    }
    return best;
}

double intensity_at(const Segment& seg, const Point& x)
{
    return seg.intensity_base() + seg.intensity_slope() * seg.tangent().dot(x - seg.a());
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::array<double, 8> parse_fields(std::string_view line, int line_no)
{
    std::array<double, 8> values{};
    std::size_t field = 0;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        const auto token =
            trim(line.substr(start, comma == std::string_view::npos ? line.size() - start
                                                                     : comma - start));
        if (field >= values.size()) {
            throw ParseError(line_no, "expected 8 fields at line " + std::to_string(line_no));
        }
        if (!token.empty() && token.front() == '+') {
            throw ParseError(line_no, "malformed number at line " + std::to_string(line_no));
        }
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() ||
            !std::isfinite(v)) {
            throw ParseError(line_no, "malformed number '" + std::string(token) + "' at line " +
                                          std::to_string(line_no));
        }
        values[field++] = v;
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    if (field != values.size()) {
        throw ParseError(line_no, "expected 8 fields at line " + std::to_string(line_no));
    }
    return values;
}

} // namespace

LineNetwork parse_network(std::istream& in)
{
    std::vector<Segment> segments;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto v = parse_fields(line, line_no);
        try {
            segments.emplace_back(Point(v[0], v[1], v[2]), Point(v[3], v[4], v[5]), v[6], v[7]);
        } catch (const ValidationError&) {
            throw ValidationError("degenerate segment at line " + std::to_string(line_no));
        }
    }
    return LineNetwork(std::move(segments));
}

LineNetwork parse_network(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_network(in);
}

LineNetwork load_network(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open network file " + path.string());
    }
    return parse_network(in);
}

std::string render_network(const LineNetwork& net)
{
    std::ostringstream out;
    out.precision(std::numeric_limits<double>::max_digits10);
    out << "# ax,ay,az,bx,by,bz,base,slope\n";
    for (const auto& s : net.segments()) {
        out << s.a().x() << ',' << s.a().y() << ',' << s.a().z() << ',' << s.b().x() << ','
            << s.b().y() << ',' << s.b().z() << ',' << s.intensity_base() << ','
            << s.intensity_slope() << '\n';
    }
    return out.str();
}

LineNetwork synthetic_network(std::uint64_t seed, int count, double lo, double hi)
{
    if (count <= 0 || !(hi > lo)) {
        throw ValidationError("synthetic network needs count > 0 and hi > lo");
    }
    std::mt19937_64 rng(seed);
    // 53 random bits -> [0, 1).
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto coord = [&] { return lo + (hi - lo) * unit(); };

    const double min_length = 0.1 * (hi - lo);
    std::vector<Segment> segments;
    segments.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(segments.size()) < count) {
        const Point a(coord(), coord(), coord());
        const Point b(coord(), coord(), coord());
        const double slope = unit() - 0.5;
        if ((b - a).norm() < min_length) {
            continue;
        }
        segments.emplace_back(a, b, 1.0, slope);
    }
    return LineNetwork(std::move(segments));
}

} // namespace linesource
