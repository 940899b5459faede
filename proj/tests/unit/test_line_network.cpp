#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "linesource/errors.hpp"
#include "linesource/line_network.hpp"
#include "oracles.hpp"

using namespace linesource;

namespace {

const Segment kUnitZ(Point(0, 0, 0), Point(0, 0, 1));

} // namespace

TEST(Segment, RejectsDegenerateAndNonFinite)
{
    EXPECT_THROW(Segment(Point(1, 2, 3), Point(1, 2, 3)), ValidationError);
    EXPECT_THROW(Segment(Point(0, 0, NAN), Point(1, 0, 0)), ValidationError);
    EXPECT_THROW(Segment(Point(0, 0, 0), Point(1, 0, 0), INFINITY, 0.0), ValidationError);
}

TEST(Segment, TangentIsUnit)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const Segment s(oracle::random_point(rng), oracle::random_point(rng));
        EXPECT_NEAR(s.tangent().norm(), 1.0, 1e-12);
        EXPECT_NEAR(s.length(), (s.b() - s.a()).norm(), 1e-15);
    }
}

TEST(Distance, ProjectionInsideSegment)
{
    EXPECT_DOUBLE_EQ(distance_to_segment(Point(3, 4, 0.5), kUnitZ), 5.0);
}

TEST(Distance, ClampsToEndpoint)
{
    EXPECT_DOUBLE_EQ(distance_to_segment(Point(0, 0, 2), kUnitZ), 1.0);
    EXPECT_DOUBLE_EQ(distance_to_segment(Point(0, 0, -0.5), kUnitZ), 0.5);
}

TEST(Distance, MinimumOverSegments)
{
    const LineNetwork net({Segment(Point(0, 0, 0), Point(1, 0, 0)),
                           Segment(Point(0, 2, 0), Point(1, 2, 0))});
    EXPECT_DOUBLE_EQ(distance_to_network(Point(0.5, 0.5, 0), net), 0.5);
}

TEST(Distance, OneLipschitz)
{
    std::mt19937_64 rng(11);
    const auto net = synthetic_network(5, 6);
    for (int i = 0; i < 1000; ++i) {
        const Point x = oracle::random_point(rng, -0.5, 1.5);
        const Point y = oracle::random_point(rng, -0.5, 1.5);
        EXPECT_LE(std::abs(distance_to_network(x, net) - distance_to_network(y, net)),
                  (x - y).norm() + 1e-15);
    }
}

TEST(Distance, ZeroOnSegmentInterior)
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> t(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const Segment s(oracle::random_point(rng), oracle::random_point(rng));
        const Point x = s.a() + t(rng) * (s.b() - s.a());
        EXPECT_LE(distance_to_segment(x, s), 1e-14);
    }
}

TEST(Intensity, Examples)
{
    EXPECT_DOUBLE_EQ(intensity_at(kUnitZ, Point(7, -3, 12)), 1.0);
    EXPECT_DOUBLE_EQ(intensity_at(Segment(Point(0, 0, 0), Point(0, 0, 1), 1.0, 2.0), Point(0, 0, 0.5)),
                     2.0);
    EXPECT_DOUBLE_EQ(intensity_at(Segment(Point(0, 0, 0), Point(1, 0, 0), 0.0, 1.0), Point(0.25, 7, 7)),
                     0.25);
}

TEST(Parse, SingleLine)
{
    const auto net = parse_network("0,0,0,0,0,1,1.0,0.0\n");
    ASSERT_EQ(net.size(), 1u);
    EXPECT_EQ(net[0].a(), Point(0, 0, 0));
    EXPECT_EQ(net[0].b(), Point(0, 0, 1));
    EXPECT_EQ(net[0].intensity_base(), 1.0);
    EXPECT_EQ(net[0].intensity_slope(), 0.0);
}

TEST(Parse, CommentsBlankLinesAndOrder)
{
    const auto net = parse_network("# header\n\n0,0,0,1,0,0,1,0\n# mid\n0,1,0,1,1,0,2,0.5\n");
    ASSERT_EQ(net.size(), 2u);
    EXPECT_EQ(net[1].intensity_base(), 2.0);
    EXPECT_EQ(net[1].intensity_slope(), 0.5);
}

TEST(Parse, EmptyNetwork)
{
    try {
        (void)parse_network("# nothing here\n");
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_STREQ(e.what(), "empty network");
    }
    EXPECT_THROW((void)parse_network(""), ValidationError);
}

TEST(Parse, DegenerateSegmentNamesLine)
{
    try {
        (void)parse_network("0,0,0,0,0,0,1,0\n");
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_STREQ(e.what(), "degenerate segment at line 1");
    }
}

TEST(Parse, MalformedLineNamesLine)
{
    try {
        (void)parse_network("0,0,0,1,0,0,1,0\n0,0,x,1,0,0,1,0\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
    EXPECT_THROW((void)parse_network("0,0,0,1,0,0,1\n"), ParseError);
    EXPECT_THROW((void)parse_network("0,0,0,1,0,0,1,0,5\n"), ParseError);
}

TEST(Parse, RoundTripsExactly)
{
    const auto net = synthetic_network(99, 15);
    const auto back = parse_network(render_network(net));
    ASSERT_EQ(back.size(), net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
        EXPECT_EQ(back[i].a(), net[i].a());
        EXPECT_EQ(back[i].b(), net[i].b());
        EXPECT_EQ(back[i].intensity_base(), net[i].intensity_base());
        EXPECT_EQ(back[i].intensity_slope(), net[i].intensity_slope());
    }
}

TEST(Load, MissingFileIsIoError)
{
    EXPECT_THROW((void)load_network("/nonexistent/network.csv"), IoError);
}

TEST(Synthetic, InsideBoxWithBoundedSlopes)
{
    const auto net = synthetic_network(kSyntheticNetworkSeed, kSyntheticNetworkSize);
    ASSERT_EQ(net.size(), 20u);
    for (const auto& s : net.segments()) {
        for (const Point& p : {s.a(), s.b()}) {
            EXPECT_GE(p.minCoeff(), 0.2);
            EXPECT_LE(p.maxCoeff(), 0.8);
        }
        EXPECT_EQ(s.intensity_base(), 1.0);
        EXPECT_GE(s.intensity_slope(), -0.5);
        EXPECT_LE(s.intensity_slope(), 0.5);
    }
}

TEST(Synthetic, BundledFileMatchesGenerator)
{
    std::ifstream in(std::string(LINESOURCE_DATA_DIR) + "/synthetic_network.csv", std::ios::binary);
    ASSERT_TRUE(in);
    std::stringstream text;
    text << in.rdbuf();
    EXPECT_EQ(text.str(), render_network(synthetic_network(kSyntheticNetworkSeed, kSyntheticNetworkSize)));
}
