#include "wavectl/errors.hpp"
#include "wavectl/geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace wavectl;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

void expect_point(const Point& a, const Point& b, double tol = 1e-14) {
  EXPECT_NEAR(a.x(), b.x(), tol);
  EXPECT_NEAR(a.y(), b.y(), tol);
}

}  // namespace

TEST(BoundaryPoint, DiskOriginAndQuarterArc) {
  const Domain disk = Domain::unit_disk();
  expect_point(boundary_point(disk, 0.0), Point(1, 0));
  expect_point(boundary_point(disk, kPi / 2), Point(0, 1));
}

TEST(BoundaryPoint, HexagonFirstSide) {
  expect_point(boundary_point(Domain::regular_hexagon(), 1.0), Point(0.5, kSqrt3 / 2));
}

TEST(BoundaryPoint, OutOfRangeThrows) {
  const Domain disk = Domain::unit_disk();
  EXPECT_THROW(boundary_point(disk, -0.1), RangeError);
  EXPECT_THROW(boundary_point(disk, 2 * kPi + 0.1), RangeError);
  EXPECT_THROW(boundary_point(Domain::regular_hexagon(), 6.5), RangeError);
}

TEST(OutwardNormal, DiskRectangleHexagon) {
  expect_point(outward_normal(Domain::unit_disk(), 0.0), Point(1, 0));
  const Domain rect = Domain::rectangle(2.0, 1.0);
  for (double s : {0.1, 1.0, 1.9}) expect_point(outward_normal(rect, s), Point(0, -1));

  const Domain hex = Domain::regular_hexagon();
  const Point n = outward_normal(hex, 0.5);
  expect_point(n, Point(kSqrt3 / 2, 0.5));
  // the centre lies on the inner side
  EXPECT_LT((Point::Zero() - boundary_point(hex, 0.5)).dot(n), 0.0);
}

TEST(OutwardNormal, VertexIsUndefined) {
  EXPECT_THROW(outward_normal(Domain::regular_hexagon(), 1.0), UndefinedNormalError);
  EXPECT_THROW(outward_normal(Domain::rectangle(1.0, 1.0), 0.0), UndefinedNormalError);
}

TEST(IlluminatedRegion, CentreSeesWholeCircle) {
  const auto region = illuminated_region(Domain::unit_disk(), Point(0, 0));
  EXPECT_NEAR(region.measure(), 2 * kPi, 1e-12);
}

TEST(IlluminatedRegion, DiskFromCorner) {
  const auto region = illuminated_region(Domain::unit_disk(), Point(1, 1));
  EXPECT_TRUE(region.approx_equal(BoundaryRegion::from_arcs(2 * kPi, {{kPi / 2, 1.5 * kPi}}), 1e-9));
  EXPECT_FALSE(region.contains(kPi / 4));
  EXPECT_TRUE(region.contains(kPi));
}

TEST(IlluminatedRegion, HexagonFromVertex) {
  const Domain hex = Domain::regular_hexagon();
  const auto region = illuminated_region(hex, Point(1, 0));
  EXPECT_NEAR(region.measure(), 4.0, 1e-12);
  for (double s = 0.05; s < 6.0; s += 0.1) {
    const bool lit = boundary_point(hex, s).x() < 0.5;
    EXPECT_EQ(region.contains(s), lit) << "s = " << s;
  }
}

TEST(IlluminatedRegion, InteriorPointSeesEverythingButVertices) {
  const Domain hex = Domain::regular_hexagon();
  const auto region = illuminated_region(hex, Point(0.2, -0.3));
  EXPECT_NEAR(region.measure(), hex.perimeter(), 1e-12);
  EXPECT_FALSE(region.contains(2.0));
}

TEST(IlluminatedRegion, EdgesAreWhollyInOrOut) {
  const Domain hex = Domain::regular_hexagon();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Point x0(u(rng), u(rng));
    const auto region = illuminated_region(hex, x0);
    for (const auto& e : hex.edges()) {
      double lo = INFINITY, hi = -INFINITY;
      for (int i = 1; i <= 10; ++i) {
        const Point x = e.start + (i - 0.5) / 10.0 * (e.end - e.start);
        const double g = (x - x0).dot(e.normal);
        lo = std::min(lo, g);
        hi = std::max(hi, g);
      }
      EXPECT_LT(hi - lo, 1e-12);
      EXPECT_NEAR(region.overlap(e.s_begin, e.s_begin + e.param_length), lo > 0.0 ? e.param_length : 0.0, 1e-12);
    }
  }
}

TEST(IlluminatedRegion, InvariantUnderRigidMotion) {
  const Domain hex = Domain::regular_hexagon();
  const double angle = 0.7;
  const Point shift(2.5, -1.25);
  Eigen::Matrix2d rot;
  rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  std::vector<Point> moved;
  for (const auto& v : hex.vertices()) moved.push_back(rot * v + shift);
  const Domain hex2 = Domain::polygon(moved);
  for (const Point& x0 : {Point(1, 0), Point(1.5, kSqrt3 / 2), Point(-2, 0.4), Point(0.1, 0.1)}) {
    EXPECT_NEAR(illuminated_region(hex, x0).measure(), illuminated_region(hex2, rot * x0 + shift).measure(), 1e-9);
  }
  const Domain disk2 = Domain::disk(shift, 1.0);
  EXPECT_NEAR(illuminated_region(Domain::unit_disk(), Point(1, 1)).measure(),
              illuminated_region(disk2, rot * Point(1, 1) + shift).measure(), 1e-9);
}

TEST(RadiusMax, Examples) {
  EXPECT_NEAR(radius_max(Domain::unit_disk(), Point(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(radius_max(Domain::unit_disk(), Point(1, 1)), kSqrt2 + 1, 1e-14);
  EXPECT_NEAR(radius_max(Domain::regular_hexagon(), Point(1, 0)), 2.0, 1e-14);
  // farthest vertices of the unit hexagon from (3/2, sqrt3/2) are (-1,0) and (-1/2,-sqrt3/2)
  EXPECT_NEAR(radius_max(Domain::regular_hexagon(), Point(1.5, kSqrt3 / 2)), std::sqrt(7.0), 1e-14);
}

TEST(PairDistance, Examples) {
  EXPECT_NEAR(pair_distance(Point(1, 1), Point(1, -1)), 2.0, 1e-15);
  EXPECT_NEAR(pair_distance(Point(1, 0), Point(-1, 0)), 2.0, 1e-15);
  EXPECT_EQ(pair_distance(Point(0.3, 0.4), Point(0.3, 0.4)), 0.0);
}

TEST(AlternatingThreshold, Corollaries) {
  const Domain disk = Domain::unit_disk();
  const Domain hex = Domain::regular_hexagon();
  const std::vector<Point> circle{Point(1, 1), Point(1, -1)};
  EXPECT_NEAR(alternating_threshold(disk, circle), 2 * (1 + kSqrt2) + 2, 1e-12);
  for (int n : {1, 2, 3, 5}) {
    std::vector<Point> pts;
    for (int i = 0; i <= n; ++i) pts.push_back(circle[i % 2]);
    EXPECT_NEAR(alternating_threshold(disk, pts), 2.0 * (n + 1) + 2 * kSqrt2, 1e-12);
  }
  EXPECT_NEAR(alternating_threshold(hex, std::vector<Point>{Point(1, 0), Point(-1, 0)}), 6.0, 1e-12);
  EXPECT_NEAR(alternating_threshold(hex, std::vector<Point>{Point(1.5, kSqrt3 / 2), Point(-1.5, -kSqrt3 / 2)}),
              2 * std::sqrt(7.0) + 2 * kSqrt3, 1e-12);
}

TEST(AlternatingThreshold, SinglePointIsTwiceRadius) {
  const Domain hex = Domain::regular_hexagon();
  for (const Point& x : {Point(0, 0), Point(0.4, 0.1), Point(3, 2)})
    EXPECT_NEAR(alternating_threshold(hex, std::vector<Point>{x}), 2 * radius_max(hex, x), 1e-14);
}

TEST(CurveLength, Examples) {
  const double alpha = 0.2;
  EXPECT_NEAR(curve_length(Curve::circular(kSqrt2, alpha, 0.0, kPi / (2 * alpha))), kSqrt2 * kPi / 2, 1e-12);
  EXPECT_EQ(curve_length(Curve::constant(Point(0.3, 0.1), 4.0)), 0.0);
  EXPECT_NEAR(curve_length(Curve::segment(Point(0, 0), Point(3, 4), 2.0)), 5.0, 1e-14);
}

TEST(CurveLength, ConcatenationAdds) {
  const Curve a = Curve::polyline({0.0, 1.0, 2.5}, {Point(0, 0), Point(1, 0.5), Point(0.2, -0.3)});
  const Curve b = Curve::segment(Point(0.2, -0.3), Point(-0.6, 0.9), 1.5);
  EXPECT_NEAR(curve_length(concatenate(a, b)), curve_length(a) + curve_length(b), 1e-9);
}

TEST(CurveLength, NonFiniteDerivativeThrows) {
  const Curve wild = Curve::polyline({0.0, 1.0}, {Point(-1e308, 0), Point(1e308, 0)});
  EXPECT_THROW(curve_length(wild), InvalidCurveError);
  EXPECT_THROW(Curve::polyline({0.0, 1.0}, {Point(0, 0), Point(NAN, 0)}), InvalidCurveError);
}

TEST(VariableThreshold, RotatingPointReproducesSpeedBound) {
  const Domain disk = Domain::unit_disk();
  const double alpha = 0.15;
  const double threshold = variable_threshold(disk, Curve::circular(kSqrt2, alpha, 0.0, kPi / (2 * alpha)));
  EXPECT_NEAR(threshold, 2 * (1 + kSqrt2) + kSqrt2 * kPi / 2, 1e-12);
  EXPECT_NEAR(kPi / (2 * threshold), kPi / (4 * (1 + kSqrt2) + kPi * kSqrt2), 1e-12);
}

TEST(VariableThreshold, ConstantCurveMatchesFixedPoint) {
  const Domain hex = Domain::regular_hexagon();
  const Point x0(0.7, -0.2);
  EXPECT_NEAR(variable_threshold(hex, Curve::constant(x0, 3.0)), 2 * radius_max(hex, x0), 1e-14);
  EXPECT_NEAR(variable_threshold(hex, Curve::constant(x0, 3.0)),
              alternating_threshold(hex, std::vector<Point>{x0}), 1e-14);
}

TEST(VariableThreshold, SegmentMatchesOneSwitch) {
  const Domain disk = Domain::unit_disk();
  const double value = variable_threshold(disk, Curve::segment(Point(1, 1), Point(1, -1), 4.0));
  EXPECT_NEAR(value, 2 * (kSqrt2 + 1) + 2, 1e-12);
  EXPECT_NEAR(value, alternating_threshold(disk, std::vector<Point>{Point(1, 1), Point(1, -1)}), 1e-12);
}

TEST(BoundaryRegion, WrappingArcsAndMeasures) {
  const auto r = BoundaryRegion::from_arcs(10.0, {{9.0, 2.0}, {4.0, 1.0}});
  EXPECT_NEAR(r.measure(), 3.0, 1e-14);
  EXPECT_TRUE(r.contains(0.5));
  EXPECT_TRUE(r.contains(9.5));
  EXPECT_FALSE(r.contains(2.0));
  EXPECT_NEAR(r.overlap(0.0, 4.5), 1.5, 1e-14);
  const auto full = BoundaryRegion::full(10.0);
  EXPECT_NEAR(full.symmetric_difference_measure(r), 7.0, 1e-14);
  EXPECT_NEAR(full.intersection_measure(r), 3.0, 1e-14);
}
