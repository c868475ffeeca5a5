#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace wavectl {

using Point = Eigen::Vector2d;

struct Disk {
  Point center = Point::Zero();
  double radius = 1.0;
};

/// Axis-aligned (0,width) x (0,height).
struct Rectangle {
  double width = 1.0;
  double height = 1.0;
};

/// Strictly convex, counterclockwise.
struct ConvexPolygon {
  std::vector<Point> vertices;
};

/// (0, length) embedded on the x axis. Only used by one-dimensional oracles.
struct Interval {
  double length = 1.0;
};

/// A straight boundary piece. For an Interval the two "edges" are the end
/// points, each carrying a unit parameter cell so that arc measure becomes
/// counting measure.
struct Edge {
  Point start;
  Point end;
  Point normal;
  double s_begin = 0.0;
  double param_length = 0.0;
};

/// The spatial region with an arc-length parameterization of its boundary.
///
/// The parameter origin is angle 0 for a disk, the corner (0,0) for a
/// rectangle and the first vertex for a polygon; s increases
/// counterclockwise.
class Domain {
 public:
  using Shape = std::variant<Disk, Rectangle, ConvexPolygon, Interval>;

  static Domain disk(const Point& center, double radius);
  static Domain unit_disk() { return disk(Point::Zero(), 1.0); }
  static Domain rectangle(double width, double height);
  static Domain polygon(std::vector<Point> vertices);
  /// Regular hexagon centred at 0 with a vertex at (side, 0).
  static Domain regular_hexagon(double side = 1.0);
  static Domain interval(double length);

  const Shape& shape() const noexcept { return shape_; }
  double perimeter() const noexcept { return perimeter_; }
  int dimension() const noexcept { return std::holds_alternative<Interval>(shape_) ? 1 : 2; }

  bool is_disk() const noexcept { return std::holds_alternative<Disk>(shape_); }
  bool is_rectangle() const noexcept { return std::holds_alternative<Rectangle>(shape_); }
  bool is_polygon() const noexcept { return std::holds_alternative<ConvexPolygon>(shape_); }
  bool is_interval() const noexcept { return std::holds_alternative<Interval>(shape_); }
  /// Rectangle or polygon: boundary made of edges with vertices.
  bool has_corners() const noexcept { return is_rectangle() || is_polygon(); }

  /// Straight boundary pieces (empty for a disk).
  std::span<const Edge> edges() const noexcept { return edges_; }
  /// Extreme points of the closure: polygon corners, interval ends; empty for a disk.
  std::vector<Point> vertices() const;

  bool contains(const Point& x) const;
  /// Axis-aligned bounding box as (min corner, max corner).
  std::pair<Point, Point> bounding_box() const;
  double area() const;

  std::size_t hash() const;
  std::string describe() const;

  friend bool operator==(const Domain& a, const Domain& b);

 private:
  explicit Domain(Shape shape);

  Shape shape_;
  double perimeter_ = 0.0;
  std::vector<Edge> edges_;
};

/// Finite union of disjoint half-open arcs [begin, end) of the boundary
/// parameter, stored sorted, merged and non-wrapping inside [0, perimeter].
class BoundaryRegion {
 public:
  struct Arc {
    double begin;
    double end;
    double length() const { return end - begin; }
  };

  BoundaryRegion() = default;
  static BoundaryRegion empty(double perimeter) { return BoundaryRegion(perimeter, {}); }
  static BoundaryRegion full(double perimeter);
  /// Arcs given as (start, length); starts are taken modulo the perimeter and
  /// wrapping arcs are split.
  static BoundaryRegion from_arcs(double perimeter, const std::vector<std::pair<double, double>>& arcs);

  double perimeter() const noexcept { return perimeter_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  bool is_empty() const noexcept { return arcs_.empty(); }

  double measure() const;
  bool contains(double s) const;
  /// Measure of [begin, end) ∩ region for 0 <= begin <= end <= perimeter.
  double overlap(double begin, double end) const;
  double intersection_measure(const BoundaryRegion& other) const;
  double symmetric_difference_measure(const BoundaryRegion& other) const;
  bool approx_equal(const BoundaryRegion& other, double tol = 1e-12) const;

  /// Same arcs with the given parameters removed (polygon vertices).
  BoundaryRegion excluding(std::vector<double> points) const;
  const std::vector<double>& excluded() const noexcept { return excluded_; }

 private:
  BoundaryRegion(double perimeter, std::vector<Arc> arcs);
  void normalize();

  double perimeter_ = 0.0;
  std::vector<Arc> arcs_;
  std::vector<double> excluded_;
};

/// A moving observation point t -> phi(t) on [0, horizon].
///
/// Two encodings: the circular family
///   phi(t) = center + radius (cos(speed t + phase), sin(speed t + phase))
/// and piecewise-linear samples.
class Curve {
 public:
  struct Circular {
    Point center = Point::Zero();
    double radius = 1.0;
    double angular_speed = 0.0;
    double phase = 0.0;
  };
  struct Polyline {
    std::vector<double> times;
    std::vector<Point> points;
  };

  static Curve circular(double radius, double angular_speed, double phase, double horizon,
                        const Point& center = Point::Zero());
  static Curve polyline(std::vector<double> times, std::vector<Point> points);
  static Curve constant(const Point& x0, double horizon);
  static Curve segment(const Point& from, const Point& to, double horizon);

  Point operator()(double t) const;
  /// One-sided (right) derivative at polyline knots.
  Point derivative(double t) const;
  double horizon() const noexcept { return horizon_; }

  bool is_circular() const noexcept { return std::holds_alternative<Circular>(rep_); }
  const std::variant<Circular, Polyline>& representation() const noexcept { return rep_; }

 private:
  Curve(std::variant<Circular, Polyline> rep, double horizon);

  std::variant<Circular, Polyline> rep_;
  double horizon_ = 0.0;
};

/// Joins two polylines; `second` is shifted to start at `first.horizon()`.
Curve concatenate(const Curve& first, const Curve& second);

Point boundary_point(const Domain& domain, double s);
Point outward_normal(const Domain& domain, double s);

/// {x on the boundary : (x - x0) . nu(x) > 0} as arcs. Vertices are never
/// included.
BoundaryRegion illuminated_region(const Domain& domain, const Point& x0);

/// max |x - x0| over the closure of the domain.
double radius_max(const Domain& domain, const Point& x0);

template <typename DerivedA, typename DerivedB>
double pair_distance(const Eigen::MatrixBase<DerivedA>& x, const Eigen::MatrixBase<DerivedB>& y) {
  return (x - y).norm();
}

/// R_0 + sum |x_{i+1} - x_i| + R_N.
double alternating_threshold(const Domain& domain, std::span<const Point> points);

double curve_length(const Curve& curve);

/// max |x - phi(t)| over the closure, at an endpoint t in {0, horizon}.
double endpoint_radius(const Domain& domain, const Curve& curve, double t);

/// c_0 + L(phi) + c_T.
double variable_threshold(const Domain& domain, const Curve& curve);

}  // namespace wavectl
