#include "wavectl/geometry.hpp"

#include "wavectl/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

namespace wavectl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void hash_combine(std::size_t& seed, double value) {
  const auto bits = std::bit_cast<std::uint64_t>(value == 0.0 ? 0.0 : value);
  seed ^= std::hash<std::uint64_t>{}(bits) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::vector<Edge> polygon_edges(const std::vector<Point>& vertices) {
  std::vector<Edge> edges;
  edges.reserve(vertices.size());
  double s = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Point& a = vertices[i];
    const Point& b = vertices[(i + 1) % vertices.size()];
    const Point e = b - a;
    const double len = e.norm();
    edges.push_back({a, b, Point(e.y(), -e.x()) / len, s, len});
    s += len;
  }
  return edges;
}

std::vector<Point> rectangle_vertices(const Rectangle& r) {
  return {Point(0.0, 0.0), Point(r.width, 0.0), Point(r.width, r.height), Point(0.0, r.height)};
}

const Edge& edge_at(std::span<const Edge> edges, double s) {
  auto it = std::upper_bound(edges.begin(), edges.end(), s,
                             [](double value, const Edge& e) { return value < e.s_begin; });
  return *std::prev(it);
}

void check_parameter(const Domain& domain, double s) {
  if (!(s >= 0.0 && s < domain.perimeter())) {
    std::ostringstream msg;
    msg << "boundary parameter " << s << " outside [0, " << domain.perimeter() << ")";
    throw RangeError(msg.str());
  }
}

}  // namespace

// ---------------------------------------------------------------- Domain

Domain::Domain(Shape shape) : shape_(std::move(shape)) {
  if (const auto* d = std::get_if<Disk>(&shape_)) {
    perimeter_ = kTwoPi * d->radius;
  } else if (const auto* r = std::get_if<Rectangle>(&shape_)) {
    edges_ = polygon_edges(rectangle_vertices(*r));
  } else if (const auto* p = std::get_if<ConvexPolygon>(&shape_)) {
    edges_ = polygon_edges(p->vertices);
  } else {
    const auto& iv = std::get<Interval>(shape_);
    const Point left(0.0, 0.0);
    const Point right(iv.length, 0.0);
    edges_ = {{left, left, Point(-1.0, 0.0), 0.0, 1.0}, {right, right, Point(1.0, 0.0), 1.0, 1.0}};
  }
  if (!edges_.empty()) perimeter_ = edges_.back().s_begin + edges_.back().param_length;
}

Domain Domain::disk(const Point& center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("disk radius must be positive");
  return Domain(Disk{center, radius});
}

Domain Domain::rectangle(double width, double height) {
  if (!(width > 0.0 && height > 0.0)) throw std::invalid_argument("rectangle sides must be positive");
  return Domain(Rectangle{width, height});
}

Domain Domain::polygon(std::vector<Point> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    const Point e1 = vertices[(i + 1) % n] - vertices[i];
    const Point e2 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
    const double cross = e1.x() * e2.y() - e1.y() * e2.x();
    if (!(cross > 0.0)) throw std::invalid_argument("polygon vertices must be strictly convex and counterclockwise");
  }
  return Domain(ConvexPolygon{std::move(vertices)});
}

Domain Domain::regular_hexagon(double side) {
  const double h = side * std::sqrt(3.0) / 2.0;
  return polygon({Point(side, 0.0), Point(side / 2, h), Point(-side / 2, h), Point(-side, 0.0),
                  Point(-side / 2, -h), Point(side / 2, -h)});
}

Domain Domain::interval(double length) {
  if (!(length > 0.0)) throw std::invalid_argument("interval length must be positive");
  return Domain(Interval{length});
}

std::vector<Point> Domain::vertices() const {
  if (const auto* r = std::get_if<Rectangle>(&shape_)) return rectangle_vertices(*r);
  if (const auto* p = std::get_if<ConvexPolygon>(&shape_)) return p->vertices;
  if (const auto* iv = std::get_if<Interval>(&shape_)) return {Point(0.0, 0.0), Point(iv->length, 0.0)};
  return {};
}

bool Domain::contains(const Point& x) const {
  if (const auto* d = std::get_if<Disk>(&shape_)) return (x - d->center).norm() < d->radius;
  if (const auto* iv = std::get_if<Interval>(&shape_)) return x.x() > 0.0 && x.x() < iv->length;
  return std::all_of(edges_.begin(), edges_.end(),
                     [&](const Edge& e) { return (e.start - x).dot(e.normal) > 0.0; });
}

std::pair<Point, Point> Domain::bounding_box() const {
  if (const auto* d = std::get_if<Disk>(&shape_)) {
    const Point r = Point::Constant(d->radius);
    return {d->center - r, d->center + r};
  }
  const auto vs = vertices();
  Point lo = vs.front();
  Point hi = vs.front();
  for (const auto& v : vs) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return {lo, hi};
}

double Domain::area() const {
  if (const auto* d = std::get_if<Disk>(&shape_)) return std::numbers::pi * d->radius * d->radius;
  if (const auto* iv = std::get_if<Interval>(&shape_)) return iv->length;
  double twice = 0.0;
  for (const auto& e : edges_) twice += e.start.x() * e.end.y() - e.end.x() * e.start.y();
  return 0.5 * twice;
}

std::size_t Domain::hash() const {
  std::size_t seed = shape_.index();
  if (const auto* d = std::get_if<Disk>(&shape_)) {
    hash_combine(seed, d->center.x());
    hash_combine(seed, d->center.y());
    hash_combine(seed, d->radius);
  } else if (const auto* iv = std::get_if<Interval>(&shape_)) {
    hash_combine(seed, iv->length);
  } else {
    for (const auto& v : vertices()) {
      hash_combine(seed, v.x());
      hash_combine(seed, v.y());
    }
  }
  return seed;
}

std::string Domain::describe() const {
  std::ostringstream out;
  if (const auto* d = std::get_if<Disk>(&shape_)) {
    out << "disk(center=(" << d->center.x() << "," << d->center.y() << "), radius=" << d->radius << ")";
  } else if (const auto* r = std::get_if<Rectangle>(&shape_)) {
    out << "rectangle(" << r->width << " x " << r->height << ")";
  } else if (const auto* iv = std::get_if<Interval>(&shape_)) {
    out << "interval(0," << iv->length << ")";
  } else {
    out << "polygon[";
    const auto vs = vertices();
    for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? " " : "") << "(" << vs[i].x() << "," << vs[i].y() << ")";
    out << "]";
  }
  return out.str();
}

bool operator==(const Domain& a, const Domain& b) {
  if (a.shape_.index() != b.shape_.index()) return false;
  if (const auto* da = std::get_if<Disk>(&a.shape_)) {
    const auto& db = std::get<Disk>(b.shape_);
    return da->center == db.center && da->radius == db.radius;
  }
  if (const auto* ia = std::get_if<Interval>(&a.shape_)) return ia->length == std::get<Interval>(b.shape_).length;
  return a.vertices() == b.vertices();
}

// ---------------------------------------------------------- BoundaryRegion

BoundaryRegion::BoundaryRegion(double perimeter, std::vector<Arc> arcs)
    : perimeter_(perimeter), arcs_(std::move(arcs)) {
  normalize();
}

BoundaryRegion BoundaryRegion::full(double perimeter) { return BoundaryRegion(perimeter, {{0.0, perimeter}}); }

BoundaryRegion BoundaryRegion::from_arcs(double perimeter, const std::vector<std::pair<double, double>>& arcs) {
  std::vector<Arc> pieces;
  for (auto [start, length] : arcs) {
    if (!(length > 0.0)) continue;
    if (length >= perimeter) return full(perimeter);
    double a = std::fmod(start, perimeter);
    if (a < 0.0) a += perimeter;
    const double b = a + length;
    if (b <= perimeter) {
      pieces.push_back({a, b});
    } else {
      pieces.push_back({a, perimeter});
      pieces.push_back({0.0, b - perimeter});
    }
  }
  return BoundaryRegion(perimeter, std::move(pieces));
}

void BoundaryRegion::normalize() {
  const double tol = 1e-12 * std::max(1.0, perimeter_);
  for (auto& a : arcs_) {
    a.begin = std::clamp(a.begin, 0.0, perimeter_);
    a.end = std::clamp(a.end, 0.0, perimeter_);
  }
  std::erase_if(arcs_, [&](const Arc& a) { return a.end - a.begin <= tol; });
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& x, const Arc& y) { return x.begin < y.begin; });
  std::vector<Arc> merged;
  for (const auto& a : arcs_) {
    if (!merged.empty() && a.begin <= merged.back().end + tol) {
      merged.back().end = std::max(merged.back().end, a.end);
    } else {
      merged.push_back(a);
    }
  }
  arcs_ = std::move(merged);
}

double BoundaryRegion::measure() const {
  double total = 0.0;
  for (const auto& a : arcs_) total += a.length();
  return total;
}

bool BoundaryRegion::contains(double s) const {
  const double tol = 1e-12 * std::max(1.0, perimeter_);
  if (std::any_of(excluded_.begin(), excluded_.end(), [&](double v) { return std::abs(s - v) <= tol; })) return false;
  return std::any_of(arcs_.begin(), arcs_.end(), [s](const Arc& a) { return s >= a.begin && s < a.end; });
}

double BoundaryRegion::overlap(double begin, double end) const {
  double total = 0.0;
  for (const auto& a : arcs_) {
    const double lo = std::max(a.begin, begin);
    const double hi = std::min(a.end, end);
    if (hi > lo) total += hi - lo;
  }
  return total;
}

double BoundaryRegion::intersection_measure(const BoundaryRegion& other) const {
  double total = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < arcs_.size() && j < other.arcs_.size()) {
    const auto& a = arcs_[i];
    const auto& b = other.arcs_[j];
    const double lo = std::max(a.begin, b.begin);
    const double hi = std::min(a.end, b.end);
    if (hi > lo) total += hi - lo;
    (a.end < b.end) ? ++i : ++j;
  }
  return total;
}

double BoundaryRegion::symmetric_difference_measure(const BoundaryRegion& other) const {
  return std::max(0.0, measure() + other.measure() - 2.0 * intersection_measure(other));
}

bool BoundaryRegion::approx_equal(const BoundaryRegion& other, double tol) const {
  if (arcs_.size() != other.arcs_.size()) return false;
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    if (std::abs(arcs_[i].begin - other.arcs_[i].begin) > tol) return false;
    if (std::abs(arcs_[i].end - other.arcs_[i].end) > tol) return false;
  }
  return true;
}

BoundaryRegion BoundaryRegion::excluding(std::vector<double> points) const {
  BoundaryRegion out = *this;
  for (double& p : points) {
    if (p >= perimeter_) p -= perimeter_;
  }
  // parameter 0 and the perimeter name the same point
  if (std::find(points.begin(), points.end(), 0.0) != points.end()) points.push_back(perimeter_);
  std::sort(points.begin(), points.end());
  out.excluded_ = std::move(points);
  return out;
}

// ------------------------------------------------------------------ Curve

Curve::Curve(std::variant<Circular, Polyline> rep, double horizon) : rep_(std::move(rep)), horizon_(horizon) {}

Curve Curve::circular(double radius, double angular_speed, double phase, double horizon, const Point& center) {
  if (!std::isfinite(radius) || !std::isfinite(angular_speed) || !std::isfinite(phase) || !center.allFinite())
    throw InvalidCurveError("circular curve parameters must be finite");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidCurveError("curve horizon must be positive");
  return Curve(Circular{center, radius, angular_speed, phase}, horizon);
}

Curve Curve::polyline(std::vector<double> times, std::vector<Point> points) {
  if (times.size() < 2 || times.size() != points.size())
    throw InvalidCurveError("polyline needs at least two (time, point) samples");
  if (times.front() != 0.0) throw InvalidCurveError("polyline must start at t = 0");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !points[i].allFinite()) throw InvalidCurveError("polyline sample is not finite");
    if (i > 0 && !(times[i] > times[i - 1])) throw InvalidCurveError("polyline times must increase strictly");
  }
  const double horizon = times.back();
  return Curve(Polyline{std::move(times), std::move(points)}, horizon);
}

Curve Curve::constant(const Point& x0, double horizon) { return polyline({0.0, horizon}, {x0, x0}); }

Curve Curve::segment(const Point& from, const Point& to, double horizon) {
  return polyline({0.0, horizon}, {from, to});
}

Point Curve::operator()(double t) const {
  if (const auto* c = std::get_if<Circular>(&rep_)) {
    const double angle = c->angular_speed * t + c->phase;
    return c->center + c->radius * Point(std::cos(angle), std::sin(angle));
  }
  const auto& p = std::get<Polyline>(rep_);
  if (t <= p.times.front()) return p.points.front();
  if (t >= p.times.back()) return p.points.back();
  const auto it = std::upper_bound(p.times.begin(), p.times.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - p.times.begin()) - 1;
  const double w = (t - p.times[i]) / (p.times[i + 1] - p.times[i]);
  return (1.0 - w) * p.points[i] + w * p.points[i + 1];
}

Point Curve::derivative(double t) const {
  if (const auto* c = std::get_if<Circular>(&rep_)) {
    const double angle = c->angular_speed * t + c->phase;
    return c->radius * c->angular_speed * Point(-std::sin(angle), std::cos(angle));
  }
  const auto& p = std::get<Polyline>(rep_);
  auto it = std::upper_bound(p.times.begin(), p.times.end(), t);
  if (it == p.times.end()) --it;
  if (it == p.times.begin()) ++it;
  const std::size_t i = static_cast<std::size_t>(it - p.times.begin()) - 1;
  return (p.points[i + 1] - p.points[i]) / (p.times[i + 1] - p.times[i]);
}

Curve concatenate(const Curve& first, const Curve& second) {
  const auto* a = std::get_if<Curve::Polyline>(&first.representation());
  const auto* b = std::get_if<Curve::Polyline>(&second.representation());
  if (!a || !b) throw InvalidCurveError("only polylines can be concatenated");
  auto times = a->times;
  auto points = a->points;
  const double shift = first.horizon();
  for (std::size_t i = 1; i < b->times.size(); ++i) {
    times.push_back(shift + b->times[i]);
    points.push_back(b->points[i]);
  }
  return Curve::polyline(std::move(times), std::move(points));
}

// ------------------------------------------------------------- operations

Point boundary_point(const Domain& domain, double s) {
  check_parameter(domain, s);
  if (const auto* d = std::get_if<Disk>(&domain.shape())) {
    const double angle = s / d->radius;
    return d->center + d->radius * Point(std::cos(angle), std::sin(angle));
  }
  const Edge& e = edge_at(domain.edges(), s);
  const double w = (s - e.s_begin) / e.param_length;
  return e.start + w * (e.end - e.start);
}

Point outward_normal(const Domain& domain, double s) {
  check_parameter(domain, s);
  if (const auto* d = std::get_if<Disk>(&domain.shape())) {
    const double angle = s / d->radius;
    return Point(std::cos(angle), std::sin(angle));
  }
  const Edge& e = edge_at(domain.edges(), s);
  if (domain.has_corners()) {
    const double tol = 1e-12 * domain.perimeter();
    if (std::abs(s - e.s_begin) <= tol || std::abs(s - (e.s_begin + e.param_length)) <= tol) {
      std::ostringstream msg;
      msg << "outward normal undefined at polygon vertex s = " << s;
      throw UndefinedNormalError(msg.str());
    }
  }
  return e.normal;
}

BoundaryRegion illuminated_region(const Domain& domain, const Point& x0) {
  const double perimeter = domain.perimeter();
  if (const auto* d = std::get_if<Disk>(&domain.shape())) {
    // (x - x0).nu = r - p.u(theta) with p = x0 - center: positive iff
    // |theta - arg p| > acos(r/|p|).
    const Point p = x0 - d->center;
    const double rho = p.norm();
    if (rho <= d->radius * (1.0 + 1e-12)) return BoundaryRegion::full(perimeter);
    const double half_gap = std::acos(d->radius / rho);
    const double start = std::atan2(p.y(), p.x()) + half_gap;
    return BoundaryRegion::from_arcs(perimeter, {{d->radius * start, d->radius * (kTwoPi - 2.0 * half_gap)}});
  }
  std::vector<std::pair<double, double>> arcs;
  for (const auto& e : domain.edges()) {
    // Constant along the edge: the edge's line offset minus x0 . nu.
    const double value = (e.start - x0).dot(e.normal);
    const double tol = 1e-13 * (1.0 + e.start.norm() + x0.norm());
    if (value > tol) arcs.emplace_back(e.s_begin, e.param_length);
  }
  if (!domain.has_corners()) return BoundaryRegion::from_arcs(perimeter, arcs);
  std::vector<double> vertices;
  for (const auto& e : domain.edges()) vertices.push_back(e.s_begin);
  return BoundaryRegion::from_arcs(perimeter, arcs).excluding(std::move(vertices));
}

double radius_max(const Domain& domain, const Point& x0) {
  if (const auto* d = std::get_if<Disk>(&domain.shape())) return (x0 - d->center).norm() + d->radius;
  double best = 0.0;
  for (const auto& v : domain.vertices()) best = std::max(best, (v - x0).norm());
  return best;
}

double alternating_threshold(const Domain& domain, std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("alternating schedule needs at least one point");
  double total = radius_max(domain, points.front()) + radius_max(domain, points.back());
  for (std::size_t i = 0; i + 1 < points.size(); ++i) total += pair_distance(points[i + 1], points[i]);
  return total;
}

double curve_length(const Curve& curve) {
  double length = 0.0;
  if (const auto* c = std::get_if<Curve::Circular>(&curve.representation())) {
    length = std::abs(c->radius * c->angular_speed) * curve.horizon();
  } else {
    const auto& p = std::get<Curve::Polyline>(curve.representation());
    for (std::size_t i = 0; i + 1 < p.points.size(); ++i) length += (p.points[i + 1] - p.points[i]).norm();
  }
  if (!std::isfinite(length)) throw InvalidCurveError("curve derivative is not finite");
  return length;
}

double endpoint_radius(const Domain& domain, const Curve& curve, double t) { return radius_max(domain, curve(t)); }

double variable_threshold(const Domain& domain, const Curve& curve) {
  return endpoint_radius(domain, curve, 0.0) + curve_length(curve) + endpoint_radius(domain, curve, curve.horizon());
}

}  // namespace wavectl
