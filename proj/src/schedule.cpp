#include "wavectl/schedule.hpp"

#include "wavectl/csv.hpp"
#include "wavectl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace wavectl {

namespace {

constexpr double kTimeTol = 1e-12;

}  // namespace

SigmaSet::SigmaSet(Domain domain, double horizon, std::vector<SigmaCell> cells)
    : domain_(std::move(domain)), horizon_(horizon) {
  if (!(horizon > 0.0)) throw std::invalid_argument("sigma horizon must be positive");
  const double tol = kTimeTol * std::max(1.0, horizon);
  for (auto& c : cells) {
    c.t_begin = std::max(0.0, c.t_begin);
    c.t_end = std::min(horizon, c.t_end);
  }
  std::erase_if(cells, [&](const SigmaCell& c) { return c.region.is_empty() || c.t_end - c.t_begin <= tol; });
  std::sort(cells.begin(), cells.end(), [](const SigmaCell& a, const SigmaCell& b) { return a.t_begin < b.t_begin; });
  for (auto& c : cells) {
    if (!cells_.empty() && c.t_begin < cells_.back().t_end - tol)
      throw std::invalid_argument("sigma cells must have disjoint time intervals");
    if (!cells_.empty() && std::abs(c.t_begin - cells_.back().t_end) <= tol &&
        c.region.approx_equal(cells_.back().region)) {
      cells_.back().t_end = c.t_end;
    } else {
      cells_.push_back(std::move(c));
    }
  }
}

double SigmaSet::measure() const {
  double total = 0.0;
  for (const auto& c : cells_) total += c.region.measure() * (c.t_end - c.t_begin);
  return total;
}

const BoundaryRegion* SigmaSet::region_at(double t) const {
  auto it = std::upper_bound(cells_.begin(), cells_.end(), t,
                             [](double value, const SigmaCell& c) { return value < c.t_begin; });
  if (it == cells_.begin()) return nullptr;
  --it;
  return (t < it->t_end) ? &it->region : nullptr;
}

std::vector<std::array<double, 4>> SigmaSet::rows() const {
  std::vector<std::array<double, 4>> out;
  for (const auto& c : cells_)
    for (const auto& arc : c.region.arcs()) out.push_back({arc.begin, arc.end, c.t_begin, c.t_end});
  return out;
}

void AlternatingSchedule::validate() const {
  if (points.empty()) throw std::invalid_argument("alternating schedule needs at least one point");
  if (partition.size() != points.size() + 1)
    throw std::invalid_argument("partition must have one more knot than there are points");
  if (partition.front() != 0.0) throw std::invalid_argument("partition must start at 0");
  for (std::size_t i = 1; i < partition.size(); ++i)
    if (!(partition[i] > partition[i - 1])) throw std::invalid_argument("partition must increase strictly");
}

double schedule_horizon(const Schedule& schedule) {
  if (const auto* a = std::get_if<AlternatingSchedule>(&schedule)) return a->horizon();
  return std::get<VariableSchedule>(schedule).curve.horizon();
}

double schedule_threshold(const Domain& domain, const Schedule& schedule) {
  if (const auto* a = std::get_if<AlternatingSchedule>(&schedule)) return alternating_threshold(domain, a->points);
  return variable_threshold(domain, std::get<VariableSchedule>(schedule).curve);
}

std::vector<double> uniform_partition(double horizon, int intervals) {
  if (intervals < 1) throw std::invalid_argument("partition needs at least one interval");
  std::vector<double> knots(static_cast<std::size_t>(intervals) + 1);
  for (int j = 0; j <= intervals; ++j) knots[static_cast<std::size_t>(j)] = horizon * j / intervals;
  knots.back() = horizon;
  return knots;
}

SigmaSet build_alternating_sigma(const Domain& domain, const AlternatingSchedule& schedule) {
  schedule.validate();
  std::vector<SigmaCell> cells;
  cells.reserve(schedule.points.size());
  for (std::size_t j = 0; j < schedule.points.size(); ++j)
    cells.push_back({illuminated_region(domain, schedule.points[j]), schedule.partition[j], schedule.partition[j + 1]});
  return SigmaSet(domain, schedule.horizon(), std::move(cells));
}

AlternatingSchedule discretize_curve(const Curve& curve, std::span<const double> partition) {
  AlternatingSchedule schedule;
  schedule.partition.assign(partition.begin(), partition.end());
  for (std::size_t j = 0; j + 1 < partition.size(); ++j) schedule.points.push_back(curve(partition[j]));
  schedule.validate();
  return schedule;
}

SigmaSet build_variable_sigma(const Domain& domain, const Curve& curve, int resolution) {
  if (resolution < 1) throw std::invalid_argument("variable sigma resolution must be >= 1");
  const auto knots = uniform_partition(curve.horizon(), resolution);
  std::vector<SigmaCell> cells;
  cells.reserve(static_cast<std::size_t>(resolution));
  for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
    const double mid = 0.5 * (knots[j] + knots[j + 1]);
    cells.push_back({illuminated_region(domain, curve(mid)), knots[j], knots[j + 1]});
  }
  return SigmaSet(domain, curve.horizon(), std::move(cells));
}

SigmaSet build_sigma(const Domain& domain, const Schedule& schedule) {
  if (const auto* a = std::get_if<AlternatingSchedule>(&schedule)) return build_alternating_sigma(domain, *a);
  const auto& v = std::get<VariableSchedule>(schedule);
  return build_variable_sigma(domain, v.curve, v.resolution);
}

double symmetric_difference_measure(const SigmaSet& a, const SigmaSet& b) {
  if (!(a.domain() == b.domain())) throw IncompatibleError("sigma sets live on different domains");
  if (std::abs(a.horizon() - b.horizon()) > kTimeTol * std::max(1.0, a.horizon())) {
    std::ostringstream msg;
    msg << "sigma horizons differ: " << a.horizon() << " vs " << b.horizon();
    throw IncompatibleError(msg.str());
  }
  std::vector<double> knots{0.0, a.horizon()};
  for (const auto* s : {&a, &b})
    for (const auto& c : s->cells()) {
      knots.push_back(c.t_begin);
      knots.push_back(c.t_end);
    }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double width = knots[i + 1] - knots[i];
    const double mid = 0.5 * (knots[i] + knots[i + 1]);
    const BoundaryRegion* ra = a.region_at(mid);
    const BoundaryRegion* rb = b.region_at(mid);
    double slab = 0.0;
    if (ra && rb) {
      slab = ra->symmetric_difference_measure(*rb);
    } else if (ra) {
      slab = ra->measure();
    } else if (rb) {
      slab = rb->measure();
    }
    total += slab * width;
  }
  return total;
}

std::vector<double> check_convergence_sequence(const Domain& domain, const Curve& curve, std::span<const int> ks,
                                               int reference_resolution) {
  const SigmaSet reference = build_variable_sigma(domain, curve, reference_resolution);
  std::vector<double> measures;
  measures.reserve(ks.size());
  for (int k : ks) {
    const auto partition = uniform_partition(curve.horizon(), k);
    measures.push_back(symmetric_difference_measure(reference, build_alternating_sigma(domain, discretize_curve(curve, partition))));
  }
  return measures;
}

std::vector<bool> classical_reducibility(const AlternatingSchedule& schedule, const Domain& domain) {
  schedule.validate();
  std::vector<bool> flags;
  flags.reserve(schedule.points.size());
  for (std::size_t j = 0; j < schedule.points.size(); ++j) {
    const double length = schedule.partition[j + 1] - schedule.partition[j];
    flags.push_back(length > 2.0 * radius_max(domain, schedule.points[j]));
  }
  return flags;
}

void write_sigma_csv(std::ostream& out, const SigmaSet& sigma) {
  CsvWriter csv(out, {"s_start", "s_end", "t_start", "t_end"});
  for (const auto& row : sigma.rows()) csv.row(row[0], row[1], row[2], row[3]);
}

}  // namespace wavectl
