#pragma once

#include "wavectl/geometry.hpp"

#include <array>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

namespace wavectl {

/// One space-time block region x [t_begin, t_end).
struct SigmaCell {
  BoundaryRegion region;
  double t_begin = 0.0;
  double t_end = 0.0;
};

/// A subset of (boundary) x (0, T) stored as boundary regions over disjoint
/// time intervals. Canonical: sorted in time, empty cells dropped, adjacent
/// cells with equal regions merged.
class SigmaSet {
 public:
  SigmaSet(Domain domain, double horizon, std::vector<SigmaCell> cells);

  const Domain& domain() const noexcept { return domain_; }
  double horizon() const noexcept { return horizon_; }
  const std::vector<SigmaCell>& cells() const noexcept { return cells_; }

  /// Product measure (arc length x time).
  double measure() const;
  /// Region active at time t, or nullptr.
  const BoundaryRegion* region_at(double t) const;

  /// CSV rows (s_start, s_end, t_start, t_end), one per arc.
  std::vector<std::array<double, 4>> rows() const;

 private:
  Domain domain_;
  double horizon_;
  std::vector<SigmaCell> cells_;
};

/// Points x_0..x_N active on (t_{j-1}, t_j), with partition
/// 0 = t_{-1} < t_0 < ... < t_N = T (so partition.size() == points.size() + 1).
struct AlternatingSchedule {
  std::vector<Point> points;
  std::vector<double> partition;

  double horizon() const { return partition.back(); }
  /// Throws std::invalid_argument when the invariants fail.
  void validate() const;
};

/// Observation point moving along a curve; Sigma is approximated with
/// `resolution` uniform time slabs.
struct VariableSchedule {
  Curve curve;
  int resolution = 256;
};

using Schedule = std::variant<AlternatingSchedule, VariableSchedule>;

double schedule_horizon(const Schedule& schedule);
/// Alternating or variable threshold depending on the schedule kind.
double schedule_threshold(const Domain& domain, const Schedule& schedule);

std::vector<double> uniform_partition(double horizon, int intervals);

SigmaSet build_alternating_sigma(const Domain& domain, const AlternatingSchedule& schedule);

/// Left-endpoint sampling x_j = phi(t_{j-1}) on the given partition.
AlternatingSchedule discretize_curve(const Curve& curve, std::span<const double> partition);

/// Midpoint-slab approximation of the moving-support set.
SigmaSet build_variable_sigma(const Domain& domain, const Curve& curve, int resolution);

SigmaSet build_sigma(const Domain& domain, const Schedule& schedule);

/// measure(A symmetric-difference B), exact interval arithmetic slab by slab.
double symmetric_difference_measure(const SigmaSet& a, const SigmaSet& b);

/// measure(Sigma_phi sym-diff Sigma_phi^{P_k}) for uniform P_k, against a
/// reference Sigma_phi with `reference_resolution` slabs.
std::vector<double> check_convergence_sequence(const Domain& domain, const Curve& curve, std::span<const int> ks,
                                               int reference_resolution = 2048);

/// Entry j is true iff t_j - t_{j-1} > 2 radius_max(x_j).
std::vector<bool> classical_reducibility(const AlternatingSchedule& schedule, const Domain& domain);

void write_sigma_csv(std::ostream& out, const SigmaSet& sigma);

}  // namespace wavectl
