#pragma once

#include "wavectl/schedule.hpp"
#include "wavectl/solver.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace wavectl {

/// Boundary and time resolution of a space-time quadrature.
struct TraceResolution {
  int boundary_samples = 512;
  int time_intervals = 0;  ///< 0: ceil(64 * duration)
};

/// Both sides of the multiplier identity with m(x) = x - xi:
///   1/2 int_s^tau int_boundary (x - xi).nu |d_nu u|^2
///     = [ int u_t (grad u . (x - xi) + (d-1)/2 u) ]_s^tau + (tau - s) E0.
struct IdentityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double relative_residual = 0.0;
  int boundary_samples = 0;
  int time_intervals = 0;
};

/// Times s < tau are offsets from `state`.
IdentityReport multiplier_residual(const ModalState& state, const Point& xi, double s, double tau,
                                   const TraceResolution& resolution = {});

/// int u_t (grad u . (x - xi) + (d-1)/2 u) at the state's own time.
double multiplier_bracket(const ModalState& state, const Point& xi);

struct BoundRecord {
  double value = 0.0;
  double bound = 0.0;
};

/// Part i: |int u_t (grad u.(x - xi) + (d-1)/2 u)| against R_xi E0.
/// Part ii: |int u_t grad u.(xi - eta)| against |xi - eta| E0.
struct LemmaBounds {
  BoundRecord centred;
  BoundRecord shift;
};

/// Evaluated on evolve(state, s).
LemmaBounds lemma_bound_check(const ModalState& state, const Point& xi, const Point& eta, double s);

/// Quadrature weights of the trace grid restricted to sigma: entry (m, n) is
/// |boundary cell m x time cell n intersected with sigma|.
Eigen::MatrixXd sigma_weights(const BoundarySamples& boundary, const TimeGrid& time, const SigmaSet& sigma);

/// int int_Sigma |d_nu u|^2. Throws IncompatibleError when the trace is
/// shorter than the sigma horizon.
double observation_integral(const BoundaryTrace& trace, const SigmaSet& sigma);

struct SampleSpec {
  int count = 100;
  std::uint64_t seed = 20240611;
  int modes = 32;
  TraceResolution resolution;
};

struct ObservabilityReport {
  int sample_count = 0;
  std::vector<double> ratios;
  double min_ratio = 0.0;
  double mean_ratio = 0.0;
  double threshold = 0.0;
  double horizon = 0.0;
  double margin = 0.0;
  /// max over samples of |ratio - ratio on doubled boundary and time grids|.
  double quadrature_error = 0.0;
  /// 2 (T - threshold) / max R_i: the explicit factor of the multiplier proof.
  double multiplier_factor = 0.0;
};

/// Ratios int int_Sigma |d_nu u|^2 / E0 over seeded unit-energy random states.
ObservabilityReport observability_ratio(const Schedule& schedule, const Domain& domain, const SampleSpec& spec,
                                        std::shared_ptr<const EigenBasis> basis = nullptr);

/// Ratio of a single given state (same quadrature as observability_ratio).
double observation_ratio(const ModalState& state, const SigmaSet& sigma, const TraceResolution& resolution = {});

void write_ratios_csv(std::ostream& out, const ObservabilityReport& report);
void write_observability_summary_csv(std::ostream& out, const ObservabilityReport& report);
void write_identity_csv(std::ostream& out, const std::vector<std::pair<int, IdentityReport>>& rows);

}  // namespace wavectl
