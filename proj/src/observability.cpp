#include "wavectl/observability.hpp"

#include "wavectl/csv.hpp"
#include "wavectl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

namespace wavectl {

namespace {

double centred_term(const Domain& domain, const FieldSample& f, const VolumeQuadrature& q, const Point& xi) {
  const double half = 0.5 * (domain.dimension() - 1);
  const Eigen::ArrayXd mx = q.points.row(0).transpose().array() - xi.x();
  const Eigen::ArrayXd my = q.points.row(1).transpose().array() - xi.y();
  const Eigen::ArrayXd integrand =
      f.ut.array() * (f.ux.array() * mx + f.uy.array() * my + half * f.u.array());
  return (q.weights.array() * integrand).sum();
}

int intervals_for(const TraceResolution& resolution, double duration) {
  return resolution.time_intervals > 0 ? resolution.time_intervals : default_time_intervals(duration);
}

double weighted_square_sum(const Eigen::MatrixXd& weights, const Eigen::MatrixXd& values) {
  return (weights.array() * values.array().square()).sum();
}

}  // namespace

double multiplier_bracket(const ModalState& state, const Point& xi) {
  return centred_term(state.basis->domain(), sample_field(state), state.basis->quadrature(), xi);
}

IdentityReport multiplier_residual(const ModalState& state, const Point& xi, double s, double tau,
                                   const TraceResolution& resolution) {
  if (!(s >= 0.0 && tau > s)) throw std::invalid_argument("multiplier identity needs 0 <= s < tau");
  const Domain& domain = state.basis->domain();
  const ModalState start = evolve(state, s);
  const ModalState stop = evolve(state, tau);
  const double e0 = energy(state);

  IdentityReport report;
  report.boundary_samples = resolution.boundary_samples;
  report.time_intervals = intervals_for(resolution, tau - s);
  const BoundarySamples boundary = boundary_samples(domain, report.boundary_samples);
  const TimeGrid time = time_grid(tau - s, report.time_intervals);
  const BoundaryTrace trace = normal_trace(start, boundary, time);

  Eigen::VectorXd spatial(boundary.size());
  for (Eigen::Index m = 0; m < boundary.size(); ++m)
    spatial(m) = boundary.weights()(m) * (boundary.points.col(m) - xi).dot(boundary.normals.col(m));
  report.lhs = 0.5 * spatial.transpose() * trace.values.cwiseAbs2() * time.weights();
  report.rhs = multiplier_bracket(stop, xi) - multiplier_bracket(start, xi) + (tau - s) * e0;
  report.residual = std::abs(report.lhs - report.rhs);
  const double scale = std::max({std::abs(report.lhs), std::abs(report.rhs), e0});
  report.relative_residual = scale > 0.0 ? report.residual / scale : 0.0;
  return report;
}

LemmaBounds lemma_bound_check(const ModalState& state, const Point& xi, const Point& eta, double s) {
  const Domain& domain = state.basis->domain();
  const ModalState at = evolve(state, s);
  const double e0 = energy(state);
  const FieldSample f = sample_field(at);
  const auto& q = at.basis->quadrature();
  const Point shift = xi - eta;

  LemmaBounds out;
  out.centred.value = std::abs(centred_term(domain, f, q, xi));
  out.centred.bound = radius_max(domain, xi) * e0;
  out.shift.value = std::abs((q.weights.array() * f.ut.array() *
                              (f.ux.array() * shift.x() + f.uy.array() * shift.y())).sum());
  out.shift.bound = pair_distance(xi, eta) * e0;
  return out;
}

Eigen::MatrixXd sigma_weights(const BoundarySamples& boundary, const TimeGrid& time, const SigmaSet& sigma) {
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(boundary.size(), time.size());
  Eigen::VectorXd a(boundary.size());
  Eigen::VectorXd b(time.size());
  for (const auto& cell : sigma.cells()) {
    for (Eigen::Index m = 0; m < boundary.size(); ++m)
      a(m) = cell.region.overlap(boundary.cell_begin(m), boundary.cell_end(m));
    for (Eigen::Index n = 0; n < time.size(); ++n)
      b(n) = std::max(0.0, std::min(cell.t_end, time.cell_end(n)) - std::max(cell.t_begin, time.cell_begin(n)));
    weights.noalias() += a * b.transpose();
  }
  return weights;
}

double observation_integral(const BoundaryTrace& trace, const SigmaSet& sigma) {
  if (trace.time.horizon() < sigma.horizon() - 1e-12 * std::max(1.0, sigma.horizon())) {
    std::ostringstream msg;
    msg << "trace horizon " << trace.time.horizon() << " is shorter than the sigma horizon " << sigma.horizon();
    throw IncompatibleError(msg.str());
  }
  return weighted_square_sum(sigma_weights(trace.boundary, trace.time, sigma), trace.values);
}

double observation_ratio(const ModalState& state, const SigmaSet& sigma, const TraceResolution& resolution) {
  const BoundaryTrace trace = normal_trace(state, resolution.boundary_samples,
                                           intervals_for(resolution, sigma.horizon()), sigma.horizon());
  return observation_integral(trace, sigma) / energy(state);
}

ObservabilityReport observability_ratio(const Schedule& schedule, const Domain& domain, const SampleSpec& spec,
                                        std::shared_ptr<const EigenBasis> basis) {
  if (spec.count < 1) throw std::invalid_argument("observability needs at least one sample");
  if (!basis) basis = build_basis(domain, spec.modes);
  const SigmaSet sigma = build_sigma(domain, schedule);
  const double horizon = sigma.horizon();
  const int active = std::min(spec.modes, basis->size());

  ObservabilityReport report;
  report.sample_count = spec.count;
  report.horizon = horizon;
  report.threshold = schedule_threshold(domain, schedule);
  report.margin = horizon - report.threshold;

  double widest = 0.0;
  if (const auto* a = std::get_if<AlternatingSchedule>(&schedule)) {
    for (const auto& x : a->points) widest = std::max(widest, radius_max(domain, x));
  } else {
    const auto& curve = std::get<VariableSchedule>(schedule).curve;
    widest = std::max(endpoint_radius(domain, curve, 0.0), endpoint_radius(domain, curve, curve.horizon()));
  }
  report.multiplier_factor = 2.0 * report.margin / widest;

  struct Level {
    Eigen::MatrixXd normal;
    Eigen::MatrixXd weights;
    TimeGrid time;
  };
  auto level = [&](int refine) {
    const int intervals = refine * intervals_for(spec.resolution, horizon);
    const BoundarySamples boundary = boundary_samples(domain, refine * spec.resolution.boundary_samples);
    Level l{basis->normal_derivatives(boundary), {}, time_grid(horizon, intervals)};
    l.weights = sigma_weights(boundary, l.time, sigma);
    return l;
  };
  const Level coarse = level(1);
  const Level fine = level(2);

  report.ratios.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) {
    const ModalState state = random_unit_energy_state(basis, active, spec.seed, static_cast<std::uint64_t>(i));
    const double e0 = energy(state);
    const double r1 = weighted_square_sum(coarse.weights, coarse.normal * displacement_history(state, coarse.time)) / e0;
    const double r2 = weighted_square_sum(fine.weights, fine.normal * displacement_history(state, fine.time)) / e0;
    report.ratios.push_back(r1);
    report.quadrature_error = std::max(report.quadrature_error, std::abs(r1 - r2));
  }
  report.min_ratio = *std::min_element(report.ratios.begin(), report.ratios.end());
  report.mean_ratio = std::accumulate(report.ratios.begin(), report.ratios.end(), 0.0) / spec.count;
  return report;
}

void write_ratios_csv(std::ostream& out, const ObservabilityReport& report) {
  CsvWriter csv(out, {"sample", "ratio"});
  for (std::size_t i = 0; i < report.ratios.size(); ++i) csv.row(i, report.ratios[i]);
}

void write_observability_summary_csv(std::ostream& out, const ObservabilityReport& report) {
  CsvWriter csv(out, {"sample_count", "min_ratio", "mean_ratio", "threshold", "horizon", "margin",
                      "quadrature_error", "multiplier_factor"});
  csv.row(report.sample_count, report.min_ratio, report.mean_ratio, report.threshold, report.horizon, report.margin,
          report.quadrature_error, report.multiplier_factor);
}

void write_identity_csv(std::ostream& out, const std::vector<std::pair<int, IdentityReport>>& rows) {
  CsvWriter csv(out, {"resolution", "lhs", "rhs", "rel_residual"});
  for (const auto& [resolution, r] : rows) csv.row(resolution, r.lhs, r.rhs, r.relative_residual);
}

}  // namespace wavectl
