#include "wavectl/solver.hpp"

#include "wavectl/csv.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace wavectl {

ModalState zero_state(std::shared_ptr<const EigenBasis> basis) {
  const int K = basis->size();
  return {std::move(basis), Eigen::VectorXd::Zero(K), Eigen::VectorXd::Zero(K), 0.0};
}

ModalState mode_state(std::shared_ptr<const EigenBasis> basis, int k, double displacement, double velocity) {
  if (k < 0 || k >= basis->size()) throw std::out_of_range("mode index outside the basis");
  ModalState state = zero_state(std::move(basis));
  state.displacement(k) = displacement;
  state.velocity(k) = velocity;
  return state;
}

ModalState project(std::shared_ptr<const EigenBasis> basis, const ScalarField& u0, const ScalarField& u1) {
  const auto& q = basis->quadrature();
  Eigen::VectorXd w0(q.points.cols()), w1(q.points.cols());
  for (Eigen::Index p = 0; p < q.points.cols(); ++p) {
    const Point x = q.points.col(p);
    w0(p) = q.weights(p) * u0(x);
    w1(p) = q.weights(p) * u1(x);
  }
  ModalState state;
  state.displacement = basis->values().transpose() * w0;
  state.velocity = basis->values().transpose() * w1;
  state.basis = std::move(basis);
  return state;
}

void propagate(const Eigen::VectorXd& omega, Eigen::Ref<Eigen::VectorXd> displacement,
               Eigen::Ref<Eigen::VectorXd> velocity, double t) {
  for (Eigen::Index k = 0; k < omega.size(); ++k) {
    const double c = std::cos(omega(k) * t);
    const double s = std::sin(omega(k) * t);
    const double a = displacement(k);
    const double b = velocity(k);
    displacement(k) = c * a + s / omega(k) * b;
    velocity(k) = -omega(k) * s * a + c * b;
  }
}

ModalState evolve(const ModalState& state, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("evolve needs t >= 0");
  ModalState out = state;
  propagate(state.basis->frequencies(), out.displacement, out.velocity, t);
  out.time += t;
  return out;
}

double energy(const ModalState& state) {
  return 0.5 * (state.basis->eigenvalues().dot(state.displacement.cwiseAbs2()) + state.velocity.squaredNorm());
}

ModalState random_unit_energy_state(std::shared_ptr<const EigenBasis> basis, int active, std::uint64_t seed,
                                    std::uint64_t index) {
  const int K = basis->size();
  if (active < 1 || active > K) throw std::invalid_argument("active mode count outside [1, K]");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  ModalState state = zero_state(std::move(basis));
  const auto& omega = state.basis->frequencies();
  for (int k = 0; k < active; ++k) {
    state.displacement(k) = normal(rng) / omega(k);
    state.velocity(k) = normal(rng);
  }
  const double e = energy(state);
  state.displacement /= std::sqrt(e);
  state.velocity /= std::sqrt(e);
  return state;
}

FieldSample sample_field(const ModalState& state) {
  const auto& b = *state.basis;
  return {b.values() * state.displacement, b.values() * state.velocity, b.dx() * state.displacement,
          b.dy() * state.displacement};
}

Eigen::MatrixXd displacement_history(const ModalState& state, const TimeGrid& time) {
  const auto& omega = state.basis->frequencies();
  const Eigen::Index K = omega.size();
  Eigen::MatrixXd history(K, time.size());
  for (Eigen::Index n = 0; n < time.size(); ++n) {
    const double t = time.t(n);
    for (Eigen::Index k = 0; k < K; ++k)
      history(k, n) = std::cos(omega(k) * t) * state.displacement(k) +
                      std::sin(omega(k) * t) / omega(k) * state.velocity(k);
  }
  return history;
}

BoundaryTrace normal_trace(const ModalState& state, const BoundarySamples& boundary, const TimeGrid& time) {
  BoundaryTrace trace{boundary, time, {}};
  trace.values = state.basis->normal_derivatives(boundary) * displacement_history(state, time);
  return trace;
}

BoundaryTrace normal_trace(const ModalState& state, int boundary_count, int time_intervals, double horizon) {
  return normal_trace(state, boundary_samples(state.basis->domain(), boundary_count),
                      time_grid(horizon, time_intervals));
}

void write_trace_csv(std::ostream& out, const BoundaryTrace& trace) {
  CsvWriter csv(out, {"s", "t", "value"});
  for (Eigen::Index n = 0; n < trace.time.size(); ++n)
    for (Eigen::Index m = 0; m < trace.boundary.size(); ++m)
      csv.row(trace.boundary.s(m), trace.time.t(n), trace.values(m, n));
}

}  // namespace wavectl
