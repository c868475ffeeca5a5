#include "wavectl/hum.hpp"

#include "wavectl/csv.hpp"
#include "wavectl/errors.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace wavectl {

namespace {

void check_modes(const EigenBasis& basis, const Eigen::VectorXd& v, const char* name) {
  if (v.size() != basis.size()) {
    std::ostringstream msg;
    msg << name << " has " << v.size() << " coefficients but the basis has " << basis.size() << " modes";
    throw IncompatibleError(msg.str());
  }
}

double h_minus_one_norm(const Eigen::VectorXd& mu, const Eigen::VectorXd& v) {
  return std::sqrt(v.cwiseAbs2().cwiseQuotient(mu).sum());
}

}  // namespace

FinalState transposition_solve(const EigenBasis& basis, const ControlField& control, const Eigen::VectorXd& w0,
                               const Eigen::VectorXd& w1, double horizon) {
  check_modes(basis, w0, "w0");
  check_modes(basis, w1, "w1");
  if (std::abs(control.time.horizon() - horizon) > 1e-12 * std::max(1.0, horizon)) {
    std::ostringstream msg;
    msg << "control grid ends at " << control.time.horizon() << " but the horizon is " << horizon;
    throw IncompatibleError(msg.str());
  }
  if (control.values.rows() != control.boundary.size() || control.values.cols() != control.time.size() ||
      control.weights.rows() != control.values.rows() || control.weights.cols() != control.values.cols())
    throw IncompatibleError("control values and weights do not match the trace grid");

  FinalState out{w0, w1};
  const Eigen::VectorXd& omega = basis.frequencies();
  propagate(omega, out.displacement, out.velocity, horizon);

  // Forcing -int v d_nu f_k, already carrying the space-time weights.
  const Eigen::MatrixXd forcing =
      -basis.normal_derivatives(control.boundary).transpose() * control.weights.cwiseProduct(control.values);
  for (Eigen::Index k = 0; k < omega.size(); ++k) {
    double a = 0.0;
    double b = 0.0;
    for (Eigen::Index n = 0; n < control.time.size(); ++n) {
      const double lag = omega(k) * (horizon - control.time.t(n));
      a += std::sin(lag) / omega(k) * forcing(k, n);
      b += std::cos(lag) * forcing(k, n);
    }
    out.displacement(k) += a;
    out.velocity(k) += b;
  }
  return out;
}

HumOperator::HumOperator(std::shared_ptr<const EigenBasis> basis, const SigmaSet& sigma,
                         const TraceResolution& resolution)
    : basis_(std::move(basis)) {
  const double horizon = sigma.horizon();
  const int intervals =
      resolution.time_intervals > 0 ? resolution.time_intervals : default_time_intervals(horizon);
  boundary_ = boundary_samples(basis_->domain(), resolution.boundary_samples);
  time_ = time_grid(horizon, intervals);
  weights_ = sigma_weights(boundary_, time_, sigma);
  normal_ = basis_->normal_derivatives(boundary_);
  const Eigen::VectorXd& omega = basis_->frequencies();
  cosine_.resize(omega.size(), time_.size());
  sine_.resize(omega.size(), time_.size());
  for (Eigen::Index n = 0; n < time_.size(); ++n)
    for (Eigen::Index k = 0; k < omega.size(); ++k) {
      cosine_(k, n) = std::cos(omega(k) * time_.t(n));
      sine_(k, n) = std::sin(omega(k) * time_.t(n)) / omega(k);
    }
}

Eigen::MatrixXd HumOperator::adjoint_trace(const Eigen::VectorXd& e) const {
  const Eigen::Index K = modes();
  if (e.size() != 2 * K) throw IncompatibleError("adjoint data must stack 2K coefficients");
  const Eigen::MatrixXd history = e.head(K).asDiagonal() * cosine_ + e.tail(K).asDiagonal() * sine_;
  return normal_ * history;
}

Eigen::VectorXd HumOperator::readout(const Eigen::MatrixXd& field) const {
  const Eigen::Index K = modes();
  const Eigen::MatrixXd projected = normal_.transpose() * weights_.cwiseProduct(field);
  Eigen::VectorXd out(2 * K);
  out.head(K) = cosine_.cwiseProduct(projected).rowwise().sum();
  out.tail(K) = sine_.cwiseProduct(projected).rowwise().sum();
  return out;
}

Eigen::VectorXd HumOperator::apply(const Eigen::VectorXd& e) const { return readout(adjoint_trace(e)); }

Eigen::VectorXd HumOperator::rhs_for_state(const Eigen::VectorXd& w0, const Eigen::VectorXd& w1,
                                           const Eigen::VectorXd& z0, const Eigen::VectorXd& z1) const {
  const EigenBasis& basis = *basis_;
  for (const auto* v : {&w0, &w1, &z0, &z1}) check_modes(basis, *v, "modal data");
  Eigen::VectorXd d0 = w0;
  Eigen::VectorXd d1 = w1;
  propagate(basis.frequencies(), d0, d1, horizon());
  d0 = z0 - d0;
  d1 = z1 - d1;
  propagate(basis.frequencies(), d0, d1, -horizon());
  const Eigen::Index K = modes();
  Eigen::VectorXd b(2 * K);
  b.head(K) = -d1;
  b.tail(K) = d0;
  return b;
}

ControlField HumOperator::control_field(const Eigen::MatrixXd& values) const {
  ControlField control{boundary_, time_, values, weights_};
  control.values = (weights_.array() > 0.0).select(values, 0.0);
  return control;
}

Eigen::VectorXd gramian_apply(const HumOperator& op, const Eigen::VectorXd& e) { return op.apply(e); }

double dual_pairing(const Eigen::VectorXd& dual, const Eigen::VectorXd& primal) { return dual.dot(primal); }

HUMResult solve_control(const ControlProblem& problem) {
  if (!problem.basis) throw std::invalid_argument("control problem needs a basis");
  const EigenBasis& basis = *problem.basis;
  if (!(basis.domain() == problem.domain)) throw IncompatibleError("basis and control problem use different domains");
  const SigmaSet sigma = build_sigma(problem.domain, problem.schedule);
  const double horizon = sigma.horizon();
  const Eigen::Index K = basis.size();

  HUMResult result;
  result.threshold = schedule_threshold(problem.domain, problem.schedule);
  if (!(horizon > result.threshold)) {
    std::ostringstream msg;
    msg << "horizon " << horizon << " does not exceed the controllability threshold " << result.threshold;
    result.warnings.push_back(msg.str());
  }

  const HumOperator op(problem.basis, sigma, problem.resolution);
  const Eigen::VectorXd b = op.rhs_for_state(problem.w0, problem.w1, problem.z0, problem.z1);

  // Riesz map of H^1_0 x L2 and its inverse, both diagonal.
  Eigen::VectorXd riesz(2 * K);
  riesz << basis.eigenvalues(), Eigen::VectorXd::Ones(K);
  const Eigen::VectorXd inverse = riesz.cwiseInverse();
  auto dual_norm = [&](const Eigen::VectorXd& v) { return std::sqrt(v.cwiseAbs2().dot(inverse)); };

  Eigen::VectorXd x = Eigen::VectorXd::Zero(2 * K);
  const double b_norm = dual_norm(b);
  if (b_norm > 0.0) {
    // Conjugate residual on R^-1 Lambda, self-adjoint in the R inner product.
    Eigen::VectorXd r = inverse.cwiseProduct(b);
    Eigen::VectorXd lr = op.apply(r);
    double rho = r.dot(lr);
    Eigen::VectorXd p = r;
    Eigen::VectorXd lp = lr;
    result.residual_history.push_back(1.0);
    for (int it = 1; it <= problem.max_iterations; ++it) {
      const double denom = lp.cwiseAbs2().dot(inverse);
      if (!(rho > 0.0) || !(denom > 0.0))
        throw IllConditionedGramianError("Gramian is singular along the current residual", result.residual_history);
      const double alpha = rho / denom;
      x += alpha * p;
      r -= alpha * inverse.cwiseProduct(lp);
      const double res = std::sqrt(r.cwiseAbs2().dot(riesz)) / b_norm;
      result.residual_history.push_back(res);
      result.iterations = it;
      if (res < problem.tolerance) break;
      if (it >= 20 && res > 0.99 * result.residual_history[static_cast<std::size_t>(it - 20)])
        throw IllConditionedGramianError("Krylov residual stagnated (less than 1% reduction over 20 iterations)",
                                         result.residual_history);
      lr = op.apply(r);
      const double rho_next = r.dot(lr);
      const double beta = rho_next / rho;
      rho = rho_next;
      p = r + beta * p;
      lp = lr + beta * lp;
    }
    if (result.residual_history.back() >= problem.tolerance) {
      std::ostringstream msg;
      msg << "iteration cap " << problem.max_iterations << " reached at relative residual "
          << result.residual_history.back();
      result.warnings.push_back(msg.str());
    }
  }

  result.adjoint_displacement = x.head(K);
  result.adjoint_velocity = x.tail(K);
  result.control = op.control_field(op.adjoint_trace(x));
  result.control_energy = control_energy(result.control);

  const FinalState final_state = transposition_solve(basis, result.control, problem.w0, problem.w1, horizon);
  const Eigen::VectorXd& mu = basis.eigenvalues();
  result.residual_displacement = (final_state.displacement - problem.z0).norm();
  result.residual_velocity = h_minus_one_norm(mu, final_state.velocity - problem.z1);
  Eigen::VectorXd d0 = problem.w0;
  Eigen::VectorXd d1 = problem.w1;
  propagate(basis.frequencies(), d0, d1, horizon);
  const double defect = std::hypot((problem.z0 - d0).norm(), h_minus_one_norm(mu, problem.z1 - d1));
  const double miss = std::hypot(result.residual_displacement, result.residual_velocity);
  result.relative_residual = defect > 0.0 ? miss / defect : miss;
  return result;
}

double control_energy(const ControlField& control) {
  return (control.weights.array() * control.values.array().square()).sum();
}

double control_energy(const HUMResult& result) { return control_energy(result.control); }

void write_control_csv(std::ostream& out, const ControlField& control) {
  CsvWriter csv(out, {"s", "t", "v"});
  for (Eigen::Index n = 0; n < control.time.size(); ++n)
    for (Eigen::Index m = 0; m < control.boundary.size(); ++m)
      if (control.weights(m, n) > 0.0) csv.row(control.boundary.s(m), control.time.t(n), control.values(m, n));
}

void write_residuals_csv(std::ostream& out, const HUMResult& result) {
  CsvWriter csv(out, {"iter", "residual"});
  for (std::size_t i = 0; i < result.residual_history.size(); ++i) csv.row(i, result.residual_history[i]);
}

void write_hum_summary(std::ostream& out, const HUMResult& result) {
  out << "iterations = " << result.iterations << '\n'
      << "relative_residual = " << format_number(result.relative_residual) << '\n'
      << "residual_displacement_l2 = " << format_number(result.residual_displacement) << '\n'
      << "residual_velocity_h-1 = " << format_number(result.residual_velocity) << '\n'
      << "control_energy = " << format_number(result.control_energy) << '\n'
      << "threshold = " << format_number(result.threshold) << '\n'
      << "final_krylov_residual = "
      << format_number(result.residual_history.empty() ? 0.0 : result.residual_history.back()) << '\n';
  for (const auto& w : result.warnings) out << "warning = " << w << '\n';
}

}  // namespace wavectl
