#pragma once

#include "wavectl/observability.hpp"
#include "wavectl/schedule.hpp"
#include "wavectl/solver.hpp"

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace wavectl {

/// Drive (w0, w1) in L2 x H^-1 to (z0, z1) at the schedule horizon with a
/// boundary control supported on the schedule's sigma set.
struct ControlProblem {
  Domain domain;
  Schedule schedule;
  std::shared_ptr<const EigenBasis> basis;
  Eigen::VectorXd w0;
  Eigen::VectorXd w1;
  Eigen::VectorXd z0;
  Eigen::VectorXd z1;
  double tolerance = 1e-6;
  int max_iterations = 200;
  TraceResolution resolution;
};

/// Boundary control sampled on a trace grid; `weights` is the sigma-restricted
/// space-time quadrature (zero off sigma).
struct ControlField {
  BoundarySamples boundary;
  TimeGrid time;
  Eigen::MatrixXd values;
  Eigen::MatrixXd weights;
};

/// Modal data at the final time.
struct FinalState {
  Eigen::VectorXd displacement;
  Eigen::VectorXd velocity;
};

struct HUMResult {
  ControlField control;
  Eigen::VectorXd adjoint_displacement;
  Eigen::VectorXd adjoint_velocity;
  double residual_displacement = 0.0;  ///< |w(T) - z0| in L2
  double residual_velocity = 0.0;      ///< |w_t(T) - z1| in H^-1
  double relative_residual = 0.0;      ///< against the L2 x H^-1 size of the defect
  double control_energy = 0.0;
  int iterations = 0;
  std::vector<double> residual_history;  ///< relative dual-norm residuals, starting at 1
  double threshold = 0.0;
  std::vector<std::string> warnings;
};

/// Mode-wise transposition solution: w_k'' + mu_k w_k = -int_boundary v d_nu f_k,
/// integrated by Duhamel with the control's quadrature weights.
FinalState transposition_solve(const EigenBasis& basis, const ControlField& control, const Eigen::VectorXd& w0,
                               const Eigen::VectorXd& w1, double horizon);

/// The control Gramian on adjoint data e = (e0, e1) stacked as a 2K vector.
class HumOperator {
 public:
  HumOperator(std::shared_ptr<const EigenBasis> basis, const SigmaSet& sigma, const TraceResolution& resolution);

  int modes() const noexcept { return basis_->size(); }
  double horizon() const noexcept { return time_.horizon(); }
  const std::shared_ptr<const EigenBasis>& basis() const noexcept { return basis_; }
  const BoundarySamples& boundary() const noexcept { return boundary_; }
  const TimeGrid& time() const noexcept { return time_; }
  const Eigen::MatrixXd& weights() const noexcept { return weights_; }

  /// d_nu u on the trace grid for the free solution with data e at t = 0.
  Eigen::MatrixXd adjoint_trace(const Eigen::VectorXd& e) const;
  /// Dual readout of a boundary field: (int cos(w t) int_Sigma v d_nu f, int sin(w t)/w int_Sigma v d_nu f).
  Eigen::VectorXd readout(const Eigen::MatrixXd& field) const;
  /// Lambda e = readout(adjoint_trace(e)); <Lambda e, e> = int_Sigma |d_nu u_e|^2.
  Eigen::VectorXd apply(const Eigen::VectorXd& e) const;
  /// Right-hand side (-beta1, beta0), where (beta0, beta1) is the defect
  /// (z0, z1) - free(w0, w1)(T) pulled back to t = 0.
  Eigen::VectorXd rhs_for_state(const Eigen::VectorXd& w0, const Eigen::VectorXd& w1, const Eigen::VectorXd& z0,
                                const Eigen::VectorXd& z1) const;
  /// Control field restricted to sigma (exact zeros off sigma).
  ControlField control_field(const Eigen::MatrixXd& values) const;

 private:
  std::shared_ptr<const EigenBasis> basis_;
  BoundarySamples boundary_;
  TimeGrid time_;
  Eigen::MatrixXd weights_;
  Eigen::MatrixXd normal_;  ///< n_s x K
  Eigen::MatrixXd cosine_;  ///< K x n_t, cos(w t)
  Eigen::MatrixXd sine_;    ///< K x n_t, sin(w t) / w
};

Eigen::VectorXd gramian_apply(const HumOperator& op, const Eigen::VectorXd& e);

/// Euclidean pairing of dual data with primal adjoint data.
double dual_pairing(const Eigen::VectorXd& dual, const Eigen::VectorXd& primal);

/// Conjugate-residual iteration on Lambda e = b in the H^1_0 x L2 inner
/// product. Warns (does not refuse) below the schedule threshold. Throws
/// IllConditionedGramianError on stagnation.
HUMResult solve_control(const ControlProblem& problem);

/// int int_Sigma |v|^2.
double control_energy(const HUMResult& result);
double control_energy(const ControlField& control);

void write_control_csv(std::ostream& out, const ControlField& control);
void write_residuals_csv(std::ostream& out, const HUMResult& result);
void write_hum_summary(std::ostream& out, const HUMResult& result);

}  // namespace wavectl
