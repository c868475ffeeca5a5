#pragma once

#include "wavectl/geometry.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>

namespace wavectl {

/// Nodes and weights of a volume rule on the domain.
struct VolumeQuadrature {
  Eigen::Matrix2Xd points;
  Eigen::VectorXd weights;
};

/// Boundary nodes with their dual cells [cell_begin, cell_end) in arc length.
/// The cell lengths are the trapezoid weights; Sigma restriction uses the
/// overlap of each cell with the region.
struct BoundarySamples {
  Eigen::VectorXd s;
  Eigen::Matrix2Xd points;
  Eigen::Matrix2Xd normals;
  Eigen::VectorXd cell_begin;
  Eigen::VectorXd cell_end;

  Eigen::Index size() const noexcept { return s.size(); }
  Eigen::VectorXd weights() const { return cell_end - cell_begin; }
};

/// Periodic offset trapezoid on a disk; per-edge trapezoid on polygons with
/// panels split at the vertices (a vertex node appears once per adjacent edge
/// with that edge's normal). On an interval: the two end points.
BoundarySamples boundary_samples(const Domain& domain, int count);

/// Uniform time nodes t_n = n T / intervals with trapezoid dual cells.
struct TimeGrid {
  Eigen::VectorXd t;
  Eigen::VectorXd cell_begin;
  Eigen::VectorXd cell_end;

  double horizon() const { return t(t.size() - 1); }
  Eigen::Index size() const noexcept { return t.size(); }
  Eigen::VectorXd weights() const { return cell_end - cell_begin; }
};

TimeGrid time_grid(double horizon, int intervals);
/// ceil(64 T) intervals.
int default_time_intervals(double horizon);

struct BasisOptions {
  int modes = 0;  ///< 0 selects 64 (disk, rectangle, interval) or 40 (polygon).
  double grid_spacing = 1.0 / 64.0;
  int gauss_points = 64;
  int radial_points = 64;
  int angular_points = 128;
  std::filesystem::path cache_dir;  ///< empty disables the polygon basis cache.
};

class ModeFamily;

/// The K lowest Dirichlet eigenpairs, L2-orthonormal, with eigenfunctions
/// and gradients tabulated at the volume quadrature nodes.
class EigenBasis {
 public:
  EigenBasis(Domain domain, std::shared_ptr<const ModeFamily> family);

  const Domain& domain() const noexcept { return domain_; }
  int size() const noexcept { return static_cast<int>(eigenvalues_.size()); }
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const Eigen::VectorXd& frequencies() const noexcept { return frequencies_; }
  std::string label(int k) const;

  const VolumeQuadrature& quadrature() const noexcept { return quadrature_; }
  /// nq x K tables of f_k, d_x f_k, d_y f_k at the quadrature nodes.
  const Eigen::MatrixXd& values() const noexcept { return values_; }
  const Eigen::MatrixXd& dx() const noexcept { return dx_; }
  const Eigen::MatrixXd& dy() const noexcept { return dy_; }

  /// n x K values at arbitrary points.
  Eigen::MatrixXd evaluate(const Eigen::Matrix2Xd& points) const;
  /// n x K normal derivatives d_nu f_k at the boundary samples.
  Eigen::MatrixXd normal_derivatives(const BoundarySamples& samples) const;

  /// Gram matrix under the volume quadrature.
  Eigen::MatrixXd gram() const;

 private:
  Domain domain_;
  std::shared_ptr<const ModeFamily> family_;
  Eigen::VectorXd eigenvalues_;
  Eigen::VectorXd frequencies_;
  VolumeQuadrature quadrature_;
  Eigen::MatrixXd values_;
  Eigen::MatrixXd dx_;
  Eigen::MatrixXd dy_;
};

/// Analytic eigenpairs for disk, rectangle and interval; masked-grid
/// discrete eigenpairs for convex polygons. Throws CapacityError when the
/// grid cannot supply `modes` pairs.
std::shared_ptr<const EigenBasis> build_basis(const Domain& domain, const BasisOptions& options = {});
inline std::shared_ptr<const EigenBasis> build_basis(const Domain& domain, int modes) {
  BasisOptions options;
  options.modes = modes;
  return build_basis(domain, options);
}

/// Cache file for a polygon basis keyed by (domain hash, K, h).
std::filesystem::path basis_cache_path(const std::filesystem::path& dir, const Domain& domain, int modes,
                                       double spacing);

/// The wave field in modal form: u = sum_k (u0_k cos + u1_k sin/omega) f_k.
struct ModalState {
  std::shared_ptr<const EigenBasis> basis;
  Eigen::VectorXd displacement;
  Eigen::VectorXd velocity;
  double time = 0.0;
};

ModalState zero_state(std::shared_ptr<const EigenBasis> basis);
ModalState mode_state(std::shared_ptr<const EigenBasis> basis, int k, double displacement = 1.0,
                      double velocity = 0.0);

using ScalarField = std::function<double(const Point&)>;

/// L2 projection onto the basis through the volume quadrature.
ModalState project(std::shared_ptr<const EigenBasis> basis, const ScalarField& u0, const ScalarField& u1);

/// Exact free propagation by a signed time step.
void propagate(const Eigen::VectorXd& omega, Eigen::Ref<Eigen::VectorXd> displacement,
               Eigen::Ref<Eigen::VectorXd> velocity, double t);

/// Propagates by t >= 0.
ModalState evolve(const ModalState& state, double t);

/// 1/2 sum (mu_k u0_k^2 + u1_k^2).
double energy(const ModalState& state);

/// I.i.d. standard normal in the energy coordinates (sqrt(mu) u0, u1) of the
/// first `active` modes, scaled to unit energy. Seeded by (seed, index).
ModalState random_unit_energy_state(std::shared_ptr<const EigenBasis> basis, int active, std::uint64_t seed,
                                    std::uint64_t index);

/// u, u_t and grad u at the volume quadrature nodes.
struct FieldSample {
  Eigen::VectorXd u;
  Eigen::VectorXd ut;
  Eigen::VectorXd ux;
  Eigen::VectorXd uy;
};

FieldSample sample_field(const ModalState& state);

/// d_nu u on boundary nodes x time nodes, times measured from state.time.
struct BoundaryTrace {
  BoundarySamples boundary;
  TimeGrid time;
  Eigen::MatrixXd values;  ///< boundary.size() x time.size()
};

/// The K x n_t matrix of displacement coefficients at the time nodes.
Eigen::MatrixXd displacement_history(const ModalState& state, const TimeGrid& time);

BoundaryTrace normal_trace(const ModalState& state, const BoundarySamples& boundary, const TimeGrid& time);
BoundaryTrace normal_trace(const ModalState& state, int boundary_count, int time_intervals, double horizon);

void write_trace_csv(std::ostream& out, const BoundaryTrace& trace);

}  // namespace wavectl
