#pragma once

#include "wavectl/geometry.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <vector>

namespace wavectl {

/// Uniform grid (i h, j h) restricted to the strict interior of a convex
/// polygon, with homogeneous Dirichlet values outside. Carries the 5-point
/// negative Laplacian A = -Delta_h (symmetric positive definite).
class MaskedGrid {
 public:
  MaskedGrid(const Domain& domain, double spacing);

  double spacing() const noexcept { return h_; }
  Eigen::Index size() const noexcept { return nodes_.cols(); }
  const Eigen::Matrix2Xd& nodes() const noexcept { return nodes_; }
  const Eigen::SparseMatrix<double>& laplacian() const noexcept { return laplacian_; }

  /// Node index at lattice position (i, j), or -1 outside the mask.
  Eigen::Index node_index(int i, int j) const;

  /// Bilinear interpolation of nodal values (zero outside the mask).
  double interpolate(const Eigen::VectorXd& values, const Point& x) const;
  /// Central-difference gradient at every node, 2 x size().
  Eigen::Matrix2Xd gradient(const Eigen::VectorXd& values) const;

 private:
  double lattice_value(const Eigen::VectorXd& values, int i, int j) const;

  double h_;
  int i0_ = 0;
  int j0_ = 0;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<Eigen::Index> index_;
  Eigen::Matrix2Xd nodes_;
  Eigen::SparseMatrix<double> laplacian_;
};

/// Lowest eigenpairs of the grid Laplacian; vectors are Euclidean-orthonormal
/// columns, eigenvalues ascending.
struct GridEigenpairs {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd vectors;
};

GridEigenpairs lowest_eigenpairs(const MaskedGrid& grid, int count);

/// Two consecutive leapfrog levels u^{n-1}, u^n.
struct LeapfrogState {
  Eigen::VectorXd previous;
  Eigen::VectorXd current;
  double dt = 0.0;
  long step = 0;
};

/// dt <= 0.95 h / sqrt(2); throws StabilityError otherwise.
void check_cfl(const MaskedGrid& grid, double dt);

/// First level from a Taylor start: u^1 = u0 + dt u1 - dt^2/2 A u0.
LeapfrogState leapfrog_start(const MaskedGrid& grid, const Eigen::VectorXd& u0, const Eigen::VectorXd& u1, double dt);

LeapfrogState fd_evolve(const MaskedGrid& grid, LeapfrogState state, long steps);

/// Conserved leapfrog energy at the half step n - 1/2:
/// 1/2 |(u^n - u^{n-1})/dt|^2 + 1/2 <u^n, A u^{n-1}>, both with the h^2 cell weight.
double leapfrog_energy(const MaskedGrid& grid, const LeapfrogState& state);

}  // namespace wavectl
