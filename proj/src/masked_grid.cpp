#include "wavectl/masked_grid.hpp"

#include "wavectl/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <random>
#include <sstream>

namespace wavectl {

MaskedGrid::MaskedGrid(const Domain& domain, double spacing) : h_(spacing) {
  if (!domain.has_corners()) throw std::invalid_argument("masked grid needs a rectangle or convex polygon");
  if (!(spacing > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  const auto [lo, hi] = domain.bounding_box();
  i0_ = static_cast<int>(std::floor(lo.x() / h_)) - 1;
  j0_ = static_cast<int>(std::floor(lo.y() / h_)) - 1;
  nx_ = static_cast<int>(std::ceil(hi.x() / h_)) + 2 - i0_;
  ny_ = static_cast<int>(std::ceil(hi.y() / h_)) + 2 - j0_;
  index_.assign(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_), -1);

  const double tol = 1e-12 * h_;
  std::vector<Point> inside;
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      const Point p((i + i0_) * h_, (j + j0_) * h_);
      bool interior = true;
      for (const auto& e : domain.edges()) {
        if ((e.start - p).dot(e.normal) <= tol) {
          interior = false;
          break;
        }
      }
      if (interior) {
        index_[static_cast<std::size_t>(j) * nx_ + i] = static_cast<Eigen::Index>(inside.size());
        inside.push_back(p);
      }
    }
  }
  nodes_.resize(2, static_cast<Eigen::Index>(inside.size()));
  for (std::size_t k = 0; k < inside.size(); ++k) nodes_.col(static_cast<Eigen::Index>(k)) = inside[k];

  const double inv_h2 = 1.0 / (h_ * h_);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(inside.size() * 5);
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      const Eigen::Index row = index_[static_cast<std::size_t>(j) * nx_ + i];
      if (row < 0) continue;
      triplets.emplace_back(row, row, 4.0 * inv_h2);
      const int di[4] = {1, -1, 0, 0};
      const int dj[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const Eigen::Index col = node_index(i + i0_ + di[k], j + j0_ + dj[k]);
        if (col >= 0) triplets.emplace_back(row, col, -inv_h2);
      }
    }
  }
  laplacian_.resize(size(), size());
  laplacian_.setFromTriplets(triplets.begin(), triplets.end());
}

Eigen::Index MaskedGrid::node_index(int i, int j) const {
  const int li = i - i0_;
  const int lj = j - j0_;
  if (li < 0 || lj < 0 || li >= nx_ || lj >= ny_) return -1;
  return index_[static_cast<std::size_t>(lj) * nx_ + li];
}

double MaskedGrid::lattice_value(const Eigen::VectorXd& values, int i, int j) const {
  const Eigen::Index k = node_index(i, j);
  return k < 0 ? 0.0 : values(k);
}

double MaskedGrid::interpolate(const Eigen::VectorXd& values, const Point& x) const {
  const double gx = x.x() / h_;
  const double gy = x.y() / h_;
  const int i = static_cast<int>(std::floor(gx));
  const int j = static_cast<int>(std::floor(gy));
  const double fx = gx - i;
  const double fy = gy - j;
  return (1 - fx) * (1 - fy) * lattice_value(values, i, j) + fx * (1 - fy) * lattice_value(values, i + 1, j) +
         (1 - fx) * fy * lattice_value(values, i, j + 1) + fx * fy * lattice_value(values, i + 1, j + 1);
}

Eigen::Matrix2Xd MaskedGrid::gradient(const Eigen::VectorXd& values) const {
  Eigen::Matrix2Xd grad(2, size());
  for (Eigen::Index k = 0; k < size(); ++k) {
    const int i = static_cast<int>(std::lround(nodes_(0, k) / h_));
    const int j = static_cast<int>(std::lround(nodes_(1, k) / h_));
    grad(0, k) = (lattice_value(values, i + 1, j) - lattice_value(values, i - 1, j)) / (2 * h_);
    grad(1, k) = (lattice_value(values, i, j + 1) - lattice_value(values, i, j - 1)) / (2 * h_);
  }
  return grad;
}

namespace {

void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index at = 0;
    vectors.col(c).cwiseAbs().maxCoeff(&at);
    if (vectors(at, c) < 0.0) vectors.col(c) *= -1.0;
  }
}

}  // namespace

GridEigenpairs lowest_eigenpairs(const MaskedGrid& grid, int count) {
  const Eigen::Index n = grid.size();
  if (count < 1) throw std::invalid_argument("need at least one eigenpair");
  if (count > n) {
    std::ostringstream msg;
    msg << "requested " << count << " modes but the grid has only " << n << " interior nodes";
    throw CapacityError(msg.str());
  }
  const auto& A = grid.laplacian();
  GridEigenpairs out;

  if (n <= 1500) {
    const Eigen::MatrixXd dense_a = A;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense(dense_a);
    out.eigenvalues = dense.eigenvalues().head(count);
    out.vectors = dense.eigenvectors().leftCols(count);
    fix_signs(out.vectors);
    return out;
  }

  // Shift-invert subspace iteration with Rayleigh-Ritz. The block carries
  // extra columns so clustered or repeated eigenvalues converge together.
  const Eigen::Index block = std::min<Eigen::Index>(n, count + 16 + count / 2);
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> factor(A);
  if (factor.info() != Eigen::Success) throw std::runtime_error("grid Laplacian factorization failed");

  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd X(n, block);
  for (Eigen::Index j = 0; j < block; ++j)
    for (Eigen::Index i = 0; i < n; ++i) X(i, j) = normal(rng);
  X = Eigen::HouseholderQR<Eigen::MatrixXd>(X).householderQ() * Eigen::MatrixXd::Identity(n, block);

  Eigen::VectorXd ritz;
  constexpr double tol = 1e-10;
  for (int iter = 0; iter < 1000; ++iter) {
    const Eigen::MatrixXd Y = factor.solve(X);
    const Eigen::MatrixXd AY = A * Y;
    const Eigen::MatrixXd G = Y.transpose() * Y;
    const Eigen::MatrixXd H = Y.transpose() * AY;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> rr(H, G);
    ritz = rr.eigenvalues();
    X = Y * rr.eigenvectors();
    const Eigen::MatrixXd AX = AY * rr.eigenvectors();

    double worst = 0.0;
    for (Eigen::Index k = 0; k < count; ++k)
      worst = std::max(worst, (AX.col(k) - ritz(k) * X.col(k)).norm() / ritz(k));
    if (worst < tol) break;
  }
  out.eigenvalues = ritz.head(count);
  out.vectors = X.leftCols(count);
  fix_signs(out.vectors);
  return out;
}

void check_cfl(const MaskedGrid& grid, double dt) {
  const double limit = 0.95 * grid.spacing() / std::sqrt(2.0);
  if (!(dt > 0.0) || dt > limit) {
    std::ostringstream msg;
    msg << "time step " << dt << " violates the CFL bound " << limit;
    throw StabilityError(msg.str());
  }
}

LeapfrogState leapfrog_start(const MaskedGrid& grid, const Eigen::VectorXd& u0, const Eigen::VectorXd& u1, double dt) {
  check_cfl(grid, dt);
  LeapfrogState state;
  state.dt = dt;
  state.previous = u0;
  state.current = u0 + dt * u1 - 0.5 * dt * dt * (grid.laplacian() * u0);
  state.step = 1;
  return state;
}

LeapfrogState fd_evolve(const MaskedGrid& grid, LeapfrogState state, long steps) {
  check_cfl(grid, state.dt);
  const double dt2 = state.dt * state.dt;
  Eigen::VectorXd next(grid.size());
  for (long n = 0; n < steps; ++n) {
    next = 2.0 * state.current - state.previous - dt2 * (grid.laplacian() * state.current);
    state.previous.swap(state.current);
    state.current.swap(next);
  }
  state.step += steps;
  return state;
}

double leapfrog_energy(const MaskedGrid& grid, const LeapfrogState& state) {
  const double cell = grid.spacing() * grid.spacing();
  const Eigen::VectorXd velocity = (state.current - state.previous) / state.dt;
  return 0.5 * cell * (velocity.squaredNorm() + state.current.dot(grid.laplacian() * state.previous));
}

}  // namespace wavectl
