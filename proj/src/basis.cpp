#include "wavectl/bessel.hpp"
#include "wavectl/csv.hpp"
#include "wavectl/errors.hpp"
#include "wavectl/masked_grid.hpp"
#include "wavectl/quadrature.hpp"
#include "wavectl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>
#include <tuple>

namespace wavectl {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

// Internal interface for one family of eigenfunctions.
class ModeFamily {
 public:
  virtual ~ModeFamily() = default;

  virtual Eigen::VectorXd eigenvalues() const = 0;
  virtual std::string label(int k) const = 0;
  virtual VolumeQuadrature quadrature() const = 0;

  /// f, d_x f, d_y f at arbitrary points (n x K each). Gradients may be skipped.
  virtual void tabulate(const Eigen::Matrix2Xd& points, Eigen::MatrixXd& f, Eigen::MatrixXd* fx,
                        Eigen::MatrixXd* fy) const = 0;

  virtual void tabulate_quadrature(Eigen::MatrixXd& f, Eigen::MatrixXd& fx, Eigen::MatrixXd& fy) const {
    tabulate(quadrature().points, f, &fx, &fy);
  }

  virtual Eigen::MatrixXd normal_derivatives(const BoundarySamples& samples) const {
    Eigen::MatrixXd f, fx, fy;
    tabulate(samples.points, f, &fx, &fy);
    return samples.normals.row(0).transpose().asDiagonal() * fx + samples.normals.row(1).transpose().asDiagonal() * fy;
  }
};

namespace {

// ------------------------------------------------------------- rectangle

class RectangleModes final : public ModeFamily {
 public:
  RectangleModes(const Rectangle& rect, int count, int gauss) : a_(rect.width), b_(rect.height) {
    std::vector<std::tuple<double, int, int>> candidates;
    for (int m = 1; m <= count; ++m)
      for (int n = 1; n <= count; ++n)
        candidates.emplace_back(kPi * kPi * (m * m / (a_ * a_) + n * n / (b_ * b_)), m, n);
    std::sort(candidates.begin(), candidates.end());
    candidates.resize(static_cast<std::size_t>(count));
    int top = 1;
    for (const auto& [mu, m, n] : candidates) {
      modes_.push_back({mu, m, n});
      top = std::max({top, m, n});
    }
    gauss_ = std::max(gauss, 2 * top + 8);
  }

  Eigen::VectorXd eigenvalues() const override {
    Eigen::VectorXd mu(static_cast<Eigen::Index>(modes_.size()));
    for (std::size_t k = 0; k < modes_.size(); ++k) mu(static_cast<Eigen::Index>(k)) = modes_[k].mu;
    return mu;
  }

  std::string label(int k) const override {
    std::ostringstream out;
    out << "sin(" << modes_[static_cast<std::size_t>(k)].m << "," << modes_[static_cast<std::size_t>(k)].n << ")";
    return out.str();
  }

  VolumeQuadrature quadrature() const override {
    const auto gx = gauss_legendre<double>(gauss_, 0.0, a_);
    const auto gy = gauss_legendre<double>(gauss_, 0.0, b_);
    VolumeQuadrature q;
    q.points.resize(2, gauss_ * gauss_);
    q.weights.resize(gauss_ * gauss_);
    for (int i = 0; i < gauss_; ++i)
      for (int j = 0; j < gauss_; ++j) {
        const int idx = i * gauss_ + j;
        q.points.col(idx) << gx.nodes(i), gy.nodes(j);
        q.weights(idx) = gx.weights(i) * gy.weights(j);
      }
    return q;
  }

  void tabulate(const Eigen::Matrix2Xd& points, Eigen::MatrixXd& f, Eigen::MatrixXd* fx,
                Eigen::MatrixXd* fy) const override {
    const Eigen::Index n = points.cols();
    const Eigen::Index K = static_cast<Eigen::Index>(modes_.size());
    const double c = 2.0 / std::sqrt(a_ * b_);
    f.resize(n, K);
    if (fx) fx->resize(n, K);
    if (fy) fy->resize(n, K);
    for (Eigen::Index k = 0; k < K; ++k) {
      const double kx = modes_[static_cast<std::size_t>(k)].m * kPi / a_;
      const double ky = modes_[static_cast<std::size_t>(k)].n * kPi / b_;
      for (Eigen::Index p = 0; p < n; ++p) {
        const double sx = std::sin(kx * points(0, p));
        const double sy = std::sin(ky * points(1, p));
        f(p, k) = c * sx * sy;
        if (fx) (*fx)(p, k) = c * kx * std::cos(kx * points(0, p)) * sy;
        if (fy) (*fy)(p, k) = c * ky * sx * std::cos(ky * points(1, p));
      }
    }
  }

 private:
  struct Mode {
    double mu;
    int m;
    int n;
  };
  double a_;
  double b_;
  int gauss_ = 0;
  std::vector<Mode> modes_;
};

// ------------------------------------------------------------------ disk

class DiskModes final : public ModeFamily {
 public:
  DiskModes(const Disk& disk, int count, int radial, int angular)
      : center_(disk.center), radius_(disk.radius), radial_(radial), angular_(angular) {
    double upper = 8.0 + 4.0 * std::sqrt(static_cast<double>(count));
    for (;;) {
      std::vector<Mode> found;
      for (int m = 0;; ++m) {
        const auto zeros = bessel_zeros(m, upper);
        if (zeros.empty()) break;
        for (std::size_t n = 0; n < zeros.size(); ++n) {
          found.push_back({zeros[n], m, static_cast<int>(n) + 1, false});
          if (m > 0) found.push_back({zeros[n], m, static_cast<int>(n) + 1, true});
        }
      }
      if (static_cast<int>(found.size()) >= count) {
        std::sort(found.begin(), found.end(), [](const Mode& x, const Mode& y) {
          return std::tie(x.zero, x.m, x.sine) < std::tie(y.zero, y.m, y.sine);
        });
        found.resize(static_cast<std::size_t>(count));
        modes_ = std::move(found);
        break;
      }
      upper *= 1.5;
    }
    for (auto& mode : modes_) {
      const double jp = std::abs(bessel_j(mode.m + 1, mode.zero));
      mode.norm = (mode.m == 0) ? 1.0 / (std::sqrt(kPi) * radius_ * jp) : std::sqrt(2.0 / kPi) / (radius_ * jp);
    }
  }

  Eigen::VectorXd eigenvalues() const override {
    Eigen::VectorXd mu(static_cast<Eigen::Index>(modes_.size()));
    for (std::size_t k = 0; k < modes_.size(); ++k) {
      const double w = modes_[k].zero / radius_;
      mu(static_cast<Eigen::Index>(k)) = w * w;
    }
    return mu;
  }

  std::string label(int k) const override {
    const Mode& mode = modes_[static_cast<std::size_t>(k)];
    std::ostringstream out;
    out << "J(" << mode.m << "," << mode.n << ")" << (mode.m == 0 ? "" : (mode.sine ? "sin" : "cos"));
    return out.str();
  }

  VolumeQuadrature quadrature() const override {
    const auto gr = gauss_legendre<double>(radial_, 0.0, radius_);
    VolumeQuadrature q;
    q.points.resize(2, radial_ * angular_);
    q.weights.resize(radial_ * angular_);
    const double dtheta = 2.0 * kPi / angular_;
    for (int i = 0; i < radial_; ++i)
      for (int j = 0; j < angular_; ++j) {
        const int idx = i * angular_ + j;
        const double theta = j * dtheta;
        q.points.col(idx) = center_ + gr.nodes(i) * Point(std::cos(theta), std::sin(theta));
        q.weights(idx) = gr.weights(i) * gr.nodes(i) * dtheta;
      }
    return q;
  }

  void tabulate(const Eigen::Matrix2Xd& points, Eigen::MatrixXd& f, Eigen::MatrixXd* fx,
                Eigen::MatrixXd* fy) const override {
    const Eigen::Index n = points.cols();
    const Eigen::Index K = static_cast<Eigen::Index>(modes_.size());
    f.resize(n, K);
    if (fx) fx->resize(n, K);
    if (fy) fy->resize(n, K);
    for (Eigen::Index p = 0; p < n; ++p) {
      const Point rel = points.col(p) - center_;
      const double r = rel.norm();
      const double theta = (r > 0.0) ? std::atan2(rel.y(), rel.x()) : 0.0;
      for (Eigen::Index k = 0; k < K; ++k) {
        const Mode& mode = modes_[static_cast<std::size_t>(k)];
        double v, gx, gy;
        evaluate(mode, r, theta, v, gx, gy);
        f(p, k) = v;
        if (fx) (*fx)(p, k) = gx;
        if (fy) (*fy)(p, k) = gy;
      }
    }
  }

  // Product structure: radial factor times angular factor.
  void tabulate_quadrature(Eigen::MatrixXd& f, Eigen::MatrixXd& fx, Eigen::MatrixXd& fy) const override {
    const auto gr = gauss_legendre<double>(radial_, 0.0, radius_);
    const Eigen::Index K = static_cast<Eigen::Index>(modes_.size());
    const Eigen::Index nq = static_cast<Eigen::Index>(radial_) * angular_;
    f.resize(nq, K);
    fx.resize(nq, K);
    fy.resize(nq, K);
    const double dtheta = 2.0 * kPi / angular_;
    for (Eigen::Index k = 0; k < K; ++k) {
      const Mode& mode = modes_[static_cast<std::size_t>(k)];
      const double kr = mode.zero / radius_;
      for (int i = 0; i < radial_; ++i) {
        const double r = gr.nodes(i);
        const double jm = bessel_j(mode.m, kr * r);
        const double djm = kr * bessel_j_derivative(mode.m, kr * r);
        const double jm_over_r = jm / r;
        for (int j = 0; j < angular_; ++j) {
          const double theta = j * dtheta;
          const Eigen::Index idx = static_cast<Eigen::Index>(i) * angular_ + j;
          double ang, dang;
          angular(mode, theta, ang, dang);
          const double fr = mode.norm * djm * ang;
          const double ft = mode.norm * jm_over_r * dang;
          f(idx, k) = mode.norm * jm * ang;
          fx(idx, k) = fr * std::cos(theta) - ft * std::sin(theta);
          fy(idx, k) = fr * std::sin(theta) + ft * std::cos(theta);
        }
      }
    }
  }

 private:
  struct Mode {
    double zero;
    int m;
    int n;
    bool sine;
    double norm = 1.0;
  };

  static void angular(const Mode& mode, double theta, double& value, double& derivative) {
    if (mode.m == 0) {
      value = 1.0;
      derivative = 0.0;
    } else if (mode.sine) {
      value = std::sin(mode.m * theta);
      derivative = mode.m * std::cos(mode.m * theta);
    } else {
      value = std::cos(mode.m * theta);
      derivative = -mode.m * std::sin(mode.m * theta);
    }
  }

  void evaluate(const Mode& mode, double r, double theta, double& value, double& gx, double& gy) const {
    const double kr = mode.zero / radius_;
    const double z = kr * r;
    const double jm = bessel_j(mode.m, z);
    const double djm = kr * bessel_j_derivative(mode.m, z);
    // J_m(k r) / r, with its limit at the centre.
    const double jm_over_r = (z > 1e-12) ? jm / r : (mode.m == 1 ? 0.5 * kr : 0.0);
    double ang, dang;
    angular(mode, theta, ang, dang);
    const double fr = mode.norm * djm * ang;
    const double ft = mode.norm * jm_over_r * dang;
    value = mode.norm * jm * ang;
    gx = fr * std::cos(theta) - ft * std::sin(theta);
    gy = fr * std::sin(theta) + ft * std::cos(theta);
  }

  Point center_;
  double radius_;
  int radial_;
  int angular_;
  std::vector<Mode> modes_;
};

// -------------------------------------------------------------- interval

class IntervalModes final : public ModeFamily {
 public:
  IntervalModes(double length, int count, int gauss)
      : length_(length), count_(count), gauss_(std::max(gauss, 2 * count + 8)) {}

  Eigen::VectorXd eigenvalues() const override {
    Eigen::VectorXd mu(count_);
    for (int k = 0; k < count_; ++k) mu(k) = std::pow((k + 1) * kPi / length_, 2);
    return mu;
  }

  std::string label(int k) const override { return "sin(" + std::to_string(k + 1) + ")"; }

  VolumeQuadrature quadrature() const override {
    const auto g = gauss_legendre<double>(gauss_, 0.0, length_);
    VolumeQuadrature q;
    q.points = Eigen::Matrix2Xd::Zero(2, gauss_);
    q.points.row(0) = g.nodes.transpose();
    q.weights = g.weights;
    return q;
  }

  void tabulate(const Eigen::Matrix2Xd& points, Eigen::MatrixXd& f, Eigen::MatrixXd* fx,
                Eigen::MatrixXd* fy) const override {
    const Eigen::Index n = points.cols();
    const double c = std::sqrt(2.0 / length_);
    f.resize(n, count_);
    if (fx) fx->resize(n, count_);
    if (fy) fy->setZero(n, count_);
    for (int k = 0; k < count_; ++k) {
      const double w = (k + 1) * kPi / length_;
      for (Eigen::Index p = 0; p < n; ++p) {
        f(p, k) = c * std::sin(w * points(0, p));
        if (fx) (*fx)(p, k) = c * w * std::cos(w * points(0, p));
      }
    }
  }

 private:
  double length_;
  int count_;
  int gauss_;
};

// --------------------------------------------------------------- polygon

class PolygonModes final : public ModeFamily {
 public:
  PolygonModes(const Domain& domain, int count, double spacing, const std::filesystem::path& cache_dir)
      : grid_(domain, spacing) {
    const auto path = cache_dir.empty() ? std::filesystem::path() : basis_cache_path(cache_dir, domain, count, spacing);
    if (path.empty() || !load(path, domain, count, spacing)) {
      pairs_ = lowest_eigenpairs(grid_, count);
      if (!path.empty()) store(path, domain, count, spacing);
    }
    // Grid-normalised vectors become L2(h^2)-normalised nodal values.
    nodal_ = pairs_.vectors / spacing;
    gx_.resize(grid_.size(), count);
    gy_.resize(grid_.size(), count);
    for (int k = 0; k < count; ++k) {
      const Eigen::Matrix2Xd g = grid_.gradient(nodal_.col(k));
      gx_.col(k) = g.row(0).transpose();
      gy_.col(k) = g.row(1).transpose();
    }
  }

  Eigen::VectorXd eigenvalues() const override { return pairs_.eigenvalues; }
  std::string label(int k) const override { return "grid(" + std::to_string(k + 1) + ")"; }

  VolumeQuadrature quadrature() const override {
    VolumeQuadrature q;
    q.points = grid_.nodes();
    q.weights = Eigen::VectorXd::Constant(grid_.size(), grid_.spacing() * grid_.spacing());
    return q;
  }

  void tabulate(const Eigen::Matrix2Xd& points, Eigen::MatrixXd& f, Eigen::MatrixXd* fx,
                Eigen::MatrixXd* fy) const override {
    const Eigen::Index n = points.cols();
    const Eigen::Index K = nodal_.cols();
    f.resize(n, K);
    if (fx) fx->resize(n, K);
    if (fy) fy->resize(n, K);
    for (Eigen::Index k = 0; k < K; ++k)
      for (Eigen::Index p = 0; p < n; ++p) {
        f(p, k) = grid_.interpolate(nodal_.col(k), points.col(p));
        if (fx) (*fx)(p, k) = grid_.interpolate(gx_.col(k), points.col(p));
        if (fy) (*fy)(p, k) = grid_.interpolate(gy_.col(k), points.col(p));
      }
  }

  void tabulate_quadrature(Eigen::MatrixXd& f, Eigen::MatrixXd& fx, Eigen::MatrixXd& fy) const override {
    f = nodal_;
    fx = gx_;
    fy = gy_;
  }

  // One-sided second-order difference along the outward normal from three
  // interior samples at distances h, 2h, 3h. The boundary value itself is
  // not used: the staircase mask places the discrete zero up to h outside.
  Eigen::MatrixXd normal_derivatives(const BoundarySamples& samples) const override {
    const double h = grid_.spacing();
    const Eigen::Index K = nodal_.cols();
    Eigen::MatrixXd out(samples.size(), K);
    for (Eigen::Index p = 0; p < samples.size(); ++p) {
      const Point x1 = samples.points.col(p) - h * samples.normals.col(p);
      const Point x2 = samples.points.col(p) - 2.0 * h * samples.normals.col(p);
      const Point x3 = samples.points.col(p) - 3.0 * h * samples.normals.col(p);
      for (Eigen::Index k = 0; k < K; ++k) {
        const double g1 = grid_.interpolate(nodal_.col(k), x1);
        const double g2 = grid_.interpolate(nodal_.col(k), x2);
        const double g3 = grid_.interpolate(nodal_.col(k), x3);
        out(p, k) = (5.0 * g1 - 8.0 * g2 + 3.0 * g3) / (2.0 * h);
      }
    }
    return out;
  }

 private:
  static constexpr std::uint32_t kMagic = 0x42435657;  // "WVCB"
  static constexpr std::uint32_t kVersion = 1;

  bool load(const std::filesystem::path& path, const Domain& domain, int count, double spacing) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::uint32_t magic = 0, version = 0;
    std::uint64_t hash = 0;
    std::int32_t modes = 0;
    double h = 0.0;
    std::int64_t n = 0;
    in.read(reinterpret_cast<char*>(&magic), sizeof magic);
    in.read(reinterpret_cast<char*>(&version), sizeof version);
    in.read(reinterpret_cast<char*>(&hash), sizeof hash);
    in.read(reinterpret_cast<char*>(&modes), sizeof modes);
    in.read(reinterpret_cast<char*>(&h), sizeof h);
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    if (!in || magic != kMagic || version != kVersion || hash != domain.hash() || modes != count || h != spacing ||
        n != grid_.size())
      return false;
    GridEigenpairs pairs;
    pairs.eigenvalues.resize(count);
    pairs.vectors.resize(n, count);
    in.read(reinterpret_cast<char*>(pairs.eigenvalues.data()), static_cast<std::streamsize>(sizeof(double) * count));
    in.read(reinterpret_cast<char*>(pairs.vectors.data()), static_cast<std::streamsize>(sizeof(double) * n * count));
    if (!in) return false;
    pairs_ = std::move(pairs);
    return true;
  }

  void store(const std::filesystem::path& path, const Domain& domain, int count, double spacing) const {
    std::string blob;
    auto put = [&blob](const void* data, std::size_t bytes) { blob.append(static_cast<const char*>(data), bytes); };
    const std::uint64_t hash = domain.hash();
    const std::int32_t modes = count;
    const std::int64_t n = grid_.size();
    put(&kMagic, sizeof kMagic);
    put(&kVersion, sizeof kVersion);
    put(&hash, sizeof hash);
    put(&modes, sizeof modes);
    put(&spacing, sizeof spacing);
    put(&n, sizeof n);
    put(pairs_.eigenvalues.data(), sizeof(double) * static_cast<std::size_t>(count));
    put(pairs_.vectors.data(), sizeof(double) * static_cast<std::size_t>(n * count));
    std::filesystem::create_directories(path.parent_path());
    write_file_atomic(path, blob);
  }

  MaskedGrid grid_;
  GridEigenpairs pairs_;
  Eigen::MatrixXd nodal_;
  Eigen::MatrixXd gx_;
  Eigen::MatrixXd gy_;
};

}  // namespace

// ------------------------------------------------------- boundary / time

BoundarySamples boundary_samples(const Domain& domain, int count) {
  if (count < 1) throw std::invalid_argument("boundary sample count must be positive");
  BoundarySamples b;
  if (const auto* d = std::get_if<Disk>(&domain.shape())) {
    const double ds = domain.perimeter() / count;
    b.s.resize(count);
    b.points.resize(2, count);
    b.normals.resize(2, count);
    b.cell_begin.resize(count);
    b.cell_end.resize(count);
    for (int i = 0; i < count; ++i) {
      const double s = (i + 0.5) * ds;
      const Point nu(std::cos(s / d->radius), std::sin(s / d->radius));
      b.s(i) = s;
      b.normals.col(i) = nu;
      b.points.col(i) = d->center + d->radius * nu;
      b.cell_begin(i) = i * ds;
      b.cell_end(i) = (i + 1) * ds;
    }
    b.cell_end(count - 1) = domain.perimeter();
    return b;
  }

  const auto edges = domain.edges();
  std::vector<double> s, begin, end;
  std::vector<Point> points, normals;
  for (const auto& e : edges) {
    if (domain.is_interval()) {
      s.push_back(e.s_begin + 0.5 * e.param_length);
      begin.push_back(e.s_begin);
      end.push_back(e.s_begin + e.param_length);
      points.push_back(e.start);
      normals.push_back(e.normal);
      continue;
    }
    const int panels = std::max(1, static_cast<int>(std::lround(count * e.param_length / domain.perimeter())));
    const double ds = e.param_length / panels;
    const double stop = e.s_begin + e.param_length;
    for (int i = 0; i <= panels; ++i) {
      const double si = (i == panels) ? stop : e.s_begin + i * ds;
      s.push_back(si);
      begin.push_back(std::max(e.s_begin, si - 0.5 * ds));
      end.push_back(std::min(stop, si + 0.5 * ds));
      points.push_back(e.start + (static_cast<double>(i) / panels) * (e.end - e.start));
      normals.push_back(e.normal);
    }
  }
  const Eigen::Index n = static_cast<Eigen::Index>(s.size());
  b.s = Eigen::Map<Eigen::VectorXd>(s.data(), n);
  b.cell_begin = Eigen::Map<Eigen::VectorXd>(begin.data(), n);
  b.cell_end = Eigen::Map<Eigen::VectorXd>(end.data(), n);
  b.points.resize(2, n);
  b.normals.resize(2, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    b.points.col(i) = points[static_cast<std::size_t>(i)];
    b.normals.col(i) = normals[static_cast<std::size_t>(i)];
  }
  return b;
}

TimeGrid time_grid(double horizon, int intervals) {
  if (!(horizon > 0.0)) throw std::invalid_argument("time horizon must be positive");
  if (intervals < 1) throw std::invalid_argument("time grid needs at least one interval");
  TimeGrid g;
  const double dt = horizon / intervals;
  g.t.resize(intervals + 1);
  g.cell_begin.resize(intervals + 1);
  g.cell_end.resize(intervals + 1);
  for (int i = 0; i <= intervals; ++i) {
    const double t = (i == intervals) ? horizon : i * dt;
    g.t(i) = t;
    g.cell_begin(i) = std::max(0.0, t - 0.5 * dt);
    g.cell_end(i) = std::min(horizon, t + 0.5 * dt);
  }
  return g;
}

int default_time_intervals(double horizon) { return std::max(1, static_cast<int>(std::ceil(64.0 * horizon))); }

// ------------------------------------------------------------ EigenBasis

EigenBasis::EigenBasis(Domain domain, std::shared_ptr<const ModeFamily> family)
    : domain_(std::move(domain)), family_(std::move(family)) {
  eigenvalues_ = family_->eigenvalues();
  frequencies_ = eigenvalues_.cwiseSqrt();
  quadrature_ = family_->quadrature();
  family_->tabulate_quadrature(values_, dx_, dy_);
}

std::string EigenBasis::label(int k) const { return family_->label(k); }

Eigen::MatrixXd EigenBasis::evaluate(const Eigen::Matrix2Xd& points) const {
  Eigen::MatrixXd f;
  family_->tabulate(points, f, nullptr, nullptr);
  return f;
}

Eigen::MatrixXd EigenBasis::normal_derivatives(const BoundarySamples& samples) const {
  return family_->normal_derivatives(samples);
}

Eigen::MatrixXd EigenBasis::gram() const { return values_.transpose() * quadrature_.weights.asDiagonal() * values_; }

std::filesystem::path basis_cache_path(const std::filesystem::path& dir, const Domain& domain, int modes,
                                       double spacing) {
  std::ostringstream name;
  name << "basis_" << std::hex << domain.hash() << std::dec << "_K" << modes << "_h" << format_number(spacing)
       << ".bin";
  return dir / name.str();
}

std::shared_ptr<const EigenBasis> build_basis(const Domain& domain, const BasisOptions& options) {
  const int modes = options.modes > 0 ? options.modes : (domain.is_polygon() ? 40 : 64);
  std::shared_ptr<const ModeFamily> family;
  if (const auto* d = std::get_if<Disk>(&domain.shape())) {
    family = std::make_shared<DiskModes>(*d, modes, options.radial_points, options.angular_points);
  } else if (const auto* r = std::get_if<Rectangle>(&domain.shape())) {
    family = std::make_shared<RectangleModes>(*r, modes, options.gauss_points);
  } else if (const auto* iv = std::get_if<Interval>(&domain.shape())) {
    family = std::make_shared<IntervalModes>(iv->length, modes, options.gauss_points);
  } else {
    family = std::make_shared<PolygonModes>(domain, modes, options.grid_spacing, options.cache_dir);
  }
  return std::make_shared<const EigenBasis>(domain, std::move(family));
}

}  // namespace wavectl
