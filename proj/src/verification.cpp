#include "wavectl/verification.hpp"

#include "wavectl/csv.hpp"
#include "wavectl/hum.hpp"
#include "wavectl/masked_grid.hpp"
#include "wavectl/observability.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

namespace wavectl {

namespace {

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(4);
  s << x;
  return s.str();
}

AlternatingSchedule one_switch(const Domain& domain, const Point& a, const Point& b, double factor = 1.05) {
  const std::vector<Point> points{a, b};
  return {points, uniform_partition(factor * alternating_threshold(domain, points), 2)};
}

double modal_drift(const std::shared_ptr<const EigenBasis>& basis, double horizon, double step) {
  ModalState state = random_unit_energy_state(basis, basis->size(), 7, 0);
  const double e0 = energy(state);
  double drift = 0.0;
  for (int n = 1; n * step <= horizon + 1e-12; ++n) {
    state = evolve(state, step);
    drift = std::max(drift, std::abs(energy(state) - e0) / e0);
  }
  return std::max(drift, std::abs(energy(evolve(random_unit_energy_state(basis, basis->size(), 7, 0), horizon)) - e0) / e0);
}

}  // namespace

void CheckResult::expect(bool ok, const std::string& line) {
  passed = passed && ok;
  details.push_back((ok ? "ok    " : "FAIL  ") + line);
}

CheckResult timed_check(const std::string& name, const std::function<void(CheckResult&)>& body) {
  CheckResult result;
  result.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(result);
  } catch (const std::exception& e) {
    result.expect(false, std::string("exception: ") + e.what());
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

CheckResult check_energy_conservation(double modal_tolerance, double leapfrog_tolerance) {
  return timed_check("energy", [&](CheckResult& r) {
    for (const auto& domain : {Domain::unit_disk(), Domain::rectangle(1.0, 0.7)}) {
      const double drift = modal_drift(build_basis(domain, 32), 20.0, 0.05);
      r.expect(drift < modal_tolerance, domain.describe() + ": modal energy drift over [0, 20] = " + fmt(drift));
    }

    const MaskedGrid grid(Domain::regular_hexagon(), 1.0 / 64.0);
    Eigen::VectorXd u0(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      const double r2 = grid.nodes().col(i).squaredNorm() / 0.36;
      u0(i) = r2 < 1.0 ? (1.0 - r2) * (1.0 - r2) : 0.0;
    }
    const double dt = 0.9 * grid.spacing() / std::sqrt(2.0);
    LeapfrogState state = leapfrog_start(grid, u0, Eigen::VectorXd::Zero(grid.size()), dt);
    const double e0 = leapfrog_energy(grid, state);
    double drift = 0.0;
    for (int chunk = 0; chunk < 10; ++chunk) {
      state = fd_evolve(grid, state, 100);
      drift = std::max(drift, std::abs(leapfrog_energy(grid, state) - e0) / e0);
    }
    r.expect(drift < leapfrog_tolerance, "hexagon leapfrog energy drift over 1000 steps = " + fmt(drift));
  });
}

CheckResult check_multiplier_identity(int states, int active_modes, double tolerance, std::uint64_t seed) {
  return timed_check("identity", [&](CheckResult& r) {
    const std::pair<Domain, Point> cases[] = {{Domain::unit_disk(), Point(0.2, -0.1)},
                                              {Domain::rectangle(1.0, 1.0), Point(0.3, 0.6)}};
    const double s = 0.0;
    const double tau = 3.0;
    const int intervals = default_time_intervals(tau - s);
    for (const auto& [domain, xi] : cases) {
      BasisOptions coarse;
      coarse.modes = active_modes;
      BasisOptions fine = coarse;
      fine.gauss_points *= 2;
      fine.radial_points *= 2;
      fine.angular_points *= 2;
      const auto basis = build_basis(domain, coarse);
      const auto refined = build_basis(domain, fine);
      double worst = 0.0;
      double sum1 = 0.0;
      double sum2 = 0.0;
      int increases = 0;
      for (int i = 0; i < states; ++i) {
        ModalState state = random_unit_energy_state(basis, active_modes, seed, static_cast<std::uint64_t>(i));
        const double r1 = multiplier_residual(state, xi, s, tau, {512, intervals}).relative_residual;
        state.basis = refined;
        const double r2 = multiplier_residual(state, xi, s, tau, {1024, 2 * intervals}).relative_residual;
        worst = std::max(worst, r1);
        sum1 += r1;
        sum2 += r2;
        if (!(r2 < r1)) ++increases;
      }
      const double order = std::log2(sum1 / sum2);
      const std::string name = domain.describe();
      r.expect(worst < tolerance, name + ": worst relative residual " + fmt(worst) + " < " + fmt(tolerance));
      r.expect(increases == 0, name + ": residual decreased under doubling for " +
                                   std::to_string(states - increases) + "/" + std::to_string(states) + " states");
      r.expect(order >= 1.0, name + ": observed order " + fmt(order) + " >= 1");
    }
  });
}

CheckResult check_lemma_bounds(int samples, double slack, std::uint64_t seed) {
  return timed_check("lemma", [&](CheckResult& r) {
    const auto basis = build_basis(Domain::unit_disk(), 32);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> time(0.0, 20.0);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::uniform_int_distribution<int> active(1, basis->size());
    int centred = 0;
    int shift = 0;
    double tightest = 0.0;
    for (int i = 0; i < samples; ++i) {
      const ModalState state =
          random_unit_energy_state(basis, active(rng), seed, static_cast<std::uint64_t>(i));
      const double s = time(rng);
      const Point xi(coord(rng), coord(rng));
      const Point eta(coord(rng), coord(rng));
      const LemmaBounds b = lemma_bound_check(state, xi, eta, s);
      const double e0 = energy(state);
      if (b.centred.value > b.centred.bound + slack * e0) ++centred;
      if (b.shift.value > b.shift.bound + slack * e0) ++shift;
      tightest = std::max(tightest, b.centred.value / b.centred.bound);
    }
    r.expect(centred == 0, "centred bound violations: " + std::to_string(centred) + "/" + std::to_string(samples));
    r.expect(shift == 0, "shift bound violations: " + std::to_string(shift) + "/" + std::to_string(samples));
    r.note("largest centred value / bound = " + fmt(tightest));
  });
}

CheckResult check_gramian(int pairs, double symmetry_tolerance, double pairing_tolerance, std::uint64_t seed) {
  return timed_check("gramian", [&](CheckResult& r) {
    const Domain domain = Domain::unit_disk();
    const SigmaSet sigma = build_alternating_sigma(domain, one_switch(domain, Point(1, 1), Point(1, -1)));
    const auto basis = build_basis(domain, 24);
    const HumOperator op(basis, sigma, {});
    const int K = basis->size();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    auto draw = [&] {
      Eigen::VectorXd e(2 * K);
      for (auto& x : e) x = normal(rng);
      return e;
    };
    double asym = 0.0;
    double pairing = 0.0;
    double smallest = INFINITY;
    for (int i = 0; i < pairs; ++i) {
      const Eigen::VectorXd e = draw();
      const Eigen::VectorXd f = draw();
      const Eigen::VectorXd le = op.apply(e);
      const Eigen::VectorXd lf = op.apply(f);
      const double ee = dual_pairing(le, e);
      const double ff = dual_pairing(lf, f);
      asym = std::max(asym, std::abs(dual_pairing(le, f) - dual_pairing(lf, e)) / std::sqrt(ee * ff));
      smallest = std::min({smallest, ee, ff});

      const ModalState state{basis, e.head(K), e.tail(K), 0.0};
      const double direct = observation_integral(normal_trace(state, op.boundary(), op.time()), sigma);
      pairing = std::max(pairing, std::abs(ee - direct) / std::abs(direct));
    }
    r.expect(asym < symmetry_tolerance, "relative asymmetry " + fmt(asym) + " < " + fmt(symmetry_tolerance));
    r.expect(smallest > 0.0, "smallest <Lambda e, e> = " + fmt(smallest) + " > 0");
    r.expect(pairing < pairing_tolerance,
             "<Lambda e, e> vs sigma trace integral: relative " + fmt(pairing) + " < " + fmt(pairing_tolerance));
  });
}

CheckResult check_free_transposition(double tolerance) {
  return timed_check("free_transposition", [&](CheckResult& r) {
    const Domain domain = Domain::unit_disk();
    const auto basis = build_basis(domain, 24);
    const SigmaSet sigma = build_alternating_sigma(domain, one_switch(domain, Point(1, 1), Point(1, -1)));
    const HumOperator op(basis, sigma, {});
    const ModalState state = random_unit_energy_state(basis, basis->size(), 3, 0);
    const ControlField zero = op.control_field(Eigen::MatrixXd::Zero(op.boundary().size(), op.time().size()));
    const FinalState end = transposition_solve(*basis, zero, state.displacement, state.velocity, op.horizon());
    const ModalState free = evolve(state, op.horizon());
    const double err = std::max((end.displacement - free.displacement).cwiseAbs().maxCoeff(),
                                (end.velocity - free.velocity).cwiseAbs().maxCoeff());
    r.expect(err < tolerance, "zero control vs free evolution: max coefficient error " + fmt(err));
  });
}

CheckResult check_observability(int samples, int modes, double margin_factor) {
  return timed_check("observability", [&](CheckResult& r) {
    const std::tuple<Domain, Point, Point> cases[] = {
        {Domain::unit_disk(), Point(1, 1), Point(1, -1)},
        {Domain::regular_hexagon(), Point(1, 0), Point(-1, 0)},
    };
    for (const auto& [domain, a, b] : cases) {
      SampleSpec spec;
      spec.count = samples;
      spec.modes = modes;
      const ObservabilityReport rep = observability_ratio(one_switch(domain, a, b), domain, spec);
      r.expect(rep.min_ratio > 0.0 && rep.min_ratio >= margin_factor * rep.quadrature_error,
               domain.describe() + ": min ratio " + fmt(rep.min_ratio) + ", quadrature error " +
                   fmt(rep.quadrature_error) + ", mean " + fmt(rep.mean_ratio));
    }
  });
}

CheckResult check_flagship_control(double tolerance, int max_iterations) {
  return timed_check("hum", [&](CheckResult& r) {
    const Domain domain = Domain::unit_disk();
    const AlternatingSchedule schedule = one_switch(domain, Point(1, 1), Point(1, -1));
    const auto basis = build_basis(domain, 24);
    const int K = basis->size();
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(K);
    const ControlProblem problem{domain, schedule, basis, Eigen::VectorXd::Unit(K, 0), zero, zero, zero,
                                 1e-6, max_iterations, {}};
    const HUMResult result = solve_control(problem);
    r.expect(result.relative_residual < tolerance && result.iterations <= max_iterations,
             "relative final residual " + fmt(result.relative_residual) + " after " +
                 std::to_string(result.iterations) + " iterations");
    const auto flags = classical_reducibility(schedule, domain);
    r.expect(std::none_of(flags.begin(), flags.end(), [](bool f) { return f; }),
             "no single interval reduces to a fixed-support problem");
    bool monotone = true;
    for (std::size_t i = 1; i < result.residual_history.size(); ++i)
      monotone = monotone && result.residual_history[i] <= result.residual_history[i - 1];
    r.expect(monotone, "residual history nonincreasing");
    const auto& c = result.control;
    bool support = true;
    for (Eigen::Index i = 0; i < c.values.size(); ++i)
      if (c.weights.data()[i] == 0.0 && c.values.data()[i] != 0.0) support = false;
    r.expect(support, "control vanishes off sigma");
    r.note("control energy " + fmt(result.control_energy));
  });
}

void print_check(std::ostream& out, const CheckResult& result) {
  out << (result.passed ? "PASS " : "FAIL ") << result.name << " (" << fmt(result.seconds) << " s)\n";
  for (const auto& line : result.details) out << "    " << line << '\n';
}

bool run_invariant_suite(std::ostream& out) {
  const std::function<CheckResult()> checks[] = {
      [] { return check_energy_conservation(); }, [] { return check_multiplier_identity(); },
      [] { return check_lemma_bounds(); },        [] { return check_gramian(); },
      [] { return check_free_transposition(); },  [] { return check_observability(); },
      [] { return check_flagship_control(); },
  };
  bool all = true;
  for (const auto& check : checks) {
    const CheckResult r = check();
    print_check(out, r);
    out.flush();
    all = all && r.passed;
  }
  return all;
}

}  // namespace wavectl
