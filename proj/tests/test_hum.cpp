#include "wavectl/errors.hpp"
#include "wavectl/hum.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace wavectl;

namespace {

AlternatingSchedule disk_one_switch(double factor = 1.05) {
  const std::vector<Point> pts{Point(1, 1), Point(1, -1)};
  return {pts, uniform_partition(factor * alternating_threshold(Domain::unit_disk(), pts), 2)};
}

Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(n);
  for (auto& x : v) x = normal(rng);
  return v;
}

struct Flagship {
  Domain domain = Domain::unit_disk();
  AlternatingSchedule schedule = disk_one_switch();
  std::shared_ptr<const EigenBasis> basis = build_basis(domain, 24);

  ControlProblem problem(const Eigen::VectorXd& w0) const {
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(24);
    return {domain, schedule, basis, w0, zero, zero, zero, 1e-6, 200, {}};
  }
};

}  // namespace

TEST(Gramian, ZeroMapsToZero) {
  const Flagship f;
  const HumOperator op(f.basis, build_alternating_sigma(f.domain, f.schedule), {});
  EXPECT_EQ(gramian_apply(op, Eigen::VectorXd::Zero(48)).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_THROW(op.apply(Eigen::VectorXd::Zero(10)), IncompatibleError);
}

TEST(Gramian, SymmetricPositiveAndEqualToTraceIntegral) {
  const Flagship f;
  const SigmaSet sigma = build_alternating_sigma(f.domain, f.schedule);
  const HumOperator op(f.basis, sigma, {});
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    const Eigen::VectorXd e = random_vector(rng, 48);
    const Eigen::VectorXd g = random_vector(rng, 48);
    const double eg = dual_pairing(op.apply(e), g);
    const double ge = dual_pairing(op.apply(g), e);
    const double ee = dual_pairing(op.apply(e), e);
    EXPECT_NEAR(eg, ge, 1e-6 * std::sqrt(ee * dual_pairing(op.apply(g), g)));
    EXPECT_GE(ee, 0.0);
    const ModalState s{f.basis, e.head(24), e.tail(24), 0.0};
    const double direct = observation_integral(normal_trace(s, op.boundary(), op.time()), sigma);
    EXPECT_NEAR(ee, direct, 1e-10 * direct);
  }
}

TEST(Transposition, ZeroControlIsFreeEvolution) {
  const Flagship f;
  const HumOperator op(f.basis, build_alternating_sigma(f.domain, f.schedule), {});
  const ModalState s = random_unit_energy_state(f.basis, 24, 6, 0);
  const ControlField zero = op.control_field(Eigen::MatrixXd::Zero(op.boundary().size(), op.time().size()));
  const FinalState end = transposition_solve(*f.basis, zero, s.displacement, s.velocity, op.horizon());
  const ModalState free = evolve(s, op.horizon());
  EXPECT_LT((end.displacement - free.displacement).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((end.velocity - free.velocity).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_THROW(transposition_solve(*f.basis, zero, s.displacement, s.velocity, op.horizon() + 0.5), IncompatibleError);
}

TEST(Transposition, AdjointTraceControlReproducesGramianImage) {
  const Flagship f;
  const SigmaSet sigma = build_alternating_sigma(f.domain, f.schedule);
  const HumOperator op(f.basis, sigma, {});
  std::mt19937_64 rng(4);
  const Eigen::VectorXd e = random_vector(rng, 48);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(24);
  FinalState end = transposition_solve(*f.basis, op.control_field(op.adjoint_trace(e)), zero, zero, op.horizon());
  propagate(f.basis->frequencies(), end.displacement, end.velocity, -op.horizon());
  Eigen::VectorXd image(48);
  image << -end.velocity, end.displacement;
  const Eigen::VectorXd lambda_e = op.apply(e);
  EXPECT_LT((image - lambda_e).norm(), 1e-10 * lambda_e.norm());

  const ModalState s{f.basis, e.head(24), e.tail(24), 0.0};
  const double direct = observation_integral(normal_trace(s, op.boundary(), op.time()), sigma);
  EXPECT_NEAR(dual_pairing(image, e), direct, 1e-4 * direct);
}

TEST(SolveControl, FreeTargetsNeedNoControl) {
  const Flagship f;
  const ModalState s = random_unit_energy_state(f.basis, 24, 1, 0);
  const ModalState free = evolve(s, f.schedule.horizon());
  ControlProblem p = f.problem(s.displacement);
  p.w1 = s.velocity;
  p.z0 = free.displacement;
  p.z1 = free.velocity;
  const HUMResult r = solve_control(p);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.control.values.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(control_energy(r), 0.0);
}

TEST(SolveControl, SquareWithFixedSupport) {
  const Domain square = Domain::rectangle(1.0, 1.0);
  const Point x0(2, 1);
  const double threshold = 2 * radius_max(square, x0);
  const AlternatingSchedule fixed{{x0}, {0.0, 1.1 * threshold}};
  EXPECT_NEAR(illuminated_region(square, x0).measure(), 2.0, 1e-12);
  const auto basis = build_basis(square, 24);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(24);
  const HUMResult r =
      solve_control({square, fixed, basis, Eigen::VectorXd::Unit(24, 0), zero, zero, zero, 1e-6, 200, {}});
  EXPECT_LT(r.relative_residual, 1e-2);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(SolveControl, FlagshipDisk) {
  const Flagship f;
  const HUMResult r = solve_control(f.problem(Eigen::VectorXd::Unit(24, 0)));
  EXPECT_LT(r.relative_residual, 5e-2);
  EXPECT_LE(r.iterations, 200);
  for (bool flag : classical_reducibility(f.schedule, f.domain)) EXPECT_FALSE(flag);
  for (std::size_t i = 1; i < r.residual_history.size(); ++i)
    EXPECT_LE(r.residual_history[i], r.residual_history[i - 1]);
  for (Eigen::Index i = 0; i < r.control.values.size(); ++i)
    if (r.control.weights.data()[i] == 0.0) EXPECT_EQ(r.control.values.data()[i], 0.0);
  EXPECT_NEAR(control_energy(r), control_energy(r.control), 0.0);
}

TEST(SolveControl, LinearInTheData) {
  const Flagship f;
  std::mt19937_64 rng(2);
  const Eigen::VectorXd w0 = random_vector(rng, 24) / 10;
  ControlProblem p = f.problem(w0);
  p.w1 = random_vector(rng, 24) / 10;
  p.z0 = random_vector(rng, 24) / 10;
  const HUMResult one = solve_control(p);
  p.w0 *= 2;
  p.w1 *= 2;
  p.z0 *= 2;
  const HUMResult two = solve_control(p);
  const double scale = one.control.values.cwiseAbs().maxCoeff();
  EXPECT_LT((two.control.values - 2 * one.control.values).cwiseAbs().maxCoeff(), 1e-8 * scale);
  EXPECT_NEAR(two.control_energy, 4 * one.control_energy, 1e-8 * two.control_energy);
}

// Corrections delta = r - Psi(Lambda^-1 readout(r)) leave the final state
// unchanged; the HUM control is weighted-orthogonal to all of them.
TEST(SolveControl, NoAdmissibleCorrectionLowersTheEnergy) {
  const Flagship f;
  const SigmaSet sigma = build_alternating_sigma(f.domain, f.schedule);
  const HumOperator op(f.basis, sigma, {});
  const HUMResult v = solve_control(f.problem(Eigen::VectorXd::Unit(24, 0)));

  Eigen::MatrixXd lambda(48, 48);
  for (int j = 0; j < 48; ++j) lambda.col(j) = op.apply(Eigen::VectorXd::Unit(48, j));
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(lambda);

  std::mt19937_64 rng(13);
  std::normal_distribution<double> normal;
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(24);
  const FinalState target = transposition_solve(*f.basis, v.control, Eigen::VectorXd::Unit(24, 0), zero, op.horizon());
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXd r(op.boundary().size(), op.time().size());
    for (Eigen::Index i = 0; i < r.size(); ++i) r.data()[i] = 0.05 * normal(rng);
    r = op.control_field(r).values;
    const Eigen::MatrixXd delta = r - op.adjoint_trace(lu.solve(op.readout(r)));
    const ControlField perturbed = op.control_field(v.control.values + delta);

    const FinalState end = transposition_solve(*f.basis, perturbed, Eigen::VectorXd::Unit(24, 0), zero, op.horizon());
    EXPECT_LT((end.displacement - target.displacement).norm(), 1e-8);
    EXPECT_GE(control_energy(perturbed), control_energy(v) - 1e-6 * control_energy(v));
  }
}

TEST(SolveControl, BelowThresholdWarns) {
  const Flagship f;
  ControlProblem p = f.problem(Eigen::VectorXd::Unit(24, 0));
  p.schedule = disk_one_switch(0.8);
  p.max_iterations = 400;
  try {
    const HUMResult r = solve_control(p);
    ASSERT_FALSE(r.warnings.empty());
    EXPECT_NE(r.warnings.front().find("threshold"), std::string::npos);
  } catch (const IllConditionedGramianError& e) {
    EXPECT_FALSE(e.residual_history().empty());
  }
}

TEST(SolveControl, ShortHorizonStagnates) {
  const Domain disk = Domain::unit_disk();
  const auto basis = build_basis(disk, 64);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(64);
  const AlternatingSchedule tiny{{Point(1, 1)}, {0.0, 0.05}};
  const ControlProblem p{disk, tiny, basis, Eigen::VectorXd::Unit(64, 63), zero, zero, zero, 1e-12, 200, {}};
  try {
    solve_control(p);
    FAIL() << "expected the Krylov iteration to stall";
  } catch (const IllConditionedGramianError& e) {
    ASSERT_GT(e.residual_history().size(), 1u);
    EXPECT_EQ(e.residual_history().front(), 1.0);
  }
}

TEST(HumOutput, CsvAndSummary) {
  const Flagship f;
  const HUMResult r = solve_control(f.problem(Eigen::VectorXd::Unit(24, 0)));
  std::ostringstream control, residuals, summary;
  write_control_csv(control, r.control);
  write_residuals_csv(residuals, r);
  write_hum_summary(summary, r);
  EXPECT_EQ(control.str().rfind("s,t,v\n", 0), 0u);
  EXPECT_EQ(residuals.str().rfind("iter,residual\n0,1\n", 0), 0u);
  EXPECT_NE(summary.str().find("iterations = " + std::to_string(r.iterations) + "\n"), std::string::npos);
  EXPECT_NE(summary.str().find("control_energy = "), std::string::npos);
}
