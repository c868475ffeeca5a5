#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace wavectl {

/// Outcome of one named check: a verdict plus one line per sub-item.
struct CheckResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> details;
  double seconds = 0.0;

  void expect(bool ok, const std::string& line);
  void note(const std::string& line) { details.push_back(line); }
};

/// Times `body` and fills in name and seconds. Exceptions become a failure.
CheckResult timed_check(const std::string& name, const std::function<void(CheckResult&)>& body);

/// Modal energy over t in [0, 20] on disk and rectangle, and the discrete
/// leapfrog energy over 1000 steps on the hexagon grid.
CheckResult check_energy_conservation(double modal_tolerance = 1e-12, double leapfrog_tolerance = 1e-10);

/// Multiplier identity on random states (disk and unit square), (s, tau) = (0, 3):
/// relative residual below `tolerance` and order >= 1 under one grid doubling.
CheckResult check_multiplier_identity(int states = 20, int active_modes = 10, double tolerance = 1e-3,
                                      std::uint64_t seed = 20240611);

/// Centred and shifted bracket bounds on the unit disk.
CheckResult check_lemma_bounds(int samples = 1000, double slack = 1e-6, std::uint64_t seed = 20240611);

/// Symmetry, positivity and <Lambda e, e> against the sigma-restricted trace
/// integral for the one-switch disk schedule.
CheckResult check_gramian(int pairs = 20, double symmetry_tolerance = 1e-6, double pairing_tolerance = 1e-10,
                          std::uint64_t seed = 20240611);

/// transposition_solve with a zero control against free evolution.
CheckResult check_free_transposition(double tolerance = 1e-12);

/// One-switch disk and hexagon schedules at 1.05 x threshold: minimum ratio
/// positive and at least `margin_factor` x the quadrature error.
CheckResult check_observability(int samples = 100, int modes = 32, double margin_factor = 10.0);

/// One-switch disk schedule at 1.05 x threshold, first mode to rest, K = 24.
CheckResult check_flagship_control(double tolerance = 5e-2, int max_iterations = 200);

/// Runs every check above with its default arguments, printing one line per
/// check and its sub-items. Returns true when all pass.
bool run_invariant_suite(std::ostream& out);

void print_check(std::ostream& out, const CheckResult& result);

}  // namespace wavectl
