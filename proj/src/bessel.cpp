#include "wavectl/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace wavectl {

double bessel_j(int order, double x) {
  if (x < 0.0) return ((order % 2) ? -1.0 : 1.0) * std::cyl_bessel_j(static_cast<double>(order), -x);
  return std::cyl_bessel_j(static_cast<double>(order), x);
}

double bessel_j_derivative(int order, double x) {
  if (order == 0) return -bessel_j(1, x);
  return 0.5 * (bessel_j(order - 1, x) - bessel_j(order + 1, x));
}

std::vector<double> bessel_zeros(int order, double upper) {
  if (order < 0) throw std::invalid_argument("bessel order must be non-negative");
  std::vector<double> zeros;
  // j_{m,1} > m, and consecutive zeros are more than pi/2 apart.
  constexpr double step = 0.05;
  double a = std::max(order, 0) + 1e-3;
  double fa = bessel_j(order, a);
  while (a < upper) {
    const double b = std::min(a + step, upper);
    const double fb = bessel_j(order, b);
    if (fa == 0.0) {
      zeros.push_back(a);
    } else if (fa * fb < 0.0) {
      double lo = a;
      double hi = b;
      double flo = fa;
      while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const double fm = bessel_j(order, mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      zeros.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

double bessel_zero(int order, int n) {
  if (n < 1) throw std::invalid_argument("bessel zero index starts at 1");
  double upper = order + 4.0 * n + 4.0;
  for (;;) {
    const auto zeros = bessel_zeros(order, upper);
    if (static_cast<int>(zeros.size()) >= n) return zeros[static_cast<std::size_t>(n - 1)];
    upper *= 1.5;
  }
}

}  // namespace wavectl
