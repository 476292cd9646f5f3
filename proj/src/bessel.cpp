#include "chebias/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace chebias {

namespace {
constexpr double kSwitch = 12.0;
}

double bessel_j0_series(double x) {
  // long double keeps the cancellation at |x| = 12 below 1e-15
  const long double q = -static_cast<long double>(x) * x / 4.0L;
  long double term = 1.0L, sum = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-22L * std::max(1.0L, std::fabs(sum))) break;
  }
  return static_cast<double>(sum);
}

double bessel_j0_asymptotic(double x) {
  x = std::abs(x);
  // a_k = prod_{j<=k} (-(2j - 1)^2) / (k! 8^k);
  // P = sum (-1)^k a_{2k} / x^{2k}, Q = sum (-1)^k a_{2k+1} / x^{2k+1}, stopped at the smallest term
  double P = 0, Q = 0;
  double a_even = 1.0;   // a_{2k} / x^{2k}
  double best = 1e300;
  for (int k = 0; k < 60; ++k) {
    const double n1 = 2.0 * k + 1;  // index of a_{2k+1}
    const double a_odd = a_even * (-(2 * n1 - 1) * (2 * n1 - 1)) / (n1 * 8.0 * x);
    if (std::abs(a_even) > best) break;
    best = std::abs(a_even);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    P += sign * a_even;
    Q += sign * a_odd;
    const double n2 = 2.0 * k + 2;
    a_even = a_odd * (-(2 * n2 - 1) * (2 * n2 - 1)) / (n2 * 8.0 * x);
  }
  const double w = x - std::numbers::pi / 4;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (P * std::cos(w) - Q * std::sin(w));
}

double bessel_j0(double x) {
  x = std::abs(x);
  return x <= kSwitch ? bessel_j0_series(x) : bessel_j0_asymptotic(x);
}

double bessel_j0_quadrature(double x, int points) {
  // integrand is smooth and even-periodic, so the trapezoid rule converges geometrically
  const int n = points > 0 ? points : 64 + 2 * static_cast<int>(std::abs(x));
  const double h = std::numbers::pi / n;
  long double s = 0.5L * (1.0L + 1.0L);  // theta = 0 and pi give cos(0) = 1
  for (int i = 1; i < n; ++i) s += std::cos(x * std::sin(i * h));
  return static_cast<double>(s * h / std::numbers::pi);
}

}  // namespace chebias
