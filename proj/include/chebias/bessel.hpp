#pragma once

namespace chebias {

// J_0 by its power series for |x| <= 12 and the Hankel expansion beyond.
double bessel_j0(double x);
double bessel_j0_series(double x);
double bessel_j0_asymptotic(double x);
// (1/pi) int_0^pi cos(x sin theta) d theta by the trapezoid rule (exponentially convergent).
double bessel_j0_quadrature(double x, int points = 0);

}  // namespace chebias
