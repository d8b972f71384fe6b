#pragma once

namespace eigenbar {

// Bessel functions of the first kind: power series for |x| <= 8, trapezoid rule on
// the periodic integral representation beyond.
double bessel_j0(double x);
double bessel_j1(double x);

/// First positive zero of J0, by bisection on [2, 3] down to 1e-15.
double bessel_j0_first_zero();

}  // namespace eigenbar
