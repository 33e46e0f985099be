#pragma once

#include "kamnf/series.hpp"

namespace kamnf {

// Lowest divisor magnitude this solver will accept before declaring the
// frequency numerically resonant.
inline constexpr double kDivisorFloor = 1e-13;

// Solve {F, omega r} + dF/dt = R mode by mode: the coefficient at (n, k, m)
// is R_{nkm} / (i (m - k omega)).  Degrees pass through untouched.
// Raises ResonantModeError on a (k, m) = (0, 0) mode and
// SmallDivisorUnderflow when |m - k omega| < kDivisorFloor.
FourierTaylorSeries solve(const FourierTaylorSeries& R, double omega);

// {F, omega r} + dF/dt - R; vanishes to roundoff when F = solve(R, omega).
FourierTaylorSeries residual(const FourierTaylorSeries& F,
                             const FourierTaylorSeries& R, double omega);

// Independent check of solve: the unique periodic solution evaluated through
// its integral representation
//   F = sum_{k != 0} e^{ik omega t} ( int_0^t R_k(s) e^{-ik omega s} ds
//       + (1 - e^{2 pi i k omega})^{-1} int_{-2pi}^0 R_k(s) e^{-ik omega s} ds ) e^{ik theta}
// with adaptive Simpson quadrature.  R must contain no k = 0 modes (those are
// elementary and covered by the mode rule).  `tol` is the quadrature target.
// Raises QuadratureError if the tolerance cannot be met, ValidationError on a
// k = 0 mode.
Complex integral_formula_eval(const FourierTaylorSeries& R, double omega,
                              double t, double theta, double r,
                              double tol = 1e-10);

// Diophantine lower bound 4 alpha / |k|^tau for |1 - e^{2 pi i k omega}|.
double divisor_lower_bound(long long k, double alpha, double tau);

}  // namespace kamnf
