#pragma once

#include <utility>
#include <vector>

#include "kamnf/series.hpp"

namespace kamnf {

// New Hamiltonian after the time-1 flow of the generator F at frozen t:
//   sum_j ad_F^j(H)/j!  -  sum_j ad_F^j(dF/dt)/(j+1)!,   ad_F(G) = {G, F}.
// Terminates inside `window` because every ad_F raises the lowest degree by
// n_min(F) - 2 >= 1; requires n_min(F) >= 3.
FourierTaylorSeries lie_series_transform(const FourierTaylorSeries& H,
                                         const FourierTaylorSeries& F,
                                         DegreeWindow window);

// One quadratic-step substitution for F = solve(R, omega), R a slice of
// P = H - H2.  Uses the rearrangement
//   H+ = H2 + (P - R) + sum_{j>=1} ad_F^j(P/j! - R/(j+1)!)
// in which the first-order cancellation is a literal coefficient removal, so
// no roundoff survives below the doubled degree.  `degree_floor` is the
// promised lowest degree of H+ - H2 (4s - 2 for a step truncated at
// [2s, 4s-2]); raises DegreeViolation if the result starts below it.
FourierTaylorSeries kam_step_transform(const FourierTaylorSeries& H,
                                       const FourierTaylorSeries& F,
                                       const FourierTaylorSeries& R,
                                       DegreeWindow window, int degree_floor);

struct DepritResult {
    // (n, A_n): kernel coefficients of the normal form, n even, A_n real up
    // to roundoff.
    std::vector<std::pair<int, Complex>> kernel_coeffs;
    // One generator per processed degree 3..order (zero series allowed).
    std::vector<FourierTaylorSeries> generators;
    // H2 + kernel part through `order`.
    FourierTaylorSeries normal_form;
    // Terms above `order` left by the truncated transforms.
    FourierTaylorSeries remainder;
};

// Degree-by-degree normalization of H = omega r + O(r^{3/2}): at each degree
// d the (k, m) = (0, 0) component stays as A_d and the rest is removed by a
// generator from the homological equation.  omega is read from the (2,0,0)
// coefficient of H.  Requires order >= 4 even.  Kernel terms at odd degree
// are impossible under polynomial parity and asserted absent.
DepritResult deprit_normalize(const FourierTaylorSeries& H, int order);

// Same sweep through an arbitrary top degree (used to prepare a Hamiltonian
// so the perturbation starts at a prescribed degree).
DepritResult normalize_through_degree(const FourierTaylorSeries& H, int top_degree);

struct PhasePoint {
    double r = 0.0;
    double theta = 0.0;
    double t = 0.0;  // frozen during the flow
};

struct FlowResult {
    double r = 0.0;
    double theta = 0.0;
};

// Time-epsilon map of dr/de = F_theta, dtheta/de = -F_r at frozen t with
// fixed-step classical Runge-Kutta.  The integrator is deliberately generic
// (not symplectic), so area preservation of the result is a real check on F.
FlowResult flow_map_numeric(const FourierTaylorSeries& F, PhasePoint p,
                            double epsilon, int steps = 200);

// Same map with a step-halving error estimate (difference between `steps`
// and 2 * `steps` results, max over both coordinates).
struct FlowWithError {
    double r = 0.0;
    double theta = 0.0;
    double err = 0.0;
};
FlowWithError flow_map_with_error(const FourierTaylorSeries& F, PhasePoint p,
                                  double epsilon, int steps = 200);

}  // namespace kamnf
