#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kamnf/series.hpp"

namespace kamnf {

// One Fourier mode h e^{imt} of a coefficient function.
struct FourierMode {
    int m = 0;
    Complex h{};
};

// Coefficient of x^mu y^nu as a trigonometric polynomial in t.
struct CartesianTerm {
    int mu = 0;
    int nu = 0;
    std::vector<FourierMode> modes;
};

// Input model: H = omega (x^2 + y^2)/2 + sum h_{mu nu}(t) x^mu y^nu with
// every explicit term of total degree >= 3.
struct HamiltonianSpec {
    double omega = 0.0;
    double tau = 2.0;
    std::optional<double> alpha;
    std::vector<CartesianTerm> terms;
};

// Parse and validate the JSON document
//   { "omega": real, "tau": real, "alpha": real|null,
//     "terms": [ { "mu": int, "nu": int,
//                  "fourier": [ {"m": int, "re": real, "im": real} ] } ] }
// Unknown fields are rejected (ParseError).  Validation rules: mu + nu >= 3,
// no duplicate (mu, nu) or duplicate m entries, coefficients satisfying the
// reality condition h(-m) = conj(h(m)) within 1e-12, finite numbers, and a
// frequency that is not exactly p/q for q <= 1000 (RationalOmegaError).
HamiltonianSpec parse_spec(const std::string& json_text);
HamiltonianSpec load_spec(const std::string& path);

// Guards the normalization H2 = omega r: explicit quadratic terms
// (2,0), (1,1), (0,2) are rejected.  Returns omega.
double validate_h2(const HamiltonianSpec& spec);

// Expand into action-angle variables: x^mu y^nu picks up (2r)^{(mu+nu)/2}
// cos^mu theta sin^nu theta, written in e^{ik theta} harmonics.  The result
// carries H2 at (2, 0, 0), window [0, n_max], and both structure flags.
// Terms of total degree above n_max are dropped.
FourierTaylorSeries to_action_angle(const HamiltonianSpec& spec, int n_max);

// Inverse of the degree-j block of to_action_angle.  Rewrites a series with
// polynomial parity as Cartesian terms; used to emit generated instances as
// input documents.  The (2,0,0) coefficient is interpreted as omega.
HamiltonianSpec spec_from_series(const FourierTaylorSeries& h, double tau,
                                 std::optional<double> alpha);

std::string spec_to_json(const HamiltonianSpec& spec);

}  // namespace kamnf
