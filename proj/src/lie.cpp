#include "kamnf/lie.hpp"

#include <cmath>
#include <string>

#include "kamnf/homological.hpp"

namespace kamnf {

namespace {

int require_generator_degree(const FourierTaylorSeries& F) {
    auto lo = F.min_degree();
    if (!lo) return 3;  // zero generator: identity transform
    if (*lo < 3)
        throw DegreeViolation("generator has n_min = " + std::to_string(*lo) +
                              "; need >= 3 so the series terminates");
    return *lo;
}

}  // namespace

FourierTaylorSeries lie_series_transform(const FourierTaylorSeries& H,
                                         const FourierTaylorSeries& F,
                                         DegreeWindow window) {
    require_generator_degree(F);
    FourierTaylorSeries Ft = deriv_t(F);

    // term_h = ad^j(H)/j!, term_g = ad^j(F_t)/(j+1)!
    FourierTaylorSeries term_h = H;
    FourierTaylorSeries term_g = scale(Ft, Complex{1.0, 0.0});
    FourierTaylorSeries out = sub(term_h, scale(term_g, Complex{1.0, 0.0}));
    for (int j = 1;; ++j) {
        if (term_h.empty() && term_g.empty()) break;
        term_h = scale(poisson_bracket(term_h, F, window), Complex{1.0 / j, 0.0});
        term_g = scale(poisson_bracket(term_g, F, window), Complex{1.0 / (j + 1), 0.0});
        if (term_h.empty() && term_g.empty()) break;
        out = add(out, sub(term_h, term_g));
    }
    out.window = window;
    return out;
}

FourierTaylorSeries kam_step_transform(const FourierTaylorSeries& H,
                                       const FourierTaylorSeries& F,
                                       const FourierTaylorSeries& R,
                                       DegreeWindow window, int degree_floor) {
    require_generator_degree(F);
    if (R.empty()) return H;
    FourierTaylorSeries h2;
    h2.window = window;
    h2.polynomial_origin = H.polynomial_origin;
    h2.real_symmetric = H.real_symmetric;
    h2.set_coeff(2, 0, 0, H.coeff(2, 0, 0));

    FourierTaylorSeries P = H;
    P.set_coeff(2, 0, 0, Complex{0.0, 0.0});

    // P+ = (P - R) + sum_{j>=1} [ ad^j(P)/j! - ad^j(R)/(j+1)! ].
    // The j = 0 difference removes R's indices from P exactly, and every
    // bracket term lands at n >= 2 n_min(R) - 2 by degree arithmetic.
    FourierTaylorSeries p_next = sub(P, R);
    FourierTaylorSeries ad_p = P;
    FourierTaylorSeries ad_r = R;
    double jfact = 1.0;
    for (int j = 1;; ++j) {
        if (ad_p.empty() && ad_r.empty()) break;
        ad_p = poisson_bracket(ad_p, F, window);
        ad_r = poisson_bracket(ad_r, F, window);
        if (ad_p.empty() && ad_r.empty()) break;
        jfact *= j;
        p_next = add(p_next, sub(scale(ad_p, Complex{1.0 / jfact, 0.0}),
                                 scale(ad_r, Complex{1.0 / (jfact * (j + 1)), 0.0})));
    }

    if (auto lo = p_next.min_degree(); lo && *lo < degree_floor)
        throw DegreeViolation("post-step perturbation starts at n = " +
                              std::to_string(*lo) + ", expected >= " +
                              std::to_string(degree_floor));
    FourierTaylorSeries out = add(h2, p_next);
    out.window = window;
    return out;
}

namespace {

DepritResult normalize_sweep(const FourierTaylorSeries& H, int top_degree) {
    double omega = H.coeff(2, 0, 0).real();
    if (omega == 0.0)
        throw ValidationError("normalization needs a nonzero (2,0,0) coefficient");
    DegreeWindow window = H.window;

    DepritResult res;
    FourierTaylorSeries current = H;
    {
        FourierTaylorSeries low = slice(current, 0, 2);
        low.set_coeff(2, 0, 0, Complex{0.0, 0.0});
        if (!low.empty())
            throw ValidationError("perturbation has terms of degree n <= 2; "
                                  "only H2 may live there");
    }

    for (int d = 3; d <= top_degree; ++d) {
        FourierTaylorSeries datum = slice(current, d, d);
        datum.set_coeff(2, 0, 0, Complex{0.0, 0.0});
        KernelSplit split = kernel_project(datum);

        if (current.polynomial_origin && d % 2 == 1 && !split.kernel.empty())
            throw ValidationError("kernel term at odd degree " + std::to_string(d) +
                                  " breaks polynomial parity");

        FourierTaylorSeries W;
        W.window = window;
        if (!split.range.empty()) {
            W = solve(split.range, omega);
            // current <- H2 + (P - R) + sum_{j>=1} ad^j(P/j! - R/(j+1)!),
            // P = current - H2, R = the degree-d range part.  Identical to the
            // quadratic-step rearrangement; removal of R is exact, brackets
            // only feed degrees > d.
            FourierTaylorSeries h2only;
            h2only.window = window;
            h2only.polynomial_origin = current.polynomial_origin;
            h2only.real_symmetric = current.real_symmetric;
            h2only.set_coeff(2, 0, 0, current.coeff(2, 0, 0));
            FourierTaylorSeries P = current;
            P.set_coeff(2, 0, 0, Complex{0.0, 0.0});

            FourierTaylorSeries acc = sub(P, split.range);
            FourierTaylorSeries ad_p = P;
            FourierTaylorSeries ad_r = split.range;
            double jfact = 1.0;
            for (int j = 1;; ++j) {
                if (ad_p.empty() && ad_r.empty()) break;
                ad_p = poisson_bracket(ad_p, W, window);
                ad_r = poisson_bracket(ad_r, W, window);
                if (ad_p.empty() && ad_r.empty()) break;
                jfact *= j;
                acc = add(acc, sub(scale(ad_p, Complex{1.0 / jfact, 0.0}),
                                   scale(ad_r, Complex{1.0 / (jfact * (j + 1)), 0.0})));
            }
            current = add(h2only, acc);
        }
        res.generators.push_back(std::move(W));
    }

    // Everything at or below top_degree is now a kernel monomial: removals
    // were exact and brackets during the degree-d pass only feed n > d.
    FourierTaylorSeries low = slice(current, 0, top_degree);
    low.set_coeff(2, 0, 0, Complex{0.0, 0.0});
    KernelSplit ks = kernel_project(low);
    if (!ks.range.empty())
        throw Error("internal: non-kernel residue survived the normalization sweep");

    res.normal_form.window = window;
    res.normal_form.polynomial_origin = current.polynomial_origin;
    res.normal_form.real_symmetric = current.real_symmetric;
    res.normal_form.set_coeff(2, 0, 0, current.coeff(2, 0, 0));
    for (const auto& [i, c] : ks.kernel.coeffs) {
        res.kernel_coeffs.emplace_back(i.n, c);
        res.normal_form.set_coeff(i.n, i.k, i.m, c);
    }
    res.remainder = slice(current, top_degree + 1, window.n_max);
    res.remainder.window = window;
    return res;
}

}  // namespace

DepritResult deprit_normalize(const FourierTaylorSeries& H, int order) {
    if (order < 4 || order % 2 != 0)
        throw ValidationError("normalization order must be even and >= 4");
    return normalize_sweep(H, order);
}

DepritResult normalize_through_degree(const FourierTaylorSeries& H, int top_degree) {
    if (top_degree < 3)
        throw ValidationError("top degree must be >= 3");
    return normalize_sweep(H, top_degree);
}

namespace {

struct FlowField {
    FourierTaylorSeries f_theta;  // dr/de
    FourierTaylorSeries f_r;      // -dtheta/de

    explicit FlowField(const FourierTaylorSeries& F)
        : f_theta(deriv_theta(F)), f_r(deriv_r(F)) {}

    void rhs(double r, double theta, double t, double& dr, double& dtheta) const {
        dr = eval(f_theta, Complex{r, 0.0}, Complex{theta, 0.0}, t).real();
        dtheta = -eval(f_r, Complex{r, 0.0}, Complex{theta, 0.0}, t).real();
    }
};

}  // namespace

FlowResult flow_map_numeric(const FourierTaylorSeries& F, PhasePoint p,
                            double epsilon, int steps) {
    if (steps < 1) throw ValidationError("flow integration needs steps >= 1");
    FlowField field(F);
    double r = p.r, theta = p.theta;
    double h = epsilon / steps;
    for (int i = 0; i < steps; ++i) {
        double k1r, k1h, k2r, k2h, k3r, k3h, k4r, k4h;
        field.rhs(r, theta, p.t, k1r, k1h);
        field.rhs(r + 0.5 * h * k1r, theta + 0.5 * h * k1h, p.t, k2r, k2h);
        field.rhs(r + 0.5 * h * k2r, theta + 0.5 * h * k2h, p.t, k3r, k3h);
        field.rhs(r + h * k3r, theta + h * k3h, p.t, k4r, k4h);
        r += h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
        theta += h / 6.0 * (k1h + 2.0 * k2h + 2.0 * k3h + k4h);
    }
    return {r, theta};
}

FlowWithError flow_map_with_error(const FourierTaylorSeries& F, PhasePoint p,
                                  double epsilon, int steps) {
    FlowResult coarse = flow_map_numeric(F, p, epsilon, steps);
    FlowResult fine = flow_map_numeric(F, p, epsilon, 2 * steps);
    double err = std::max(std::abs(coarse.r - fine.r),
                          std::abs(coarse.theta - fine.theta));
    return {fine.r, fine.theta, err};
}

}  // namespace kamnf
