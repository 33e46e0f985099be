// Convergence schedule arithmetic and the quadratic iteration driver.

#include "kamnf/kam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kamnf/homological.hpp"

namespace kamnf {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// sum_{k>=1} k^tau e^{-k sigma}, summed until far past the peak k ~ tau/sigma.
double weighted_mode_sum(double tau, double sigma) {
    double sum = 0.0;
    for (long long k = 1; k <= 100000000; ++k) {
        double term = std::pow(static_cast<double>(k), tau) *
                      std::exp(-static_cast<double>(k) * sigma);
        sum += term;
        if (static_cast<double>(k) * sigma > tau && term < 1e-18 * (sum + 1.0))
            break;
    }
    return sum;
}

FourierTaylorSeries perturbation_part(const FourierTaylorSeries& H) {
    FourierTaylorSeries P = H;
    P.set_coeff(2, 0, 0, Complex{0.0, 0.0});
    return P;
}

double read_omega(const FourierTaylorSeries& H) {
    Complex w = H.coeff(2, 0, 0);
    if (std::abs(w.imag()) > 1e-12 * std::max(1.0, std::abs(w.real())))
        throw ValidationError("rotation coefficient at (2,0,0) must be real");
    if (std::abs(w.real()) < 1e-12)
        throw ValidationError("rotation coefficient at (2,0,0) is zero");
    return w.real();
}

}  // namespace

double compute_c1(double alpha, double tau) {
    if (alpha <= 0.0) throw ValidationError("c1 needs alpha > 0");
    if (tau <= 0.0) throw ValidationError("c1 needs tau > 0");
    // The weighted sum sigma^{tau+1} sum k^tau e^{-k sigma} increases toward
    // sigma -> 0 with limit Gamma(tau+1), so the limit joins the grid as a
    // candidate for the sup.
    double best = std::tgamma(tau + 1.0);
    constexpr int kGrid = 256;
    for (int j = 1; j <= kGrid; ++j) {
        double sigma = 0.25 * static_cast<double>(j) / kGrid;
        double value = std::pow(sigma, tau + 1.0) * weighted_mode_sum(tau, sigma);
        best = std::max(best, value);
    }
    return 8.0 / alpha * best;
}

KamSchedule build_schedule(int q, double tau, double c1, int steps) {
    if (q < 1) throw ValidationError("schedule needs q >= 1");
    if (steps < 1) throw ValidationError("schedule needs at least one step");
    if (c1 <= 0.0 || tau <= 0.0) throw ValidationError("schedule needs c1, tau > 0");

    KamSchedule sched;
    sched.q = q;
    sched.tau = tau;
    sched.c1 = c1;
    sched.c2 = sched.B * c1;
    sched.c3 = sched.c2 / std::pow(4.0 * (tau + 3.0) * kLn2, 3.0);

    double rho = 1.0, gamma = 1.0;
    for (int nu = 0; nu < steps; ++nu) {
        if (rho <= 0.0 || gamma <= 0.0)
            throw DomainExhausted("analyticity radii exhausted before step " +
                                  std::to_string(nu) + " (rho = " +
                                  std::to_string(rho) + ", gamma = " +
                                  std::to_string(gamma) + ")");
        StepParams p;
        p.nu = nu;
        p.s = std::ldexp(1.0, q + nu) + 1.0;
        p.sigma = std::ldexp(1.0, -(nu + 4));
        p.delta = 4.0 * (tau + 3.0) * static_cast<double>(nu + q) * kLn2 / p.s;
        p.rho = rho;
        p.gamma = gamma;
        // s delta = 4 (tau+3) (nu+q) ln 2, so e^{-s delta} = 2^{-4(tau+3)(nu+q)}.
        // Worked in logs: the sigma powers overflow double long before the
        // exponential factor stops flushing the product to zero.
        double log_decay = -p.s * p.delta;
        p.eps = std::exp(std::log(sched.c2) - (tau + 3.0) * std::log(p.sigma) +
                         log_decay - 3.0 * std::log(p.delta));
        p.th1 = std::exp(std::log(c1) - (tau + 2.0) * std::log(p.sigma) +
                         log_decay - 2.0 * std::log(p.delta));
        sched.steps.push_back(p);
        rho -= 4.0 * p.delta;
        gamma -= 4.0 * p.sigma;
    }
    sched.rho_end = rho;
    sched.gamma_end = gamma;
    return sched;
}

ScheduleReport verify_schedule(const KamSchedule& schedule) {
    ScheduleReport rep;
    const int N = static_cast<int>(schedule.steps.size());
    const int q = schedule.q;
    const double tau = schedule.tau;

    double worst = std::numeric_limits<double>::infinity();
    bool th1_ok = true;
    for (const StepParams& p : schedule.steps) {
        rep.sum_delta += p.delta;
        rep.sum_sigma += p.sigma;
        rep.sum_eps += p.eps;
        double margin = 1.0 - p.th1;
        worst = std::min(worst, margin);
        if (p.th1 > 1.0) th1_ok = false;
    }
    rep.th1_worst_margin = schedule.steps.empty() ? 0.0 : worst;
    rep.th1_ok = th1_ok;

    rep.tails_bounded = N >= 20;
    if (rep.tails_bounded) {
        // delta_nu <= 4 (tau+3) ln2 (nu+q) 2^{-(q+nu)} since s_nu > 2^{q+nu};
        // sum_{nu>=N} (nu+q) 2^{-nu} = 2^{-N} (2(N+q) + 2).
        rep.delta_tail = 8.0 * (tau + 3.0) * kLn2 *
                         static_cast<double>(N + q + 1) * std::ldexp(1.0, -(q + N));
        // sum_{nu>=N} 2^{-(nu+4)} = 2^{-(N+3)}, exact in binary.
        rep.sigma_tail = std::ldexp(1.0, -(N + 3));
        // For nu >= 20 the power-of-two factor in eps_nu is below one, so
        // eps_nu <= c3 (nu+q)^{-3}; integral comparison bounds the tail.
        rep.eps_tail = schedule.c3 /
                       (2.0 * std::pow(static_cast<double>(N + q - 1), 2.0));
    }

    rep.pf3 = rep.sum_delta + rep.delta_tail <= 0.125 &&
              rep.sum_sigma + rep.sigma_tail <= 0.125;
    rep.pf4 = rep.sum_eps + rep.eps_tail <= 0.5;
    rep.feasible = rep.pf3 && rep.pf4 && rep.th1_ok;
    return rep;
}

int min_admissible_q(double tau, double c1, int horizon) {
    if (horizon < 20)
        throw ValidationError("feasibility scan needs horizon >= 20 so the "
                              "tail bounds apply");
    for (int q = 1; q <= 64; ++q) {
        KamSchedule sched;
        try {
            sched = build_schedule(q, tau, c1, horizon);
        } catch (const DomainExhausted&) {
            continue;
        }
        if (verify_schedule(sched).feasible) return q;
    }
    throw NotFound("no q in [1, 64] gives a feasible schedule");
}

KamStepResult kam_step(const FourierTaylorSeries& H, int s, const StepContext& ctx) {
    if (s < 2) throw ValidationError("quadratic step needs s >= 2");
    const double omega = read_omega(H);

    FourierTaylorSeries P = perturbation_part(H);
    StepReport rep;
    rep.nu = ctx.nu;
    rep.s = s;
    rep.truncation_range = {2 * s, 4 * s - 2};

    auto lo = P.min_degree();
    rep.n_min = lo ? *lo : 0;
    if (lo && *lo < 2 * s)
        throw DegreeViolation("perturbation starts at n = " + std::to_string(*lo) +
                              ", step at order s = " + std::to_string(s) +
                              " needs n >= " + std::to_string(2 * s));

    FourierTaylorSeries R = slice(P, 2 * s, 4 * s - 2);
    KernelSplit split = kernel_project(R);

    // Every bracket this or any later step produces lands at degree
    // >= 4s - 2, so a kernel coefficient at n < 4s - 2 can never again be
    // altered: real mass there obstructs linearization, smaller mass is
    // numerical junk (dropped from both R and the Hamiltonian).  The kernel
    // component at exactly n = 4s - 2 is coordinate-dependent: it stays in
    // the Hamiltonian, outside R, and is cancelled by the transform's own
    // brackets precisely when the system is linearizable.
    double strict_mass = 0.0;
    for (const auto& [idx, c] : split.kernel.coeffs)
        if (idx.n < 4 * s - 2) strict_mass += std::abs(c);
    rep.kernel_mass = strict_mass;
    double tolerance = kKernelTolerance * majorant_norm(P, 1.0, 1.0);
    FourierTaylorSeries working = H;
    if (strict_mass > tolerance) {
        for (const auto& [idx, c] : split.kernel.coeffs) {
            if (idx.n >= 4 * s - 2) continue;
            throw NonLinearizableError(
                "kernel component at degree n = " + std::to_string(idx.n) +
                " obstructs the iteration", strict_mass, idx.n, c);
        }
    }
    for (const auto& [idx, c] : split.kernel.coeffs)
        if (idx.n < 4 * s - 2)
            working.set_coeff(idx.n, idx.k, idx.m, Complex{0.0, 0.0});
    R = split.range;

    FourierTaylorSeries F = solve(R, omega);
    FourierTaylorSeries H_next =
        kam_step_transform(working, F, R, ctx.window, 4 * s - 2);

    rep.norm_R = majorant_norm(R, ctx.rho, ctx.gamma);
    rep.norm_F = majorant_norm(F, ctx.rho - ctx.delta, ctx.gamma - ctx.sigma);
    rep.norm_P_next =
        majorant_norm(perturbation_part(H_next), ctx.norm_rho, ctx.norm_gamma);
    rep.lemma41_bound = ctx.c1 * rep.norm_R *
                        std::pow(ctx.sigma, -(ctx.tau + 1.0)) *
                        std::exp(-static_cast<double>(s) * ctx.delta) / ctx.delta;
    rep.bound_satisfied = rep.norm_F <= rep.lemma41_bound;
    return {std::move(H_next), std::move(F), rep};
}

FlowResult compose_eval(const TransformChain& chain, PhasePoint p, int steps) {
    PhasePoint cur = p;
    for (auto it = chain.generators.rbegin(); it != chain.generators.rend(); ++it) {
        FlowResult fr = flow_map_numeric(*it, cur, 1.0, steps);
        cur.r = fr.r;
        cur.theta = fr.theta;
    }
    return {cur.r, cur.theta};
}

KamRunResult kam_run(const FourierTaylorSeries& H, int s0, int max_steps,
                     DegreeWindow window, const DiophantineParams& params,
                     double norm_rho, double norm_gamma) {
    if (s0 < 2) throw ValidationError("iteration needs s0 >= 2");
    if (max_steps < 1) throw ValidationError("iteration needs max_steps >= 1");
    const double omega = read_omega(H);
    if (std::abs(params.omega - omega) > 1e-12)
        throw ValidationError("frequency in the Diophantine data does not "
                              "match the Hamiltonian");
    if (params.alpha <= 0.0)
        throw ValidationError("iteration needs an estimated alpha > 0");
    const double c1 = compute_c1(params.alpha, params.tau);

    KamRunResult result;
    FourierTaylorSeries current = H;
    current.window = window;
    int s = s0;
    for (int nu = 0;; ++nu) {
        double norm_P = majorant_norm(perturbation_part(current), norm_rho, norm_gamma);
        if (norm_P < kNormFloor) {
            result.status = KamRunStatus::converged;
            break;
        }
        if (2 * s > window.n_max) {
            result.status = KamRunStatus::window_exhausted;
            break;
        }
        if (nu >= max_steps) {
            result.status = KamRunStatus::max_steps;
            break;
        }

        StepContext ctx;
        ctx.nu = nu;
        ctx.omega = omega;
        ctx.rho = 0.75 + std::ldexp(1.0, -(nu + 2));
        ctx.gamma = ctx.rho;
        ctx.delta = std::ldexp(1.0, -(nu + 4));
        ctx.sigma = ctx.delta;
        ctx.c1 = c1;
        ctx.tau = params.tau;
        ctx.norm_rho = norm_rho;
        ctx.norm_gamma = norm_gamma;
        ctx.window = window;

        KamStepResult step;
        try {
            step = kam_step(current, s, ctx);
        } catch (const NonLinearizableError& e) {
            result.status = KamRunStatus::non_linearizable;
            result.twist = NonLinearizableInfo{e.kernel_mass, e.degree, e.coefficient};
            break;
        }
        result.steps.push_back(step.report);
        result.chain.generators.push_back(step.F);
        result.chain.domains.emplace_back(ctx.rho, ctx.gamma);
        current = step.H_next;
        s = 2 * s - 1;
    }
    result.H_final = current;
    return result;
}

Lemma41Report verify_lemma41(const FourierTaylorSeries& R, double omega,
                             const DiophantineParams& params, double rho,
                             double gamma, double delta, double sigma, int s) {
    if (rho - 2.0 * delta <= 0.0 || gamma - 2.0 * sigma <= 0.0)
        throw ValidationError("shrunk domain is empty");
    const double c1 = compute_c1(params.alpha, params.tau);
    const double tau = params.tau;
    const double decay = std::exp(-static_cast<double>(s) * delta);

    Lemma41Report rep;
    rep.norm_R = majorant_norm(R, rho, gamma);
    FourierTaylorSeries F = solve(R, omega);

    rep.norm_F = majorant_norm(F, rho - delta, gamma - sigma);
    rep.bound_F = c1 * rep.norm_R * std::pow(sigma, -(tau + 1.0)) * decay / delta;

    rep.norm_Fr = majorant_norm(deriv_r(F), rho - 2.0 * delta, gamma - sigma);
    rep.bound_Fr =
        c1 * rep.norm_R * std::pow(sigma, -(tau + 1.0)) * decay / (delta * delta);

    rep.norm_Fth = majorant_norm(deriv_theta(F), rho - delta, gamma - 2.0 * sigma);
    rep.bound_Fth = c1 * rep.norm_R * std::pow(sigma, -(tau + 2.0)) * decay / delta;

    rep.violations = (rep.norm_F > rep.bound_F ? 1 : 0) +
                     (rep.norm_Fr > rep.bound_Fr ? 1 : 0) +
                     (rep.norm_Fth > rep.bound_Fth ? 1 : 0);
    return rep;
}

}  // namespace kamnf
