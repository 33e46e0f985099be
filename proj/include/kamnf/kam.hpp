#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kamnf/diophantine.hpp"
#include "kamnf/lie.hpp"
#include "kamnf/series.hpp"

namespace kamnf {

// Kernel coefficients below this fraction of the perturbation size are
// treated as numerical noise and dropped; above it the instance is declared
// non-linearizable and handed to the twist criterion.
inline constexpr double kKernelTolerance = 1e-10;

// Iteration is declared converged once the measured perturbation norm falls
// below this floor.
inline constexpr double kNormFloor = 1e-14;

// Solution-operator constant: c1 = (8/alpha) sup_{sigma in (0,1/4]}
// sigma^{tau+1} sum_{k>=1} k^tau e^{-k sigma}.  The sup is evaluated on a
// dense grid together with its sigma -> 0 limit Gamma(tau+1).
double compute_c1(double alpha, double tau);

// One row of the convergence schedule.
struct StepParams {
    int nu = 0;
    double s = 0.0;      // s_nu = 2^{q+nu} + 1
    double rho = 0.0;    // domain radii BEFORE the step
    double gamma = 0.0;
    double delta = 0.0;  // delta_nu = 4 (tau+3) (nu+q) ln2 / s_nu
    double sigma = 0.0;  // sigma_nu = 2^{-(nu+4)}
    double eps = 0.0;    // eps_nu = B c1 sigma^{-tau-3} e^{-s delta} delta^{-3}
    double th1 = 0.0;    // c1 sigma^{-tau-2} e^{-s delta} delta^{-2}, needs <= 1
};

struct KamSchedule {
    int q = 0;
    double tau = 0.0;
    double c1 = 0.0;
    double B = 1.5;   // norm inflation per step
    double c2 = 0.0;  // B c1
    double c3 = 0.0;  // c2 (4 (tau+3) ln 2)^{-3}
    std::vector<StepParams> steps;
    double rho_end = 0.0;    // radii after the last computed step
    double gamma_end = 0.0;
};

// Geometric schedule rho_{nu+1} = rho_nu - 4 delta_nu, gamma_{nu+1} =
// gamma_nu - 4 sigma_nu from rho_0 = gamma_0 = 1.  Raises DomainExhausted if
// either radius hits zero within `steps`.
KamSchedule build_schedule(int q, double tau, double c1, int steps);

struct ScheduleReport {
    double sum_delta = 0.0, delta_tail = 0.0;
    double sum_sigma = 0.0, sigma_tail = 0.0;
    double sum_eps = 0.0, eps_tail = 0.0;
    bool tails_bounded = false;  // horizon >= 20 so the tail estimates apply
    bool pf3 = false;            // sum delta <= 1/8 and sum sigma <= 1/8
    bool pf4 = false;            // sum eps <= 1/2
    bool th1_ok = false;         // th1_nu <= 1 at every computed step
    double th1_worst_margin = 0.0;  // min over steps of 1 - th1_nu
    bool feasible = false;          // pf3 && pf4 && th1_ok (tails included)
};

// Arithmetic verification of the schedule: partial sums plus closed-form
// tail bounds (delta: geometric; sigma: exact; eps: c3/(3q) sum nu^{-2}).
ScheduleReport verify_schedule(const KamSchedule& schedule);

// Smallest q in [1, 64] whose schedule is feasible over `horizon` steps
// (horizon >= 20 so tails are bounded).  Raises NotFound if none is.
int min_admissible_q(double tau, double c1, int horizon);

// Per-step record of the iteration.
struct StepReport {
    int nu = 0;
    int s = 0;
    int n_min = 0;                      // lowest degree of P before the step
    std::pair<int, int> truncation_range{0, 0};
    double kernel_mass = 0.0;           // kernel mass at n < 4s - 2 (noise if small)
    double norm_R = 0.0;                // majorant of R at (rho, gamma)
    double norm_F = 0.0;                // majorant of F at (rho-delta, gamma-sigma)
    double norm_P_next = 0.0;           // majorant of P+ at the reporting domain
    double lemma41_bound = 0.0;         // norm_R-scaled solution bound
    bool bound_satisfied = false;
};

// Ambient data for one quadratic step: domain radii and the constants of the
// solution-operator bound, plus the fixed reporting domain for norm_P_next.
struct StepContext {
    int nu = 0;
    double omega = 0.0;
    double rho = 1.0, gamma = 1.0;
    double delta = 0.05, sigma = 0.05;
    double c1 = 0.0, tau = 2.0;
    double norm_rho = 0.25, norm_gamma = 0.25;
    DegreeWindow window{0, 0};
};

struct KamStepResult {
    FourierTaylorSeries H_next;
    FourierTaylorSeries F;
    StepReport report;
};

// One quadratic step at order s: slice R = P|[2s, 4s-2], split off the
// kernel, solve for the generator, substitute.  Kernel mass at n < 4s - 2 is
// untouchable by any later bracket, so above tolerance it raises
// NonLinearizableError and below it is dropped as noise; the component at
// exactly n = 4s - 2 rides along in the Hamiltonian (it cancels under the
// transform iff the system is linearizable).  Raises DegreeViolation when
// n_min(P) < 2s or the post-step floor fails.
KamStepResult kam_step(const FourierTaylorSeries& H, int s, const StepContext& ctx);

struct TransformChain {
    std::vector<FourierTaylorSeries> generators;          // F_0, F_1, ...
    std::vector<std::pair<double, double>> domains;       // (rho, gamma) per step
};

// Evaluate the composite map phi_0 o phi_1 o ... o phi_{last} at a point by
// flowing through the generators from the innermost (last) outward.
FlowResult compose_eval(const TransformChain& chain, PhasePoint p,
                        int steps = 200);

enum class KamRunStatus {
    converged,         // perturbation norm fell below kNormFloor
    max_steps,         // stopped by the step budget
    window_exhausted,  // doubled degree left the working window
    non_linearizable,  // kernel mass above tolerance; twist path
};

struct NonLinearizableInfo {
    double kernel_mass = 0.0;
    int degree = 0;
    Complex coefficient{};
};

struct KamRunResult {
    KamRunStatus status = KamRunStatus::max_steps;
    std::vector<StepReport> steps;
    TransformChain chain;
    FourierTaylorSeries H_final;
    std::optional<NonLinearizableInfo> twist;  // set when non_linearizable
};

// Drive kam_step with the order ladder s_{nu+1} = 2 s_nu - 1, measuring the
// perturbation on the fixed domain (norm_rho, norm_gamma).  Reporting radii
// follow the dyadic ladder rho_nu = gamma_nu = 3/4 + 2^{-(nu+2)} with
// delta_nu = sigma_nu = 2^{-(nu+4)}.  A kernel above tolerance ends the run
// with the partial chain in the result instead of an exception.
KamRunResult kam_run(const FourierTaylorSeries& H, int s0, int max_steps,
                     DegreeWindow window, const DiophantineParams& params,
                     double norm_rho = 0.25, double norm_gamma = 0.25);

struct Lemma41Report {
    double norm_R = 0.0;
    double norm_F = 0.0, bound_F = 0.0;
    double norm_Fr = 0.0, bound_Fr = 0.0;
    double norm_Fth = 0.0, bound_Fth = 0.0;
    int violations = 0;  // how many of the three bounds failed
};

// Measure the solution of the homological equation against the three
// solution-operator bounds
//   |F|   <= c1 sigma^{-tau-1} e^{-s delta} delta^{-1}   on (rho-d, gamma-s)
//   |F_r| <= c1 sigma^{-tau-1} e^{-s delta} delta^{-2}   on (rho-2d, gamma-s)
//   |F_th|<= c1 sigma^{-tau-2} e^{-s delta} delta^{-1}   on (rho-d, gamma-2s)
// for |R| <= 1 on (rho, gamma).  Violations are recorded, not thrown.
Lemma41Report verify_lemma41(const FourierTaylorSeries& R, double omega,
                             const DiophantineParams& params, double rho,
                             double gamma, double delta, double sigma, int s);

}  // namespace kamnf
