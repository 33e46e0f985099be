// Command-line front end: normal forms, iteration runs, schedules, verdicts.
//
// Exit codes: 0 success (including every stability verdict), 2 bad input or
// flags, 3 twist obstruction found by the iteration path, 4 infeasible or
// exhausted schedule, 5 solver failure.

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kamnf/diophantine.hpp"
#include "kamnf/ingest.hpp"
#include "kamnf/kam.hpp"
#include "kamnf/lie.hpp"
#include "kamnf/report.hpp"

namespace {

using nlohmann::ordered_json;
using namespace kamnf;

// Normal-form kernel coefficients above this magnitude are genuine twist
// terms; below it they are roundoff from the sweep.
constexpr double kTwistTol = 1e-9;

// Estimated alpha below this is numerically indistinguishable from resonance.
constexpr double kAlphaInconclusive = 1e-8;

ordered_json summary_skeleton(const std::string& verdict) {
    ordered_json j;
    j["verdict"] = verdict;
    j["A"] = nullptr;
    j["steps"] = nullptr;
    j["schedule"] = nullptr;
    j["diophantine"] = nullptr;
    return j;
}

int finish(const ordered_json& summary, const std::string& out_path, int code) {
    std::cout << "verdict: " << summary["verdict"].get<std::string>() << "\n";
    if (!out_path.empty()) write_text_file(out_path, summary.dump(2) + "\n");
    return code;
}

ordered_json kernel_json(const std::vector<std::pair<int, Complex>>& ks) {
    ordered_json arr = ordered_json::array();
    for (const auto& [n, a] : ks) arr.push_back({n, a.real()});
    return arr;
}

DiophantineParams resolve_diophantine(const HamiltonianSpec& spec, long long K) {
    DiophantineParams params;
    params.omega = spec.omega;
    params.tau = spec.tau;
    params.alpha = spec.alpha ? *spec.alpha
                              : estimate_alpha(spec.omega, spec.tau, K);
    if (params.alpha > 0.0) check_condition(params, K);
    return params;
}

int cmd_normalize(const std::string& spec_path, int order, int window,
                  const std::string& out) {
    if (window < order)
        throw ValidationError("--window must be at least --order");
    HamiltonianSpec spec = load_spec(spec_path);
    FourierTaylorSeries H = to_action_angle(spec, window);
    DepritResult res = deprit_normalize(H, order);
    for (const auto& [n, a] : res.kernel_coeffs)
        std::cout << "A_" << n << " = " << fmt17(a.real()) << "\n";
    ordered_json j = summary_skeleton("normalized");
    j["A"] = kernel_json(res.kernel_coeffs);
    DiophantineParams dp;
    dp.omega = spec.omega;
    dp.alpha = spec.alpha.value_or(0.0);
    dp.tau = spec.tau;
    j["diophantine"] = diophantine_json(dp);
    return finish(j, out, 0);
}

int cmd_kam_run(const std::string& spec_path, int s0, int max_steps, int window,
                double rho_inf, double gamma_inf, long long K,
                const std::string& csv, const std::string& out) {
    if (window < 2 * s0)
        throw ValidationError("--window must be at least 2 * s0");
    HamiltonianSpec spec = load_spec(spec_path);
    FourierTaylorSeries H = to_action_angle(spec, window);
    DiophantineParams params = resolve_diophantine(spec, K);

    // Preparation: remove every non-kernel term below the first truncation
    // order so the perturbation starts at n >= 2 s0.  A kernel coefficient
    // surfacing here is already the twist verdict.
    DepritResult prep = normalize_through_degree(H, 2 * s0 - 1);
    for (const auto& [n, a] : prep.kernel_coeffs) {
        if (std::abs(a) <= kTwistTol) continue;
        std::cout << "twist coefficient at degree " << n << ": "
                  << fmt17(a.real()) << "\n";
        ordered_json j = summary_skeleton("stable (twist)");
        j["A"] = kernel_json(prep.kernel_coeffs);
        j["steps"] = steps_json({});
        j["diophantine"] = diophantine_json(params);
        if (!csv.empty()) write_text_file(csv, run_csv({}));
        return finish(j, out, 3);
    }

    FourierTaylorSeries H_run = prep.remainder;
    H_run.window = {0, window};
    H_run.set_coeff(2, 0, 0, Complex{spec.omega, 0.0});

    KamRunResult run = kam_run(H_run, s0, max_steps, {0, window}, params,
                               rho_inf, gamma_inf);
    for (const StepReport& r : run.steps)
        std::cout << "step " << r.nu << ": s = " << r.s << ", |R| = "
                  << fmt17(r.norm_R) << ", |P+| = " << fmt17(r.norm_P_next)
                  << "\n";
    if (!csv.empty()) write_text_file(csv, run_csv(run.steps));

    std::string verdict;
    int code = 0;
    ordered_json A = nullptr;
    switch (run.status) {
        case KamRunStatus::converged:
            verdict = "stable (linearizable)";
            break;
        case KamRunStatus::non_linearizable: {
            verdict = "stable (twist)";
            code = 3;
            const NonLinearizableInfo& info = *run.twist;
            A = ordered_json::array();
            A.push_back({info.degree, info.coefficient.real()});
            std::cout << "twist coefficient at degree " << info.degree << ": "
                      << fmt17(info.coefficient.real()) << "\n";
            break;
        }
        case KamRunStatus::max_steps:
            verdict = "partial (max steps)";
            break;
        case KamRunStatus::window_exhausted:
            verdict = "partial (window exhausted)";
            break;
    }
    ordered_json j = summary_skeleton(verdict);
    j["A"] = A;
    j["steps"] = steps_json(run.steps);
    j["diophantine"] = diophantine_json(params);
    return finish(j, out, code);
}

int cmd_schedule(double tau, double alpha, std::optional<double> omega,
                 long long K, int q, bool find_min, int steps,
                 const std::string& csv, const std::string& out) {
    double a = alpha;
    if (a <= 0.0) {
        if (!omega)
            throw ValidationError("schedule needs --alpha or --omega");
        a = estimate_alpha(*omega, tau, K);
        if (a <= 0.0)
            throw ValidationError("alpha estimate vanished; omega resonant");
    }
    double c1 = compute_c1(a, tau);
    DiophantineParams dp;
    dp.omega = omega.value_or(0.0);
    dp.alpha = a;
    dp.tau = tau;

    int use_q = q;
    if (find_min) {
        try {
            use_q = min_admissible_q(tau, c1, std::max(steps, 20));
        } catch (const NotFound& e) {
            std::cerr << e.what() << "\n";
            ordered_json j = summary_skeleton("infeasible");
            j["diophantine"] = diophantine_json(dp);
            return finish(j, out, 4);
        }
        std::cout << "minimal admissible q = " << use_q << "\n";
    } else if (use_q < 1) {
        throw ValidationError("schedule needs --q or --find-min-q");
    }

    KamSchedule sched;
    try {
        sched = build_schedule(use_q, tau, c1, steps);
    } catch (const DomainExhausted& e) {
        std::cerr << e.what() << "\n";
        ordered_json j = summary_skeleton("infeasible");
        j["schedule"] = ordered_json{{"q", use_q}, {"tau", tau}, {"c1", c1}};
        j["diophantine"] = diophantine_json(dp);
        return finish(j, out, 4);
    }
    ScheduleReport rep = verify_schedule(sched);
    if (!csv.empty()) write_text_file(csv, schedule_csv(sched));
    std::cout << "q = " << use_q << ", c1 = " << fmt17(c1) << ", steps = "
              << steps << "\n";
    std::cout << "sum delta = " << fmt17(rep.sum_delta) << " (tail "
              << fmt17(rep.delta_tail) << "), sum sigma = "
              << fmt17(rep.sum_sigma) << " (tail " << fmt17(rep.sigma_tail)
              << ")\n";
    std::cout << "sum eps = " << fmt17(rep.sum_eps) << " (tail "
              << fmt17(rep.eps_tail) << "), th1 worst margin = "
              << fmt17(rep.th1_worst_margin) << "\n";
    ordered_json j = summary_skeleton(rep.feasible ? "feasible" : "infeasible");
    j["schedule"] = schedule_json(sched, rep);
    j["diophantine"] = diophantine_json(dp);
    return finish(j, out, rep.feasible ? 0 : 4);
}

int cmd_diophantine(double omega, double tau, long long K,
                    const std::string& out) {
    std::vector<long long> cf = continued_fraction(omega, 24);
    DiophantineParams params;
    params.omega = omega;
    params.tau = tau;
    params.alpha = estimate_alpha(omega, tau, K);
    if (params.alpha > 0.0) check_condition(params, K);

    std::cout << "continued fraction: [";
    for (std::size_t i = 0; i < cf.size(); ++i)
        std::cout << (i ? ", " : "") << cf[i];
    std::cout << "]\n";
    std::cout << "alpha = " << fmt17(params.alpha) << " (tau = " << tau
              << ", K = " << K << ")\n";

    bool resonant = params.alpha < kAlphaInconclusive;
    ordered_json j = summary_skeleton(
        resonant ? "inconclusive (near-resonant omega)" : "diophantine");
    ordered_json dj = diophantine_json(params);
    dj["continued_fraction"] = cf;
    j["diophantine"] = dj;
    return finish(j, out, 0);
}

int cmd_verdict(const std::string& spec_path, int order, int window,
                long long K, const std::string& out) {
    if (window < order)
        throw ValidationError("--window must be at least --order");
    HamiltonianSpec spec;
    try {
        spec = load_spec(spec_path);
    } catch (const RationalOmegaError& e) {
        std::cout << e.what() << "\n";
        return finish(summary_skeleton("inconclusive (near-resonant omega)"),
                      out, 0);
    }
    FourierTaylorSeries H = to_action_angle(spec, window);
    DepritResult res = deprit_normalize(H, order);

    for (const auto& [n, a] : res.kernel_coeffs) {
        if (std::abs(a) <= kTwistTol) continue;
        std::cout << "twist coefficient at degree " << n << ": "
                  << fmt17(a.real()) << "\n";
        ordered_json j = summary_skeleton("stable (twist)");
        j["A"] = kernel_json(res.kernel_coeffs);
        DiophantineParams dp;
        dp.omega = spec.omega;
        dp.alpha = spec.alpha.value_or(0.0);
        dp.tau = spec.tau;
        j["diophantine"] = diophantine_json(dp);
        return finish(j, out, 0);
    }

    DiophantineParams params = resolve_diophantine(spec, K);
    ordered_json j;
    if (params.alpha < kAlphaInconclusive) {
        j = summary_skeleton("inconclusive (near-resonant omega)");
    } else {
        j = summary_skeleton("stable (linearizable)");
        std::cout << "no twist coefficient through order " << order
                  << "; alpha = " << fmt17(params.alpha) << "\n";
    }
    j["A"] = kernel_json(res.kernel_coeffs);
    j["diophantine"] = diophantine_json(params);
    return finish(j, out, 0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Normal forms and linearization for time-periodic "
                 "one-degree-of-freedom Hamiltonians near an elliptic "
                 "equilibrium"};
    app.require_subcommand(1);

    std::string spec_path, out, csv;
    int order = 8, window = 24, s0 = 3, run_steps = 8, sched_steps = 30, q = 0;
    long long K = 1000;
    double tau = 2.0, alpha = 0.0, rho_inf = 0.25, gamma_inf = 0.25;
    double omega = 0.0;
    bool find_min = false, omega_given = false;

    CLI::App* norm = app.add_subcommand(
        "normalize", "Kernel normal form through a given order");
    norm->add_option("spec", spec_path, "input document")->required();
    norm->add_option("--order", order, "normalization order (even, >= 4)");
    norm->add_option("--window", window, "working degree cap");
    norm->add_option("--out", out, "summary JSON path");

    CLI::App* run = app.add_subcommand(
        "kam-run", "Quadratic iteration toward the linearization");
    run->add_option("spec", spec_path, "input document")->required();
    run->add_option("--s0", s0, "first truncation order");
    run->add_option("--steps", run_steps, "step budget");
    run->add_option("--window", window, "working degree cap");
    run->add_option("--rho-inf", rho_inf, "action radius for norm reporting");
    run->add_option("--gamma-inf", gamma_inf, "angle strip for norm reporting");
    run->add_option("--K", K, "frequency check range for alpha");
    run->add_option("--csv", csv, "per-step CSV path");
    run->add_option("--out", out, "summary JSON path");

    CLI::App* sched = app.add_subcommand(
        "schedule", "Convergence schedule arithmetic and feasibility");
    sched->add_option("--tau", tau, "Diophantine exponent");
    sched->add_option("--alpha", alpha, "Diophantine constant");
    sched->add_option("--omega", omega, "frequency (alpha estimated from it)");
    sched->add_option("--K", K, "frequency check range for alpha");
    sched->add_option("--q", q, "schedule offset (s_0 = 2^q + 1)");
    sched->add_flag("--find-min-q", find_min, "scan for the smallest feasible q");
    sched->add_option("--steps", sched_steps, "schedule horizon");
    sched->add_option("--csv", csv, "per-step CSV path");
    sched->add_option("--out", out, "summary JSON path");

    CLI::App* dio = app.add_subcommand(
        "diophantine", "Continued fraction and small-divisor constant");
    dio->add_option("--omega", omega, "frequency")->required();
    dio->add_option("--tau", tau, "Diophantine exponent");
    dio->add_option("--K", K, "frequency check range");
    dio->add_option("--out", out, "summary JSON path");

    CLI::App* ver = app.add_subcommand(
        "verdict", "Stability verdict for an input document");
    ver->add_option("spec", spec_path, "input document")->required();
    ver->add_option("--order", order, "normalization order (even, >= 4)");
    ver->add_option("--window", window, "working degree cap");
    ver->add_option("--K", K, "frequency check range for alpha");
    ver->add_option("--out", out, "summary JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    omega_given = sched->count("--omega") > 0;

    try {
        if (app.got_subcommand(norm))
            return cmd_normalize(spec_path, order, window, out);
        if (app.got_subcommand(run))
            return cmd_kam_run(spec_path, s0, run_steps, window, rho_inf,
                               gamma_inf, K, csv, out);
        if (app.got_subcommand(sched))
            return cmd_schedule(tau, alpha,
                                omega_given ? std::optional<double>(omega)
                                            : std::nullopt,
                                K, q, find_min, sched_steps, csv, out);
        if (app.got_subcommand(dio))
            return cmd_diophantine(omega, tau, K, out);
        if (app.got_subcommand(ver))
            return cmd_verdict(spec_path, order, window, K, out);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const NotFound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
    return 2;
}
