#include "kamnf/homological.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

namespace kamnf {

FourierTaylorSeries solve(const FourierTaylorSeries& R, double omega) {
    FourierTaylorSeries F;
    F.window = R.window;
    F.polynomial_origin = R.polynomial_origin;
    F.real_symmetric = R.real_symmetric;
    for (const auto& [i, c] : R.coeffs) {
        if (i.k == 0 && i.m == 0)
            throw ResonantModeError("resonant mode at n = " + std::to_string(i.n));
        double d = i.m - i.k * omega;
        if (std::abs(d) < kDivisorFloor)
            throw SmallDivisorUnderflow("divisor " + std::to_string(d) + " at (k, m) = (" +
                                        std::to_string(i.k) + ", " + std::to_string(i.m) + ")");
        // 1 / (i d) = -i / d
        F.coeffs.emplace(i, c * Complex{0.0, -1.0 / d});
    }
    return F;
}

FourierTaylorSeries residual(const FourierTaylorSeries& F,
                             const FourierTaylorSeries& R, double omega) {
    DegreeWindow w{std::min(F.window.n_min, R.window.n_min),
                   std::max(F.window.n_max, R.window.n_max)};
    FourierTaylorSeries lie = add(poisson_bracket(F, h2_series(omega), w), deriv_t(F));
    return sub(lie, R);
}

namespace {

// Adaptive Simpson on a complex integrand; abs_tol applies to the result.
class SimpsonIntegrator {
  public:
    SimpsonIntegrator(std::function<Complex(double)> f, double abs_tol)
        : f_(std::move(f)), tol_(abs_tol) {}

    Complex integrate(double a, double b) {
        Complex fa = f_(a), fb = f_(b), fm = f_((a + b) / 2);
        return recurse(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol_, 0);
    }

  private:
    static Complex simpson(double a, double b, Complex fa, Complex fm, Complex fb) {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }

    Complex recurse(double a, double b, Complex fa, Complex fm, Complex fb,
                    Complex whole, double tol, int depth) {
        if (depth > kMaxDepth)
            throw QuadratureError("adaptive quadrature exceeded depth " +
                                  std::to_string(kMaxDepth));
        double m = (a + b) / 2;
        Complex flm = f_((a + m) / 2), frm = f_((m + b) / 2);
        Complex left = simpson(a, m, fa, flm, fm);
        Complex right = simpson(m, b, fm, frm, fb);
        Complex delta = left + right - whole;
        if (std::abs(delta) <= 15.0 * tol)
            return left + right + delta / 15.0;
        return recurse(a, m, fa, flm, fm, left, tol / 2, depth + 1) +
               recurse(m, b, fm, frm, fb, right, tol / 2, depth + 1);
    }

    std::function<Complex(double)> f_;
    double tol_;
    static constexpr int kMaxDepth = 40;
};

}  // namespace

Complex integral_formula_eval(const FourierTaylorSeries& R, double omega,
                              double t, double theta, double r, double tol) {
    // Collapse the r-dependence: for each harmonic k collect
    // R_k(s) = sum_m amp_{km} e^{im s} with amp_{km} = sum_n c_{nkm} r^{n/2}.
    std::map<int, std::map<int, Complex>> modes;
    for (const auto& [i, c] : R.coeffs) {
        if (i.k == 0)
            throw ValidationError("integral_formula_eval expects no k = 0 modes");
        modes[i.k][i.m] += c * std::pow(r, 0.5 * i.n);
    }

    const double two_pi = 2.0 * std::numbers::pi;
    Complex total{0.0, 0.0};
    for (const auto& [k, amps] : modes) {
        double scale = 0.0;
        for (const auto& [m, a] : amps) scale += std::abs(a);
        if (scale == 0.0) continue;

        auto integrand = [&](double s) {
            Complex v{0.0, 0.0};
            for (const auto& [m, a] : amps)
                v += a * std::exp(Complex{0.0, static_cast<double>(m) * s});
            return v * std::exp(Complex{0.0, -k * omega * s});
        };
        // Absolute tolerance scaled to the integrand size and interval length.
        SimpsonIntegrator quad(integrand, tol * scale * two_pi);

        Complex i1 = (t == 0.0) ? Complex{0.0, 0.0} : quad.integrate(0.0, t);
        Complex i2 = quad.integrate(-two_pi, 0.0);
        Complex denom = 1.0 - std::exp(Complex{0.0, two_pi * k * omega});
        Complex fk = std::exp(Complex{0.0, k * omega * t}) * (i1 + i2 / denom);
        total += fk * std::exp(Complex{0.0, static_cast<double>(k) * theta});
    }
    return total;
}

double divisor_lower_bound(long long k, double alpha, double tau) {
    if (k == 0) throw ValidationError("divisor_lower_bound needs k != 0");
    return 4.0 * alpha / std::pow(static_cast<double>(std::llabs(k)), tau);
}

}  // namespace kamnf
