// Mode-by-mode solver for {F, omega r} + dF/dt = R and its quadrature check.
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "kamnf/errors.hpp"
#include "kamnf/homological.hpp"

using namespace kamnf;

namespace {

const double kGolden = 0.6180339887498949;
const double kGoldenAlpha = 0.3819660112501051;

// Random right-hand side supported off the kernel, optionally with k != 0
// only (for the integral representation) and real symmetry.
FourierTaylorSeries random_rhs(std::mt19937& rng, int terms, bool nonzero_k,
                               bool realsym) {
    std::uniform_int_distribution<int> nd(2, 8), kd(1, 5), md(-4, 4);
    std::uniform_real_distribution<double> cd(-1.0, 1.0);
    std::bernoulli_distribution flip(0.5);
    FourierTaylorSeries R;
    R.window = {0, 10};
    R.real_symmetric = realsym;
    for (int i = 0; i < terms; ++i) {
        int n = nd(rng);
        int k = kd(rng) * (flip(rng) ? 1 : -1);
        int m = md(rng);
        if (!nonzero_k && flip(rng)) k = 0;
        if (k == 0 && m == 0) m = 1;
        Complex c{cd(rng), cd(rng)};
        R.add_coeff(n, k, m, c);
        if (realsym) R.add_coeff(n, -k, -m, std::conj(c));
    }
    return R;
}

}  // namespace

TEST_CASE("mode rule on two hand-solved right-hand sides") {
    FourierTaylorSeries R;
    R.window = {0, 8};
    R.set_coeff(3, 1, 0, Complex{1.0, 0.0});
    FourierTaylorSeries F = solve(R, kGolden);
    // F = (i / omega) e^{i theta} r^{3/2}; 1/omega = omega + 1 for the golden
    // ratio.
    CHECK(F.coeff(3, 1, 0).real() == doctest::Approx(0.0));
    CHECK(F.coeff(3, 1, 0).imag() ==
          doctest::Approx(1.0 / kGolden).epsilon(1e-14));
    CHECK(F.coeff(3, 1, 0).imag() ==
          doctest::Approx(kGolden + 1.0).epsilon(1e-13));

    FourierTaylorSeries R2;
    R2.window = {0, 8};
    R2.set_coeff(4, 0, 2, Complex{1.0, 0.0});
    FourierTaylorSeries F2 = solve(R2, kGolden);
    CHECK(F2.coeff(4, 0, 2).real() == doctest::Approx(0.0));
    CHECK(F2.coeff(4, 0, 2).imag() == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("solver residual vanishes to roundoff") {
    std::mt19937 rng(8201);
    for (int rep = 0; rep < 10; ++rep) {
        FourierTaylorSeries R = random_rhs(rng, 12, false, false);
        FourierTaylorSeries F = solve(R, kGolden);
        FourierTaylorSeries res = residual(F, R, kGolden);
        double scale = majorant_norm(R, 1.0, 1.0) + 1.0;
        CHECK(majorant_norm(res, 1.0, 1.0) <= 1e-13 * scale);
    }
}

TEST_CASE("solver is linear") {
    std::mt19937 rng(8202);
    FourierTaylorSeries R1 = random_rhs(rng, 10, false, false);
    FourierTaylorSeries R2 = random_rhs(rng, 10, false, false);
    Complex a{0.7, -0.3}, b{-1.2, 0.4};
    FourierTaylorSeries lhs =
        solve(add(scale(R1, a), scale(R2, b)), kGolden);
    FourierTaylorSeries rhs =
        add(scale(solve(R1, kGolden), a), scale(solve(R2, kGolden), b));
    FourierTaylorSeries diff = sub(lhs, rhs);
    CHECK(majorant_norm(diff, 1.0, 1.0) <=
          1e-14 * (majorant_norm(lhs, 1.0, 1.0) + 1.0));
}

TEST_CASE("solver preserves real symmetry and degrees") {
    std::mt19937 rng(8203);
    FourierTaylorSeries R = random_rhs(rng, 12, false, true);
    FourierTaylorSeries F = solve(R, kGolden);
    CHECK(F.real_symmetric);
    CHECK(reality_check(F) <= 1e-13 * (F.max_abs_coeff() + 1.0));
    CHECK(F.term_count() == R.term_count());
    for (const auto& [i, c] : F.coeffs)
        CHECK(std::abs(R.coeff(i.n, i.k, i.m)) > 0.0);
}

TEST_CASE("kernel modes and near-resonances are refused") {
    FourierTaylorSeries R;
    R.window = {0, 8};
    R.set_coeff(4, 0, 0, Complex{1.0, 0.0});
    CHECK_THROWS_AS((void)solve(R, kGolden), ResonantModeError);

    // omega = 1/3 rounded to double leaves |1 - 3 omega| ~ 1e-16.
    FourierTaylorSeries R2;
    R2.window = {0, 8};
    R2.set_coeff(4, 3, 1, Complex{1.0, 0.0});
    CHECK_THROWS_AS((void)solve(R2, 1.0 / 3.0), SmallDivisorUnderflow);
    CHECK_NOTHROW((void)solve(R2, kGolden));
}

TEST_CASE("integral representation agrees with the mode rule") {
    std::mt19937 rng(8204);
    std::uniform_real_distribution<double> rd(0.05, 0.5), ad(0.0, 6.28),
        td(0.0, 1.0);
    for (int rep = 0; rep < 3; ++rep) {
        FourierTaylorSeries R = random_rhs(rng, 8, true, false);
        FourierTaylorSeries F = solve(R, kGolden);
        double scale = majorant_norm(R, 1.0, 1.0) + 1.0;
        for (int pt = 0; pt < 4; ++pt) {
            double r = rd(rng), theta = ad(rng), t = td(rng);
            Complex via_integral =
                integral_formula_eval(R, kGolden, t, theta, r);
            Complex via_modes =
                eval(F, Complex{r, 0.0}, Complex{theta, 0.0}, t);
            CHECK(std::abs(via_integral - via_modes) <= 1e-8 * scale);
        }
    }
}

TEST_CASE("integral representation refuses k = 0 modes") {
    FourierTaylorSeries R;
    R.window = {0, 8};
    R.set_coeff(4, 0, 1, Complex{1.0, 0.0});
    CHECK_THROWS_AS((void)integral_formula_eval(R, kGolden, 0.3, 1.0, 0.2),
                    ValidationError);
}

TEST_CASE("periodic-factor divisor bound holds along the golden frequency") {
    CHECK(divisor_lower_bound(5, kGoldenAlpha, 2.0) ==
          doctest::Approx(4.0 * kGoldenAlpha / 25.0).epsilon(1e-15));
    const double two_pi = 6.283185307179586;
    for (long long k = 1; k <= 2000; ++k) {
        double phase = two_pi * static_cast<double>(k) * kGolden;
        double actual = std::abs(1.0 - std::exp(Complex{0.0, phase}));
        CHECK(actual >= divisor_lower_bound(k, kGoldenAlpha, 2.0));
    }
}
