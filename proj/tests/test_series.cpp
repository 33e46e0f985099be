// Series container, arithmetic, brackets, and norms.
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "kamnf/series.hpp"

using namespace kamnf;

namespace {

// Random series with n in [n_lo, n_hi].  With parity set, k is drawn so that
// |k| <= n and n - k is even; with realsym set, the conjugate partner is
// added so the series is real for real arguments.
FourierTaylorSeries random_series(std::mt19937& rng, int n_lo, int n_hi,
                                  int terms, DegreeWindow window, bool parity,
                                  bool realsym) {
    std::uniform_int_distribution<int> nd(n_lo, n_hi), md(-4, 4);
    std::uniform_real_distribution<double> cd(-1.0, 1.0);
    FourierTaylorSeries f;
    f.window = window;
    f.polynomial_origin = parity;
    f.real_symmetric = realsym;
    for (int i = 0; i < terms; ++i) {
        int n = nd(rng);
        int k;
        if (parity) {
            std::uniform_int_distribution<int> jd(0, n);
            k = 2 * jd(rng) - n;
        } else {
            std::uniform_int_distribution<int> kd(-n_hi, n_hi);
            k = kd(rng);
        }
        int m = md(rng);
        Complex c{cd(rng), cd(rng)};
        f.add_coeff(n, k, m, c);
        if (realsym) f.add_coeff(n, -k, -m, std::conj(c));
    }
    return f;
}

// x = sqrt(2 r) cos theta as a series: coefficients sqrt(2)/2 at (1, +-1, 0).
FourierTaylorSeries x_series(DegreeWindow window) {
    FourierTaylorSeries x;
    x.window = window;
    x.polynomial_origin = true;
    x.real_symmetric = true;
    x.set_coeff(1, 1, 0, Complex{std::sqrt(2.0) / 2.0, 0.0});
    x.set_coeff(1, -1, 0, Complex{std::sqrt(2.0) / 2.0, 0.0});
    return x;
}

}  // namespace

TEST_CASE("coefficient storage drops exact zeros") {
    FourierTaylorSeries f;
    f.window = {0, 8};
    f.set_coeff(4, 2, -1, Complex{1.5, 0.0});
    CHECK(f.term_count() == 1);
    f.add_coeff(4, 2, -1, Complex{-1.5, 0.0});
    CHECK(f.empty());
    f.set_coeff(3, 1, 0, Complex{2.0, 0.0});
    f.set_coeff(3, 1, 0, Complex{0.0, 0.0});
    CHECK(f.empty());
}

TEST_CASE("majorant weights half-integer degrees and harmonics") {
    // e^{i theta} r^{1/2} at rho = 0.25, gamma = 0.5: 0.5 * e^{0.5}.
    FourierTaylorSeries f;
    f.window = {0, 4};
    f.set_coeff(1, 1, 0, Complex{1.0, 0.0});
    CHECK(majorant_norm(f, 0.25, 0.5) ==
          doctest::Approx(0.8243606353500641).epsilon(1e-14));
    CHECK(majorant_norm(f, 0.25, 0.5) == doctest::Approx(0.5 * std::exp(0.5)));
}

TEST_CASE("product matches the binomial expansion of powers of x") {
    DegreeWindow w{0, 12};
    FourierTaylorSeries x = x_series(w);
    FourierTaylorSeries x3 = mul(mul(x, x, w), x, w);

    const double s = std::sqrt(2.0);
    CHECK(x3.coeff(3, 3, 0).real() == doctest::Approx(s / 4.0).epsilon(1e-14));
    CHECK(x3.coeff(3, 1, 0).real() ==
          doctest::Approx(3.0 * s / 4.0).epsilon(1e-14));
    CHECK(x3.coeff(3, -1, 0) == x3.coeff(3, 1, 0));
    CHECK(x3.term_count() == 4);

    // (x^3)^2 = x^6 = r^3/8 (e^{6i th} + 6 e^{4i th} + 15 e^{2i th} + 20 + c.c.)
    FourierTaylorSeries x6 = mul(x3, x3, w);
    CHECK(x6.coeff(6, 6, 0).real() == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(x6.coeff(6, 4, 0).real() == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(x6.coeff(6, 2, 0).real() == doctest::Approx(1.875).epsilon(1e-14));
    CHECK(x6.coeff(6, 0, 0).real() == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("mul reports the discarded tail mass exactly") {
    std::mt19937 rng(7001);
    DegreeWindow wide{0, 40}, narrow{0, 10};
    FourierTaylorSeries f = random_series(rng, 2, 8, 10, wide, false, false);
    FourierTaylorSeries g = random_series(rng, 2, 8, 10, wide, false, false);

    FourierTaylorSeries full = mul(f, g, wide);
    double discarded = 0.0;
    FourierTaylorSeries cut = mul(f, g, narrow, &discarded);

    double outside = 0.0;
    for (const auto& [i, c] : full.coeffs)
        if (!narrow.contains(i.n)) outside += std::abs(c);
    CHECK(discarded == doctest::Approx(outside).epsilon(1e-13));
    for (const auto& [i, c] : cut.coeffs) CHECK(narrow.contains(i.n));
}

TEST_CASE("bracket sign anchor against the rotation") {
    // {F, omega r} = -omega F_theta: for F = e^{i theta} r^{3/2}, omega = 1,
    // the result is -i e^{i theta} r^{3/2}.
    DegreeWindow w{0, 8};
    FourierTaylorSeries f;
    f.window = w;
    f.set_coeff(3, 1, 0, Complex{1.0, 0.0});
    FourierTaylorSeries b = poisson_bracket(f, h2_series(1.0), w);
    CHECK(b.term_count() == 1);
    CHECK(b.coeff(3, 1, 0).real() == doctest::Approx(0.0));
    CHECK(b.coeff(3, 1, 0).imag() == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("fused bracket equals the composed derivative route") {
    std::mt19937 rng(7002);
    DegreeWindow w{0, 60};
    for (int rep = 0; rep < 5; ++rep) {
        FourierTaylorSeries f = random_series(rng, 2, 7, 8, w, false, false);
        FourierTaylorSeries g = random_series(rng, 2, 7, 8, w, false, false);
        FourierTaylorSeries fused = poisson_bracket(f, g, w);
        FourierTaylorSeries composed = sub(mul(deriv_r(f), deriv_theta(g), w),
                                           mul(deriv_theta(f), deriv_r(g), w));
        FourierTaylorSeries diff = sub(fused, composed);
        double scale = majorant_norm(fused, 1.0, 0.0) + 1.0;
        CHECK(majorant_norm(diff, 1.0, 0.0) <= 1e-12 * scale);
    }
}

TEST_CASE("Jacobi identity in a wide window") {
    std::mt19937 rng(7003);
    DegreeWindow w{0, 80};
    FourierTaylorSeries f = random_series(rng, 2, 5, 6, w, false, false);
    FourierTaylorSeries g = random_series(rng, 2, 5, 6, w, false, false);
    FourierTaylorSeries h = random_series(rng, 2, 5, 6, w, false, false);

    FourierTaylorSeries sum = add(
        poisson_bracket(f, poisson_bracket(g, h, w), w),
        add(poisson_bracket(g, poisson_bracket(h, f, w), w),
            poisson_bracket(h, poisson_bracket(f, g, w), w)));
    double scale = majorant_norm(f, 1.0, 0.0) * majorant_norm(g, 1.0, 0.0) *
                       majorant_norm(h, 1.0, 0.0) + 1.0;
    CHECK(majorant_norm(sum, 1.0, 0.0) <= 1e-11 * scale);
}

TEST_CASE("Leibniz rule for the bracket over a product") {
    std::mt19937 rng(7004);
    DegreeWindow w{0, 80};
    FourierTaylorSeries f = random_series(rng, 2, 5, 6, w, false, false);
    FourierTaylorSeries g = random_series(rng, 2, 5, 6, w, false, false);
    FourierTaylorSeries h = random_series(rng, 2, 5, 6, w, false, false);

    FourierTaylorSeries lhs = poisson_bracket(mul(f, g, w), h, w);
    FourierTaylorSeries rhs = add(mul(f, poisson_bracket(g, h, w), w),
                                  mul(poisson_bracket(f, h, w), g, w));
    FourierTaylorSeries diff = sub(lhs, rhs);
    double scale = majorant_norm(lhs, 1.0, 0.0) + 1.0;
    CHECK(majorant_norm(diff, 1.0, 0.0) <= 1e-11 * scale);
}

TEST_CASE("parity and reality survive products and brackets") {
    std::mt19937 rng(7005);
    DegreeWindow w{0, 30};
    FourierTaylorSeries f = random_series(rng, 2, 6, 8, w, true, true);
    FourierTaylorSeries g = random_series(rng, 3, 6, 8, w, true, true);
    f.validate();
    g.validate();

    FourierTaylorSeries p = mul(f, g, w);
    FourierTaylorSeries b = poisson_bracket(f, g, w);
    CHECK(p.polynomial_origin);
    CHECK(b.polynomial_origin);
    p.validate();
    b.validate();
    CHECK(reality_check(p) <= 1e-13 * (p.max_abs_coeff() + 1.0));
    CHECK(reality_check(b) <= 1e-13 * (b.max_abs_coeff() + 1.0));
}

TEST_CASE("derivatives act mode by mode") {
    DegreeWindow w{0, 8};
    FourierTaylorSeries f;
    f.window = w;
    f.set_coeff(3, 1, 2, Complex{2.0, 0.0});

    FourierTaylorSeries fr = deriv_r(f);
    CHECK(fr.coeff(1, 1, 2).real() == doctest::Approx(3.0).epsilon(1e-15));
    CHECK_FALSE(fr.polynomial_origin);

    FourierTaylorSeries ft = deriv_theta(f);
    CHECK(ft.coeff(3, 1, 2) == Complex{0.0, 2.0});
    FourierTaylorSeries fm = deriv_t(f);
    CHECK(fm.coeff(3, 1, 2) == Complex{0.0, 4.0});

    FourierTaylorSeries pole;
    pole.window = w;
    pole.set_coeff(1, 1, 0, Complex{1.0, 0.0});
    CHECK_THROWS_AS((void)deriv_r(pole), FractionalPoleError);
}

TEST_CASE("n = 1 terms poison the bracket") {
    DegreeWindow w{0, 8};
    FourierTaylorSeries f;
    f.window = w;
    f.set_coeff(1, 1, 0, Complex{1.0, 0.0});
    FourierTaylorSeries g;
    g.window = w;
    g.set_coeff(4, 2, 0, Complex{1.0, 0.0});
    CHECK_THROWS_AS((void)poisson_bracket(f, g, w), FractionalPoleError);
    CHECK_THROWS_AS((void)poisson_bracket(g, f, w), FractionalPoleError);
}

TEST_CASE("Cauchy estimate for the angle derivative") {
    std::mt19937 rng(7006);
    DegreeWindow w{0, 20};
    FourierTaylorSeries f = random_series(rng, 2, 10, 20, w, false, true);
    const double rho = 0.75, gamma = 0.8;
    for (double sigma : {0.05, 0.1, 0.2, 0.4}) {
        double lhs = majorant_norm(deriv_theta(f), rho, gamma - sigma);
        double rhs = majorant_norm(f, rho, gamma) / (std::exp(1.0) * sigma);
        CHECK(lhs <= rhs * (1.0 + 1e-12));
    }
}

TEST_CASE("grid supnorm never exceeds the majorant") {
    std::mt19937 rng(7007);
    DegreeWindow w{0, 16};
    for (int rep = 0; rep < 5; ++rep) {
        FourierTaylorSeries f = random_series(rng, 1, 9, 12, w, false, false);
        for (double rho : {0.3, 1.0}) {
            for (double gamma : {0.0, 0.5}) {
                CHECK(grid_supnorm(f, rho, gamma) <=
                      majorant_norm(f, rho, gamma) * (1.0 + 1e-12));
            }
        }
    }
}

TEST_CASE("kernel projection and degree slices") {
    FourierTaylorSeries f;
    f.window = {0, 12};
    f.set_coeff(4, 0, 0, Complex{2.0, 0.0});
    f.set_coeff(4, 2, -1, Complex{1.0, 0.0});
    f.set_coeff(6, 0, 0, Complex{3.0, 0.0});
    f.set_coeff(8, 0, 2, Complex{1.0, 0.0});

    KernelSplit s = kernel_project(f);
    CHECK(s.kernel.term_count() == 2);
    CHECK(s.kernel.coeff(4, 0, 0).real() == 2.0);
    CHECK(s.range.term_count() == 2);
    CHECK(s.range.coeff(8, 0, 2).real() == 1.0);

    FourierTaylorSeries mid = slice(f, 5, 8);
    CHECK(mid.term_count() == 2);
    CHECK(mid.coeff(6, 0, 0).real() == 3.0);
}

TEST_CASE("eval agrees with a direct monomial sum") {
    FourierTaylorSeries f;
    f.window = {0, 8};
    f.set_coeff(2, 0, 0, Complex{0.7, 0.0});
    f.set_coeff(3, 1, -1, Complex{0.2, 0.5});
    f.set_coeff(5, -3, 2, Complex{-0.4, 0.1});

    Complex r{0.3, 0.02}, theta{1.1, -0.2};
    double t = 0.7;
    Complex direct{0.0, 0.0};
    for (const auto& [i, c] : f.coeffs) {
        direct += c * std::pow(r, 0.5 * i.n) *
                  std::exp(Complex{0.0, 1.0} *
                           (static_cast<double>(i.k) * theta +
                            Complex{static_cast<double>(i.m) * t, 0.0}));
    }
    Complex got = eval(f, r, theta, t);
    CHECK(std::abs(got - direct) <= 1e-13 * (std::abs(direct) + 1.0));
}

TEST_CASE("validate rejects parity and window breaches") {
    FourierTaylorSeries f;
    f.window = {0, 6};
    f.polynomial_origin = true;
    f.coeffs[{3, 2, 0}] = Complex{1.0, 0.0};  // n - k odd
    CHECK_THROWS_AS(f.validate(), ValidationError);

    FourierTaylorSeries g;
    g.window = {0, 4};
    g.coeffs[{6, 0, 0}] = Complex{1.0, 0.0};  // outside the window
    CHECK_THROWS_AS(g.validate(), ValidationError);
}
