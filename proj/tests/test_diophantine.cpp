// Continued fractions and the small-divisor constant.
#include <cmath>
#include <vector>

#include "doctest.h"
#include "kamnf/diophantine.hpp"

using namespace kamnf;

namespace {

const double kGolden = 0.6180339887498949;
const double kGoldenAlpha = 0.3819660112501051;

double dist_to_integers(double x) {
    double f = x - std::floor(x);
    return std::min(f, 1.0 - f);
}

}  // namespace

TEST_CASE("golden frequency has all partial quotients equal to one") {
    std::vector<long long> cf = continued_fraction(kGolden, 16);
    REQUIRE(cf.size() == 16);
    CHECK(cf[0] == 0);
    for (std::size_t i = 1; i < cf.size(); ++i) CHECK(cf[i] == 1);
}

TEST_CASE("continued fraction of a rational terminates") {
    std::vector<long long> cf = continued_fraction(0.25, 16);
    REQUIRE(cf.size() >= 2);
    CHECK(cf[0] == 0);
    CHECK(cf[1] == 4);
    CHECK(cf.size() <= 3);
}

TEST_CASE("alpha estimate matches a brute-force rescan") {
    for (double omega : {kGolden, 1.4142135623730951, 0.7548776662466927}) {
        for (long long K : {100LL, 1000LL}) {
            double est = estimate_alpha(omega, 2.0, K);
            double brute = 1e300;
            for (long long k = 1; k <= K; ++k) {
                double d = std::pow(static_cast<double>(k), 2.0) *
                           dist_to_integers(k * omega);
                brute = std::min(brute, d);
            }
            CHECK(est == doctest::Approx(brute).epsilon(1e-13));
        }
    }
}

TEST_CASE("golden alpha at tau = 2 is pinned and nonincreasing in K") {
    double a100 = estimate_alpha(kGolden, 2.0, 100);
    double a1k = estimate_alpha(kGolden, 2.0, 1000);
    double a10k = estimate_alpha(kGolden, 2.0, 10000);
    CHECK(a1k == doctest::Approx(kGoldenAlpha).epsilon(1e-14));
    CHECK(a100 >= a1k);
    CHECK(a1k >= a10k);
    CHECK(a10k > 0.37);  // stays safely away from zero
}

TEST_CASE("condition check raises the verified horizon only on success") {
    DiophantineParams params;
    params.omega = kGolden;
    params.tau = 2.0;
    params.alpha = 0.36;  // below the true constant: should verify
    CHECK(check_condition(params, 2000));
    CHECK(params.K_verified == 2000);

    DiophantineParams too_big = params;
    too_big.alpha = 0.40;  // above the true constant: must fail
    too_big.K_verified = 0;
    CHECK_FALSE(check_condition(too_big, 2000));
    CHECK(too_big.K_verified == 0);
}

TEST_CASE("near-rational frequency yields a tiny alpha") {
    // 0.5 + 1e-9 is blocked at k = 2 with 2^tau dist = 4 * 2e-9.
    double a = estimate_alpha(0.5 + 1e-9, 2.0, 100);
    CHECK(a == doctest::Approx(8e-9).epsilon(1e-6));
}
