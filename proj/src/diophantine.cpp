#include "kamnf/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kamnf/errors.hpp"

namespace kamnf {

std::vector<long long> continued_fraction(double omega, int depth) {
    if (depth < 1) throw ValidationError("continued fraction depth must be >= 1");
    std::vector<long long> out;
    double x = omega;
    for (int i = 0; i < depth; ++i) {
        double fl = std::floor(x);
        out.push_back(static_cast<long long>(fl));
        double frac = x - fl;
        if (frac < 1e-12) break;
        x = 1.0 / frac;
    }
    return out;
}

namespace {

double dist_to_integers(double x) {
    return std::abs(x - std::round(x));
}

}  // namespace

double estimate_alpha(double omega, double tau, long long K) {
    if (K < 1) throw ValidationError("estimate_alpha needs K >= 1");
    double best = std::numeric_limits<double>::infinity();
    for (long long k = 1; k <= K; ++k) {
        double v = std::pow(static_cast<double>(k), tau) * dist_to_integers(k * omega);
        best = std::min(best, v);
    }
    return best;
}

bool check_condition(DiophantineParams& params, long long K) {
    if (K < 1) throw ValidationError("check_condition needs K >= 1");
    for (long long k = 1; k <= K; ++k) {
        double lhs = dist_to_integers(k * params.omega);
        double rhs = params.alpha / std::pow(static_cast<double>(k), params.tau);
        if (lhs < rhs) return false;
    }
    params.K_verified = std::max(params.K_verified, K);
    return true;
}

}  // namespace kamnf
