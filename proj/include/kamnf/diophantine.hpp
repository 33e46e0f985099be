#pragma once

#include <vector>

namespace kamnf {

struct DiophantineParams {
    double omega = 0.0;
    double alpha = 0.0;
    double tau = 2.0;
    long long K_verified = 0;  // largest K the condition has been checked to
};

// Partial quotients [a0; a1, a2, ...] of omega, at most `depth` of them.
// Expansion stops early once the fractional remainder drops below 1e-12.
std::vector<long long> continued_fraction(double omega, int depth);

// min over 1 <= k <= K of k^tau dist(k omega, Z); the best alpha for which
// |k omega - l| >= alpha / k^tau holds up to K.  Nonincreasing in K.
double estimate_alpha(double omega, double tau, long long K);

// Check |k omega - l| >= alpha / k^tau for all 1 <= k <= K.  On success
// K_verified is raised to K; on failure it is left alone.
bool check_condition(DiophantineParams& params, long long K);

}  // namespace kamnf
