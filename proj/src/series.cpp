#include "kamnf/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace kamnf {

namespace {

bool parity_ok(const MonomialIndex& i) {
    return std::abs(i.k) <= i.n && (i.n - i.k) % 2 == 0;
}

void erase_zeros(std::map<MonomialIndex, Complex>& m) {
    for (auto it = m.begin(); it != m.end();) {
        if (it->second == Complex{0.0, 0.0})
            it = m.erase(it);
        else
            ++it;
    }
}

}  // namespace

Complex FourierTaylorSeries::coeff(int n, int k, int m) const {
    auto it = coeffs.find({n, k, m});
    return it == coeffs.end() ? Complex{} : it->second;
}

void FourierTaylorSeries::set_coeff(int n, int k, int m, Complex c) {
    if (c == Complex{0.0, 0.0})
        coeffs.erase({n, k, m});
    else
        coeffs[{n, k, m}] = c;
}

void FourierTaylorSeries::add_coeff(int n, int k, int m, Complex c) {
    set_coeff(n, k, m, coeff(n, k, m) + c);
}

std::optional<int> FourierTaylorSeries::min_degree() const {
    if (coeffs.empty()) return std::nullopt;
    return coeffs.begin()->first.n;
}

std::optional<int> FourierTaylorSeries::max_degree() const {
    if (coeffs.empty()) return std::nullopt;
    return coeffs.rbegin()->first.n;
}

int FourierTaylorSeries::max_abs_k() const {
    int v = 0;
    for (const auto& [i, c] : coeffs) v = std::max(v, std::abs(i.k));
    return v;
}

int FourierTaylorSeries::max_abs_m() const {
    int v = 0;
    for (const auto& [i, c] : coeffs) v = std::max(v, std::abs(i.m));
    return v;
}

double FourierTaylorSeries::max_abs_coeff() const {
    double v = 0.0;
    for (const auto& [i, c] : coeffs) v = std::max(v, std::abs(c));
    return v;
}

void FourierTaylorSeries::validate() const {
    for (const auto& [i, c] : coeffs) {
        if (i.n < 0)
            throw ValidationError("negative degree index n = " + std::to_string(i.n));
        if (!window.contains(i.n))
            throw ValidationError("stored degree n = " + std::to_string(i.n) +
                                  " outside window [" + std::to_string(window.n_min) +
                                  ", " + std::to_string(window.n_max) + "]");
        if (c == Complex{0.0, 0.0})
            throw ValidationError("stored zero coefficient");
        if (polynomial_origin && !parity_ok(i))
            throw ValidationError("parity violation at (n,k) = (" +
                                  std::to_string(i.n) + "," + std::to_string(i.k) + ")");
    }
    if (real_symmetric) {
        double defect = reality_check(*this);
        double tol = 1e-12 * (1.0 + max_abs_coeff());
        if (defect > tol)
            throw ValidationError("real-symmetry defect " + std::to_string(defect));
    }
}

FourierTaylorSeries h2_series(double omega) {
    FourierTaylorSeries h;
    h.window = {0, 2};
    h.polynomial_origin = true;
    h.real_symmetric = true;
    h.set_coeff(2, 0, 0, Complex{omega, 0.0});
    return h;
}

FourierTaylorSeries add(const FourierTaylorSeries& a, const FourierTaylorSeries& b) {
    FourierTaylorSeries out = a;
    out.window = {std::min(a.window.n_min, b.window.n_min),
                  std::max(a.window.n_max, b.window.n_max)};
    out.polynomial_origin = a.polynomial_origin && b.polynomial_origin;
    out.real_symmetric = a.real_symmetric && b.real_symmetric;
    for (const auto& [i, c] : b.coeffs) {
        auto [it, inserted] = out.coeffs.try_emplace(i, c);
        if (!inserted) it->second += c;
    }
    erase_zeros(out.coeffs);
    return out;
}

FourierTaylorSeries sub(const FourierTaylorSeries& a, const FourierTaylorSeries& b) {
    return add(a, scale(b, Complex{-1.0, 0.0}));
}

FourierTaylorSeries scale(const FourierTaylorSeries& a, Complex c) {
    FourierTaylorSeries out;
    out.window = a.window;
    out.polynomial_origin = a.polynomial_origin;
    out.real_symmetric = a.real_symmetric && c.imag() == 0.0;
    if (c == Complex{0.0, 0.0}) return out;
    for (const auto& [i, v] : a.coeffs) out.coeffs.emplace(i, v * c);
    erase_zeros(out.coeffs);
    return out;
}

FourierTaylorSeries mul(const FourierTaylorSeries& a, const FourierTaylorSeries& b,
                        DegreeWindow window, double* discarded_mass) {
    FourierTaylorSeries out;
    out.window = window;
    out.polynomial_origin = a.polynomial_origin && b.polynomial_origin;
    out.real_symmetric = a.real_symmetric && b.real_symmetric;
    for (const auto& [ia, ca] : a.coeffs) {
        for (const auto& [ib, cb] : b.coeffs) {
            int n = ia.n + ib.n;
            Complex c = ca * cb;
            if (!window.contains(n)) {
                if (discarded_mass) *discarded_mass += std::abs(c);
                continue;
            }
            MonomialIndex i{n, ia.k + ib.k, ia.m + ib.m};
            auto [it, inserted] = out.coeffs.try_emplace(i, c);
            if (!inserted) it->second += c;
        }
    }
    erase_zeros(out.coeffs);
    return out;
}

FourierTaylorSeries deriv_r(const FourierTaylorSeries& a) {
    FourierTaylorSeries out;
    out.window = {std::max(0, a.window.n_min - 2), std::max(0, a.window.n_max - 2)};
    out.polynomial_origin = false;  // |k| <= n can fail after n -> n - 2
    out.real_symmetric = a.real_symmetric;
    for (const auto& [i, c] : a.coeffs) {
        if (i.n == 0) continue;
        if (i.n == 1)
            throw FractionalPoleError("d/dr of an r^{1/2} term leaves the lattice");
        out.coeffs[{i.n - 2, i.k, i.m}] = c * (0.5 * i.n);
    }
    return out;
}

FourierTaylorSeries deriv_theta(const FourierTaylorSeries& a) {
    FourierTaylorSeries out;
    out.window = a.window;
    out.polynomial_origin = a.polynomial_origin;
    out.real_symmetric = a.real_symmetric;
    for (const auto& [i, c] : a.coeffs) {
        if (i.k == 0) continue;
        out.coeffs[i] = c * Complex{0.0, static_cast<double>(i.k)};
    }
    return out;
}

FourierTaylorSeries deriv_t(const FourierTaylorSeries& a) {
    FourierTaylorSeries out;
    out.window = a.window;
    out.polynomial_origin = a.polynomial_origin;
    out.real_symmetric = a.real_symmetric;
    for (const auto& [i, c] : a.coeffs) {
        if (i.m == 0) continue;
        out.coeffs[i] = c * Complex{0.0, static_cast<double>(i.m)};
    }
    return out;
}

FourierTaylorSeries poisson_bracket(const FourierTaylorSeries& f,
                                    const FourierTaylorSeries& g,
                                    DegreeWindow window,
                                    double* discarded_mass) {
    for (const auto& [i, c] : f.coeffs)
        if (i.n == 1)
            throw FractionalPoleError("poisson_bracket: first argument has an n = 1 term");
    for (const auto& [i, c] : g.coeffs)
        if (i.n == 1)
            throw FractionalPoleError("poisson_bracket: second argument has an n = 1 term");

    FourierTaylorSeries out;
    out.window = window;
    out.polynomial_origin = f.polynomial_origin && g.polynomial_origin;
    out.real_symmetric = f.real_symmetric && g.real_symmetric;
    for (const auto& [i1, c1] : f.coeffs) {
        for (const auto& [i2, c2] : g.coeffs) {
            // F_r G_theta - F_theta G_r collapses to i (n1 k2 - k1 n2)/2.
            long long factor = static_cast<long long>(i1.n) * i2.k -
                               static_cast<long long>(i1.k) * i2.n;
            if (factor == 0) continue;
            int n = i1.n + i2.n - 2;
            Complex c = c1 * c2 * Complex{0.0, 0.5 * static_cast<double>(factor)};
            if (n < 0 || !window.contains(n)) {
                if (n >= 0 && discarded_mass) *discarded_mass += std::abs(c);
                continue;
            }
            MonomialIndex i{n, i1.k + i2.k, i1.m + i2.m};
            auto [it, inserted] = out.coeffs.try_emplace(i, c);
            if (!inserted) it->second += c;
        }
    }
    erase_zeros(out.coeffs);
    return out;
}

KernelSplit kernel_project(const FourierTaylorSeries& a) {
    KernelSplit out;
    out.kernel.window = out.range.window = a.window;
    out.kernel.polynomial_origin = out.range.polynomial_origin = a.polynomial_origin;
    out.kernel.real_symmetric = out.range.real_symmetric = a.real_symmetric;
    for (const auto& [i, c] : a.coeffs) {
        if (i.k == 0 && i.m == 0)
            out.kernel.coeffs.emplace(i, c);
        else
            out.range.coeffs.emplace(i, c);
    }
    return out;
}

double reality_check(const FourierTaylorSeries& a) {
    double worst = 0.0;
    for (const auto& [i, c] : a.coeffs) {
        Complex mirror = a.coeff(i.n, -i.k, -i.m);
        worst = std::max(worst, std::abs(c - std::conj(mirror)));
    }
    return worst;
}

FourierTaylorSeries prune(const FourierTaylorSeries& a, double eps) {
    FourierTaylorSeries out;
    out.window = a.window;
    out.polynomial_origin = a.polynomial_origin;
    out.real_symmetric = a.real_symmetric;
    for (const auto& [i, c] : a.coeffs)
        if (std::abs(c) > eps) out.coeffs.emplace(i, c);
    return out;
}

FourierTaylorSeries slice(const FourierTaylorSeries& a, int n_lo, int n_hi) {
    FourierTaylorSeries out;
    out.window = a.window;
    out.polynomial_origin = a.polynomial_origin;
    out.real_symmetric = a.real_symmetric;
    for (const auto& [i, c] : a.coeffs)
        if (i.n >= n_lo && i.n <= n_hi) out.coeffs.emplace(i, c);
    return out;
}

double majorant_norm(const FourierTaylorSeries& a, double rho, double gamma) {
    double s = 0.0;
    for (const auto& [i, c] : a.coeffs)
        s += std::abs(c) * std::pow(rho, 0.5 * i.n) * std::exp(std::abs(i.k) * gamma);
    return s;
}

Complex eval(const FourierTaylorSeries& a, Complex r, Complex theta, double t) {
    Complex s{0.0, 0.0};
    for (const auto& [i, c] : a.coeffs) {
        Complex term = c;
        if (i.n != 0) term *= std::pow(r, 0.5 * i.n);
        Complex phase = Complex{0.0, 1.0} * (static_cast<double>(i.k) * theta +
                                             Complex{static_cast<double>(i.m) * t, 0.0});
        term *= std::exp(phase);
        s += term;
    }
    return s;
}

double grid_supnorm(const FourierTaylorSeries& a, double rho, double gamma,
                    int samples) {
    samples = std::max(samples, 4);
    const double step = 2.0 * std::numbers::pi / samples;
    const double ims[2] = {-gamma, gamma};
    double best = 0.0;
    for (int ir = 0; ir < samples; ++ir) {
        Complex r = rho * std::exp(Complex{0.0, ir * step});
        for (int it = 0; it < samples; ++it) {
            double t = it * step;
            for (int ith = 0; ith < samples; ++ith) {
                double re = ith * step;
                for (double im : ims) {
                    double v = std::abs(eval(a, r, Complex{re, im}, t));
                    best = std::max(best, v);
                    if (gamma == 0.0) break;
                }
            }
        }
    }
    return best;
}

}  // namespace kamnf
