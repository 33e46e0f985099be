#pragma once

#include <complex>
#include <map>
#include <optional>

#include "kamnf/errors.hpp"

namespace kamnf {

using Complex = std::complex<double>;

// Index of the monomial r^{n/2} e^{ik theta} e^{im t} in action-angle
// variables x = sqrt(2r) cos theta, y = sqrt(2r) sin theta.  n >= 0 counts
// powers of sqrt(r); series born from polynomials in (x, y) additionally
// satisfy |k| <= n with n - k even.
struct MonomialIndex {
    int n = 0;
    int k = 0;
    int m = 0;

    friend auto operator<=>(const MonomialIndex&, const MonomialIndex&) = default;
};

// Inclusive bounds on n enforced by truncating operations.
struct DegreeWindow {
    int n_min = 0;
    int n_max = 0;

    bool contains(int n) const { return n >= n_min && n <= n_max; }
};

// Sparse complex Fourier-Taylor series sum of c r^{n/2} e^{i(k theta + m t)}.
//
// Invariants: no exact-zero coefficient is stored; every stored n lies inside
// `window`; with real_symmetric set, coeff(n,-k,-m) = conj(coeff(n,k,m)) up
// to roundoff, so the series is real for real arguments; with
// polynomial_origin set, every index obeys the parity constraint above.
struct FourierTaylorSeries {
    std::map<MonomialIndex, Complex> coeffs;
    DegreeWindow window{0, 0};
    bool polynomial_origin = false;
    bool real_symmetric = false;

    Complex coeff(int n, int k, int m) const;
    void set_coeff(int n, int k, int m, Complex c);
    void add_coeff(int n, int k, int m, Complex c);

    bool empty() const { return coeffs.empty(); }
    std::size_t term_count() const { return coeffs.size(); }

    // Bounds of the stored support (not the window); nullopt when empty.
    std::optional<int> min_degree() const;
    std::optional<int> max_degree() const;
    int max_abs_k() const;
    int max_abs_m() const;
    double max_abs_coeff() const;

    // Throws ValidationError on any invariant breach.
    void validate() const;
};

// H2 = omega r, the unperturbed rotation.
FourierTaylorSeries h2_series(double omega);

FourierTaylorSeries add(const FourierTaylorSeries& a, const FourierTaylorSeries& b);
FourierTaylorSeries sub(const FourierTaylorSeries& a, const FourierTaylorSeries& b);
FourierTaylorSeries scale(const FourierTaylorSeries& a, Complex c);

// Product by index convolution.  Terms whose n leaves `window` are dropped;
// their total coefficient mass sum|c| (the rho = 1, gamma = 0 majorant of the
// tail) is accumulated into *discarded_mass when given.
FourierTaylorSeries mul(const FourierTaylorSeries& a, const FourierTaylorSeries& b,
                        DegreeWindow window, double* discarded_mass = nullptr);

// d/dr: c at (n,k,m) -> c n/2 at (n-2,k,m).  n = 0 terms vanish; n = 1 terms
// would leave the lattice and raise FractionalPoleError.  The result may
// violate |k| <= n, so the polynomial_origin flag is cleared.
FourierTaylorSeries deriv_r(const FourierTaylorSeries& a);
FourierTaylorSeries deriv_theta(const FourierTaylorSeries& a);  // *ik
FourierTaylorSeries deriv_t(const FourierTaylorSeries& a);      // *im

// {F, G} = F_r G_theta - F_theta G_r, so that {F, omega r} = -omega F_theta
// and the flow of F is dr/de = F_theta, dtheta/de = -F_r.  Computed termwise
// with the integer factor (n1 k2 - k1 n2)/2, which keeps the cancellation of
// the extreme harmonics exact and preserves polynomial parity.  Raises
// FractionalPoleError if either argument carries an n = 1 term.
FourierTaylorSeries poisson_bracket(const FourierTaylorSeries& f,
                                    const FourierTaylorSeries& g,
                                    DegreeWindow window,
                                    double* discarded_mass = nullptr);

// Split into the (k, m) = (0, 0) part (kernel of the homological operator)
// and the rest.
struct KernelSplit {
    FourierTaylorSeries kernel;
    FourierTaylorSeries range;
};
KernelSplit kernel_project(const FourierTaylorSeries& a);

// max over stored indices of |coeff(n,k,m) - conj(coeff(n,-k,-m))|.
double reality_check(const FourierTaylorSeries& a);

// Copy with every |c| <= eps coefficient removed.
FourierTaylorSeries prune(const FourierTaylorSeries& a, double eps = 0.0);

// Restriction to n_lo <= n <= n_hi (window metadata kept).
FourierTaylorSeries slice(const FourierTaylorSeries& a, int n_lo, int n_hi);

// Weighted coefficient norm sum |c| rho^{n/2} e^{|k| gamma}.  Upper bound for
// the sup of |a| on |r| <= rho, |Im theta| <= gamma, monotone in both radii.
double majorant_norm(const FourierTaylorSeries& a, double rho, double gamma);

// Empirical companion to majorant_norm: max |a| sampled on |r| = rho,
// Im theta = +-gamma, with `samples` points per periodic direction.
// Always <= majorant_norm(a, rho, gamma).
double grid_supnorm(const FourierTaylorSeries& a, double rho, double gamma,
                    int samples = 24);

Complex eval(const FourierTaylorSeries& a, Complex r, Complex theta, double t);

}  // namespace kamnf
