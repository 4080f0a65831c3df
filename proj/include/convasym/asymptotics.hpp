#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "convasym/density.hpp"
#include "convasym/grid.hpp"
#include "convasym/quadrature.hpp"
#include "convasym/zeros.hpp"

namespace convasym {

// (1/x)(1 + sum_k m(k) e^{-ikx}) over a conjugate-closed zero list.  The
// imaginary residue of the naive complex sum is asserted small; the real
// part is returned.
double expansion_eval(const std::vector<ZeroRecord>& zeros, double x);

struct ExpansionRow {
    double x;
    double f_direct;
    double expansion;
    double residual;          // f_direct - expansion
    double scaled_residual;   // residual * e^{cx}
};

struct ExpansionReport {
    std::vector<ExpansionRow> rows;
    double c = 0;
    double h = 0;
    double truncation_U = 0;     // error-line truncation used by identity checks; 0 when unused
    std::vector<ZeroRecord> zeros;
    double noise_floor = 0;   // h^2-scale mass-defect estimate from the chain

    // Least-squares slope of log |x (f_direct - expansion)| against x over
    // the rows that clear 100x the noise floor; nullopt when fewer than two
    // rows qualify.
    std::optional<double> fit_slope() const;
    void write_csv(std::ostream& out) const;  // header: x,f_direct,expansion,residual,scaled_residual
};

// Direct series vs. zero expansion at the sample points xs.  Zeros are
// enumerated for the strip of depth c unless a precomputed list is supplied
// (CLI --zeros-file round trips reuse the list bit-exactly).
ExpansionReport compare_direct_vs_expansion(const Density& d, double c,
                                            const std::vector<double>& xs, double h,
                                            const QuadratureSpec& q = {},
                                            const std::vector<ZeroRecord>* zeros_override = nullptr);

// L_s(d) = int e^{-s theta} d(theta) dtheta; entire in s (compact support).
Complex laplace_density(const Density& d, Complex s, const QuadratureSpec& q = {});

// S1(theta) = sum_n (delta * d^{*(n-1)})(theta) / n, a finite sum since the
// n-th term vanishes below n a.  The default delta is the half-normalized
// cumulative (1/2) int_0^theta d; a custom cumulative may be supplied (it
// must vanish below a, be smooth on d's pieces, and be constant above b).
double s1_series(const Density& d, double theta, double h,
                 std::int64_t cap = default_grid_cap());
double s1_series(const Density& d, const std::function<double(double)>& delta, double theta,
                 double h, std::int64_t cap = default_grid_cap());

// S1'(theta) = F_d(theta) / 2 for theta > b.
double s1_prime(const Density& d, double theta, double h,
                std::int64_t cap = default_grid_cap());

struct LaplaceS1Result {
    Complex lhs;          // numeric Laplace integral of S1 over [0, theta_max]
    Complex rhs;          // -log(1 - L_s(d)) / (2s)
    double tail_bound;    // rigorous bound on the dropped [theta_max, inf) tail
    double theta_max;
    double h;
};

// Both sides of L_s(S1) = -(1/2s) log(1 - L_s(d)).  The lhs integrates the
// series term by term on each term's own lattice (double trapezoid in theta
// and in the convolution variable), so every jump and kink sits on a node.
LaplaceS1Result laplace_s1_check(const Density& d, Complex s, double theta_max, double h,
                                 std::int64_t cap = default_grid_cap(),
                                 const QuadratureSpec& q = {});

// theta_max with e^{-Re s * theta} log(theta/a) < 1e-9.
double laplace_theta_max(const Density& d, Complex s);

} // namespace convasym
