#pragma once

#include <vector>

#include "convasym/density.hpp"
#include "convasym/quadrature.hpp"

namespace convasym {

// ft(d, k) = int_a^b d(x) e^{ikx} dx, entire in k.  Panel quadrature with the
// phase budget of `q`; |Im k| * b > 700 trips the binary64 overflow guard.
Complex ft(const Density& d, Complex k, const QuadratureSpec& q = {});

// ft'(k) = int_a^b i x d(x) e^{ikx} dx.
Complex ft_derivative(const Density& d, Complex k, const QuadratureSpec& q = {});

struct FtPair {
    Complex value;
    Complex derivative;
};
// Both integrals on shared panels (the zero hunt calls this in a tight loop).
FtPair ft_pair(const Density& d, Complex k, const QuadratureSpec& q = {});

// Leading integration-by-parts term (1/ik)(d(b) e^{ikb} - d(a) e^{ika}).
// Error O(k^-2) e^{|Im k| b}.
Complex ft_tail_approx(const Density& d, Complex k);

// 1 - ft(d, k) without cancellation: moment series -sum_{j>=1} (ik)^j m_j/j!
// (4 terms) for |k| b < 0.01, direct quadrature otherwise.
Complex one_minus_ft(const Density& d, Complex k, const QuadratureSpec& q = {});

// F_d(x) - d(x) = -(1/2pi) int_{-U}^{U} (log(1 - ft(k)) + ft(k)) e^{-ikx} dk.
// The k = 0 log singularity is integrable; panels grade dyadically toward 0
// on the principal branch.  Tail error O(1/U).
double log_inversion_fd(const Density& d, double x, double U, const QuadratureSpec& q = {});

// Estimated distance from the segment {u - ic : u in [re_lo, re_hi]} to the
// nearest zero of ft - 1: coarse modulus scan, then Newton polish at the
// local minima.  Heuristic (no rigorous certificate), but it does catch
// lines passing through or within ~1e-6 of a zero.
double line_zero_distance(const Density& d, double c, double re_lo, double re_hi,
                          const QuadratureSpec& q = {});

// The line integrand f_c(u) = ft'(u-ic)/(1 - ft(u-ic)) - ft'(u-ic) cached at
// quadrature nodes on [0, U] for one (density, c); E(c, x) evaluations and
// the L1 bound then reuse the expensive ft evaluations.  Construction fails
// with ZeroFreeLineError if the sampled minimum of |1 - ft| on the line drops
// below 1e-6 (heuristic zero-free certificate; see README).
class ErrorTermLine {
public:
    ErrorTermLine(const Density& d, double c, double U, const QuadratureSpec& q = {},
                  double x_scale = 4.0);

    // E(c, x) = (1/2pi i) int_R f_c(u) e^{-iux} du, folded onto [0, U] via
    // f_c(-u) = -conj(f_c(u)); real for real densities.
    Complex error_term(double x) const;
    // Truncated ||f_c||_1 plus a rigorous tail majorant from the fitted
    // |ft(u-ic)| <= A e^{cb}/|u| envelope.
    double l1_bound() const { return l1_truncated_ + tail_majorant_; }
    double l1_truncated() const { return l1_truncated_; }
    double tail_majorant() const { return tail_majorant_; }
    double min_line_distance() const { return min_one_minus_; }
    double c() const { return c_; }
    double truncation() const { return U_; }

private:
    double c_, U_, x_scale_;
    double l1_truncated_ = 0;
    double tail_majorant_ = 0;
    double min_one_minus_ = 0;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<Complex> fc_;
};

// One-shot versions; both halves of the line integrated explicitly (the
// conjugate pairing is then a testable property, not a construction).
Complex error_term_E(const Density& d, double c, double x, double U, const QuadratureSpec& q = {});
double fc_l1_bound(const Density& d, double c, double U, const QuadratureSpec& q = {});

} // namespace convasym
