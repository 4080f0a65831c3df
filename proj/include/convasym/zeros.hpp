#pragma once

#include <vector>

#include "convasym/density.hpp"
#include "convasym/quadrature.hpp"

namespace convasym {

// Search region {-c < Im k < 0, |Re k| <= R}.  guard_eps keeps the top edge
// strictly below the real axis: f(0) = 0 sits on the closed strip's boundary
// and must not contaminate counts; zeros approach the axis only at k = 0.
struct StripSpec {
    double c = 6.0;
    double R = 200.0;
    double guard_eps = 1e-3;
    int cell_cap = 48;        // max subdivision depth

    void validate() const {
        if (!(c > 0) || !(R > 0)) throw InvalidInput("StripSpec: c and R must be positive");
        if (!(guard_eps > 0) || !(guard_eps < c))
            throw InvalidInput("StripSpec: need 0 < guard_eps < c");
        if (cell_cap < 1) throw InvalidInput("StripSpec: cell_cap must be positive");
    }
};

struct Rect {
    double re_lo, re_hi, im_lo, im_hi;
    double width() const { return re_hi - re_lo; }
    double height() const { return im_hi - im_lo; }
    bool contains(Complex z) const {
        return z.real() >= re_lo && z.real() <= re_hi && z.imag() >= im_lo && z.imag() <= im_hi;
    }
};

struct ZeroRecord {
    enum class Provenance { bootstrap_seed, subdivision };

    Complex k;
    int multiplicity = 1;
    double residual = 0;          // |ft(k) - 1|
    int newton_iterations = 0;
    Provenance provenance = Provenance::bootstrap_seed;
};

// Fixed-point seeds for zeros of ft(k) - 1: with z = ikb the asymptotic
// equation e^z = alpha z, alpha = 1/(b d(b)), is iterated as
// z <- log(alpha z) + 2 pi i n from z0 = 2 pi i n (principal branch, phase
// unwrapped against the previous iterate).  n < 0 mirrors via -conj.
Complex bootstrap_seed(const Density& d, int n, int iterations);

// k_n = (pi/b)(2n + 1/2) - (i/b) log(2 pi n / (b d(b))), n >= 1 (no o(1)).
Complex prop31_estimate(const Density& d, int n);

// Zero count of ft(k) - 1 inside rect, with multiplicity, by tracking the
// argument of ft - 1 along the boundary.  Throws BoundaryTooClose when a
// boundary sample has |ft - 1| < 1e-8, NumericFailure when the accumulated
// turn misses an integer by >= 0.25.
int winding_number(const Density& d, const Rect& rect, const QuadratureSpec& q = {});

// Newton on f = ft - 1 with f' = ft'; multiplicity certified by a winding
// circle of radius 1e-3 around the result.
ZeroRecord refine_zero(const Density& d, Complex seed, double tol = 1e-12,
                       const QuadratureSpec& q = {});

// Every zero in the strip: bootstrap-accelerated, certified complete by
// quadtree subdivision on winding counts (sum of multiplicities must equal
// the whole-rectangle winding number).  Sorted by Re k, closed under
// k -> -conj(k).  Seeding is an accelerator only; use_seeds = false forces
// the pure subdivision search.
std::vector<ZeroRecord> enumerate_strip(const Density& d, const StripSpec& strip,
                                        const QuadratureSpec& q = {}, bool use_seeds = true);

} // namespace convasym
