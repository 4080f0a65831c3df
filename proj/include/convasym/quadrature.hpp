#pragma once

#include <complex>
#include <functional>

#include <Eigen/Core>

#include "convasym/errors.hpp"

namespace convasym {

using Complex = std::complex<double>;

// Panel quadrature controls.  Panels are sized so that the oscillatory
// factor e^{ikx} advances at most max_phase_per_panel radians per panel.
struct QuadratureSpec {
    int panel_order = 12;               // Gauss-Legendre nodes per panel
    double max_phase_per_panel = 1.5;   // radians, must be <= pi
    double abs_tol = 1e-12;

    void validate() const {
        if (panel_order < 4) throw InvalidInput("QuadratureSpec: panel_order must be >= 4");
        if (!(max_phase_per_panel > 0) || max_phase_per_panel > 3.14159265358979324)
            throw InvalidInput("QuadratureSpec: max_phase_per_panel must lie in (0, pi]");
        if (!(abs_tol > 0)) throw InvalidInput("QuadratureSpec: abs_tol must be positive");
    }
};

// Gauss-Legendre rule on [-1, 1]; nodes by Newton iteration on P_n.
struct GaussRule {
    Eigen::ArrayXd x;
    Eigen::ArrayXd w;
};

const GaussRule& gauss_rule(int order);

// Number of panels needed on [lo, hi] for a phase rate (radians per unit
// length) and a hard width cap.
int panel_count(double lo, double hi, double phase_rate, double max_width, const QuadratureSpec& q);

// Fixed panel integration of a complex-valued integrand over [lo, hi].
template <class F>
Complex integrate_panels(F&& f, double lo, double hi, int panels, int order) {
    const GaussRule& rule = gauss_rule(order);
    const double width = (hi - lo) / panels;
    Complex total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * width;
        const double half = 0.5 * width;
        Complex acc = 0.0;
        for (int i = 0; i < rule.x.size(); ++i)
            acc += rule.w[i] * f(mid + half * rule.x[i]);
        total += half * acc;
    }
    return total;
}

// As above with panels chosen from q's phase budget.
template <class F>
Complex integrate_oscillatory(F&& f, double lo, double hi, double phase_rate, double max_width,
                              const QuadratureSpec& q) {
    return integrate_panels(std::forward<F>(f), lo, hi,
                            panel_count(lo, hi, phase_rate, max_width, q), q.panel_order);
}

// Dyadically graded panels accumulating toward `lo`, for integrable
// endpoint singularities such as the log branch of inversion integrands at
// k = 0.
template <class F>
Complex integrate_graded_lower(F&& f, double lo, double hi, double floor_width, int order) {
    Complex total = 0.0;
    double hi_cur = hi;
    while (hi_cur - lo > floor_width) {
        double lo_cur = lo + 0.5 * (hi_cur - lo);
        total += integrate_panels(f, lo_cur, hi_cur, 1, order);
        hi_cur = lo_cur;
    }
    return total; // remaining sliver [lo, lo + floor_width] dropped; integrable
}

} // namespace convasym
