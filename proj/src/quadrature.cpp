#include "convasym/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace convasym {

// Classic gauleg: nodes are roots of P_n found by Newton from the Chebyshev
// initial guess, weights w = 2 / ((1-x^2) P_n'(x)^2).
static GaussRule compute_rule(int n) {
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        rule.x[i] = -z;
        rule.x[n - 1 - i] = z;
        rule.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.w[n - 1 - i] = rule.w[i];
    }
    return rule;
}

const GaussRule& gauss_rule(int order) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

int panel_count(double lo, double hi, double phase_rate, double max_width, const QuadratureSpec& q) {
    q.validate();
    double width = max_width;
    if (phase_rate > 0) width = std::min(width, q.max_phase_per_panel / phase_rate);
    int n = static_cast<int>(std::ceil((hi - lo) / width));
    return std::max(n, 1);
}

} // namespace convasym
