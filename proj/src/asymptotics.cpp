#include "convasym/asymptotics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "convasym/spectral.hpp"

namespace convasym {

double expansion_eval(const std::vector<ZeroRecord>& zeros, double x) {
    if (!(x > 0)) throw InvalidInput("expansion_eval: x must be positive");
    // every zero needs its mirror -conj(k) in the list
    for (const ZeroRecord& rec : zeros) {
        const Complex mirror = -std::conj(rec.k);
        bool found = false;
        for (const ZeroRecord& other : zeros)
            if (std::abs(other.k - mirror) < 1e-9 && other.multiplicity == rec.multiplicity) {
                found = true;
                break;
            }
        if (!found)
            throw InvalidInput("expansion_eval: zero list is not closed under k -> -conj(k)");
    }
    Complex sum = 0;
    double scale = 1;
    for (const ZeroRecord& rec : zeros) {
        sum += static_cast<double>(rec.multiplicity) * std::exp(Complex(0, -1) * rec.k * x);
        scale += rec.multiplicity * std::exp(std::abs(rec.k.imag()) * x);
    }
    if (std::abs(sum.imag()) > 1e-10 * std::max(1.0, scale * 1e-4))
        throw NumericFailure("expansion_eval: imaginary residue above tolerance");
    return (1.0 + sum.real()) / x;
}

std::optional<double> ExpansionReport::fit_slope() const {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const ExpansionRow& r : rows) {
        const double v = std::abs(r.x * r.residual);
        if (v <= 100.0 * noise_floor || v == 0.0) continue;
        const double y = std::log(v);
        sx += r.x;
        sy += y;
        sxx += r.x * r.x;
        sxy += r.x * y;
        ++n;
    }
    if (n < 2) return std::nullopt;
    const double denom = n * sxx - sx * sx;
    if (denom == 0) return std::nullopt;
    return (n * sxy - sx * sy) / denom;
}

void ExpansionReport::write_csv(std::ostream& out) const {
    out << "x,f_direct,expansion,residual,scaled_residual\n";
    char buf[256];
    for (const ExpansionRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      r.x, r.f_direct, r.expansion, r.residual, r.scaled_residual);
        out << buf;
    }
}

ExpansionReport compare_direct_vs_expansion(const Density& d, double c,
                                            const std::vector<double>& xs, double h,
                                            const QuadratureSpec& q,
                                            const std::vector<ZeroRecord>* zeros_override) {
    if (xs.empty()) throw InvalidInput("compare: no sample points");
    ExpansionReport rep;
    rep.c = c;
    rep.h = h;
    if (zeros_override) {
        rep.zeros = *zeros_override;
    } else {
        StripSpec strip;
        strip.c = c;
        const double b = d.support_hi();
        const double n_c = b * std::abs(d.value_at_hi()) * std::exp(c * b) / (2 * M_PI);
        strip.R = (M_PI / b) * (2 * n_c + 2.5) + 6 * M_PI / b;
        rep.zeros = enumerate_strip(d, strip, q);
    }
    double x_max = 0;
    for (double x : xs) x_max = std::max(x_max, x);
    ConvolutionChain chain(d, h, default_grid_cap(), x_max + h);
    for (double x : xs) {
        ExpansionRow row;
        row.x = x;
        row.f_direct = chain.f_direct_at(x);
        row.expansion = expansion_eval(rep.zeros, x);
        row.residual = row.f_direct - row.expansion;
        row.scaled_residual = row.residual * std::exp(c * x);
        rep.rows.push_back(row);
    }
    rep.noise_floor = chain.mass_defect();
    return rep;
}

Complex laplace_density(const Density& d, Complex s, const QuadratureSpec& q) {
    if (std::abs(s.real()) * d.support_hi() > 700.0)
        throw OverflowRange("laplace_density: |Re s| * b exceeds the exp range");
    const double span8 = (d.support_hi() - d.support_lo()) / 8.0;
    const double rate = std::abs(s.real()) + std::abs(s.imag());
    Complex total = 0;
    for (const Piece& p : d.pieces())
        total += integrate_oscillatory(
            [&](double x) { return p.value(x) * std::exp(-s * x); }, p.lo, p.hi, rate, span8, q);
    return total;
}

static std::function<double(double)> default_delta(const Density& d) {
    return [d](double t) { return 0.5 * d.cumulative(t); };
}

double s1_series(const Density& d, double theta, double h, std::int64_t cap) {
    return s1_series(d, default_delta(d), theta, h, cap);
}

double s1_series(const Density& d, const std::function<double(double)>& delta, double theta,
                 double h, std::int64_t cap) {
    if (theta < d.support_lo()) return 0.0;
    double acc = delta(theta);   // n = 1
    const int n_max = static_cast<int>(std::floor(theta / d.support_lo() + 1e-12));
    if (n_max < 2) return acc;
    ConvolutionChain chain(d, h, cap, theta + h);
    for (int n = 2; n <= n_max; ++n) {
        const GridFunction& g = chain.grid(n - 1);
        const Eigen::Index support_end = static_cast<Eigen::Index>(n - 1) * chain.steps_per_span();
        double term = 0;
        for (Eigen::Index i = 0; i < g.size(); ++i) {
            const double u = g.x_at(i);
            if (u >= theta - d.support_lo()) break;
            const double w = (i == 0 || i == support_end) ? 0.5 : 1.0;
            term += w * g.values[i] * delta(theta - u);
        }
        acc += g.h * term / n;
    }
    return acc;
}

double s1_prime(const Density& d, double theta, double h, std::int64_t cap) {
    if (!(theta > d.support_hi()))
        throw InvalidInput("s1_prime: theta must exceed the support top b");
    return f_direct(d, theta, h, cap) / 2.0;
}

double laplace_theta_max(const Density& d, Complex s) {
    const double sigma = s.real();
    if (!(sigma > 0)) throw InvalidInput("laplace: Re s must be positive");
    double theta = 25.0 / sigma;
    for (int i = 0; i < 4; ++i)
        theta = (std::log(1e9) + std::log(std::max(1.0, std::log(theta / d.support_lo())))) / sigma;
    return theta;
}

LaplaceS1Result laplace_s1_check(const Density& d, Complex s, double theta_max, double h,
                                 std::int64_t cap, const QuadratureSpec& q) {
    if (!(s.real() > 0)) throw InvalidInput("laplace_s1_check: Re s must be positive");
    if (!(theta_max > d.support_hi())) throw InvalidInput("laplace_s1_check: theta_max too small");

    const Complex Ld = laplace_density(d, s, q);
    if (std::abs(Ld) >= 1.0)
        throw InvalidInput("laplace_s1_check: s outside the admissible region (|L_s(d)| >= 1)");

    LaplaceS1Result res;
    res.theta_max = theta_max;
    res.rhs = -std::log(1.0 - Ld) / (2.0 * s);

    const double a = d.support_lo();
    const double b = d.support_hi();
    const auto delta = default_delta(d);

    // n = 1: exact-quadrature Laplace integral of delta itself
    const double rate = std::abs(s.real()) + std::abs(s.imag());
    Complex lhs = 0;
    for (const Piece& p : d.pieces())
        lhs += integrate_oscillatory([&](double t) { return delta(t) * std::exp(-s * t); },
                                     p.lo, p.hi, rate, (b - a) / 8.0, q);
    lhs += delta(b) * (std::exp(-s * b) - std::exp(-s * theta_max)) / s;

    // n >= 2: double trapezoid over each term's own lattice.  With
    // theta_j = n a + j h and u_i = (n-1) a + i h the delta argument is
    // a + (j - i) h, so one table D[m] = delta(a + m h) serves every term,
    // and swapping the sums turns the theta integral into prefix sums:
    //   T_n = h^2 sum_i w_i g[i] e^{-s u_i} (P[J_n - i] - E[J_n - i] / 2).
    ConvolutionChain chain(d, h, cap, theta_max + h);
    const double hh = chain.h();
    const int M = chain.steps_per_span();
    const int n_max = static_cast<int>(std::floor(theta_max / a + 1e-12));

    const Eigen::Index table_len = static_cast<Eigen::Index>((theta_max - 2.0 * a) / hh) + 2;
    std::vector<Complex> E(static_cast<size_t>(std::max<Eigen::Index>(table_len, 2)));
    std::vector<Complex> P(E.size());
    {
        Complex run = 0;
        for (size_t m = 0; m < E.size(); ++m) {
            const double t = a + static_cast<double>(m) * hh;
            const double Dm = static_cast<double>(m) >= static_cast<double>(M) ? delta(b) : delta(t);
            E[m] = Dm * std::exp(-s * t);
            run += E[m];
            P[m] = run;
        }
    }

    for (int n = 2; n <= n_max; ++n) {
        const double theta0 = n * a;
        const Eigen::Index Jn = static_cast<Eigen::Index>((theta_max - theta0) / hh + 1e-9);
        if (Jn < 1) break;
        const GridFunction& g = chain.grid(n - 1);
        const Eigen::Index support_end = static_cast<Eigen::Index>(n - 1) * M;
        const Eigen::Index len = std::min<Eigen::Index>(g.size(), Jn + 1);
        const Complex step = std::exp(-s * hh);
        Complex esu = std::exp(-s * g.x0);
        Complex term = 0;
        for (Eigen::Index i = 0; i < len; ++i) {
            if ((i & 255) == 255) esu = std::exp(-s * g.x_at(i));  // curb drift
            const double w = (i == 0 || i == support_end) ? 0.5 : 1.0;
            const Eigen::Index m = Jn - i;
            term += w * g.values[i] * esu * (P[static_cast<size_t>(m)] - 0.5 * E[static_cast<size_t>(m)]);
            esu *= step;
        }
        lhs += hh * hh * term / static_cast<double>(n);
    }

    res.lhs = lhs;
    res.h = hh;

    // dropped tail: S1(theta) <= log(theta/a) and log grows sublinearly
    const double sigma = s.real();
    const double L = std::log(theta_max / a);
    res.tail_bound = std::exp(-sigma * theta_max) * (L / sigma + 1.0 / (sigma * sigma * theta_max));
    return res;
}

} // namespace convasym
