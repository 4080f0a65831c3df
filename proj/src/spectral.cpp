#include "convasym/spectral.hpp"

#include <cmath>

namespace convasym {

static constexpr double kExpGuard = 700.0;

static void check_overflow(const Density& d, Complex k) {
    if (std::abs(k.imag()) * d.support_hi() > kExpGuard)
        throw OverflowRange("ft: |Im k| * b exceeds the exp overflow guard (700)");
}

// phase/growth budget per unit length of x for the factor e^{ikx}
static double k_rate(Complex k) { return std::abs(k.real()) + std::abs(k.imag()); }

template <class F>
static Complex piece_integrate(const Density& d, Complex k, const QuadratureSpec& q, F&& weight) {
    const double span8 = (d.support_hi() - d.support_lo()) / 8.0;
    const Complex ik(0, 1);
    Complex total = 0;
    for (const Piece& p : d.pieces()) {
        total += integrate_oscillatory(
            [&](double x) { return weight(x) * p.value(x) * std::exp(ik * k * x); },
            p.lo, p.hi, k_rate(k), span8, q);
    }
    return total;
}

Complex ft(const Density& d, Complex k, const QuadratureSpec& q) {
    check_overflow(d, k);
    return piece_integrate(d, k, q, [](double) { return 1.0; });
}

Complex ft_derivative(const Density& d, Complex k, const QuadratureSpec& q) {
    check_overflow(d, k);
    return Complex(0, 1) * piece_integrate(d, k, q, [](double x) { return x; });
}

FtPair ft_pair(const Density& d, Complex k, const QuadratureSpec& q) {
    check_overflow(d, k);
    const double span8 = (d.support_hi() - d.support_lo()) / 8.0;
    const Complex ik(0, 1);
    FtPair out{0.0, 0.0};
    const GaussRule& rule = gauss_rule(q.panel_order);
    for (const Piece& p : d.pieces()) {
        const int panels = panel_count(p.lo, p.hi, k_rate(k), span8, q);
        const double width = (p.hi - p.lo) / panels;
        for (int pa = 0; pa < panels; ++pa) {
            const double mid = p.lo + (pa + 0.5) * width;
            const double half = 0.5 * width;
            Complex v = 0, dv = 0;
            for (int i = 0; i < rule.x.size(); ++i) {
                const double x = mid + half * rule.x[i];
                const Complex e = rule.w[i] * p.value(x) * std::exp(ik * k * x);
                v += e;
                dv += x * e;
            }
            out.value += half * v;
            out.derivative += half * dv;
        }
    }
    out.derivative *= ik;
    return out;
}

Complex ft_tail_approx(const Density& d, Complex k) {
    if (k == 0.0) throw InvalidInput("ft_tail_approx: k must be nonzero");
    check_overflow(d, k);
    const Complex ik(0, 1);
    return (d.value_at_hi() * std::exp(ik * k * d.support_hi()) -
            d.value_at_lo() * std::exp(ik * k * d.support_lo())) / (ik * k);
}

Complex one_minus_ft(const Density& d, Complex k, const QuadratureSpec& q) {
    if (std::abs(k) * d.support_hi() < 0.01) {
        const Complex ik = Complex(0, 1) * k;
        Complex term = ik, acc = 0;
        for (int j = 1; j <= 4; ++j) {
            acc += term * d.moment(j);
            term *= ik / static_cast<double>(j + 1);
        }
        return -acc;
    }
    return 1.0 - ft(d, k, q);
}

double log_inversion_fd(const Density& d, double x, double U, const QuadratureSpec& q) {
    if (!(U > 0)) throw InvalidInput("log_inversion_fd: U must be positive");
    q.validate();
    const Complex mi(0, -1);
    auto integrand = [&](double k) {
        const Complex om = one_minus_ft(d, Complex(k, 0), q);
        return (std::log(om) + (1.0 - om)) * std::exp(mi * k * x);
    };
    // conjugate symmetry folds the line onto [0, U]
    const double k0 = std::min(1.0, U);
    Complex acc = integrate_graded_lower(integrand, 0.0, k0, 1e-14, q.panel_order);
    if (U > k0) {
        const double rate = std::abs(x) + d.support_hi();
        acc += integrate_oscillatory(integrand, k0, U, rate, U, q);
    }
    return -acc.real() / M_PI;
}

// --- error-term line ---------------------------------------------------

static double outer_zero_radius(const Density& d, double c) {
    // Re-extent of possible strip zeros from the asymptotic zero law:
    // ring n sits near depth (1/b) log(2 pi n / (b d(b))).
    const double b = d.support_hi();
    const double alpha_inv = b * std::abs(d.value_at_hi());
    double n_c = alpha_inv * std::exp(c * b) / (2 * M_PI);
    return (M_PI / b) * (2 * n_c + 2.5) + 6 * M_PI / b;
}

static void ensure_line_zero_free(const Density& d, double c, double U, const QuadratureSpec& q) {
    const double scan_hi = std::min(U, std::max(50.0, outer_zero_radius(d, c)));
    if (line_zero_distance(d, c, 0.0, scan_hi, q) < 1e-6)
        throw ZeroFreeLineError("error term: a zero lies within 1e-6 of the line Im k = -c");
}

double line_zero_distance(const Density& d, double c, double re_lo, double re_hi,
                          const QuadratureSpec& q) {
    const int n = std::max(64, static_cast<int>((re_hi - re_lo) * d.support_hi() * 4));
    std::vector<double> mod(static_cast<size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
        const double u = re_lo + (re_hi - re_lo) * i / n;
        mod[static_cast<size_t>(i)] = std::abs(one_minus_ft(d, Complex(u, -c), q));
    }
    double best = std::numeric_limits<double>::infinity();
    const double leash = 6.0 * M_PI / d.support_hi();   // a few ring spacings
    for (int i = 0; i <= n; ++i) {
        if (i > 0 && mod[i - 1] < mod[i]) continue;
        if (i < n && mod[i + 1] < mod[i]) continue;
        // Newton from the local minimum toward the nearest zero; iterates
        // that leave the neighborhood come from flat stretches, not zeros
        const Complex start(re_lo + (re_hi - re_lo) * i / n, -c);
        Complex k = start;
        bool escaped = false;
        for (int it = 0; it < 12 && !escaped; ++it) {
            const FtPair fp = ft_pair(d, k, q);
            const Complex f = fp.value - 1.0;
            if (std::abs(f) < 1e-13 || fp.derivative == 0.0) break;
            const Complex step = f / fp.derivative;
            k -= step;
            escaped = std::abs(k - start) > leash ||
                      std::abs(k.imag()) * d.support_hi() > 600.0;
            if (std::abs(step) < 1e-14 * std::abs(k)) break;
        }
        if (!escaped && std::abs(ft(d, k, q) - 1.0) < 1e-8)
            best = std::min(best, std::abs(k.imag() + c));
    }
    return best;
}

ErrorTermLine::ErrorTermLine(const Density& d, double c, double U, const QuadratureSpec& q,
                             double x_scale)
    : c_(c), U_(U), x_scale_(x_scale) {
    if (!(c > 0)) throw InvalidInput("error term: c must be positive");
    if (!(U > 0)) throw InvalidInput("error term: U must be positive");
    q.validate();
    check_overflow(d, Complex(0, -c));

    // heuristic zero-free-line certificate: polished distance from the line
    // to the nearest zero where strip zeros can plausibly sit, plus the raw
    // sampled modulus over every quadrature node below
    min_one_minus_ = std::numeric_limits<double>::infinity();
    ensure_line_zero_free(d, c, U, q);

    const double rate = x_scale_ + d.support_hi();
    const int panels = panel_count(0.0, U, rate, U, q);
    const double width = U / panels;
    const GaussRule& rule = gauss_rule(q.panel_order);
    nodes_.reserve(static_cast<size_t>(panels) * rule.x.size());
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * width;
        const double half = 0.5 * width;
        for (int i = 0; i < rule.x.size(); ++i) {
            const double u = mid + half * rule.x[i];
            const FtPair fp = ft_pair(d, Complex(u, -c), q);
            const Complex om = 1.0 - fp.value;
            min_one_minus_ = std::min(min_one_minus_, std::abs(om));
            const Complex fc = fp.derivative * fp.value / om;
            nodes_.push_back(u);
            weights_.push_back(half * rule.w[i]);
            fc_.push_back(fc);
        }
    }
    if (min_one_minus_ < 1e-6)
        throw ZeroFreeLineError("error term: sampled min |1 - ft(u - ic)| < 1e-6; move c");

    double l1 = 0;
    for (size_t i = 0; i < nodes_.size(); ++i) l1 += weights_[i] * std::abs(fc_[i]);
    l1_truncated_ = 2.0 * l1;   // both half-lines

    // Lemma-2.1-style 1/u envelopes fitted on the outer window
    const double win_hi = std::min(200.0, U);
    const double win_lo = U >= 200.0 ? 100.0 : 0.5 * U;
    const double ecb = std::exp(c * d.support_hi());
    double A = 0, A1 = 0;
    for (int i = 0; i <= 40; ++i) {
        const double u = win_lo + (win_hi - win_lo) * i / 40.0;
        const FtPair fp = ft_pair(d, Complex(u, -c), q);
        A = std::max(A, std::abs(fp.value) * u / ecb);
        A1 = std::max(A1, std::abs(fp.derivative) * u / ecb);
    }
    const double edge = A * ecb / U;
    tail_majorant_ = (edge < 0.9)
        ? 2.0 * A * A1 * ecb * ecb / ((1.0 - edge) * U)
        : std::numeric_limits<double>::infinity();
}

Complex ErrorTermLine::error_term(double x) const {
    if (std::abs(x) > x_scale_ + 1e-9)
        throw InvalidInput("error term: |x| exceeds the phase budget this line was built for");
    double acc = 0;
    const Complex mi(0, -1);
    for (size_t i = 0; i < nodes_.size(); ++i)
        acc += weights_[i] * std::imag(fc_[i] * std::exp(mi * nodes_[i] * x));
    return Complex(acc / M_PI, 0.0);
}

Complex error_term_E(const Density& d, double c, double x, double U, const QuadratureSpec& q) {
    if (!(c > 0)) throw InvalidInput("error term: c must be positive");
    if (!(U > 0)) throw InvalidInput("error term: U must be positive");
    q.validate();
    check_overflow(d, Complex(0, -c));
    ensure_line_zero_free(d, c, U, q);
    // both half-lines integrated explicitly: the u <-> -u pairing stays an
    // observable property rather than a construction
    const Complex mi(0, -1);
    auto fc_at = [&](double u) {
        const FtPair fp = ft_pair(d, Complex(u, -c), q);
        return fp.derivative * fp.value / (1.0 - fp.value);
    };
    const double rate = std::abs(x) + d.support_hi();
    Complex acc = integrate_oscillatory([&](double u) { return fc_at(u) * std::exp(mi * u * x); },
                                        -U, U, rate, U, q);
    return acc / (2.0 * M_PI * Complex(0, 1));
}

double fc_l1_bound(const Density& d, double c, double U, const QuadratureSpec& q) {
    ErrorTermLine line(d, c, U, q, 0.0);
    return line.l1_bound();
}

} // namespace convasym
