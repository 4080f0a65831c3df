#include "convasym/grid.hpp"

#include <cmath>
#include <cstdlib>

#include <unsupported/Eigen/FFT>

namespace convasym {

double GridFunction::interp(double x) const {
    const double t = (x - x0) / h;
    if (t <= 0) return t == 0 ? values[0] : 0.0;
    const Eigen::Index n = values.size();
    if (t >= static_cast<double>(n - 1)) return t == static_cast<double>(n - 1) ? values[n - 1] : 0.0;
    const Eigen::Index j = static_cast<Eigen::Index>(t);
    const double frac = t - static_cast<double>(j);
    return values[j] * (1.0 - frac) + values[j + 1] * frac;
}

double GridFunction::trapezoid_mass() const {
    const Eigen::Index n = values.size();
    if (n < 2) return 0;
    return h * (values.sum() - 0.5 * (values[0] + values[n - 1]));
}

Complex GridFunction::dft(Complex k) const {
    const Eigen::Index n = values.size();
    const Complex step = std::exp(Complex(0, 1) * k * h);
    Complex phase = std::exp(Complex(0, 1) * k * x0);
    Complex acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        acc += w * values[j] * phase;
        phase *= step;
        if ((j & 1023) == 1023) phase = std::exp(Complex(0, 1) * k * x_at(j + 1)); // refresh drift
    }
    return h * acc;
}

std::int64_t default_grid_cap() {
    static std::int64_t cap = [] {
        if (const char* env = std::getenv("CONVASYM_MAX_GRID")) {
            char* end = nullptr;
            long long v = std::strtoll(env, &end, 10);
            if (end != env && v > 0) return static_cast<std::int64_t>(v);
        }
        return static_cast<std::int64_t>(10'000'000);
    }();
    return cap;
}

int points_per_span(const Density& d, double h) {
    if (!(h > 0)) throw InvalidInput("grid: step h must be positive");
    const double span = d.support_hi() - d.support_lo();
    const double ratio = span / h;
    const int M = static_cast<int>(std::llround(ratio));
    if (M < 2 || std::abs(ratio - M) > 1e-9 * ratio)
        throw InvalidInput("grid: h must divide b - a (kink points must land on lattice nodes)");
    return M;
}

namespace detail {

Eigen::ArrayXd linear_convolve_direct(const Eigen::ArrayXd& f, const Eigen::ArrayXd& g) {
    const Eigen::Index nf = f.size(), ng = g.size();
    Eigen::ArrayXd out = Eigen::ArrayXd::Zero(nf + ng - 1);
    // accumulate the shorter operand outward
    if (nf <= ng) {
        for (Eigen::Index i = 0; i < nf; ++i) {
            const double fi = f[i];
            if (fi == 0) continue;
            out.segment(i, ng) += fi * g;
        }
    } else {
        for (Eigen::Index i = 0; i < ng; ++i) {
            const double gi = g[i];
            if (gi == 0) continue;
            out.segment(i, nf) += gi * f;
        }
    }
    return out;
}

static Eigen::ArrayXd linear_convolve_fft(const Eigen::ArrayXd& f, const Eigen::ArrayXd& g) {
    const Eigen::Index out_len = f.size() + g.size() - 1;
    Eigen::Index nfft = 1;
    while (nfft < out_len) nfft <<= 1;
    std::vector<double> fa(static_cast<size_t>(nfft), 0.0), ga(static_cast<size_t>(nfft), 0.0);
    for (Eigen::Index i = 0; i < f.size(); ++i) fa[static_cast<size_t>(i)] = f[i];
    for (Eigen::Index i = 0; i < g.size(); ++i) ga[static_cast<size_t>(i)] = g[i];
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> fw, gw;
    fft.fwd(fw, fa);
    fft.fwd(gw, ga);
    for (size_t i = 0; i < fw.size(); ++i) fw[i] *= gw[i];
    std::vector<double> conv;
    fft.inv(conv, fw);
    Eigen::ArrayXd out(out_len);
    for (Eigen::Index i = 0; i < out_len; ++i) out[i] = conv[static_cast<size_t>(i)];
    return out;
}

Eigen::ArrayXd linear_convolve(const Eigen::ArrayXd& f, const Eigen::ArrayXd& g, bool allow_fft) {
    const double work = static_cast<double>(f.size()) * static_cast<double>(g.size());
    if (!allow_fft || work < 4.0e6) return linear_convolve_direct(f, g);
    return linear_convolve_fft(f, g);
}

} // namespace detail

static Eigen::ArrayXd sample_density(const Density& d, int M, double h, bool halve_ends) {
    Eigen::ArrayXd s(M + 1);
    const double a = d.support_lo();
    for (int i = 0; i <= M; ++i) s[i] = d(a + i * h);
    // use exact endpoint values (d() may round x off the support edge)
    s[0] = d.value_at_lo();
    s[M] = d.value_at_hi();
    if (halve_ends) {
        s[0] *= 0.5;
        s[M] *= 0.5;
    }
    return s;
}

ConvolutionChain::ConvolutionChain(const Density& d, double h, std::int64_t cap,
                                   double x_truncate, bool allow_fft)
    : d_(d), h_(h), cap_(cap), x_truncate_(x_truncate), allow_fft_(allow_fft) {
    M_ = points_per_span(d, h);
    h_ = (d.support_hi() - d.support_lo()) / M_;   // snap
    first_halved_ = sample_density(d_, M_, h_, true);
    kernel_ = h_ * first_halved_;

    GridFunction g1;
    g1.x0 = d.support_lo();
    g1.h = h_;
    g1.values = sample_density(d_, M_, h_, false);
    grids_.push_back(std::move(g1));
    mass_defect_ = std::abs(grids_[0].trapezoid_mass() - 1.0);
}

void ConvolutionChain::extend(int n) {
    while (static_cast<int>(grids_.size()) < n) {
        const int m = static_cast<int>(grids_.size()) + 1;  // building d^{*m}
        const std::int64_t full_points = static_cast<std::int64_t>(m) * M_ + 1;
        const GridFunction& prev = grids_.back();
        const Eigen::ArrayXd& input = (m == 2) ? first_halved_ : prev.values;

        GridFunction g;
        g.x0 = static_cast<double>(m) * d_.support_lo();
        g.h = h_;
        Eigen::ArrayXd conv = detail::linear_convolve(input, kernel_, allow_fft_);
        if (m == 2 && conv.size() > M_) {
            // At x = a + b both factors jump at the same two t-nodes, and the
            // product of node averages is half the node average of the
            // product; restore the trapezoid value of the integrand there.
            conv[M_] += 2.0 * kernel_[0] * first_halved_[M_];
        }
        // conv index j corresponds to x = m*a + j*h
        Eigen::Index keep = std::min<Eigen::Index>(conv.size(), full_points);
        if (std::isfinite(x_truncate_)) {
            const double span = x_truncate_ - g.x0;
            if (span < 0) {
                keep = 0;
            } else {
                keep = std::min<Eigen::Index>(keep, static_cast<Eigen::Index>(span / h_) + 2);
            }
        }
        if (keep <= 0) {
            g.values = Eigen::ArrayXd::Zero(1);
        } else {
            g.values = conv.head(keep);
            // d^{*m} is continuous and vanishes at the support ends for
            // m >= 2; the discrete chain leaves an O(h) artifact there
            g.values[0] = 0.0;
            if (keep == full_points) g.values[keep - 1] = 0.0;
        }
        if (g.values.size() > cap_)
            throw ResourceLimit("convolution: lattice for d^{*" + std::to_string(m) +
                                "} exceeds the grid cap (" + std::to_string(cap_) + " points)");
        if (!std::isfinite(x_truncate_) || g.x_last() >= static_cast<double>(m) * d_.support_hi() - 0.5 * h_)
            mass_defect_ = std::max(mass_defect_, std::abs(g.trapezoid_mass() - 1.0));
        grids_.push_back(std::move(g));
    }
}

const GridFunction& ConvolutionChain::grid(int n) {
    if (n < 1) throw InvalidInput("nfold: n must be >= 1");
    const std::int64_t full_points = static_cast<std::int64_t>(n) * M_ + 1;
    if (!std::isfinite(x_truncate_) && full_points > cap_)
        throw ResourceLimit("convolution: n * (b-a)/h = " + std::to_string(full_points - 1) +
                            " exceeds the grid cap");
    extend(n);
    return grids_[static_cast<size_t>(n - 1)];
}

int ConvolutionChain::term_min(double x) const {
    return std::max(1, static_cast<int>(std::ceil(x / d_.support_hi() - 1e-12)));
}

int ConvolutionChain::term_max(double x) const {
    return static_cast<int>(std::floor(x / d_.support_lo() + 1e-12));
}

double ConvolutionChain::f_direct_at(double x) {
    if (!(x > 0)) throw InvalidInput("f_direct: x must be positive");
    if (x < d_.support_lo()) return 0.0;
    const int n_hi = term_max(x);
    double acc = 0;
    for (int n = n_hi; n >= term_min(x); --n) acc += grid(n).interp(x) / n;
    return acc;
}

GridFunction nfold(const Density& d, int n, double h, std::int64_t cap) {
    if (n < 1) throw InvalidInput("nfold: n must be >= 1");
    ConvolutionChain chain(d, h, cap, std::numeric_limits<double>::infinity(), /*allow_fft=*/false);
    return chain.grid(n);
}

double f_direct(const Density& d, double x, double h, std::int64_t cap) {
    ConvolutionChain chain(d, h, cap, x + h);
    return chain.f_direct_at(x);
}

} // namespace convasym
