#include "convasym/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "convasym/spectral.hpp"

namespace convasym {

Complex bootstrap_seed(const Density& d, int n, int iterations) {
    if (n == 0) throw InvalidInput("bootstrap_seed: n must be nonzero");
    if (iterations < 0) throw InvalidInput("bootstrap_seed: iterations must be >= 0");
    if (n < 0) return -std::conj(bootstrap_seed(d, -n, iterations));

    const double b = d.support_hi();
    const double alpha = 1.0 / (b * d.value_at_hi());
    const Complex offset(0.0, 2.0 * M_PI * n);
    Complex z = offset;
    bool have_prev = false;
    double prev_im = 0;
    for (int it = 0; it < iterations; ++it) {
        Complex w = std::log(alpha * z);
        if (have_prev) {
            // keep the branch continuous across iterates
            w += Complex(0.0, 2.0 * M_PI * std::round((prev_im - w.imag()) / (2.0 * M_PI)));
        }
        prev_im = w.imag();
        have_prev = true;
        z = w + offset;
    }
    return z / (Complex(0, 1) * b);
}

Complex prop31_estimate(const Density& d, int n) {
    if (n < 1) throw InvalidInput("prop31_estimate: n must be >= 1");
    const double b = d.support_hi();
    const double db = d.value_at_hi();
    return Complex((M_PI / b) * (2.0 * n + 0.5), -(1.0 / b) * std::log(2.0 * M_PI * n / (b * db)));
}

// --- phase tracking ------------------------------------------------------

namespace {

struct Walk {
    const Density* d;
    const QuadratureSpec* q;
    double abort_mod = 1e-8;
    int depth_cap = 52;
    double turn = 0;        // accumulated argument / 2pi
    double min_mod = std::numeric_limits<double>::infinity();

    Complex eval(Complex z) const {
        const Complex f = -one_minus_ft(*d, z, *q);  // ft - 1, stable near 0
        return f;
    }

    void note(const Complex& f) {
        const double m = std::abs(f);
        min_mod = std::min(min_mod, m);
        if (m < abort_mod)
            throw BoundaryTooClose("winding: boundary sample within " +
                                   std::to_string(abort_mod) + " of a zero");
    }

    // path: t -> boundary point
    void segment(const std::function<Complex(double)>& path, double t1, Complex f1,
                 double t2, Complex f2, int depth) {
        const double dphi = std::arg(f2 / f1);
        if (std::abs(dphi) <= 0.9) {
            turn += dphi / (2.0 * M_PI);
            return;
        }
        if (depth >= depth_cap)
            throw NumericFailure("winding: boundary phase unresolved at depth cap");
        const double tm = 0.5 * (t1 + t2);
        const Complex fm = eval(path(tm));
        note(fm);
        segment(path, t1, f1, tm, fm, depth + 1);
        segment(path, tm, fm, t2, f2, depth + 1);
    }

    void run(const std::function<Complex(double)>& path, double t0, double t1, int initial) {
        std::vector<double> ts(initial + 1);
        std::vector<Complex> fs(initial + 1);
        for (int i = 0; i <= initial; ++i) {
            ts[i] = t0 + (t1 - t0) * i / initial;
            fs[i] = eval(path(ts[i]));
            note(fs[i]);
        }
        for (int i = 0; i < initial; ++i) segment(path, ts[i], fs[i], ts[i + 1], fs[i + 1], 0);
    }
};

int settle_turns(double turn) {
    const double rounded = std::round(turn);
    if (std::abs(turn - rounded) >= 0.25)
        throw NumericFailure("winding: rounding defect " + std::to_string(std::abs(turn - rounded)) +
                             " >= 0.25");
    return static_cast<int>(rounded);
}

} // namespace

int winding_number(const Density& d, const Rect& rect, const QuadratureSpec& q) {
    if (!(rect.re_hi > rect.re_lo) || !(rect.im_hi > rect.im_lo))
        throw InvalidInput("winding_number: degenerate rectangle");
    q.validate();
    Walk walk{&d, &q};
    const double b = d.support_hi();
    const Complex c00(rect.re_lo, rect.im_lo), c10(rect.re_hi, rect.im_lo);
    const Complex c11(rect.re_hi, rect.im_hi), c01(rect.re_lo, rect.im_hi);
    auto edge = [&](Complex from, Complex to) {
        const double len = std::abs(to - from);
        const int initial = std::max(8, static_cast<int>(std::ceil(len * b / 0.7)));
        walk.run([&](double t) { return from + t * (to - from); }, 0.0, 1.0, initial);
    };
    edge(c00, c10);  // counterclockwise
    edge(c10, c11);
    edge(c11, c01);
    edge(c01, c00);
    return settle_turns(walk.turn);
}

static int winding_circle(const Density& d, Complex center, double radius, const QuadratureSpec& q) {
    Walk walk{&d, &q};
    walk.abort_mod = 1e-13;
    walk.run([&](double t) { return center + radius * std::exp(Complex(0, t)); },
             0.0, 2.0 * M_PI, 16);
    return settle_turns(walk.turn);
}

ZeroRecord refine_zero(const Density& d, Complex seed, double tol, const QuadratureSpec& q) {
    if (!(seed.imag() < 0)) throw InvalidInput("refine_zero: seed must lie in the lower half-plane");
    q.validate();
    const double b = d.support_hi();
    Complex k = seed;
    ZeroRecord rec;
    bool converged = false;
    for (int it = 0; it <= 50; ++it) {
        if (std::abs(k.imag()) * b > 690.0)
            throw NumericFailure("refine_zero: iterate escaped below the overflow guard");
        const FtPair fp = ft_pair(d, k, q);
        const Complex f = fp.value - 1.0;
        rec.residual = std::abs(f);
        rec.newton_iterations = it;
        if (rec.residual <= tol) {
            converged = true;
            break;
        }
        if (fp.derivative == 0.0) break;
        k -= f / fp.derivative;
    }
    if (!converged)
        throw NumericFailure("refine_zero: Newton did not reach tol within 50 iterations");
    rec.k = k;
    const double spacing = M_PI / b;
    const double radius = std::min(1e-3, 0.01 * spacing);
    rec.multiplicity = winding_circle(d, k, radius, q);
    if (rec.multiplicity < 1)
        throw NumericFailure("refine_zero: certification circle found no zero");
    return rec;
}

// --- strip enumeration ----------------------------------------------------

namespace {

struct Registry {
    std::map<std::pair<long long, long long>, ZeroRecord> zeros;
    static std::pair<long long, long long> key(Complex k) {
        return {llround(k.real() / 1e-6), llround(k.imag() / 1e-6)};
    }
    bool insert(const ZeroRecord& rec) { return zeros.emplace(key(rec.k), rec).second; }
    int mass_inside(const Rect& r) const {
        int m = 0;
        for (const auto& [_, rec] : zeros)
            if (r.contains(rec.k)) m += rec.multiplicity;
        return m;
    }
};

// The bottom edge is the caller's hypothesis line Im k = -c;
// it is checked, never moved.  The other three edges may be nudged outward.
int winding_strip(const Density& d, const Rect& r, const QuadratureSpec& q) {
    double jig = 0;
    for (int attempt = 0; attempt < 6; ++attempt) {
        try {
            Rect rr{r.re_lo - jig, r.re_hi + jig, r.im_lo, r.im_hi + jig * 0.01};
            return winding_number(d, rr, q);
        } catch (const BoundaryTooClose&) {
            if (line_zero_distance(d, -r.im_lo, r.re_lo, r.re_hi, q) < 1e-6)
                throw ZeroFreeLineError(
                    "enumerate_strip: a zero lies within 1e-6 of the line Im k = -c; move c");
            jig = (jig == 0) ? 1e-5 * (1.0 + r.width()) : jig * 3.7;
        }
    }
    throw NumericFailure("winding: could not free the boundary from nearby zeros");
}

struct Subdivider {
    const Density* d;
    const QuadratureSpec* q;
    Registry* reg;
    int depth_cap;

    void process(const Rect& r, int count, int depth) {
        if (count == 0) return;
        if (reg->mass_inside(r) == count) return;
        if (depth > depth_cap)
            throw NumericFailure("enumerate_strip: incomplete enumeration, cell cap exhausted "
                                 "(partial results discarded)");
        // opportunistic Newton from the cell center
        try {
            ZeroRecord rec = refine_zero(*d, Complex(0.5 * (r.re_lo + r.re_hi),
                                                     0.5 * (r.im_lo + r.im_hi)),
                                         1e-12, *q);
            rec.provenance = ZeroRecord::Provenance::subdivision;
            if (r.contains(rec.k)) {
                reg->insert(rec);
                if (reg->mass_inside(r) == count) return;
            }
        } catch (const NumericFailure&) {
            // fall through to subdivision
        }
        for (int attempt = 0;; ++attempt) {
            const double fr = 0.5 + 0.06 * attempt;
            const double mre = r.re_lo + fr * r.width();
            const double mim = r.im_lo + fr * r.height();
            Rect cells[4] = {{r.re_lo, mre, r.im_lo, mim},
                             {mre, r.re_hi, r.im_lo, mim},
                             {r.re_lo, mre, mim, r.im_hi},
                             {mre, r.re_hi, mim, r.im_hi}};
            int counts[4], sum = 0;
            try {
                for (int i = 0; i < 4; ++i) sum += counts[i] = winding_number(*d, cells[i], *q);
            } catch (const BoundaryTooClose&) {
                if (attempt >= 5) throw NumericFailure("enumerate_strip: cannot split cell");
                continue;
            }
            if (sum != count) {
                if (attempt >= 5)
                    throw NumericFailure("enumerate_strip: child counts disagree with parent");
                continue;
            }
            for (int i = 0; i < 4; ++i) process(cells[i], counts[i], depth + 1);
            return;
        }
    }
};

} // namespace

std::vector<ZeroRecord> enumerate_strip(const Density& d, const StripSpec& strip,
                                        const QuadratureSpec& q, bool use_seeds) {
    strip.validate();
    q.validate();
    const Rect whole{-strip.R, strip.R, -strip.c, -strip.guard_eps};
    const int total = winding_strip(d, whole, q);

    Registry reg;
    const double b = d.support_hi();
    for (int n = 1; use_seeds; ++n) {
        const Complex est = prop31_estimate(d, n);
        if (est.real() > strip.R + 2.0 * M_PI / b) break;
        if (-est.imag() > strip.c + 3.0) break;
        for (const Complex seed : {est, -std::conj(est)}) {
            try {
                ZeroRecord rec = refine_zero(d, seed, 1e-12, q);
                rec.provenance = ZeroRecord::Provenance::bootstrap_seed;
                if (whole.contains(rec.k)) reg.insert(rec);
            } catch (const NumericFailure&) {
                // subdivision will recover anything the seed missed
            }
        }
    }

    Subdivider sub{&d, &q, &reg, strip.cell_cap};
    sub.process(whole, total, 0);

    std::vector<ZeroRecord> out;
    int mass = 0;
    for (const auto& [_, rec] : reg.zeros) {
        if (!whole.contains(rec.k)) continue;
        out.push_back(rec);
        mass += rec.multiplicity;
    }
    if (mass != total)
        throw NumericFailure("enumerate_strip: multiplicity sum " + std::to_string(mass) +
                             " does not match the strip winding number " + std::to_string(total));
    std::sort(out.begin(), out.end(), [](const ZeroRecord& x, const ZeroRecord& y) {
        if (x.k.real() != y.k.real()) return x.k.real() < y.k.real();
        return x.k.imag() < y.k.imag();
    });
    return out;
}

} // namespace convasym
