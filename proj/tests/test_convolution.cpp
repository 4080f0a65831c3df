#include <doctest.h>

#include <cmath>
#include <functional>

#include "convasym/grid.hpp"
#include "convasym/spectral.hpp"

using namespace convasym;

namespace {

// test-local oracle: (d*d)(x) by Simpson over the exact overlap window
double conv2_oracle(const Density& d, double x, int n = 20000) {
    const double lo = std::max(d.support_lo(), x - d.support_hi());
    const double hi = std::min(d.support_hi(), x - d.support_lo());
    if (hi <= lo) return 0.0;
    const double h = (hi - lo) / n;
    auto f = [&](double t) { return d(t) * d(x - t); };
    double acc = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) acc += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

double span(const Density& d) { return d.support_hi() - d.support_lo(); }

} // namespace

TEST_SUITE("convolution") {

TEST_CASE("n = 1 returns exact samples") {
    Density d = Density::burgess(0.25);
    GridFunction g = nfold(d, 1, span(d) / 512);
    for (Eigen::Index j = 0; j < g.size(); ++j) CHECK(g.values[j] == d(g.x_at(j)));
    CHECK(g.x0 == d.support_lo());
}

TEST_CASE("triangle peak of the uniform self-convolution") {
    Density d = Density::uniform(0.5, 1.5);
    GridFunction g = nfold(d, 2, span(d) / 1024);
    CHECK(g.interp(2.0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(g.x0 == doctest::Approx(1.0));
    CHECK(g.x_last() == doctest::Approx(3.0));
    // exact tent shape: d*d(x) = 1 - |x - 2| on [1, 3]
    for (double x : {1.3, 1.75, 2.4, 2.9})
        CHECK(g.interp(x) == doctest::Approx(1.0 - std::abs(x - 2.0)).epsilon(1e-6));
}

TEST_CASE("second convolution against the Simpson oracle") {
    Density d = Density::burgess(0.25);
    GridFunction g = nfold(d, 2, span(d) / 2048);
    for (double x : {0.35, 0.38, 0.42, 0.46})
        CHECK(g.interp(x) == doctest::Approx(conv2_oracle(d, x)).epsilon(1e-7));
}

TEST_CASE("support and mass conservation") {
    Density d = Density::burgess(0.25);
    const double h = span(d) / 512;
    for (int n = 2; n <= 10; ++n) {
        GridFunction g = nfold(d, n, h);
        CHECK(g.values[0] == 0.0);
        CHECK(g.values[g.size() - 1] == 0.0);
        CHECK(std::abs(g.trapezoid_mass() - 1.0) < 100.0 * h * h);
    }
}

TEST_CASE("Fourier duality between the lattice and the transform") {
    Density d = Density::burgess(0.25);
    const double h = span(d) / 4096;
    for (int n : {2, 3}) {
        GridFunction g = nfold(d, n, h);
        for (double k : {-43.0, -17.0, 3.0, 29.0, 50.0}) {
            const Complex lhs = g.dft(k);
            const Complex rhs = std::pow(ft(d, k), n);
            CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-6);
        }
    }
}

TEST_CASE("order-2 Richardson consistency") {
    Density d = Density::burgess(0.25);
    GridFunction g1 = nfold(d, 2, span(d) / 512);
    GridFunction g2 = nfold(d, 2, span(d) / 1024);
    GridFunction g3 = nfold(d, 2, span(d) / 2048);
    double d12 = 0, d23 = 0;
    for (Eigen::Index j = 0; j < g1.size(); ++j) {
        d12 = std::max(d12, std::abs(g1.values[j] - g2.values[2 * j]));
        d23 = std::max(d23, std::abs(g2.values[2 * j] - g3.values[4 * j]));
    }
    CHECK(d12 / d23 > 3.5);
    CHECK(d12 / d23 < 4.5);
}

TEST_CASE("direct series: single-term region and zero region") {
    Density d = Density::burgess(0.25);
    const double h = span(d) / 2048;
    CHECK(f_direct(d, 0.2, h) == doctest::Approx(10.0).epsilon(1e-8));
    CHECK(f_direct(d, 0.1, h) == 0.0);                      // below the support
    // the series has a genuine gap (lambda, 2 kappa) where every term vanishes
    CHECK(f_direct(d, 0.29, h) == 0.0);
    CHECK(f_direct(d, 0.35, h) == doctest::Approx(conv2_oracle(d, 0.35) / 2.0).epsilon(1e-7));
}

TEST_CASE("boundedness and decay of x F_d(x)") {
    Density d = Density::burgess(0.25);
    ConvolutionChain chain(d, span(d) / 2048, default_grid_cap(), 6.2);
    const double a = d.support_lo();
    double max_xf = 0;
    for (int i = 0; i <= 70; ++i) {
        const double x = 5 * a + (40 * a - 5 * a) * i / 70.0;
        max_xf = std::max(max_xf, x * chain.f_direct_at(x));
    }
    CHECK(max_xf < 3.0);
    CHECK(std::abs(40 * a * chain.f_direct_at(40 * a) - 1.0) < 1e-3);
}

TEST_CASE("fast path agrees with the reference convolution") {
    Density d = Density::burgess(0.25);
    const double h = span(d) / 512;
    ConvolutionChain ref(d, h, default_grid_cap(),
                         std::numeric_limits<double>::infinity(), /*allow_fft=*/false);
    ConvolutionChain fast(d, h, default_grid_cap(),
                          std::numeric_limits<double>::infinity(), /*allow_fft=*/true);
    for (int n : {2, 8, 17, 24}) {
        const GridFunction& a = ref.grid(n);
        const GridFunction& b = fast.grid(n);
        REQUIRE(a.size() == b.size());
        double worst = 0;
        for (Eigen::Index j = 0; j < a.size(); ++j)
            worst = std::max(worst, std::abs(a.values[j] - b.values[j]));
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("lattice and resource guards") {
    Density d = Density::burgess(0.25);
    CHECK_THROWS_AS(nfold(d, 2, span(d) / 1000.5), InvalidInput);   // h does not divide b-a
    CHECK_THROWS_AS(nfold(d, 0, span(d) / 512), InvalidInput);
    CHECK_THROWS_AS(nfold(d, 50, span(d) / 4096, /*cap=*/100'000), ResourceLimit);
    CHECK_THROWS_AS(f_direct(d, -1.0, span(d) / 512), InvalidInput);
}

} // TEST_SUITE
