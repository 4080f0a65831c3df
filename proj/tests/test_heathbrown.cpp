#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "convasym/heathbrown.hpp"
#include "convasym/spectral.hpp"

using namespace convasym;

namespace {

// test-local oracle: H by Simpson on the defining integrand
Complex h_oracle(Complex z, int n = 20000) {
    const double lo = std::exp(-0.5);
    const double h = (1.0 - lo) / n;
    auto f = [&](double u) { return (1.0 - std::exp(-z * u)) / u; };
    Complex acc = f(lo) + f(1.0);
    for (int i = 1; i < n; ++i) acc += f(lo + i * h) * ((i % 2) ? 4.0 : 2.0);
    return 2.0 * (acc * h / 3.0) / z;
}

const Complex kFirstZero(31.720909427740057, -2.2605599857402185);

} // namespace

TEST_SUITE("heathbrown") {

TEST_CASE("closed-form density profile") {
    CHECK(delta_burgess(0.1) == 0.0);
    CHECK(delta_burgess(0.25) == 0.5);
    CHECK(delta_burgess(0.4) == 0.5);
    CHECK(delta_burgess(0.2) == doctest::Approx(0.27685644868579024).epsilon(1e-15));
    CHECK_THROWS_AS(delta_burgess(-0.1), InvalidInput);
    // consistency with the half-normalized cumulative of the density
    Density d = Density::burgess(0.25);
    for (int i = 0; i <= 50; ++i) {
        const double th = 0.5 * i / 50.0;
        CHECK(std::abs(delta_burgess(th) - 0.5 * d.cumulative(th)) < 1e-10);
    }
}

TEST_CASE("H at and near the removable singularity") {
    CHECK(h_eval(0.0).real() == doctest::Approx(0.78693868057473316).epsilon(1e-12));
    CHECK(std::abs(h_eval(0.0).imag()) < 1e-15);
    // series route vs the independent Simpson oracle just inside the switch
    for (Complex z : {Complex(0.049, 0), Complex(0.02, 0.03), Complex(-0.01, -0.04)})
        CHECK(std::abs(h_eval(z) - h_oracle(z)) < 1e-12);
    // quadrature route just outside the switch
    for (Complex z : {Complex(0.06, 0), Complex(1.5, -2.0), Complex(-3.0, 40.0)})
        CHECK(std::abs(h_eval(z) - h_oracle(z)) < 1e-10);
    CHECK_THROWS_AS(h_eval(Complex(800, 0)), OverflowRange);
}

TEST_CASE("conjugate symmetry of H") {
    for (Complex z : {Complex(0.3, 1.0), Complex(-2, 5), Complex(0.01, 0.02)})
        CHECK(std::abs(h_eval(std::conj(z)) - std::conj(h_eval(z))) < 1e-12);
}

TEST_CASE("mapping identity between H and the transform") {
    CHECK(mapping_residual(5.0) < 1e-10);
    CHECK(mapping_residual(Complex(0, -1)) < 1e-10);
    CHECK(mapping_residual(kFirstZero) < 1e-10);
    CHECK(std::abs(h_eval(Complex(0, -0.25) * kFirstZero)) < 1e-10);
    CHECK_THROWS_AS(mapping_residual(0.0), InvalidInput);
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> mag(0.1, 50.0), ang(0.0, 2.0 * M_PI);
    for (int i = 0; i < 10; ++i) CHECK(mapping_residual(std::polar(mag(rng), ang(rng))) < 1e-9);
}

TEST_CASE("winding of H over the image of a zero strip") {
    Density d = Density::burgess(0.25);
    StripSpec strip;
    strip.c = 9.0;
    strip.R = 120.0;
    auto zeros = enumerate_strip(d, strip);
    REQUIRE(zeros.size() == 4);
    for (const ZeroRecord& z : zeros) CHECK(std::abs(h_eval(Complex(0, -0.25) * z.k)) < 1e-8);
    // z = -ik/4 maps the strip rect to [-c/4, -guard/4] x [-R/4, R/4]
    struct { double re_lo = -9.0 / 4, re_hi = -2.5e-4, im_lo = -30.0, im_hi = 30.0; } box;
    const auto corner = [&](int i) {
        const Complex c[4] = {{box.re_lo, box.im_lo}, {box.re_hi, box.im_lo},
                              {box.re_hi, box.im_hi}, {box.re_lo, box.im_hi}};
        return c[i];
    };
    double turn = 0;
    for (int e = 0; e < 4; ++e) {
        const Complex from = corner(e), to = corner((e + 1) % 4);
        const int steps = 1200;
        Complex prev = h_eval(from);
        for (int i = 1; i <= steps; ++i) {
            const Complex cur = h_eval(from + (to - from) * (double(i) / steps));
            turn += std::arg(cur / prev);
            prev = cur;
        }
    }
    CHECK(std::llround(turn / (2 * M_PI)) == 4);
}

TEST_CASE("zero rescaling across the Burgess family") {
    Density quarter = Density::burgess(0.25);
    StripSpec strip;
    strip.c = 6.0;
    strip.R = 60.0;
    auto ref = enumerate_strip(quarter, strip);
    REQUIRE(ref.size() == 2);
    // identity at lambda = 1/4
    auto same = burgess_zero_rescale(0.25, ref);
    CHECK(std::abs(same[0].k - ref[0].k) == 0.0);
    // lambda = 1/8 doubles every zero; verify against an independent enumeration
    auto scaled = burgess_zero_rescale(0.125, ref);
    StripSpec strip8;
    strip8.c = 6.0;
    strip8.R = 120.0;
    auto direct = enumerate_strip(Density::burgess(0.125), strip8);
    REQUIRE(direct.size() == scaled.size());
    for (size_t i = 0; i < direct.size(); ++i) {
        CHECK(std::abs(direct[i].k - scaled[i].k) < 1e-8);
        CHECK(direct[i].multiplicity == scaled[i].multiplicity);
    }
    CHECK_THROWS_AS(burgess_zero_rescale(0.3, ref), InvalidInput);
    CHECK_THROWS_AS(BurgessCase::make(0.6), InvalidInput);
    CHECK(BurgessCase::make(0.25).kappa == doctest::Approx(0.15163266492815836));
}

} // TEST_SUITE
