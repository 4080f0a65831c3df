#include <doctest.h>

#include <cmath>
#include <sstream>

#include "convasym/asymptotics.hpp"
#include "convasym/heathbrown.hpp"
#include "convasym/spectral.hpp"

using namespace convasym;

namespace {
const Complex kFirstZero(31.720909427740057, -2.2605599857402185);

std::vector<ZeroRecord> first_pair() {
    ZeroRecord a;
    a.k = kFirstZero;
    ZeroRecord b;
    b.k = -std::conj(kFirstZero);
    return {a, b};
}
} // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("expansion over zero lists") {
    CHECK(expansion_eval({}, 2.0) == doctest::Approx(0.5).epsilon(1e-15));  // 1/x
    // a conjugate pair collapses to (1 + 2 e^{Im k x} cos(Re k x)) / x
    auto pair = first_pair();
    for (double x : {0.7, 1.3, 2.1}) {
        const double expected =
            (1.0 + 2.0 * std::exp(kFirstZero.imag() * x) * std::cos(kFirstZero.real() * x)) / x;
        CHECK(expansion_eval(pair, x) == doctest::Approx(expected).epsilon(1e-12));
    }
    // unpaired list rejected
    std::vector<ZeroRecord> unpaired = {pair[0]};
    CHECK_THROWS_AS(expansion_eval(unpaired, 1.0), InvalidInput);
    CHECK_THROWS_AS(expansion_eval(pair, -1.0), InvalidInput);
}

TEST_CASE("comparison report: rows, csv, single-term region") {
    Density d = Density::burgess(0.25);
    const double h = (d.support_hi() - d.support_lo()) / 2048;
    auto pair = first_pair();
    ExpansionReport rep = compare_direct_vs_expansion(d, 6.0, {0.2, 1.0, 2.0}, h, {}, &pair);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[0].f_direct == doctest::Approx(10.0).epsilon(1e-6));  // F = d below 2 kappa
    for (const ExpansionRow& r : rep.rows) {
        CHECK(std::isfinite(r.scaled_residual));
        CHECK(r.residual == r.f_direct - r.expansion);
        CHECK(r.scaled_residual == doctest::Approx(r.residual * std::exp(6.0 * r.x)));
    }
    std::ostringstream csv;
    rep.write_csv(csv);
    CHECK(csv.str().rfind("x,f_direct,expansion,residual,scaled_residual\n", 0) == 0);
}

TEST_CASE("residual slope below the first zero matches its depth") {
    Density d = Density::burgess(0.25);
    const double h = (d.support_hi() - d.support_lo()) / 4096;
    std::vector<double> xs;
    for (double x = 1.0; x <= 2.5 + 1e-9; x += 0.125) xs.push_back(x);
    // c = 2: the strip is empty, the expansion is 1/x, and |xF - 1| decays
    // like e^{Im k_1 x}
    std::vector<ZeroRecord> empty;
    ExpansionReport rep = compare_direct_vs_expansion(d, 2.0, xs, h, {}, &empty);
    auto slope = rep.fit_slope();
    REQUIRE(slope.has_value());
    CHECK(std::abs(*slope - kFirstZero.imag()) < 0.15 * std::abs(kFirstZero.imag()));
    // c = 6 with the pair subtracted: much steeper decay
    ExpansionReport rep6 = compare_direct_vs_expansion(d, 6.0, xs, h);
    REQUIRE(rep6.zeros.size() == 2);
    auto slope6 = rep6.fit_slope();
    REQUIRE(slope6.has_value());
    CHECK(*slope6 <= -5.5);
}

TEST_CASE("laplace transform of the density") {
    Density d = Density::burgess(0.25);
    CHECK(std::abs(laplace_density(d, 0.0) - 1.0) < 1e-12);
    const Complex v1 = laplace_density(d, 1.0);
    CHECK(std::abs(v1.imag()) < 1e-13);
    CHECK(v1.real() > 0.0);
    CHECK(v1.real() < 1.0);
    // substitution identity against the transform
    for (Complex s : {Complex(1, 2), Complex(0.3, -4)})
        CHECK(std::abs(laplace_density(d, s) - ft(d, Complex(0, 1) * s)) < 1e-10);
}

TEST_CASE("series for S1: closed-region identities") {
    Density d = Density::burgess(0.25);
    const double kappa = d.support_lo();
    const double h = (0.25 - kappa) / 2048;
    CHECK(s1_series(d, 0.1, h) == 0.0);                                    // below support
    CHECK(s1_series(d, 0.2, h) == doctest::Approx(0.27685644868579024).epsilon(1e-12));
    CHECK(s1_series(d, 0.25, h) == doctest::Approx(0.5).epsilon(1e-12));
    // S1 = delta on [0, 2 kappa): only the first term survives there
    for (int i = 0; i <= 20; ++i) {
        const double th = 2.0 * kappa * i / 20.0 * 0.999;
        CHECK(std::abs(s1_series(d, th, h) - 0.5 * d.cumulative(th)) < 1e-14);
    }
    // custom cumulative (closed-form profile) agrees with the default route
    for (double th : {0.2, 0.4, 0.7, 1.1})
        CHECK(s1_series(d, delta_burgess, th, h) ==
              doctest::Approx(s1_series(d, th, h)).epsilon(1e-10));
}

TEST_CASE("derivative of S1 via the direct series") {
    Density d = Density::burgess(0.25);
    const double h = (d.support_hi() - d.support_lo()) / 2048;
    // central difference of the series as the oracle
    const double theta = 2.0, dtheta = 1e-3;
    const double fd = (s1_series(d, theta + dtheta, h) - s1_series(d, theta - dtheta, h)) /
                      (2.0 * dtheta);
    CHECK(s1_prime(d, theta, h) == doctest::Approx(fd).epsilon(1e-4));
    // leading behavior 1/(2 theta) far out
    CHECK(std::abs(s1_prime(d, 12.0, h) - 1.0 / 24.0) < 1e-5);
    CHECK_THROWS_AS(s1_prime(d, 0.2, h), InvalidInput);   // theta <= b guard
}

TEST_CASE("laplace identity for S1") {
    Density d = Density::burgess(0.25);
    const double h = (d.support_hi() - d.support_lo()) / 512;
    for (Complex s : {Complex(2, 0), Complex(1, 1)}) {
        const LaplaceS1Result r = laplace_s1_check(d, s, laplace_theta_max(d, s), h);
        CHECK(std::abs(r.lhs - r.rhs) / std::abs(r.rhs) < 1e-6);
        CHECK(r.tail_bound < 1e-8);
    }
    CHECK_THROWS_AS(laplace_s1_check(d, Complex(-1, 0), 30.0, h), InvalidInput);
    CHECK_THROWS_AS(laplace_s1_check(d, Complex(1, 0), 0.1, h), InvalidInput);
}

TEST_CASE("S1 machinery on the uniform family") {
    Density u = Density::uniform(1, 2);
    const double h = 1.0 / 512;
    // below 2a only the first term survives: S1 = delta = (theta - 1)/2
    CHECK(s1_series(u, 1.5, h) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(s1_series(u, 0.8, h) == 0.0);
    const LaplaceS1Result r = laplace_s1_check(u, Complex(2, 0), laplace_theta_max(u, 2.0), h);
    CHECK(std::abs(r.lhs - r.rhs) / std::abs(r.rhs) < 1e-6);
}

TEST_CASE("scaled residual obeys the error-term bound") {
    Density d = Density::burgess(0.25);
    const double h = (d.support_hi() - d.support_lo()) / 4096;
    const double c = 6.0;
    ExpansionReport rep = compare_direct_vs_expansion(d, c, {1.0, 1.4, 1.9, 2.3}, h);
    const double bound = fc_l1_bound(d, c, 600.0) / (2.0 * M_PI);
    // residual e^{cx} is the finite-U error term plus lattice noise
    for (const ExpansionRow& r : rep.rows)
        CHECK(std::abs(r.scaled_residual) <= bound + 1e-3);
}

TEST_CASE("expansion identity with the explicit error term") {
    Density d = Density::burgess(0.25);
    const double h = (d.support_hi() - d.support_lo()) / 8192;
    const double c = 6.0, x = 2.0;
    auto pair = first_pair();
    const double F = f_direct(d, x, h);
    const double S = x * expansion_eval(pair, x) - 1.0;
    const Complex E = error_term_E(d, c, x, 800.0);
    CHECK(std::abs(x * F - 1.0 - S - E.real() * std::exp(-c * x)) < 1e-6);
}

TEST_CASE("expansion identity with a line threading between zero rings") {
    // Im k = -9 passes within ~0.5 of the rings at -8.47 and -10.31; the
    // strip then holds two mirror pairs and the identity must still close.
    Density d = Density::burgess(0.25);
    const double h = (d.support_hi() - d.support_lo()) / 8192;
    const double c = 9.0, x = 1.5;
    StripSpec strip;
    strip.c = c;
    strip.R = 120.0;
    auto zeros = enumerate_strip(d, strip);
    REQUIRE(zeros.size() == 4);
    const double F = f_direct(d, x, h);
    const double S = x * expansion_eval(zeros, x) - 1.0;
    const Complex E = error_term_E(d, c, x, 800.0);
    CHECK(std::abs(x * F - 1.0 - S - E.real() * std::exp(-c * x)) < 1e-6);
    // a line exactly on the deeper ring is rejected
    CHECK_THROWS_AS(error_term_E(d, 8.4654662614163581, x, 800.0), ZeroFreeLineError);
}

} // TEST_SUITE
