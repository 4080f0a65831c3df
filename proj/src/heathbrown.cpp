#include "convasym/heathbrown.hpp"

#include <cmath>

#include "convasym/spectral.hpp"

namespace convasym {

BurgessCase BurgessCase::make(double lambda) {
    if (!(lambda > 0) || lambda > 0.25)
        throw InvalidInput("BurgessCase: lambda must lie in (0, 1/4]");
    return BurgessCase{lambda, lambda * std::exp(-0.5), Density::burgess(lambda)};
}

double delta_burgess(double theta) {
    if (theta < 0) throw InvalidInput("delta_burgess: theta must be >= 0");
    const double kappa = 0.25 * std::exp(-0.5);
    if (theta <= kappa) return 0.0;
    if (theta >= 0.25) return 0.5;
    return std::log(4.0 * theta) + 0.5;    // log(4 theta sqrt(e))
}

Complex h_eval(Complex z, const QuadratureSpec& q) {
    if (std::abs(z.real()) > 700.0)
        throw OverflowRange("h_eval: |Re z| exceeds the exp range guard");
    const double lo = std::exp(-0.5);
    if (std::abs(z) < 0.05) {
        Complex acc = 0;
        Complex zpow = 1.0;          // (-z)^{m-1}
        double mfact = 1.0;
        for (int m = 1; m <= 40; ++m) {
            mfact *= m;
            const Complex term = zpow * (-std::expm1(-0.5 * m)) / (m * mfact);
            acc += term;
            if (std::abs(term) < 1e-14 * std::max(1.0, std::abs(acc)) && m > 3) break;
            zpow *= -z;
        }
        return 2.0 * acc;
    }
    const double rate = std::abs(z.real()) + std::abs(z.imag());
    const Complex integral = integrate_oscillatory(
        [&](double u) { return (1.0 - std::exp(-z * u)) / u; }, lo, 1.0, rate, (1.0 - lo) / 8.0, q);
    return 2.0 * integral / z;
}

double mapping_residual(Complex k, const QuadratureSpec& q) {
    if (k == 0.0) throw InvalidInput("mapping_residual: k must be nonzero");
    static const Density ref = Density::burgess(0.25);
    const Complex lhs = h_eval(Complex(0, -0.25) * k, q);
    const Complex rhs = Complex(0, 4.0) / k * (1.0 - ft(ref, k, q));
    return std::abs(lhs - rhs);
}

std::vector<ZeroRecord> burgess_zero_rescale(double lambda,
                                             const std::vector<ZeroRecord>& reference_zeros) {
    if (!(lambda > 0) || lambda > 0.25)
        throw InvalidInput("burgess_zero_rescale: lambda must lie in (0, 1/4]");
    std::vector<ZeroRecord> out = reference_zeros;
    for (ZeroRecord& rec : out) rec.k /= 4.0 * lambda;
    return out;
}

} // namespace convasym
