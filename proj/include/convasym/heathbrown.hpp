#pragma once

#include <vector>

#include "convasym/density.hpp"
#include "convasym/quadrature.hpp"
#include "convasym/zeros.hpp"

namespace convasym {

// The tight-Burgess special case: d(x) = 2/x on [lambda/sqrt(e), lambda].
struct BurgessCase {
    double lambda;
    double kappa;
    Density density;

    static BurgessCase make(double lambda = 0.25);
};

// delta(theta) for lambda = 1/4: 0 below 1/(4 sqrt(e)), log(4 theta sqrt(e))
// on the critical interval, 1/2 beyond 1/4.
double delta_burgess(double theta);

// H(z) = (2/z) int_{1/sqrt(e)}^{1} (1 - e^{-zu}) du / u.  Quadrature away
// from the origin; for |z| < 0.05 the removable singularity is evaluated by
// the termwise-integrated exponential series
//   H(z) = 2 sum_{m>=1} (-z)^{m-1} (1 - e^{-m/2}) / (m m!).
Complex h_eval(Complex z, const QuadratureSpec& q = {});

// | H(-ik/4) - (4i/k)(1 - ft(d_{1/4}, k)) |, both sides by independent
// quadrature.
double mapping_residual(Complex k, const QuadratureSpec& q = {});

// Zeros of the Burgess(lambda) transform from the reference Burgess(1/4)
// zeros via the k -> 4 lambda k rescaling (multiplicities preserved).
std::vector<ZeroRecord> burgess_zero_rescale(double lambda,
                                             const std::vector<ZeroRecord>& reference_zeros);

} // namespace convasym
