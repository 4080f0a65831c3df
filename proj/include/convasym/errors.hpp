#pragma once

#include <stdexcept>
#include <string>

namespace convasym {

// Base for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed parameters, densities that fail their construction invariants,
// arguments outside an operation's domain.  CLI exit code 2.
struct InvalidInput : Error {
    using Error::Error;
};

// Numerical breakdowns: non-convergence, unresolved winding boundaries,
// overflow guards.  CLI exit code 3.
struct NumericFailure : Error {
    using Error::Error;
};

// A requested lattice or enumeration exceeds the configured size cap.
struct ResourceLimit : NumericFailure {
    using NumericFailure::NumericFailure;
};

// |Im k| * b beyond the binary64 exp range guard.
struct OverflowRange : NumericFailure {
    using NumericFailure::NumericFailure;
};

// The sampled minimum of |1 - ft(u - ic)| fell below threshold: the
// horizontal line Im k = -c cannot be certified zero-free.  CLI exit code 4.
struct ZeroFreeLineError : Error {
    using Error::Error;
};

// A contour passes too close to a zero; callers perturb and retry.
struct BoundaryTooClose : NumericFailure {
    using NumericFailure::NumericFailure;
};

} // namespace convasym
