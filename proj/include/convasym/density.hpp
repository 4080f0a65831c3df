#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "convasym/errors.hpp"

namespace convasym {

// One analytic piece of a compactly supported density on [lo, hi].
//   Burgess:    coef[0] / x
//   Uniform:    coef[0]
//   Polynomial: sum_j coef[j] x^j
enum class PieceKind { Burgess, Uniform, Polynomial };

struct Piece {
    double lo = 0;
    double hi = 0;
    PieceKind kind = PieceKind::Uniform;
    Eigen::ArrayXd coef;

    double value(double x) const;
    double moment(int j) const;            // exact  int_lo^hi x^j piece(x) dx
    double cumulative(double t) const;     // exact  int_lo^min(t,hi) piece(x) dx
};

// A probability density supported in [a, b], a > 0, built from contiguous
// pieces.  Validated at construction: positive support, exact tiling,
// normalization within 1e-10, nonzero endpoint values, positive variance.
// Immutable afterwards; moments 0..4 cached in closed form.
class Density {
public:
    // d(x) = 2/x on [lambda/sqrt(e), lambda]; the unique normalization of the
    // reciprocal family (kappa is forced, not a free parameter).
    static Density burgess(double lambda = 0.25);
    static Density uniform(double a, double b);
    static Density piecewise(std::vector<Piece> pieces, bool normalize = false);
    // Skips the construction checks so that hypothesis-violating candidates
    // can still be inspected through validate().
    static Density piecewise_unchecked(std::vector<Piece> pieces);

    double support_lo() const { return a_; }
    double support_hi() const { return b_; }
    double operator()(double x) const;     // 0 outside [a, b]
    double value_at_lo() const;            // one-sided endpoint values
    double value_at_hi() const;
    double moment(int j) const;            // j in 0..4
    double d1() const { return moments_[1]; }
    double d2() const { return moments_[2]; }
    double cumulative(double t) const;     // int_0^t d
    const std::vector<Piece>& pieces() const { return pieces_; }
    bool builtin_family() const { return builtin_; }

private:
    Density() = default;
    void finish(bool check);

    std::vector<Piece> pieces_;
    double a_ = 0, b_ = 0;
    double moments_[5] = {0, 0, 0, 0, 0};
    bool builtin_ = false;
};

struct ValidationReport {
    double normalization_defect = 0;
    double endpoint_lo = 0;
    double endpoint_hi = 0;
    double d1 = 0;
    double d2 = 0;
    double variance = 0;
    double max_interior_gap = 0;   // continuity defect across breakpoints
    double min_sampled_value = 0;

    bool support_ok = false;
    bool normalization_ok = false;
    bool endpoints_ok = false;
    bool variance_ok = false;
    bool continuity_ok = false;
    bool nonnegative_ok = false;
    bool c2_hypothesis = false;    // builtin families only; user pieces flagged

    std::vector<std::string> failures;
    bool pass() const { return failures.empty(); }
};

// Re-derives every standing hypothesis by quadrature, independent of the
// closed-form moments cached at construction.
ValidationReport validate(const Density& d);

// "piecewise-poly v1" text format: one `lo,hi,c0[,c1,...]` row per piece.
Density load_density_file(const std::string& path, bool normalize = false);
Density load_density_text(const std::string& text, bool normalize = false);
// Same format, construction checks skipped (for validation reports).
Density load_density_file_unchecked(const std::string& path);

// CLI grammar: burgess[:lambda=<f>] | uniform:a=<f>,b=<f> | file:<path>
Density parse_density_spec(const std::string& spec, bool normalize = false);

} // namespace convasym
