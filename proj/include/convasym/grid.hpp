#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "convasym/density.hpp"
#include "convasym/quadrature.hpp"

namespace convasym {

// A real function sampled on the uniform lattice x0 + j h.  Carrier for the
// n-fold convolutions d^{*n}, whose lattice covers [n a, n b] exactly.
struct GridFunction {
    double x0 = 0;
    double h = 0;
    Eigen::ArrayXd values;

    Eigen::Index size() const { return values.size(); }
    double x_at(Eigen::Index j) const { return x0 + static_cast<double>(j) * h; }
    double x_last() const { return x_at(values.size() - 1); }

    double interp(double x) const;          // linear; 0 outside the lattice
    double trapezoid_mass() const;          // end-halved trapezoid of the samples
    Complex dft(Complex k) const;           // h * sum' values_j e^{i k x_j}, ends halved
};

// Lattice size cap; CONVASYM_MAX_GRID overrides the 10^7-point default.
std::int64_t default_grid_cap();

// Number of lattice steps across [a, b]; h must divide b - a.
int points_per_span(const Density& d, double h);

// Direct trapezoid-weighted convolution chain: the reference path.  The
// sampled density enters every convolution with its support endpoints
// half-weighted (node-averaged jump values), which keeps the O(h^2) error
// budget and makes the lattice Fourier transform exactly multiplicative.
GridFunction nfold(const Density& d, int n, double h,
                   std::int64_t cap = default_grid_cap());

// F_d(x) = sum_{1 <= n <= x/a} d^{*n}(x) / n, each term read off its lattice
// (linear interpolation between nodes).
double f_direct(const Density& d, double x, double h,
                std::int64_t cap = default_grid_cap());

// Shared lattice engine: caches the chain d^{*1}, d^{*2}, ... for one
// (density, h) pair and answers pointwise F_d queries.  Grids can be
// truncated above x_truncate when only a bounded window is needed; the chain
// stays exact there because convolution never looks rightward.
class ConvolutionChain {
public:
    ConvolutionChain(const Density& d, double h,
                     std::int64_t cap = default_grid_cap(),
                     double x_truncate = std::numeric_limits<double>::infinity(),
                     bool allow_fft = true);

    const Density& density() const { return d_; }
    double h() const { return h_; }
    int steps_per_span() const { return M_; }
    const GridFunction& grid(int n);        // 1-based
    double f_direct_at(double x);
    int term_min(double x) const;
    int term_max(double x) const;
    // Largest trapezoid mass defect among the grids built so far; the
    // natural h^2-scale noise floor for residual fits.
    double mass_defect() const { return mass_defect_; }

private:
    void extend(int n);

    Density d_;
    double h_;
    std::int64_t cap_;
    double x_truncate_;
    bool allow_fft_;
    int M_ = 0;
    Eigen::ArrayXd kernel_;                 // h * end-halved samples of d
    Eigen::ArrayXd first_halved_;           // end-halved samples of d
    std::vector<GridFunction> grids_;
    double mass_defect_ = 0;
};

namespace detail {
// out[j] = sum_i f[i] g[j-i]; direct loops for small sizes, FFT otherwise.
Eigen::ArrayXd linear_convolve(const Eigen::ArrayXd& f, const Eigen::ArrayXd& g, bool allow_fft);
Eigen::ArrayXd linear_convolve_direct(const Eigen::ArrayXd& f, const Eigen::ArrayXd& g);
} // namespace detail

} // namespace convasym
