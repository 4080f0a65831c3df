#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "convasym/errors.hpp"

namespace convasym {

using i64 = std::int64_t;

bool is_prime(i64 n);
std::vector<i64> primes_up_to(i64 n);
// `count` primes nearest to `center`, ascending.
std::vector<i64> primes_near(i64 center, int count);

// floor(p^theta), guarded against a size cap.
i64 pow_theta(i64 p, double theta, i64 cap);

// An odd prime with its full Legendre-symbol table, built once by marking
// the squares mod p.  Immutable afterwards.
class PrimeContext {
public:
    explicit PrimeContext(i64 p);

    i64 p() const { return p_; }
    // (n|p) by table lookup; n is reduced mod p (periodic extension).
    int legendre(i64 n) const {
        i64 r = n % p_;
        if (r < 0) r += p_;
        return table_[static_cast<size_t>(r)];
    }
    const std::vector<std::int8_t>& table() const { return table_; }

private:
    i64 p_;
    std::vector<std::int8_t> table_;
};

// Euler-criterion route n^((p-1)/2) mod p; spot-check path for values past
// any table.
int legendre_powmod(i64 n, i64 p);

// Least positive quadratic nonresidue; primality of the result is a
// classical consequence of multiplicativity and is asserted, not assumed.
i64 n0(const PrimeContext& ctx);

// |N_p(X)| = #{n <= X : (n|p) = -1}.
i64 count_nonresidues(const PrimeContext& ctx, double X, i64 cap = 100'000'000);

// S_{p,j}(theta) = sum 1/k over squarefree k <= p^theta whose prime factors
// are all nonresidues and omega(k) = j.  Compensated summation.
double s_pj(const PrimeContext& ctx, int j, double theta, i64 cap = 10'000'000);

// psi_p(x) = sum_{q^m <= x} log(q) (q^m | p).
double psi_p(const PrimeContext& ctx, double x, i64 cap = 100'000'000);

// Exact inclusion-exclusion core: lhs = sum over pairs (m, k), k squarefree
// with every prime factor a nonresidue, mk <= p^theta, (m|p) = -(k|p), mk
// free of nonresidue-prime squares, of (-1)^{omega(k)+1}; rhs = the count of
// such square-free-in-the-nonresidue-part members of N_p(p^theta).  Always
// equal.
std::pair<i64, i64> inclusion_exclusion_identity(const PrimeContext& ctx, double theta,
                                                 i64 cap = 100'000);

// Number of ordered j-tuples of prime nonresidues with product k.
i64 r_j_count(const PrimeContext& ctx, i64 k, int j);

struct NonresidueStats {
    i64 p = 0;
    i64 n0 = 0;
    std::vector<double> theta;
    std::vector<i64> counts;
    std::vector<double> density;   // counts / p^theta

    void write_csv(std::ostream& out) const;  // theta,count,density with a #-comment header
};

NonresidueStats density_profile(const PrimeContext& ctx, const std::vector<double>& theta_grid,
                                i64 cap = 100'000'000);

} // namespace convasym
