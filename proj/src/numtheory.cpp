#include "convasym/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace convasym {

bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (i64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<i64> primes_up_to(i64 n) {
    std::vector<i64> out;
    if (n < 2) return out;
    std::vector<bool> composite(static_cast<size_t>(n + 1), false);
    for (i64 i = 2; i <= n; ++i) {
        if (composite[static_cast<size_t>(i)]) continue;
        out.push_back(i);
        for (i64 j = i * i; j <= n; j += i) composite[static_cast<size_t>(j)] = true;
    }
    return out;
}

std::vector<i64> primes_near(i64 center, int count) {
    std::vector<i64> found;
    for (i64 radius = 0; static_cast<int>(found.size()) < 2 * count + 4; ++radius) {
        if (radius == 0) {
            if (is_prime(center)) found.push_back(center);
        } else {
            if (center - radius > 2 && is_prime(center - radius)) found.push_back(center - radius);
            if (is_prime(center + radius)) found.push_back(center + radius);
        }
        if (radius > center) break;
    }
    std::sort(found.begin(), found.end(), [&](i64 x, i64 y) {
        return std::llabs(x - center) < std::llabs(y - center);
    });
    if (static_cast<int>(found.size()) > count) found.resize(static_cast<size_t>(count));
    std::sort(found.begin(), found.end());
    return found;
}

i64 pow_theta(i64 p, double theta, i64 cap) {
    if (theta < 0) throw InvalidInput("pow_theta: theta must be >= 0");
    const double v = std::exp(theta * std::log(static_cast<double>(p)));
    if (v > static_cast<double>(cap) + 0.5)
        throw ResourceLimit("p^theta = " + std::to_string(v) + " exceeds the enumeration cap " +
                            std::to_string(cap));
    return static_cast<i64>(v + 1e-9);
}

PrimeContext::PrimeContext(i64 p) : p_(p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw InvalidInput("PrimeContext: p must be an odd prime");
    if (p > 100'000'000) throw ResourceLimit("PrimeContext: sieve table capped at p <= 1e8");
    table_.assign(static_cast<size_t>(p), -1);
    table_[0] = 0;
    i64 residues = 0;
    for (i64 k = 1; k <= (p - 1) / 2; ++k) {
        const i64 sq = static_cast<i64>((static_cast<unsigned long long>(k) * k) % p);
        residues += table_[static_cast<size_t>(sq)] == -1;
        table_[static_cast<size_t>(sq)] = 1;
    }
    if (residues != (p - 1) / 2)
        throw NumericFailure("PrimeContext: residue count is not (p-1)/2 (sieve corrupt)");
}

int legendre_powmod(i64 n, i64 p) {
    i64 base = n % p;
    if (base < 0) base += p;
    if (base == 0) return 0;
    unsigned long long result = 1, b = static_cast<unsigned long long>(base);
    i64 e = (p - 1) / 2;
    const unsigned long long m = static_cast<unsigned long long>(p);
    while (e > 0) {
        if (e & 1) result = (result * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return result == 1 ? 1 : -1;   // result is 1 or p-1
}

i64 n0(const PrimeContext& ctx) {
    for (i64 n = 2; n < ctx.p(); ++n) {
        if (ctx.legendre(n) == -1) {
            if (!is_prime(n))
                throw NumericFailure("n0: least nonresidue came out composite (table corrupt)");
            return n;
        }
    }
    throw NumericFailure("n0: no nonresidue found below p");
}

i64 count_nonresidues(const PrimeContext& ctx, double X, i64 cap) {
    if (X < 0) throw InvalidInput("count_nonresidues: X must be >= 0");
    if (X > static_cast<double>(cap)) throw ResourceLimit("count_nonresidues: X exceeds cap");
    const i64 N = static_cast<i64>(X + 1e-9);
    const i64 p = ctx.p();
    i64 count = (N / p) * ((p - 1) / 2);
    for (i64 r = 1; r <= N % p; ++r)
        if (ctx.table()[static_cast<size_t>(r)] == -1) ++count;
    return count;
}

namespace {

struct Kahan {
    double sum = 0, comp = 0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// prime nonresidues <= limit, ascending
std::vector<i64> prime_nonresidues(const PrimeContext& ctx, i64 limit) {
    std::vector<i64> out;
    for (i64 q : primes_up_to(limit))
        if (ctx.legendre(q) == -1) out.push_back(q);
    return out;
}

void spj_dfs(const std::vector<i64>& qs, size_t start, int remaining, i64 prod, i64 limit,
             Kahan& acc) {
    for (size_t i = start; i < qs.size(); ++i) {
        if (prod > limit / qs[i]) break;
        const i64 next = prod * qs[i];
        if (remaining == 1)
            acc.add(1.0 / static_cast<double>(next));
        else
            spj_dfs(qs, i + 1, remaining - 1, next, limit, acc);
    }
}

} // namespace

double s_pj(const PrimeContext& ctx, int j, double theta, i64 cap) {
    if (j < 1) throw InvalidInput("s_pj: j must be >= 1");
    const i64 X = pow_theta(ctx.p(), theta, cap);
    const std::vector<i64> qs = prime_nonresidues(ctx, X);
    Kahan acc;
    spj_dfs(qs, 0, j, 1, X, acc);
    return acc.sum;
}

double psi_p(const PrimeContext& ctx, double x, i64 cap) {
    if (x < 0) throw InvalidInput("psi_p: x must be >= 0");
    if (x > static_cast<double>(cap)) throw ResourceLimit("psi_p: x exceeds cap");
    const i64 N = static_cast<i64>(x + 1e-9);
    Kahan acc;
    for (i64 q : primes_up_to(N)) {
        const double lq = std::log(static_cast<double>(q));
        for (i64 qm = q; qm <= N; ) {
            acc.add(lq * ctx.legendre(qm));
            if (qm > N / q) break;
            qm *= q;
        }
    }
    return acc.sum;
}

std::pair<i64, i64> inclusion_exclusion_identity(const PrimeContext& ctx, double theta, i64 cap) {
    const i64 X = pow_theta(ctx.p(), theta, cap);

    // flags: nonresidue-square-free ("bad" marks q^2 | n for a nonresidue q)
    std::vector<std::uint8_t> bad(static_cast<size_t>(X + 1), 0);
    std::vector<i64> qs = prime_nonresidues(ctx, X);
    for (i64 q : qs) {
        if (q > X / q) break;
        for (i64 m = q * q; m <= X; m += q * q) bad[static_cast<size_t>(m)] = 1;
    }

    i64 rhs = 0;
    for (i64 n = 1; n <= X; ++n)
        if (ctx.legendre(n) == -1 && !bad[static_cast<size_t>(n)]) ++rhs;

    // lhs: walk K_p (squarefree, all prime factors nonresidues) by DFS and
    // count the admissible partners m with the inclusion-exclusion sign
    i64 lhs = 0;
    struct Walker {
        const PrimeContext& ctx;
        const std::vector<i64>& qs;
        const std::vector<std::uint8_t>& bad;
        i64 X;
        i64 total = 0;

        void visit(i64 k, int omega) {
            const int sign = (omega % 2 == 1) ? 1 : -1;
            const int want = -ctx.legendre(k);     // (m|p) = -(k|p)
            for (i64 m = 1; m <= X / k; ++m) {
                if (ctx.legendre(m) != want) continue;
                if (bad[static_cast<size_t>(m * k)]) continue;
                total += sign;
            }
        }
        void dfs(size_t start, i64 prod, int omega) {
            for (size_t i = start; i < qs.size(); ++i) {
                if (prod > X / qs[i]) break;
                const i64 next = prod * qs[i];
                visit(next, omega + 1);
                dfs(i + 1, next, omega + 1);
            }
        }
    } walker{ctx, qs, bad, X};
    walker.dfs(0, 1, 0);
    lhs = walker.total;
    return {lhs, rhs};
}

i64 r_j_count(const PrimeContext& ctx, i64 k, int j) {
    if (j < 1 || k < 1) return 0;
    if (j == 1) return (is_prime(k) && ctx.legendre(k) == -1) ? 1 : 0;
    i64 total = 0;
    for (i64 q = 2; q <= k; ++q) {
        if (k % q != 0 || !is_prime(q)) continue;
        if (ctx.legendre(q) != -1) continue;
        total += r_j_count(ctx, k / q, j - 1);
    }
    return total;
}

void NonresidueStats::write_csv(std::ostream& out) const {
    out << "# p=" << p << " n0=" << n0 << "\n";
    out << "theta,count,density\n";
    char buf[128];
    for (size_t i = 0; i < theta.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%lld,%.17g\n", theta[i],
                      static_cast<long long>(counts[i]), density[i]);
        out << buf;
    }
}

NonresidueStats density_profile(const PrimeContext& ctx, const std::vector<double>& theta_grid,
                                i64 cap) {
    NonresidueStats stats;
    stats.p = ctx.p();
    stats.n0 = convasym::n0(ctx);
    for (double th : theta_grid) {
        const double X = std::exp(th * std::log(static_cast<double>(ctx.p())));
        if (X > static_cast<double>(cap)) throw ResourceLimit("density_profile: p^theta exceeds cap");
        const i64 c = count_nonresidues(ctx, X, cap);
        stats.theta.push_back(th);
        stats.counts.push_back(c);
        stats.density.push_back(static_cast<double>(c) / X);
    }
    return stats;
}

} // namespace convasym
