#include "permgeo/ball_counting.h"

#include <algorithm>
#include <bit>

#include "permgeo/error.h"
#include "permgeo/partition.h"

namespace permgeo {

namespace {

using Wide = unsigned __int128;

// Largest n whose central binomial coefficient fits in 128 bits. Every
// per-profile term and sum is bounded by C(n, t).
constexpr std::size_t max_wide_n = 128;

BigInt to_big(Wide v)
{
    BigInt r = static_cast<std::uint64_t>(v >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(v);
    return r;
}

BigInt to_big(const BigInt& v) { return v; }

template <class Int>
std::vector<std::vector<Int>> pascal(std::size_t n)
{
    std::vector<std::vector<Int>> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        c[i].assign(i + 1, Int(1));
        for (std::size_t k = 1; k < i; ++k) {
            c[i][k] = c[i - 1][k - 1] + c[i - 1][k];
        }
    }
    return c;
}

template <class Int>
const std::vector<std::vector<Int>>& pascal_cached(std::size_t n)
{
    thread_local std::vector<std::vector<Int>> table;
    if (table.size() < n + 1) {
        table = pascal<Int>(n);
    }
    return table;
}

template <class Int>
Int choose(const std::vector<std::vector<Int>>& c, std::size_t n, std::size_t k)
{
    return k > n ? Int(0) : c[n][k];
}

std::size_t fold(std::size_t d, std::size_t n) { return std::min(d, n - d); }

template <class Int>
std::vector<BigInt> finish(std::vector<Int> shells, std::size_t n, std::size_t t)
{
    // shells[r] counts vectors with t ones whose folded distance is exactly r.
    std::vector<BigInt> out(shells.size());
    Int acc = 0;
    for (std::size_t r = 0; r < shells.size(); ++r) {
        acc += shells[r];
        out[r] = to_big(acc);
        if (2 * t == n) {
            out[r] /= 2;
        }
    }
    return out;
}

template <class Int>
std::vector<BigInt> ball_kernel(std::size_t n, std::size_t t, std::size_t s)
{
    const auto& c = pascal_cached<Int>(n);
    std::vector<Int> shells(n / 2 + 1, Int(0));
    for (std::size_t d = 0; d <= n; ++d) {
        // x ones of m turn off, y zeros turn on: x + y = d, s - x + y = t.
        const long long twice_y = static_cast<long long>(d + t) - static_cast<long long>(s);
        if (twice_y < 0 || twice_y % 2 != 0) {
            continue;
        }
        const auto y = static_cast<std::size_t>(twice_y / 2);
        if (y > d) {
            continue;
        }
        const std::size_t x = d - y;
        if (x > s || y > n - s) {
            continue;
        }
        shells[fold(d, n)] += choose(c, s, x) * choose(c, n - s, y);
    }
    return finish(std::move(shells), n, t);
}

template <class Int>
std::vector<BigInt> pair_kernel(std::size_t n, std::size_t t, std::size_t a, std::size_t b,
                                std::size_t c_sz, std::size_t d)
{
    // Positions split by (m1, m2) into classes A=(0,0), B=(0,1), C=(1,0), D=(1,1);
    // kX ones of the candidate vector fall into class X.
    const auto& c = pascal_cached<Int>(n);
    std::vector<Int> shells(n / 2 + 1, Int(0));
    for (std::size_t ka = 0; ka <= std::min(a, t); ++ka) {
        for (std::size_t kb = 0; kb <= std::min(b, t - ka); ++kb) {
            const Int wab = c[a][ka] * c[b][kb];
            for (std::size_t kc = 0; kc <= std::min(c_sz, t - ka - kb); ++kc) {
                const std::size_t kd = t - ka - kb - kc;
                if (kd > d) {
                    continue;
                }
                const std::size_t h1 = ka + kb + (c_sz - kc) + (d - kd);
                const std::size_t h2 = ka + kc + (b - kb) + (d - kd);
                const std::size_t rr = std::max(fold(h1, n), fold(h2, n));
                shells[rr] += wab * c[c_sz][kc] * c[d][kd];
            }
        }
    }
    return finish(std::move(shells), n, t);
}

void check_counting_args(std::size_t n, std::size_t t)
{
    if (n == 0 || t > n) {
        throw DomainError("invalid counting arguments n=" + std::to_string(n)
                          + ", t=" + std::to_string(t));
    }
}

bool use_wide(std::size_t n, detail::Arithmetic mode)
{
    switch (mode) {
    case detail::Arithmetic::wide:
        if (n > max_wide_n) {
            throw DomainError("128-bit counting supports n <= 128");
        }
        return true;
    case detail::Arithmetic::big:
        return false;
    case detail::Arithmetic::automatic:
        break;
    }
    return n <= max_wide_n;
}

void check_radius(std::size_t n, std::size_t r)
{
    if (r > n / 2) {
        throw DomainError("radius " + std::to_string(r) + " exceeds floor(n/2) = "
                          + std::to_string(n / 2));
    }
}

} // namespace

BigInt exact_distance_count(std::size_t n, std::size_t t, std::size_t s, std::size_t d)
{
    if (t > n || s > n || d > n) {
        throw DomainError("exact_distance_count arguments must lie in [0, n]");
    }
    const long long twice_x = static_cast<long long>(d + s) - static_cast<long long>(t);
    const long long twice_y = static_cast<long long>(d + t) - static_cast<long long>(s);
    if (twice_x < 0 || twice_y < 0 || twice_x % 2 != 0) {
        return 0;
    }
    const auto x = static_cast<std::size_t>(twice_x / 2);
    const auto y = static_cast<std::size_t>(twice_y / 2);
    if (x > s || y > n - s) {
        return 0;
    }
    return binomial(s, x) * binomial(n - s, y);
}

namespace detail {

std::vector<BigInt> ball_counts_by_radius(const BinaryProfile& m, std::size_t t, Arithmetic mode)
{
    const std::size_t n = m.size();
    check_counting_args(n, t);
    return use_wide(n, mode) ? ball_kernel<Wide>(n, t, m.ones())
                             : ball_kernel<BigInt>(n, t, m.ones());
}

std::vector<BigInt> pair_counts_by_radius(const BinaryProfile& m1, const BinaryProfile& m2,
                                          std::size_t t, Arithmetic mode)
{
    const std::size_t n = m1.size();
    if (m2.size() != n) {
        throw DimensionError("profiles have different lengths");
    }
    check_counting_args(n, t);
    const auto w1 = m1.words();
    const auto w2 = m2.words();
    std::size_t b = 0, c = 0, d = 0;
    for (std::size_t i = 0; i < w1.size(); ++i) {
        b += static_cast<std::size_t>(std::popcount(~w1[i] & w2[i]));
        c += static_cast<std::size_t>(std::popcount(w1[i] & ~w2[i]));
        d += static_cast<std::size_t>(std::popcount(w1[i] & w2[i]));
    }
    const std::size_t a = n - b - c - d;
    return use_wide(n, mode) ? pair_kernel<Wide>(n, t, a, b, c, d)
                             : pair_kernel<BigInt>(n, t, a, b, c, d);
}

} // namespace detail

std::vector<BigInt> ball_counts_by_radius(const BinaryProfile& m, std::size_t t)
{
    return detail::ball_counts_by_radius(m, t, detail::Arithmetic::automatic);
}

std::vector<BigInt> pair_counts_by_radius(const BinaryProfile& m1, const BinaryProfile& m2,
                                          std::size_t t)
{
    return detail::pair_counts_by_radius(m1, m2, t, detail::Arithmetic::automatic);
}

BigInt ball_count(const BinaryProfile& m, std::size_t t, std::size_t r)
{
    check_radius(m.size(), r);
    return ball_counts_by_radius(m, t)[r];
}

BigInt pair_intersection_count(const BinaryProfile& m1, const BinaryProfile& m2, std::size_t t,
                               std::size_t r)
{
    if (m1.size() != m2.size()) {
        throw DimensionError("profiles have different lengths");
    }
    check_radius(m1.size(), r);
    return pair_counts_by_radius(m1, m2, t)[r];
}

CountTable serial_count(const GenotypeMatrix& g, std::size_t t, std::size_t r_max,
                        bool keep_per_marker)
{
    const std::size_t n = g.n();
    check_radius(n, r_max);
    CountTable table;
    table.n = n;
    table.t = t;
    table.p = g.p();
    table.serial.assign(r_max + 1, BigInt(0));
    if (keep_per_marker) {
        table.per_marker_balls.reserve(g.p());
    }
    for (std::size_t h = 0; h < g.p(); ++h) {
        auto balls = ball_counts_by_radius(g.profile(h), t);
        std::vector<BigInt> pairs;
        if (h > 0) {
            pairs = pair_counts_by_radius(g.profile(h), g.profile(h - 1), t);
        }
        for (std::size_t r = 0; r <= r_max; ++r) {
            table.serial[r] += balls[r];
            if (h > 0) {
                table.serial[r] -= pairs[r];
            }
        }
        if (keep_per_marker) {
            balls.resize(r_max + 1);
            table.per_marker_balls.push_back(std::move(balls));
        }
    }
    return table;
}

std::vector<BigInt> brute_force_counts(const GenotypeMatrix& g, std::size_t t, std::size_t budget)
{
    const std::size_t n = g.n();
    if (n > 63) {
        throw BudgetError("brute-force counting supports n <= 63");
    }
    if (num_desired_partitions(n, t) > budget) {
        throw BudgetError("enumerating desired partitions for n=" + std::to_string(n)
                          + ", t=" + std::to_string(t) + " exceeds the budget");
    }
    std::vector<std::uint64_t> masks;
    masks.reserve(g.p());
    for (const auto& prof : g.profiles()) {
        masks.push_back(prof.words().empty() ? 0 : prof.words()[0]);
    }
    const bool halve = 2 * t == n;
    std::vector<std::uint64_t> shells(n / 2 + 2, 0);
    const std::uint64_t limit = std::uint64_t{1} << n;
    // Gosper's hack walks every n-bit vector with t ones.
    std::uint64_t v = (std::uint64_t{1} << t) - 1;
    while (v < limit) {
        if (!(halve && (v & 1U))) {
            std::size_t best = n;
            for (const auto m : masks) {
                const auto d = static_cast<std::size_t>(std::popcount(v ^ m));
                best = std::min({best, d, n - d});
            }
            if (g.p() == 0) {
                best = n / 2 + 1;
            }
            ++shells[best];
        }
        const std::uint64_t lowest = v & (~v + 1);
        const std::uint64_t ripple = v + lowest;
        if (ripple == 0) {
            break;
        }
        v = (((ripple ^ v) >> 2) / lowest) | ripple;
    }
    std::vector<BigInt> out(n / 2 + 1);
    std::uint64_t acc = 0;
    for (std::size_t r = 0; r <= n / 2; ++r) {
        acc += shells[r];
        out[r] = acc;
    }
    return out;
}

BigInt brute_force_count(const GenotypeMatrix& g, std::size_t t, std::size_t r, std::size_t budget)
{
    check_radius(g.n(), r);
    return brute_force_counts(g, t, budget)[r];
}

} // namespace permgeo
