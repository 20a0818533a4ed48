#include "permgeo/perm_oracle.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <thread>
#include <vector>

#include <boost/math/distributions/binomial.hpp>

#include "permgeo/assoc_stats.h"
#include "permgeo/partition.h"
#include "permgeo/rng.h"
#include "permgeo/scan_kernel.h"

namespace permgeo {

namespace {

constexpr std::uint64_t permutation_stream = 0x7065726dULL;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

unsigned worker_count(const PermConfig& config, std::size_t work)
{
    unsigned threads = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
    threads = std::max(1U, threads);
    return static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, work / 256)));
}

void finish(PermutationResult& r)
{
    r.p_hat = r.n_perms == 0 ? 0.0
                             : static_cast<double>(r.n_exceed) / static_cast<double>(r.n_perms);
    std::tie(r.ci_lo, r.ci_hi) = binomial_interval(r.n_perms, r.n_exceed);
}

double observed_alpha(const GenotypeMatrix& g, const TraitVector& trait)
{
    return min_nominal_p(trait, g).nominal_p;
}

} // namespace

double binomial_lower_bound(std::size_t trials, std::size_t successes, double confidence)
{
    if (successes == 0) {
        return 0.0;
    }
    return boost::math::binomial_distribution<>::find_lower_bound_on_p(
        static_cast<double>(trials), static_cast<double>(successes), 1.0 - confidence);
}

std::pair<double, double> binomial_interval(std::size_t trials, std::size_t successes,
                                            double confidence)
{
    if (trials == 0) {
        return {0.0, 1.0};
    }
    const double tail = 0.5 * (1.0 - confidence);
    const double n = static_cast<double>(trials);
    const double k = static_cast<double>(successes);
    using Binomial = boost::math::binomial_distribution<>;
    const double lo = successes == 0 ? 0.0 : Binomial::find_lower_bound_on_p(n, k, tail);
    const double hi = successes == trials ? 1.0 : Binomial::find_upper_bound_on_p(n, k, tail);
    return {lo, hi};
}

std::size_t count_exceedances(const GenotypeMatrix& g, const TraitVector& trait, double alpha,
                              std::size_t first, std::size_t last, const PermConfig& config)
{
    if (trait.size() != g.n()) {
        throw DimensionError("trait and genotype sample counts differ");
    }
    if (last <= first) {
        return 0;
    }
    const ScanKernel kernel(g, trait.kind);
    const unsigned workers = worker_count(config, last - first);

    auto run = [&](std::size_t begin, std::size_t end) {
        std::vector<double> values(trait.values.size());
        std::size_t hits = 0;
        for (std::size_t i = begin; i < end; ++i) {
            std::copy(trait.values.begin(), trait.values.end(), values.begin());
            auto rng = substream(config.seed, permutation_stream, i);
            shuffle(values.begin(), values.end(), rng);
            if (attains(kernel.min_p(values), alpha)) {
                ++hits;
            }
        }
        return hits;
    };

    if (workers == 1) {
        return run(first, last);
    }
    std::vector<std::size_t> partial(workers, 0);
    {
        std::vector<std::jthread> pool;
        const std::size_t span = last - first;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = first + span * w / workers;
            const std::size_t end = first + span * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] { partial[w] = run(begin, end); });
        }
    }
    std::size_t total = 0;
    for (const auto v : partial) {
        total += v;
    }
    return total;
}

PermutationResult direct_permutation_p(const GenotypeMatrix& g, const TraitVector& trait,
                                       double alpha, std::size_t n_perms,
                                       const PermConfig& config)
{
    if (n_perms == 0) {
        throw DomainError("number of permutations must be at least 1");
    }
    const auto start = Clock::now();
    PermutationResult r;
    r.alpha = alpha;
    r.n_perms = n_perms;
    if (alpha >= 1.0) {
        r.n_exceed = n_perms;
    } else if (alpha > 0.0) {
        r.n_exceed = count_exceedances(g, trait, alpha, 0, n_perms, config);
    }
    finish(r);
    r.seconds = seconds_since(start);
    return r;
}

PermutationResult adaptive_permutation_p(const GenotypeMatrix& g, const TraitVector& trait,
                                         const PermConfig& config, std::optional<double> alpha)
{
    const auto start = Clock::now();
    PermutationResult r;
    r.alpha = alpha ? *alpha : observed_alpha(g, trait);

    std::size_t done = 0;
    for (std::size_t s = 0; s < adaptive_stages.size(); ++s) {
        const auto& stage = adaptive_stages[s];
        r.n_exceed += count_exceedances(g, trait, r.alpha, done, stage.cumulative_perms, config);
        done = stage.cumulative_perms;
        if (config.progress) {
            config.progress(static_cast<int>(s + 1), done, r.n_exceed);
        }
        if (binomial_lower_bound(done, r.n_exceed, adaptive_confidence) > stage.threshold) {
            r.n_perms = done;
            r.stopped_at_stage = static_cast<int>(s + 1);
            finish(r);
            r.seconds = seconds_since(start);
            return r;
        }
    }
    r.n_exceed += count_exceedances(g, trait, r.alpha, done, adaptive_max_perms, config);
    r.n_perms = adaptive_max_perms;
    r.stopped_at_stage = static_cast<int>(adaptive_stages.size() + 1);
    if (config.progress) {
        config.progress(*r.stopped_at_stage, r.n_perms, r.n_exceed);
    }
    finish(r);
    r.seconds = seconds_since(start);
    return r;
}

PermutationResult exhaustive_binary(const GenotypeMatrix& g, const TraitVector& trait,
                                    std::optional<double> alpha, std::size_t budget)
{
    if (trait.kind != TraitKind::binary) {
        throw DomainError("exhaustive enumeration requires a binary trait");
    }
    const std::size_t n = trait.size();
    if (n != g.n()) {
        throw DimensionError("trait and genotype sample counts differ");
    }
    if (n > 63) {
        throw BudgetError("exhaustive enumeration supports n <= 63");
    }
    const auto start = Clock::now();
    const std::size_t k = trait.as_profile().ones();
    const BigInt total = binomial(n, k);
    if (total > budget) {
        throw BudgetError("enumerating C(" + std::to_string(n) + ", " + std::to_string(k)
                          + ") labelings exceeds the budget");
    }

    PermutationResult r;
    r.exact = true;
    r.alpha = alpha ? *alpha : observed_alpha(g, trait);
    r.n_perms = static_cast<std::size_t>(total);

    std::vector<std::uint64_t> masks;
    std::vector<long long> ones;
    for (const auto& prof : g.profiles()) {
        masks.push_back(prof.words().empty() ? 0 : prof.words()[0]);
        ones.push_back(static_cast<long long>(prof.ones()));
    }
    const auto nn = static_cast<long long>(n);
    const auto kk = static_cast<long long>(k);

    auto visit = [&](std::uint64_t y) {
        double best = 1.0;
        for (std::size_t m = 0; m < masks.size(); ++m) {
            const long long a = std::popcount(masks[m] & y);
            const auto res = chisq_from_table(a, kk - a, ones[m] - a, nn - kk - (ones[m] - a));
            if (!res.degenerate) {
                best = std::min(best, res.nominal_p);
            }
        }
        if (attains(best, r.alpha)) {
            ++r.n_exceed;
        }
    };

    if (k == 0) {
        visit(0);
    } else {
        const std::uint64_t limit = std::uint64_t{1} << n;
        std::uint64_t v = (std::uint64_t{1} << k) - 1;
        while (v < limit) {
            visit(v);
            const std::uint64_t lowest = v & (~v + 1);
            const std::uint64_t ripple = v + lowest;
            if (ripple == 0) {
                break;
            }
            v = (((ripple ^ v) >> 2) / lowest) | ripple;
        }
    }
    finish(r);
    r.seconds = seconds_since(start);
    return r;
}

} // namespace permgeo
