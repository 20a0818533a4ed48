#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

#include "permgeo/ball_counting.h"
#include "permgeo/genomodel.h"

namespace permgeo {

struct PermutationResult
{
    std::size_t n_perms = 0;
    std::size_t n_exceed = 0;
    double p_hat = 0.0;
    double ci_lo = 0.0; // two-sided 95% Clopper-Pearson
    double ci_hi = 1.0;
    std::optional<int> stopped_at_stage; // 1-based; 7 means the full 500,000
    bool exact = false;
    double alpha = 0.0;
    double seconds = 0.0;
};

struct PermConfig
{
    std::uint64_t seed = 1;
    // 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
    // Called after each completed adaptive stage with (stage, perms so far, exceedances).
    std::function<void(int, std::size_t, std::size_t)> progress;
};

struct AdaptiveStage
{
    std::size_t cumulative_perms;
    double threshold;
};

// Stage k stops once the one-sided 99.99% lower bound on p exceeds its threshold.
inline constexpr std::array<AdaptiveStage, 6> adaptive_stages{{
    {100, 0.1},
    {1'000, 0.05},
    {5'000, 0.02},
    {10'000, 0.01},
    {50'000, 0.002},
    {100'000, 0.001},
}};
inline constexpr std::size_t adaptive_max_perms = 500'000;
inline constexpr double adaptive_confidence = 0.9999;

// One-sided Clopper-Pearson lower bound at the given confidence.
double binomial_lower_bound(std::size_t trials, std::size_t successes, double confidence);
// Two-sided Clopper-Pearson interval.
std::pair<double, double> binomial_interval(std::size_t trials, std::size_t successes,
                                            double confidence = 0.95);

// Counts permutations in [first, last) whose genome-wide minimum nominal p
// attains alpha. Permutation i shuffles the original trait with the
// substream (seed, i), so any split of the index range gives the same total.
std::size_t count_exceedances(const GenotypeMatrix& g, const TraitVector& trait, double alpha,
                              std::size_t first, std::size_t last, const PermConfig& config);

PermutationResult direct_permutation_p(const GenotypeMatrix& g, const TraitVector& trait,
                                       double alpha, std::size_t n_perms,
                                       const PermConfig& config = {});

// Staged schedule; alpha defaults to the observed genome-wide minimum p.
PermutationResult adaptive_permutation_p(const GenotypeMatrix& g, const TraitVector& trait,
                                         const PermConfig& config = {},
                                         std::optional<double> alpha = std::nullopt);

// Exact permutation p of a binary trait by enumerating every labeling with
// the trait's number of ones. Requires n <= 63.
PermutationResult exhaustive_binary(const GenotypeMatrix& g, const TraitVector& trait,
                                    std::optional<double> alpha = std::nullopt,
                                    std::size_t budget = default_enumeration_budget);

} // namespace permgeo
