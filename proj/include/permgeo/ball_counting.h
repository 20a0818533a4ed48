#pragma once

#include <cstddef>
#include <vector>

#include "permgeo/bigint.h"
#include "permgeo/genomodel.h"

namespace permgeo {

// Serial-counting table over radii 0..r_max.
//
// serial[r] = sum_h |B_h(r)| - sum_{h>=2} |B_h(r) n B_{h-1}(r)| evaluated at
// every radius including 0. c_u(r) is the same quantity with the r = 0 entry
// defined as 0, which is what the shell decomposition of the estimator uses
// when the center of the significance set does not itself reach the cutoff.
struct CountTable
{
    std::size_t n = 0;
    std::size_t t = 0;
    std::size_t p = 0;
    std::vector<BigInt> serial;
    // per_marker_balls[k][r] = |B_k(r)|, filled only on request.
    std::vector<std::vector<BigInt>> per_marker_balls;

    std::size_t r_max() const { return serial.empty() ? 0 : serial.size() - 1; }
    BigInt c_u(std::size_t r) const { return r == 0 ? BigInt(0) : serial.at(r); }
};

// Vectors with exactly t ones at Hamming distance exactly d from a fixed
// profile with s ones.
BigInt exact_distance_count(std::size_t n, std::size_t t, std::size_t s, std::size_t d);

// Desired partitions (group size t) within partition distance r of m.
BigInt ball_count(const BinaryProfile& m, std::size_t t, std::size_t r);
// Entry r holds ball_count(m, t, r) for r = 0..floor(n/2).
std::vector<BigInt> ball_counts_by_radius(const BinaryProfile& m, std::size_t t);

// Desired partitions within distance r of both m1 and m2.
BigInt pair_intersection_count(const BinaryProfile& m1, const BinaryProfile& m2, std::size_t t,
                               std::size_t r);
std::vector<BigInt> pair_counts_by_radius(const BinaryProfile& m1, const BinaryProfile& m2,
                                          std::size_t t);

// Consecutive pairs follow marker order, across chromosome boundaries.
CountTable serial_count(const GenotypeMatrix& g, std::size_t t, std::size_t r_max,
                        bool keep_per_marker = false);

constexpr std::size_t default_enumeration_budget = 20'000'000;

// Exact |{DP : min_k partition_distance(m_k, DP) <= r}| by enumerating every
// canonical desired partition. Requires n <= 63.
BigInt brute_force_count(const GenotypeMatrix& g, std::size_t t, std::size_t r,
                         std::size_t budget = default_enumeration_budget);
// All radii 0..floor(n/2) from a single enumeration.
std::vector<BigInt> brute_force_counts(const GenotypeMatrix& g, std::size_t t,
                                       std::size_t budget = default_enumeration_budget);

namespace detail {

enum class Arithmetic { automatic, wide, big };

std::vector<BigInt> ball_counts_by_radius(const BinaryProfile& m, std::size_t t, Arithmetic mode);
std::vector<BigInt> pair_counts_by_radius(const BinaryProfile& m1, const BinaryProfile& m2,
                                          std::size_t t, Arithmetic mode);

} // namespace detail

} // namespace permgeo
