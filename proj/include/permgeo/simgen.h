#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "permgeo/genomodel.h"

namespace permgeo {

struct QtlSpec
{
    std::size_t marker = 0;
    double effect = 0.0;
    double noise_sd = 1.0;
};

// Balanced 0/1 trait copied from a marker and then moved to Hamming
// distance `mismatches` from it.
struct BinaryTraitSpec
{
    std::optional<std::size_t> marker; // none: random balanced labels
    std::size_t mismatches = 0;
};

struct SimConfig
{
    std::size_t n = 100;
    std::size_t p = 100;
    double theta = 0.1;
    std::size_t chromosomes = 1;
    std::optional<QtlSpec> qtl;
    std::optional<BinaryTraitSpec> binary;
    std::uint64_t seed = 1;

    void validate() const;
};

// Flat "key = value" text; '#' starts a comment. Keys: n, p, theta,
// chromosomes, seed, trait (null | qtl | binary), qtl_marker, qtl_effect,
// noise_sd, binary_marker, mismatches.
SimConfig parse_sim_config(std::istream& in);

// Haploid Markov chain per chromosome: the first marker is Bernoulli(1/2)
// and each later one copies its predecessor with probability 1 - theta.
// Markers are split into contiguous chromosome blocks.
GenotypeMatrix simulate_genotypes(const SimConfig& cfg);

// Null: iid standard normal. QTL: effect * genotype + N(0, noise_sd^2).
// Binary: balanced labels. If the requested mismatch count cannot be met
// exactly (parity or imbalance of the source marker), the smallest feasible
// larger count is used.
TraitVector simulate_trait(const GenotypeMatrix& g, const SimConfig& cfg);

} // namespace permgeo
