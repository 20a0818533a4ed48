#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "permgeo/genomodel.h"
#include "permgeo/partition.h"

namespace permgeo {

struct RadialConfig
{
    std::size_t samples_per_radius = 1000;
    // A radius whose first early_exit_samples draws all agree is clamped to
    // 0 or 1 without drawing the rest. Zero disables the shortcut.
    std::size_t early_exit_samples = 200;
    std::uint64_t seed = 1;
};

// Monte Carlo estimate of the probability that a profile at exact distance
// r from the best partition reaches nominal p <= alpha.
struct RadialProfile
{
    double alpha = 0.0;
    std::size_t t = 0;
    std::size_t samples_per_radius = 0;
    std::vector<double> p_hat_raw;       // per radius, as sampled
    std::vector<double> p_hat;           // running-minimum envelope of p_hat_raw
    std::vector<double> se;              // binomial standard error of p_hat_raw
    std::vector<std::size_t> draws;      // samples actually drawn per radius
    std::size_t r_l = 0;                 // largest r with envelope 1 (0 if none)
    std::size_t r_u = 0;                 // smallest r with envelope 0
    bool center_attains = false;         // envelope(0) == 1

    // Envelope value, 0 beyond the scanned range.
    double at(std::size_t r) const { return r < p_hat.size() ? p_hat[r] : 0.0; }
};

// Scans r = 0, 1, ... drawing profiles at exact distance r from dp.center(0).
// Scanning stops after two consecutive radii with estimate 0 or at
// floor(n/2). When no radius reaches 0, r_u = floor(n/2) + 1.
RadialProfile estimate_radial(const TraitVector& trait, const DesiredPartition& dp, double alpha,
                              const RadialConfig& config = {});

// Fraction of samples attaining alpha among `samples` uniform profiles at
// distance r from `center`, drawn from the (seed, stream) substream.
double sample_radius(const TraitVector& trait, const BinaryProfile& center, double alpha,
                     std::size_t r, std::size_t samples, std::uint64_t seed, std::uint64_t stream);

// Independent estimates around center(0) and center(1); requires r < n/2.
std::pair<double, double> radial_symmetry_check(const TraitVector& trait,
                                                const DesiredPartition& dp, double alpha,
                                                std::size_t r, std::size_t samples,
                                                std::uint64_t seed);

// Columns r, p_hat, se (p_hat is the envelope).
void write_radial_tsv(std::ostream& out, const RadialProfile& profile);

} // namespace permgeo
