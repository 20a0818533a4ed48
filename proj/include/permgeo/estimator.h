#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "permgeo/ball_counting.h"
#include "permgeo/genomodel.h"
#include "permgeo/radial_prob.h"

namespace permgeo {

using Extended = boost::multiprecision::cpp_bin_float_50;

enum class EstimateMode { general, hypersphere };

enum class EstimateFlag { clamped, large_p_unreliable, extreme_small_alpha, degenerate };

std::string to_string(EstimateMode mode);
std::string to_string(EstimateFlag flag);

struct EstimatorConfig
{
    // Group size of desired partitions. Defaults to floor(n/2) for
    // quantitative traits and to the number of zeros for binary traits.
    std::optional<std::size_t> t;
    RadialConfig radial;
    EstimateMode mode = EstimateMode::general;
};

struct EstimateReport
{
    double alpha = 0.0;
    Extended numerator = 0;
    BigInt n_p = 0;
    double estimate_raw = 0.0;
    double estimate = 0.0;
    std::size_t r_l = 0;
    std::size_t r_u = 0;
    EstimateMode mode = EstimateMode::general;
    std::set<EstimateFlag> flags;
    double seconds = 0.0;

    // Diagnostics; not part of the serialized report.
    std::size_t t = 0;
    RadialProfile radial;
    CountTable counts;

    bool has(EstimateFlag f) const { return flags.count(f) != 0; }
};

// Estimates above this are flagged as unreliable (inflated by serial counting).
inline constexpr double large_p_threshold = 0.1;

std::size_t resolve_group_size(const TraitVector& trait, const EstimatorConfig& config);

// numerator = base + sum_{r=r_L+1}^{r_U-1} P(r)(C_U(r) - C_U(r-1)), where base
// is C_U(r_L), and at r_L = 0 is the serial count of shell 0 if the best
// partition itself reaches alpha and 0 otherwise.
Extended shell_numerator(const RadialProfile& radial, const CountTable& counts, EstimateMode mode);

EstimateReport estimate_permutation_p(const GenotypeMatrix& g, const TraitVector& trait,
                                      double alpha, const EstimatorConfig& config = {});

// Same pipeline with r_alpha = r_L: C_U(r_alpha) / N_p.
EstimateReport estimate_hypersphere(const GenotypeMatrix& g, const TraitVector& trait,
                                    double alpha, EstimatorConfig config = {});

struct SdaConfig
{
    std::size_t n_dp = 50;
    std::size_t n_perm = 1000;
    std::uint64_t seed = 1;
    std::optional<std::size_t> t;
    RadialConfig radial;
    // Cap on rejection-sampling attempts per planted partition.
    std::size_t max_attempts = 100'000;
};

struct SdaResult
{
    std::size_t r = 0;
    double p_radial = 0.0;  // P(r, alpha)
    double rho_bar = 0.0;   // mean Pr(DP_j, alpha) over planted partitions
    double ratio = 0.0;     // p_radial / rho_bar (NaN when rho_bar == 0)
    std::vector<double> per_partition;
    std::vector<std::string> warnings;
};

// Checks the shortest-distance approximation at radius r: plants partitions
// whose nearest observed profile lies at exactly distance r, estimates the
// chance that a trait permutation consistent with each partition reaches
// alpha, and compares the average with P(r, alpha).
SdaResult evaluate_sda(const GenotypeMatrix& g, const TraitVector& trait, double alpha,
                       std::size_t r, const SdaConfig& config = {});

} // namespace permgeo
