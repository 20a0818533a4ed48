#include "permgeo/estimator.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "permgeo/assoc_stats.h"
#include "permgeo/partition.h"
#include "permgeo/rng.h"
#include "permgeo/scan_kernel.h"

namespace permgeo {

namespace {

constexpr std::uint64_t sda_stream = 0x736461ULL;

using Clock = std::chrono::steady_clock;

void check_inputs(const GenotypeMatrix& g, const TraitVector& trait, double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0, 1)");
    }
    if (trait.size() != g.n()) {
        throw DimensionError("trait has " + std::to_string(trait.size())
                             + " values, genotypes have " + std::to_string(g.n())
                             + " individuals");
    }
    if (g.empty()) {
        throw DomainError("genotype matrix has no markers");
    }
    if (trait.is_constant()) {
        throw DomainError("trait is constant");
    }
}

bool all_markers_constant(const GenotypeMatrix& g)
{
    return std::all_of(g.profiles().begin(), g.profiles().end(), [&](const BinaryProfile& m) {
        return m.ones() == 0 || m.ones() == g.n();
    });
}

} // namespace

std::string to_string(EstimateMode mode)
{
    return mode == EstimateMode::general ? "general" : "hypersphere";
}

std::string to_string(EstimateFlag flag)
{
    switch (flag) {
    case EstimateFlag::clamped:
        return "clamped";
    case EstimateFlag::large_p_unreliable:
        return "large_p_unreliable";
    case EstimateFlag::extreme_small_alpha:
        return "extreme_small_alpha";
    case EstimateFlag::degenerate:
        return "degenerate";
    }
    return "unknown";
}

std::size_t resolve_group_size(const TraitVector& trait, const EstimatorConfig& config)
{
    if (config.t) {
        return *config.t;
    }
    if (trait.kind == TraitKind::binary) {
        return trait.size() - trait.as_profile().ones();
    }
    return default_group_size(trait.size());
}

Extended shell_numerator(const RadialProfile& radial, const CountTable& counts, EstimateMode mode)
{
    Extended base = 0;
    if (radial.r_l > 0) {
        base = Extended(counts.serial.at(radial.r_l));
    } else if (radial.center_attains) {
        base = Extended(counts.serial.at(0));
    }
    if (mode == EstimateMode::hypersphere) {
        return base;
    }
    Extended numerator = base;
    Extended previous = base;
    for (std::size_t r = radial.r_l + 1; r < radial.r_u; ++r) {
        const Extended current(counts.serial.at(r));
        numerator += Extended(radial.at(r)) * (current - previous);
        previous = current;
    }
    return numerator;
}

EstimateReport estimate_permutation_p(const GenotypeMatrix& g, const TraitVector& trait,
                                      double alpha, const EstimatorConfig& config)
{
    const auto start = Clock::now();
    check_inputs(g, trait, alpha);
    const std::size_t n = g.n();
    const std::size_t t = resolve_group_size(trait, config);

    EstimateReport report;
    report.alpha = alpha;
    report.mode = config.mode;
    report.t = t;

    const auto dp = best_partition(trait, t);
    report.radial = estimate_radial(trait, dp, alpha, config.radial);
    report.r_l = report.radial.r_l;
    report.r_u = report.radial.r_u;

    // From here on only genotypes and t are used.
    std::size_t r_max = report.r_l;
    if (config.mode == EstimateMode::general && report.r_u > 0) {
        r_max = std::max(r_max, std::min(report.r_u - 1, n / 2));
    }
    report.counts = serial_count(g, t, r_max);
    report.numerator = shell_numerator(report.radial, report.counts, config.mode);
    report.n_p = num_desired_partitions(n, t);

    const Extended ratio = report.numerator / Extended(report.n_p);
    report.estimate_raw = ratio.convert_to<double>();
    report.estimate = std::clamp(report.estimate_raw, 0.0, 1.0);
    if (report.estimate_raw > 1.0) {
        report.flags.insert(EstimateFlag::clamped);
    }
    if (report.estimate > large_p_threshold) {
        report.flags.insert(EstimateFlag::large_p_unreliable);
    }
    if (!report.radial.center_attains) {
        report.flags.insert(EstimateFlag::extreme_small_alpha);
    }
    if (all_markers_constant(g)) {
        report.flags.insert(EstimateFlag::degenerate);
    }
    report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return report;
}

EstimateReport estimate_hypersphere(const GenotypeMatrix& g, const TraitVector& trait,
                                    double alpha, EstimatorConfig config)
{
    config.mode = EstimateMode::hypersphere;
    return estimate_permutation_p(g, trait, alpha, config);
}

namespace {

// Draws a zero-center profile (t zeros) at Hamming distance exactly r from m,
// or returns nothing when the one-counts make that impossible.
std::optional<BinaryProfile> plant_near(const BinaryProfile& m, std::size_t t, std::size_t r,
                                        bool flip_orientation, Rng& rng)
{
    const std::size_t n = m.size();
    const std::size_t target_ones = flip_orientation ? t : n - t;
    const std::size_t s = m.ones();
    const long long twice_off = static_cast<long long>(r + s) - static_cast<long long>(target_ones);
    if (twice_off < 0 || twice_off % 2 != 0) {
        return std::nullopt;
    }
    const auto off = static_cast<std::size_t>(twice_off / 2);
    if (off > r || off > s || r - off > n - s) {
        return std::nullopt;
    }
    const std::size_t on = r - off;
    std::vector<std::size_t> ones_idx, zeros_idx;
    for (std::size_t i = 0; i < n; ++i) {
        (m.get(i) ? ones_idx : zeros_idx).push_back(i);
    }
    BinaryProfile v = m;
    auto pick = [&](std::vector<std::size_t>& pool, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) {
            const auto j = i + rng.below(pool.size() - i);
            std::swap(pool[i], pool[j]);
            v.flip(pool[i]);
        }
    };
    pick(ones_idx, off);
    pick(zeros_idx, on);
    if (flip_orientation) {
        v = v.complement();
    }
    return v;
}

} // namespace

SdaResult evaluate_sda(const GenotypeMatrix& g, const TraitVector& trait, double alpha,
                       std::size_t r, const SdaConfig& config)
{
    check_inputs(g, trait, alpha);
    const std::size_t n = g.n();
    if (r > n / 2) {
        throw DomainError("radius exceeds floor(n/2)");
    }
    if (config.n_dp == 0 || config.n_perm == 0) {
        throw DomainError("n_dp and n_perm must be positive");
    }
    EstimatorConfig est;
    est.t = config.t;
    const std::size_t t = resolve_group_size(trait, est);

    SdaResult result;
    result.r = r;
    if (alpha > 0.05) {
        result.warnings.push_back(
            "alpha above 0.05: the shortest-distance approximation is known to be loose here");
    }

    const auto dp_y = best_partition(trait, t);
    RadialConfig radial_cfg = config.radial;
    radial_cfg.seed = config.seed;
    result.p_radial = estimate_radial(trait, dp_y, alpha, radial_cfg).at(r);

    std::vector<double> sorted = trait.values;
    std::stable_sort(sorted.begin(), sorted.end());
    const ScanKernel kernel(g, trait.kind);

    for (std::size_t j = 0; j < config.n_dp; ++j) {
        auto rng = substream(config.seed, sda_stream, j);
        std::optional<BinaryProfile> zero_center;
        for (std::size_t attempt = 0; attempt < config.max_attempts && !zero_center; ++attempt) {
            const auto k = static_cast<std::size_t>(rng.below(g.p()));
            const bool orientation = rng.below(2) == 1;
            auto v = plant_near(g.profile(k), t, r, orientation, rng);
            if (!v) {
                continue;
            }
            const auto dp = DesiredPartition::from_profile(*v, t);
            std::size_t nearest = n;
            for (const auto& m : g.profiles()) {
                nearest = std::min(nearest, partition_distance(m, dp));
            }
            if (nearest == r) {
                zero_center = std::move(v);
            }
        }
        if (!zero_center) {
            throw DomainError("could not plant a partition at shortest distance "
                              + std::to_string(r) + " after "
                              + std::to_string(config.max_attempts) + " attempts");
        }

        std::vector<std::size_t> low_class, high_class;
        for (std::size_t i = 0; i < n; ++i) {
            (zero_center->get(i) ? high_class : low_class).push_back(i);
        }
        std::vector<double> low(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(t));
        std::vector<double> high(sorted.begin() + static_cast<std::ptrdiff_t>(t), sorted.end());
        std::vector<double> values(n);
        std::size_t hits = 0;
        for (std::size_t i = 0; i < config.n_perm; ++i) {
            shuffle(low.begin(), low.end(), rng);
            shuffle(high.begin(), high.end(), rng);
            for (std::size_t q = 0; q < low.size(); ++q) {
                values[low_class[q]] = low[q];
            }
            for (std::size_t q = 0; q < high.size(); ++q) {
                values[high_class[q]] = high[q];
            }
            if (attains(kernel.min_p(values), alpha)) {
                ++hits;
            }
        }
        result.per_partition.push_back(static_cast<double>(hits)
                                       / static_cast<double>(config.n_perm));
    }
    result.rho_bar = std::accumulate(result.per_partition.begin(), result.per_partition.end(), 0.0)
        / static_cast<double>(result.per_partition.size());
    result.ratio = result.rho_bar > 0.0 ? result.p_radial / result.rho_bar
                                        : std::numeric_limits<double>::quiet_NaN();
    return result;
}

} // namespace permgeo
