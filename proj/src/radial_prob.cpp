#include "permgeo/radial_prob.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>

#include <boost/math/distributions/students_t.hpp>

#include "permgeo/assoc_stats.h"
#include "permgeo/rng.h"

namespace permgeo {

namespace {

constexpr std::uint64_t radial_stream = 0x7261646961ULL;

void check_alpha(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0, 1)");
    }
}

// Picks r positions without replacement per draw (partial Fisher-Yates);
// the caller owns the stopping rule.
class FlipSampler
{
public:
    FlipSampler(std::size_t n, std::size_t r, Rng rng) : r_(r), rng_(rng), index_(n)
    {
        std::iota(index_.begin(), index_.end(), std::size_t{0});
    }

    std::span<const std::size_t> next()
    {
        const std::size_t n = index_.size();
        for (std::size_t i = 0; i < r_; ++i) {
            const auto j = i + rng_.below(n - i);
            std::swap(index_[i], index_[j]);
        }
        return {index_.data(), r_};
    }

private:
    std::size_t r_;
    Rng rng_;
    std::vector<std::size_t> index_;
};

// Decides whether a profile a few flips away from a fixed center attains
// alpha without rescanning all n individuals. Group sums are updated from
// the flipped positions only; the t statistic is compared with the critical
// value for alpha, and draws that land within a thin band of it fall back to
// the full test so every decision matches nominal_test exactly.
class DrawEvaluator
{
public:
    DrawEvaluator(const TraitVector& trait, const BinaryProfile& center, double alpha)
        : trait_(trait), center_(center), alpha_(alpha), n_(trait.size())
    {
        if (trait.kind == TraitKind::binary) {
            binary_ = true;
            for (std::size_t i = 0; i < n_; ++i) {
                const bool y = trait.values[i] == 1.0;
                const bool m = center.get(i);
                (y ? (m ? a_ : b_) : (m ? c_ : d_)) += 1;
            }
            return;
        }
        double mean = 0.0;
        for (const double v : trait.values) {
            mean += v;
        }
        mean /= static_cast<double>(n_);
        centered_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            centered_[i] = trait.values[i] - mean;
            sst_ += centered_[i] * centered_[i];
            if (center.get(i)) {
                s1_ += centered_[i];
                ++n1_;
            }
        }
        if (n_ < 3) {
            return;
        }
        try {
            const boost::math::students_t dist(static_cast<double>(n_ - 2));
            const double tail = alpha * (1.0 + 1e-9) / 2.0;
            if (tail < 0.5) {
                const double t = boost::math::quantile(boost::math::complement(dist, tail));
                if (std::isfinite(t)) {
                    const double t2 = t * t;
                    b_star_ = t2 * sst_ / (static_cast<double>(n_ - 2) + t2);
                }
            }
        } catch (const std::exception&) {
            b_star_.reset();
        }
    }

    bool attains_after(std::span<const std::size_t> flips) const
    {
        if (binary_) {
            long long a = a_, b = b_, c = c_, d = d_;
            for (const auto i : flips) {
                const bool y = trait_.values[i] == 1.0;
                const bool was = center_.get(i);
                if (y) {
                    (was ? a : b) -= 1;
                    (was ? b : a) += 1;
                } else {
                    (was ? c : d) -= 1;
                    (was ? d : c) += 1;
                }
            }
            return attains(chisq_from_table(a, b, c, d).nominal_p, alpha_);
        }
        if (!b_star_) {
            return exact(flips);
        }
        double s1 = s1_;
        std::size_t n1 = n1_;
        for (const auto i : flips) {
            if (center_.get(i)) {
                s1 -= centered_[i];
                --n1;
            } else {
                s1 += centered_[i];
                ++n1;
            }
        }
        if (n1 == 0 || n1 == n_) {
            return false;
        }
        // between-group sum of squares; t^2 = (n - 2) B / (SST - B) grows with B
        const double between = s1 * s1 * static_cast<double>(n_)
            / (static_cast<double>(n1) * static_cast<double>(n_ - n1));
        if (std::abs(between - *b_star_) <= 1e-7 * sst_) {
            return exact(flips);
        }
        return between > *b_star_;
    }

private:
    bool exact(std::span<const std::size_t> flips) const
    {
        BinaryProfile profile = center_;
        for (const auto i : flips) {
            profile.flip(i);
        }
        return attains(nominal_test(trait_, profile).nominal_p, alpha_);
    }

    const TraitVector& trait_;
    const BinaryProfile& center_;
    double alpha_;
    std::size_t n_;
    bool binary_ = false;
    long long a_ = 0, b_ = 0, c_ = 0, d_ = 0;
    std::vector<double> centered_;
    double sst_ = 0.0;
    double s1_ = 0.0;
    std::size_t n1_ = 0;
    std::optional<double> b_star_;
};

struct RadiusEstimate
{
    double p_hat = 0.0;
    std::size_t draws = 0;
};

RadiusEstimate run_radius(const TraitVector& trait, const BinaryProfile& center, double alpha,
                          const DrawEvaluator& evaluator, std::size_t r, const RadialConfig& config,
                          std::uint64_t stream)
{
    if (r == 0) {
        return {attains(nominal_test(trait, center).nominal_p, alpha) ? 1.0 : 0.0, 1};
    }
    FlipSampler sampler(center.size(), r, substream(config.seed, stream, r));
    const std::size_t h = config.samples_per_radius;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < h; ++i) {
        if (evaluator.attains_after(sampler.next())) {
            ++hits;
        }
        const std::size_t drawn = i + 1;
        if (config.early_exit_samples > 0 && drawn == config.early_exit_samples && drawn < h
            && (hits == 0 || hits == drawn)) {
            return {hits == 0 ? 0.0 : 1.0, drawn};
        }
    }
    return {static_cast<double>(hits) / static_cast<double>(h), h};
}

} // namespace

double sample_radius(const TraitVector& trait, const BinaryProfile& center, double alpha,
                     std::size_t r, std::size_t samples, std::uint64_t seed, std::uint64_t stream)
{
    if (r > center.size()) {
        throw DomainError("radius exceeds profile length");
    }
    RadialConfig config;
    config.samples_per_radius = samples;
    config.early_exit_samples = 0;
    config.seed = seed;
    const DrawEvaluator evaluator(trait, center, alpha);
    return run_radius(trait, center, alpha, evaluator, r, config, stream).p_hat;
}

RadialProfile estimate_radial(const TraitVector& trait, const DesiredPartition& dp, double alpha,
                              const RadialConfig& config)
{
    check_alpha(alpha);
    if (config.samples_per_radius == 0) {
        throw DomainError("samples per radius must be at least 1");
    }
    if (dp.n() != trait.size()) {
        throw DimensionError("partition and trait sizes differ");
    }
    const std::size_t n = trait.size();
    const BinaryProfile center = dp.center(0);

    RadialProfile out;
    out.alpha = alpha;
    out.t = dp.t();
    out.samples_per_radius = config.samples_per_radius;

    const DrawEvaluator evaluator(trait, center, alpha);
    std::size_t zero_run = 0;
    for (std::size_t r = 0; r <= n / 2; ++r) {
        const auto est = run_radius(trait, center, alpha, evaluator, r, config, radial_stream);
        out.p_hat_raw.push_back(est.p_hat);
        out.draws.push_back(est.draws);
        out.se.push_back(std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(est.draws)));
        zero_run = est.p_hat == 0.0 ? zero_run + 1 : 0;
        if (zero_run == 2) {
            break;
        }
    }

    out.p_hat = out.p_hat_raw;
    for (std::size_t r = 1; r < out.p_hat.size(); ++r) {
        out.p_hat[r] = std::min(out.p_hat[r], out.p_hat[r - 1]);
    }
    out.center_attains = out.p_hat.front() == 1.0;
    out.r_l = 0;
    for (std::size_t r = 0; r < out.p_hat.size() && out.p_hat[r] == 1.0; ++r) {
        out.r_l = r;
    }
    out.r_u = n / 2 + 1;
    for (std::size_t r = 0; r < out.p_hat.size(); ++r) {
        if (out.p_hat[r] == 0.0) {
            out.r_u = r;
            break;
        }
    }
    return out;
}

std::pair<double, double> radial_symmetry_check(const TraitVector& trait,
                                                const DesiredPartition& dp, double alpha,
                                                std::size_t r, std::size_t samples,
                                                std::uint64_t seed)
{
    check_alpha(alpha);
    if (2 * r >= dp.n()) {
        throw DomainError("symmetry of the two centers is only defined for r < n/2");
    }
    const auto c0 = dp.center(0);
    const auto c1 = dp.center(1);
    return {sample_radius(trait, c0, alpha, r, samples, seed, radial_stream + 1),
            sample_radius(trait, c1, alpha, r, samples, seed, radial_stream + 2)};
}

void write_radial_tsv(std::ostream& out, const RadialProfile& profile)
{
    out << "r\tp_hat\tse\n";
    for (std::size_t r = 0; r < profile.p_hat.size(); ++r) {
        out << r << '\t' << profile.p_hat[r] << '\t' << profile.se[r] << '\n';
    }
}

} // namespace permgeo
