#include "permgeo/scan_kernel.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "permgeo/assoc_stats.h"

namespace permgeo {

ScanKernel::ScanKernel(const GenotypeMatrix& g, TraitKind kind)
    : kind_(kind), n_(g.n()), p_(g.p()), words_per_marker_((g.n() + 63) / 64)
{
    ones_.reserve(p_);
    for (const auto& prof : g.profiles()) {
        ones_.push_back(prof.ones());
    }
    if (kind_ == TraitKind::quantitative) {
        dense_.assign(n_ * p_, 0.0);
        for (std::size_t k = 0; k < p_; ++k) {
            const auto& prof = g.profile(k);
            for (std::size_t i = 0; i < n_; ++i) {
                if (prof.get(i)) {
                    dense_[i * p_ + k] = 1.0;
                }
            }
        }
    } else {
        words_.reserve(p_ * words_per_marker_);
        for (const auto& prof : g.profiles()) {
            words_.insert(words_.end(), prof.words().begin(), prof.words().end());
        }
    }
}

double ScanKernel::min_p(std::span<const double> values) const
{
    if (values.size() != n_) {
        throw DimensionError("trait length does not match genotype matrix");
    }
    return kind_ == TraitKind::quantitative ? min_p_quantitative(values) : min_p_binary(values);
}

double ScanKernel::min_p_quantitative(std::span<const double> values) const
{
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n_);
    std::vector<double> sum1(p_, 0.0), sq1(p_, 0.0);
    double total = 0.0, total_sq = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        const double z = values[i] - mean;
        const double z2 = z * z;
        total += z;
        total_sq += z2;
        const double* row = dense_.data() + i * p_;
        for (std::size_t k = 0; k < p_; ++k) {
            sum1[k] += row[k] * z;
            sq1[k] += row[k] * z2;
        }
    }
    const double df = static_cast<double>(n_) - 2.0;
    double best_t2 = 0.0;
    for (std::size_t k = 0; k < p_; ++k) {
        const std::size_t n1 = ones_[k];
        const std::size_t n0 = n_ - n1;
        if (n1 == 0 || n0 == 0) {
            continue;
        }
        const double c1 = static_cast<double>(n1);
        const double c0 = static_cast<double>(n0);
        const double s0 = total - sum1[k];
        const double q0 = total_sq - sq1[k];
        const double ss = (sq1[k] - sum1[k] * sum1[k] / c1) + (q0 - s0 * s0 / c0);
        const double diff = sum1[k] / c1 - s0 / c0;
        if (ss <= 0.0) {
            if (diff != 0.0) {
                return 0.0;
            }
            continue;
        }
        const double t2 = diff * diff / (ss / df * (1.0 / c1 + 1.0 / c0));
        best_t2 = std::max(best_t2, t2);
    }
    return best_t2 == 0.0 ? 1.0 : t_two_sided_p(std::sqrt(best_t2), df);
}

double ScanKernel::min_p_binary(std::span<const double> values) const
{
    std::vector<std::uint64_t> y(words_per_marker_, 0);
    long long trait_ones = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        if (values[i] == 1.0) {
            y[i >> 6] |= std::uint64_t{1} << (i & 63);
            ++trait_ones;
        }
    }
    const auto n = static_cast<long long>(n_);
    double best_stat = 0.0;
    bool any = false;
    for (std::size_t k = 0; k < p_; ++k) {
        const std::uint64_t* m = words_.data() + k * words_per_marker_;
        long long a = 0;
        for (std::size_t w = 0; w < words_per_marker_; ++w) {
            a += std::popcount(m[w] & y[w]);
        }
        const auto col1 = static_cast<long long>(ones_[k]);
        const long long b = trait_ones - a;
        const long long c = col1 - a;
        const long long d = n - trait_ones - c;
        const auto r = chisq_from_table(a, b, c, d);
        if (r.degenerate) {
            continue;
        }
        if (!any || r.statistic > best_stat) {
            best_stat = r.statistic;
            any = true;
        }
    }
    return any ? chisq1_upper_p(best_stat) : 1.0;
}

} // namespace permgeo
