#include "permgeo/assoc_stats.h"

#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

namespace permgeo {

double t_two_sided_p(double t, double df)
{
    if (std::isnan(t)) {
        return 1.0;
    }
    if (std::isinf(t)) {
        return 0.0;
    }
    const boost::math::students_t dist(df);
    const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
    return std::min(p, 1.0);
}

double chisq1_upper_p(double statistic)
{
    if (statistic <= 0.0) {
        return 1.0;
    }
    if (std::isinf(statistic)) {
        return 0.0;
    }
    return std::erfc(std::sqrt(0.5 * statistic));
}

TestResult t_test(const TraitVector& trait, const BinaryProfile& profile)
{
    const std::size_t n = trait.size();
    if (profile.size() != n) {
        throw DimensionError("trait has " + std::to_string(n) + " values, profile has "
                             + std::to_string(profile.size()));
    }
    if (n < 3) {
        throw DomainError("t-test needs at least 3 individuals");
    }
    TestResult r;
    const std::size_t n1 = profile.ones();
    const std::size_t n0 = n - n1;
    if (n1 == 0 || n0 == 0) {
        r.degenerate = true;
        return r;
    }

    double sum0 = 0.0, sum1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        (profile.get(i) ? sum1 : sum0) += trait.values[i];
    }
    const double mean0 = sum0 / static_cast<double>(n0);
    const double mean1 = sum1 / static_cast<double>(n1);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dev = trait.values[i] - (profile.get(i) ? mean1 : mean0);
        ss += dev * dev;
    }
    const double df = static_cast<double>(n - 2);
    const double diff = mean1 - mean0;
    if (ss == 0.0) {
        if (diff == 0.0) {
            return r;
        }
        r.singular = true;
        r.statistic = std::copysign(std::numeric_limits<double>::infinity(), diff);
        r.nominal_p = 0.0;
        return r;
    }
    const double var = ss / df;
    const double se = std::sqrt(var * (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n0)));
    r.statistic = diff / se;
    r.nominal_p = t_two_sided_p(r.statistic, df);
    return r;
}

TestResult chisq_test(const TraitVector& trait, const BinaryProfile& profile)
{
    const std::size_t n = trait.size();
    if (profile.size() != n) {
        throw DimensionError("trait has " + std::to_string(n) + " values, profile has "
                             + std::to_string(profile.size()));
    }
    // a: trait 1 & marker 1, b: trait 1 & marker 0, c: trait 0 & marker 1, d: both 0
    long long a = 0, b = 0, c = 0, d = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = trait.values[i];
        if (y != 0.0 && y != 1.0) {
            throw DomainError("chi-square test requires a binary trait");
        }
        const bool m = profile.get(i);
        if (y == 1.0) {
            (m ? a : b) += 1;
        } else {
            (m ? c : d) += 1;
        }
    }
    return chisq_from_table(a, b, c, d);
}

TestResult chisq_from_table(long long a, long long b, long long c, long long d)
{
    TestResult r;
    const long long row1 = a + b, row0 = c + d, col1 = a + c, col0 = b + d;
    if (row1 == 0 || row0 == 0 || col1 == 0 || col0 == 0) {
        r.degenerate = true;
        return r;
    }
    const double n = static_cast<double>(row1 + row0);
    const double det = static_cast<double>(a * d - b * c);
    r.statistic = n * det * det
        / (static_cast<double>(row1) * static_cast<double>(row0) * static_cast<double>(col1)
           * static_cast<double>(col0));
    r.nominal_p = chisq1_upper_p(r.statistic);
    return r;
}

TestResult nominal_test(const TraitVector& trait, const BinaryProfile& profile)
{
    return trait.kind == TraitKind::binary ? chisq_test(trait, profile) : t_test(trait, profile);
}

TestResult min_nominal_p(const TraitVector& trait, const GenotypeMatrix& g)
{
    if (g.empty()) {
        throw DomainError("genotype matrix has no markers");
    }
    TestResult best;
    best.degenerate = true;
    bool found = false;
    for (std::size_t k = 0; k < g.p(); ++k) {
        auto r = nominal_test(trait, g.profile(k));
        r.marker_index = k;
        if (r.degenerate) {
            continue;
        }
        if (!found || r.nominal_p < best.nominal_p) {
            best = r;
            found = true;
        }
    }
    return best;
}

} // namespace permgeo
