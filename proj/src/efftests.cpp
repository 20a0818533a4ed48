#include "permgeo/efftests.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "permgeo/error.h"

namespace permgeo {

namespace {

double median_inplace(std::vector<double>& v)
{
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    double m = *mid;
    if (v.size() % 2 == 0) {
        m = 0.5 * (m + *std::max_element(v.begin(), mid));
    }
    return m;
}

// Best intercept for a fixed slope is a median of the offsets; the profile
// objective is convex in the slope.
std::pair<double, double> profile_objective(const std::vector<double>& x,
                                            const std::vector<double>& y, double slope,
                                            std::vector<double>& scratch)
{
    scratch.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        scratch[i] = y[i] - slope * x[i];
    }
    std::vector<double> copy = scratch;
    const double a = median_inplace(copy);
    double f = 0.0;
    for (const auto r : scratch) {
        f += std::abs(r - a);
    }
    return {f, a};
}

} // namespace

LadLine lad_fit(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) {
        throw DomainError("LAD fit needs at least two points");
    }
    // The optimum slope is one of the pairwise slopes; bracket them and run a
    // ternary search on the convex profile objective.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            if (x[i] != x[j]) {
                const double s = (y[j] - y[i]) / (x[j] - x[i]);
                lo = std::min(lo, s);
                hi = std::max(hi, s);
            }
        }
    }
    if (!std::isfinite(lo)) {
        throw DomainError("LAD fit needs at least two distinct x values");
    }
    std::vector<double> scratch;
    for (int iter = 0; iter < 300 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++iter) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (profile_objective(x, y, m1, scratch).first <= profile_objective(x, y, m2, scratch).first) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    LadLine line;
    line.slope = 0.5 * (lo + hi);
    const auto [f, a] = profile_objective(x, y, line.slope, scratch);
    line.intercept = a;
    line.objective = f;
    return line;
}

EffTestsFit fit_effective_tests(const std::vector<PValuePair>& pairs, double fit_lo, double fit_hi)
{
    if (!(fit_lo > 0.0 && fit_lo < fit_hi)) {
        throw DomainError("fit range must satisfy 0 < lo < hi");
    }
    std::vector<double> x, y;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& pr = pairs[i];
        if (pr.nominal_p < fit_lo || pr.nominal_p > fit_hi || !(pr.permutation_p > 0.0)) {
            continue;
        }
        const double lx = std::log10(pr.nominal_p);
        const double ly = std::log10(pr.permutation_p);
        if (!std::isfinite(lx) || !std::isfinite(ly)) {
            continue;
        }
        x.push_back(lx);
        y.push_back(ly);
    }
    if (x.size() < 3) {
        throw DomainError("need at least 3 usable pairs in the fit range, have "
                          + std::to_string(x.size()));
    }
    const auto line = lad_fit(x, y);
    EffTestsFit fit;
    fit.eta = std::pow(10.0, line.intercept);
    fit.kappa = line.slope;
    fit.n_points = x.size();
    fit.fit_lo = fit_lo;
    fit.fit_hi = fit_hi;
    fit.objective = line.objective;
    fit.residuals.assign(pairs.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double lx = std::log10(pairs[i].nominal_p);
        const double ly = std::log10(pairs[i].permutation_p);
        if (std::isfinite(lx) && std::isfinite(ly)) {
            fit.residuals[i] = ly - line.intercept - line.slope * lx;
        }
    }
    return fit;
}

double effective_tests(const EffTestsFit& fit, double nominal_p)
{
    return fit.eta * std::pow(nominal_p, fit.kappa - 1.0);
}

} // namespace permgeo
