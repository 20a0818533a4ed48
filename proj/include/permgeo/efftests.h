#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace permgeo {

struct PValuePair
{
    double nominal_p = 0.0;
    double permutation_p = 0.0;
};

// q = eta * p^kappa fitted by least absolute deviations on log10 scale.
struct EffTestsFit
{
    double eta = 0.0;
    double kappa = 0.0;
    std::size_t n_points = 0;
    double fit_lo = 1e-10;
    double fit_hi = 1e-3;
    double objective = 0.0; // sum of absolute log10 residuals
    std::vector<double> residuals; // per input pair on log10 scale; NaN if a p is not positive
};

EffTestsFit fit_effective_tests(const std::vector<PValuePair>& pairs, double fit_lo = 1e-10,
                                double fit_hi = 1e-3);

// eta * p^(kappa - 1)
double effective_tests(const EffTestsFit& fit, double nominal_p);

// Minimizes sum |y - a - b x| over (a, b). Returns (a, b, objective).
struct LadLine
{
    double intercept = 0.0;
    double slope = 0.0;
    double objective = 0.0;
};
LadLine lad_fit(const std::vector<double>& x, const std::vector<double>& y);

} // namespace permgeo
