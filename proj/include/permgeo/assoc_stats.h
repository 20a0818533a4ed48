#pragma once

#include <cstddef>

#include "permgeo/genomodel.h"

namespace permgeo {

struct TestResult
{
    double statistic = 0.0;
    double nominal_p = 1.0;
    std::size_t marker_index = 0;
    bool degenerate = false; // a group (or margin) is empty; p fixed to 1
    bool singular = false;   // zero pooled variance with distinct group means; p = 0
};

// Two-sided upper tail of Student's t with df degrees of freedom at |t|.
double t_two_sided_p(double t, double df);
// Upper tail of chi-square with one degree of freedom.
double chisq1_upper_p(double statistic);

// Pooled-variance two-sample t-test, df = n - 2. The statistic is
// mean(profile==1) - mean(profile==0) over its standard error.
TestResult t_test(const TraitVector& trait, const BinaryProfile& profile);

// 2x2 Pearson chi-square without continuity correction.
TestResult chisq_test(const TraitVector& trait, const BinaryProfile& profile);

// Chi-square from a 2x2 table: a = (trait 1, marker 1), b = (1, 0),
// c = (0, 1), d = (0, 0).
TestResult chisq_from_table(long long a, long long b, long long c, long long d);

// Dispatches on trait kind: chi-square for binary traits, t-test otherwise.
TestResult nominal_test(const TraitVector& trait, const BinaryProfile& profile);

// Genome-wide minimum nominal p; ties resolve to the lowest marker index.
// If every marker is degenerate the result has p = 1 and degenerate set.
TestResult min_nominal_p(const TraitVector& trait, const GenotypeMatrix& g);

// Nominal p-values compare against cutoffs with a relative slack of 1e-9,
// so the same partition evaluated along two summation orders still
// counts as attaining the cutoff it defines.
inline bool attains(double p, double alpha) { return p <= alpha * (1.0 + 1e-9); }

} // namespace permgeo
