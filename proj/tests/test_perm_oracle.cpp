#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.h"
#include "permgeo/assoc_stats.h"
#include "permgeo/perm_oracle.h"

using namespace permgeo;

namespace {

std::vector<double> random_values(std::size_t n, Rng& rng)
{
    std::vector<double> v(n);
    for (auto& x : v) {
        x = rng.uniform();
    }
    return v;
}

// Exact permutation p over all n! orderings.
double all_orderings_p(const GenotypeMatrix& g, std::vector<double> values, double alpha)
{
    std::vector<std::size_t> idx(values.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        idx[i] = i;
    }
    long long hits = 0;
    long long total = 0;
    std::vector<double> perm(values.size());
    do {
        for (std::size_t i = 0; i < idx.size(); ++i) {
            perm[i] = values[idx[i]];
        }
        ++total;
        hits += attains(min_nominal_p(TraitVector::quantitative(perm), g).nominal_p, alpha);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return static_cast<double>(hits) / static_cast<double>(total);
}

} // namespace

TEST_CASE("n = 4 single marker")
{
    const auto g = testutil::matrix_of({{0, 0, 1, 1}});
    const auto trait = testutil::binary_trait({0, 0, 1, 1});
    const auto exact = exhaustive_binary(g, trait);
    CHECK(exact.exact);
    CHECK(exact.n_perms == 6);
    CHECK(exact.n_exceed == 2);
    CHECK(exact.p_hat == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("trivial cutoffs")
{
    Rng rng(31);
    const auto g = testutil::matrix_of({testutil::random_bits(20, rng), testutil::random_bits(20, rng)});
    const auto trait = TraitVector::quantitative(random_values(20, rng));
    CHECK(direct_permutation_p(g, trait, 1.0, 200).p_hat == 1.0);
    CHECK(direct_permutation_p(g, trait, 0.0, 200).p_hat == 0.0);
}

TEST_CASE("direct permutation matches every ordering at n = 8")
{
    Rng rng(32);
    const std::size_t n = 8;
    for (int rep = 0; rep < 2; ++rep) {
        std::vector<oracle::Bits> markers;
        for (int k = 0; k < 5; ++k) {
            markers.push_back(testutil::random_bits(n, rng));
        }
        const auto g = testutil::matrix_of(markers);
        const auto values = random_values(n, rng);
        const auto trait = TraitVector::quantitative(values);
        const double alpha = min_nominal_p(trait, g).nominal_p;
        const double exact = all_orderings_p(g, values, alpha);
        PermConfig config;
        config.seed = 5 + static_cast<std::uint64_t>(rep);
        const auto mc = direct_permutation_p(g, trait, alpha, 20000, config);
        const double se = std::sqrt(exact * (1 - exact) / 20000.0);
        CHECK(std::abs(mc.p_hat - exact) <= 4 * se);
        CHECK(mc.ci_lo <= exact);
        CHECK(mc.ci_hi >= exact);
    }
}

TEST_CASE("exhaustive binary agrees with sampling at n = 12")
{
    Rng rng(33);
    const std::size_t n = 12;
    std::vector<oracle::Bits> markers;
    for (int k = 0; k < 8; ++k) {
        markers.push_back(testutil::random_bits(n, rng));
    }
    const auto g = testutil::matrix_of(markers);
    const auto bits = testutil::random_balanced(n, rng);
    const auto trait = testutil::binary_trait(bits);
    const auto exact = exhaustive_binary(g, trait);
    CHECK(exact.n_perms == 924);
    // independent count over the same labelings
    const double alpha = min_nominal_p(trait, g).nominal_p;
    long long hits = 0;
    oracle::for_each_weight(static_cast<int>(n), static_cast<int>(n / 2), [&](const oracle::Bits& v) {
        hits += attains(min_nominal_p(testutil::binary_trait(v), g).nominal_p, alpha);
    });
    CHECK(exact.n_exceed == static_cast<std::size_t>(hits));
    const auto mc = direct_permutation_p(g, trait, alpha, 20000);
    const double se = std::sqrt(exact.p_hat * (1 - exact.p_hat) / 20000.0);
    CHECK(std::abs(mc.p_hat - exact.p_hat) <= 4 * se);
}

TEST_CASE("results do not depend on the thread count")
{
    Rng rng(34);
    const auto g = testutil::matrix_of({testutil::random_bits(30, rng), testutil::random_bits(30, rng)});
    const auto trait = TraitVector::quantitative(random_values(30, rng));
    PermConfig one;
    one.threads = 1;
    PermConfig four;
    four.threads = 4;
    const double alpha = 0.2;
    CHECK(direct_permutation_p(g, trait, alpha, 3000, one).n_exceed
          == direct_permutation_p(g, trait, alpha, 3000, four).n_exceed);
    const auto whole = count_exceedances(g, trait, alpha, 0, 1000, one);
    const auto split = count_exceedances(g, trait, alpha, 0, 400, one) + count_exceedances(g, trait, alpha, 400, 1000, one);
    CHECK(whole == split);
}

TEST_CASE("adaptive schedule stops early for large p")
{
    Rng rng(35);
    std::vector<oracle::Bits> markers;
    for (int k = 0; k < 20; ++k) {
        markers.push_back(testutil::random_bits(40, rng));
    }
    const auto g = testutil::matrix_of(markers);
    const auto trait = TraitVector::quantitative(random_values(40, rng));
    std::vector<int> stages;
    PermConfig config;
    config.progress = [&](int stage, std::size_t, std::size_t) { stages.push_back(stage); };
    const auto res = adaptive_permutation_p(g, trait, config, 0.5);
    REQUIRE(res.stopped_at_stage.has_value());
    CHECK(*res.stopped_at_stage == 1);
    CHECK(res.n_perms == 100);
    CHECK(binomial_lower_bound(res.n_perms, res.n_exceed, adaptive_confidence) > 0.1);
    CHECK(stages == std::vector<int>{1});
}

TEST_CASE("adaptive schedule runs to the stage its bound allows")
{
    Rng rng(36);
    std::vector<oracle::Bits> markers;
    for (int k = 0; k < 10; ++k) {
        markers.push_back(testutil::random_bits(30, rng));
    }
    const auto g = testutil::matrix_of(markers);
    const auto trait = TraitVector::quantitative(random_values(30, rng));
    const auto res = adaptive_permutation_p(g, trait, {}, 0.002);
    REQUIRE(res.stopped_at_stage.has_value());
    const int s = *res.stopped_at_stage;
    CHECK(s >= 2);
    CHECK(res.n_perms == adaptive_stages[static_cast<std::size_t>(s - 1)].cumulative_perms);
    CHECK(binomial_lower_bound(res.n_perms, res.n_exceed, adaptive_confidence)
          > adaptive_stages[static_cast<std::size_t>(s - 1)].threshold);
    // earlier stages did not meet their thresholds
    for (int k = 1; k < s; ++k) {
        const auto& st = adaptive_stages[static_cast<std::size_t>(k - 1)];
        const auto partial = count_exceedances(g, trait, 0.002, 0, st.cumulative_perms, {});
        CHECK(binomial_lower_bound(st.cumulative_perms, partial, adaptive_confidence) <= st.threshold);
    }
}

TEST_CASE("binomial bounds")
{
    CHECK(binomial_lower_bound(100, 0, 0.9999) == 0.0);
    // Clopper-Pearson lower bound for 50/100 at one-sided 99.99%
    const double lo = binomial_lower_bound(100, 50, 0.9999);
    CHECK(lo == doctest::Approx(0.3161853468).epsilon(1e-8));
    const auto [a, b] = binomial_interval(100, 50);
    CHECK(a == doctest::Approx(0.39832).epsilon(1e-4));
    CHECK(b == doctest::Approx(0.60168).epsilon(1e-4));
    const auto [c, d] = binomial_interval(10, 10);
    CHECK(d == 1.0);
    CHECK(c == doctest::Approx(std::pow(0.025, 0.1)).epsilon(1e-9));
}

TEST_CASE("exhaustive enumeration respects its budget")
{
    Rng rng(37);
    const auto g = testutil::matrix_of({testutil::random_bits(40, rng)});
    const auto trait = testutil::binary_trait(testutil::random_balanced(40, rng));
    CHECK_THROWS_AS(exhaustive_binary(g, trait, std::nullopt, 1000), BudgetError);
    CHECK_THROWS(exhaustive_binary(g, TraitVector::quantitative(random_values(40, rng))));
}
