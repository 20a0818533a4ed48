#include "doctest.h"
#include "helpers.h"
#include "permgeo/partition.h"
#include "permgeo/rng.h"

using namespace permgeo;

TEST_CASE("best partition of a quantitative trait")
{
    const auto trait = TraitVector::quantitative({3.1, 0.2, 5.0, 1.1});
    const auto dp = best_partition(trait, 2);
    // individuals 2 and 4 (1-based) hold the two smallest values
    CHECK(dp.center(0).to_string() == "1010");
    CHECK(dp.t() == 2);
}

TEST_CASE("binary trait is its own best partition")
{
    const auto trait = testutil::binary_trait({0, 0, 1, 1});
    const auto dp = best_partition(trait, 2);
    CHECK(dp.center(0).to_string() == "0011");
    CHECK(dp == DesiredPartition::from_profile(BinaryProfile::from_string("0011"), 2));
    CHECK_THROWS_AS(best_partition(testutil::binary_trait({0, 0, 0, 1, 1}), 1), DomainError);
    // unbalanced binary trait, t = number of zeros
    const auto unbalanced = best_partition(testutil::binary_trait({1, 0, 0, 1, 1}), 2);
    CHECK(unbalanced.center(0).to_string() == "10011");
}

TEST_CASE("ties break by index")
{
    const auto dp = best_partition(TraitVector::quantitative({7, 7, 7, 7}), 2);
    CHECK(dp.center(0).to_string() == "0011");
}

TEST_CASE("group size out of range")
{
    const auto trait = TraitVector::quantitative({1, 2, 3, 4});
    CHECK_THROWS_AS(best_partition(trait, 0), DomainError);
    CHECK_THROWS_AS(best_partition(trait, 4), DomainError);
    CHECK_THROWS_AS(num_desired_partitions(4, 0), DomainError);
    CHECK_THROWS_AS(num_desired_partitions(4, 4), DomainError);
}

TEST_CASE("number of desired partitions")
{
    CHECK(num_desired_partitions(4, 2) == 3);
    CHECK(num_desired_partitions(4, 1) == 4);
    CHECK(num_desired_partitions(12, 6) == 462);
    CHECK(num_desired_partitions(12, 5) == num_desired_partitions(12, 7));
    // C(112, 56) / 2, far beyond 64 bits
    CHECK(num_desired_partitions(112, 56).str() == "195295022443578894680165266232892");
    for (std::size_t n = 2; n <= 16; ++n) {
        for (std::size_t t = 1; t < n; ++t) {
            const auto expected = 2 * t == n ? oracle::choose(static_cast<int>(n), static_cast<int>(t)) / 2
                                             : oracle::choose(static_cast<int>(n), static_cast<int>(t));
            CHECK(num_desired_partitions(n, t) == expected);
            CHECK(static_cast<long long>(oracle::desired_partitions(static_cast<int>(n), static_cast<int>(t)).size())
                  == expected);
        }
    }
}

TEST_CASE("partition distance")
{
    const auto dp = DesiredPartition::from_profile(BinaryProfile::from_string("0011"), 2);
    CHECK(partition_distance(BinaryProfile::from_string("0011"), dp) == 0);
    CHECK(partition_distance(BinaryProfile::from_string("1100"), dp) == 0);
    CHECK(partition_distance(BinaryProfile::from_string("1111"), dp) == 2);
    CHECK_THROWS_AS(partition_distance(BinaryProfile::from_string("111"), dp), DimensionError);
}

TEST_CASE("canonicalization and distance symmetry")
{
    Rng rng(4);
    for (int iter = 0; iter < 200; ++iter) {
        const std::size_t n = 2 * (1 + rng.below(20));
        const auto v = testutil::to_profile(testutil::random_balanced(n, rng));
        const auto a = DesiredPartition::from_profile(v, n / 2);
        const auto b = DesiredPartition::from_profile(v.complement(), n / 2);
        CHECK(a == b);
        CHECK(a.center(0) == b.center(0));
        CHECK_FALSE(a.representative().get(0));
        const auto m = testutil::to_profile(testutil::random_bits(n, rng));
        CHECK(partition_distance(m, a) == partition_distance(m.complement(), a));
        CHECK(partition_distance(m, a) <= n / 2);
    }
}

TEST_CASE("representative marks the t-group")
{
    const auto dp = DesiredPartition::from_profile(BinaryProfile::from_string("11100"), 2);
    CHECK(dp.representative().to_string() == "00011");
    CHECK(dp.center(0).to_string() == "11100");
    CHECK(dp.center(1).to_string() == "00011");
    CHECK_THROWS_AS(DesiredPartition::from_profile(BinaryProfile::from_string("11110"), 2),
                    DomainError);
}
