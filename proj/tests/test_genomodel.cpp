#include <sstream>

#include "doctest.h"
#include "helpers.h"
#include "permgeo/genomodel.h"
#include "permgeo/rng.h"

using namespace permgeo;

TEST_CASE("manhattan distance examples")
{
    const auto a = BinaryProfile::from_string("0011");
    CHECK(manhattan_distance(a, BinaryProfile::from_string("0011")) == 0);
    CHECK(manhattan_distance(a, BinaryProfile::from_string("1100")) == 4);
    CHECK(manhattan_distance(BinaryProfile::from_string("0110"), a) == 2);
    CHECK_THROWS_AS(manhattan_distance(a, BinaryProfile::from_string("001")), DimensionError);
}

TEST_CASE("manhattan distance properties on random profiles")
{
    Rng rng(11);
    for (int iter = 0; iter < 300; ++iter) {
        const std::size_t n = 1 + rng.below(200);
        const auto a = testutil::to_profile(testutil::random_bits(n, rng));
        const auto b = testutil::to_profile(testutil::random_bits(n, rng));
        const auto c = testutil::to_profile(testutil::random_bits(n, rng));
        const auto ab = manhattan_distance(a, b);
        CHECK(ab == manhattan_distance(b, a));
        CHECK(ab <= manhattan_distance(a, c) + manhattan_distance(c, b));
        CHECK(manhattan_distance(a, b.complement()) == n - ab);
        CHECK(ab == oracle::hamming(testutil::to_bits(a), testutil::to_bits(b)));
    }
}

TEST_CASE("profile bookkeeping")
{
    auto p = BinaryProfile::from_string("1010011");
    CHECK(p.ones() == 4);
    p.flip(1);
    CHECK(p.ones() == 5);
    p.set(0, false);
    CHECK(p.ones() == 4);
    CHECK(p.to_string() == "0110011");
    const auto c = p.complement();
    CHECK(c.to_string() == "1001100");
    CHECK(c.ones() == 3);
    // tail bits past n stay clear, so equality and hashing see only n bits
    CHECK(c.complement() == p);
    CHECK_THROWS_AS(BinaryProfile::from_string("0120"), FormatError);
}

TEST_CASE("load a small dataset")
{
    std::istringstream geno("marker_id\tchrom\tpos\ta\tb\tc\td\n"
                            "m1\tchr1\t10\t0\t0\t1\t1\n"
                            "m2\tchr1\t20\t0\t1\t1\t0\n"
                            "m3\tchr2\t5\t1\t1\t1\t0\n");
    std::istringstream trait("individual\tvalue\na\t1.5\nb\t0.2\nc\t3\nd\t-1\n");
    const auto ds = load_dataset(geno, trait);
    CHECK(ds.genotypes.p() == 3);
    CHECK(ds.genotypes.n() == 4);
    CHECK(ds.genotypes.profile(1).to_string() == "0110");
    REQUIRE(ds.genotypes.position(2).has_value());
    CHECK(ds.genotypes.position(2)->chromosome == "chr2");
    CHECK(ds.genotypes.position(2)->coordinate == 5.0);
    CHECK(ds.trait.kind == TraitKind::quantitative);
    CHECK(ds.trait.values[3] == -1.0);
}

TEST_CASE("header of bare individual ids and rows without positions")
{
    std::istringstream geno("a\tb\tc\nm1\t0\t1\t1\nm2\t1\t1\t0\n");
    std::istringstream trait("a\t0\nb\t1\nc\t1\n");
    const auto ds = load_dataset(geno, trait);
    CHECK(ds.genotypes.p() == 2);
    CHECK_FALSE(ds.genotypes.position(0).has_value());
    CHECK(ds.trait.kind == TraitKind::binary);
}

TEST_CASE("load errors")
{
    SUBCASE("non-binary genotype")
    {
        std::istringstream geno("a\tb\tc\td\nm1\t0\t2\t1\t1\n");
        CHECK_THROWS_AS(read_genotypes(geno), FormatError);
    }
    SUBCASE("missing genotype asks for imputation")
    {
        std::istringstream geno("a\tb\tc\td\nm1\t0\tNA\t1\t1\n");
        try {
            read_genotypes(geno);
            FAIL("expected an error");
        } catch (const FormatError& e) {
            CHECK(std::string(e.what()).find("impute") != std::string::npos);
        }
    }
    SUBCASE("trait length mismatch")
    {
        std::istringstream geno("a\tb\tc\td\nm1\t0\t0\t1\t1\n");
        std::istringstream trait("a\t1\nb\t2\nc\t3\nd\t4\ne\t5\n");
        CHECK_THROWS_AS(load_dataset(geno, trait), DimensionError);
    }
    SUBCASE("trait order must match the genotype header")
    {
        std::istringstream geno("a\tb\tc\nm1\t0\t0\t1\n");
        std::istringstream trait("a\t1\nc\t2\nb\t3\n");
        CHECK_THROWS_AS(load_dataset(geno, trait), FormatError);
    }
    SUBCASE("missing trait value")
    {
        std::istringstream geno("a\tb\tc\nm1\t0\t0\t1\n");
        std::istringstream trait("a\t1\nb\tNA\nc\t3\n");
        CHECK_THROWS_AS(load_dataset(geno, trait), FormatError);
    }
    SUBCASE("ragged genotype row")
    {
        std::istringstream geno("a\tb\tc\nm1\t0\t0\t1\t1\t1\t0\n");
        CHECK_THROWS_AS(read_genotypes(geno), DimensionError);
    }
}

TEST_CASE("write then read preserves markers and trait")
{
    Rng rng(3);
    GenotypeMatrix g({"x1", "x2", "x3", "x4", "x5"});
    for (int k = 0; k < 6; ++k) {
        g.add_marker("s" + std::to_string(k), testutil::to_profile(testutil::random_bits(5, rng)),
                     MarkerPosition{"chr1", 1.5 * k});
    }
    auto trait = TraitVector::quantitative({0.1, -2.25, 3.0, 1e-7, 42.0});
    trait.sample_ids = g.sample_ids();
    std::stringstream geno, tr;
    write_genotypes(geno, g);
    write_trait(tr, trait);
    const auto ds = load_dataset(geno, tr);
    REQUIRE(ds.genotypes.p() == g.p());
    for (std::size_t k = 0; k < g.p(); ++k) {
        CHECK(ds.genotypes.profile(k) == g.profile(k));
        CHECK(ds.genotypes.marker_id(k) == g.marker_id(k));
        CHECK(ds.genotypes.position(k)->coordinate == g.position(k)->coordinate);
    }
    CHECK(ds.trait.values == trait.values);
}

TEST_CASE("deduplication")
{
    SUBCASE("adjacent duplicates collapse")
    {
        const auto g = testutil::matrix_of({{0, 0, 1, 1}, {0, 0, 1, 1}, {0, 1, 0, 1}});
        const auto d = deduplicate_profiles(g);
        CHECK(d.matrix.p() == 2);
        CHECK(d.mapping == std::vector<std::size_t>{0, 0, 1});
    }
    SUBCASE("complements stay distinct")
    {
        const auto g = testutil::matrix_of({{0, 0, 1, 1}, {1, 1, 0, 0}});
        CHECK(deduplicate_profiles(g).matrix.p() == 2);
    }
    SUBCASE("all identical")
    {
        const auto g = testutil::matrix_of({{0, 1, 1, 0}, {0, 1, 1, 0}, {0, 1, 1, 0}, {0, 1, 1, 0}});
        CHECK(deduplicate_profiles(g).matrix.p() == 1);
    }
    SUBCASE("non-adjacent duplicates keep the first occurrence and order")
    {
        const auto g = testutil::matrix_of({{0, 0, 1, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {1, 1, 1, 0}});
        const auto d = deduplicate_profiles(g);
        REQUIRE(d.matrix.p() == 3);
        CHECK(d.matrix.marker_id(0) == "m0");
        CHECK(d.matrix.marker_id(1) == "m1");
        CHECK(d.matrix.marker_id(2) == "m3");
        CHECK(d.mapping == std::vector<std::size_t>{0, 1, 0, 2});
    }
    SUBCASE("idempotent on random matrices")
    {
        Rng rng(5);
        for (int iter = 0; iter < 50; ++iter) {
            std::vector<oracle::Bits> markers;
            for (int k = 0; k < 30; ++k) {
                markers.push_back(testutil::random_bits(5, rng));
            }
            const auto once = deduplicate_profiles(testutil::matrix_of(markers)).matrix;
            const auto twice = deduplicate_profiles(once);
            CHECK(twice.matrix.p() == once.p());
            for (std::size_t k = 0; k < once.p(); ++k) {
                CHECK(twice.mapping[k] == k);
            }
        }
    }
    SUBCASE("gap-gated merging")
    {
        GenotypeMatrix g({"a", "b", "c", "d"});
        const auto p = BinaryProfile::from_string("0011");
        g.add_marker("m1", p, MarkerPosition{"chr1", 100});
        g.add_marker("m2", p, MarkerPosition{"chr1", 105});
        g.add_marker("m3", p, MarkerPosition{"chr1", 5000});
        g.add_marker("m4", p, MarkerPosition{"chr2", 100});
        DedupOptions opt;
        opt.max_gap = 10.0;
        const auto d = deduplicate_profiles(g, opt);
        CHECK(d.matrix.p() == 3);
        CHECK(d.mapping == std::vector<std::size_t>{0, 0, 1, 2});
        CHECK(deduplicate_profiles(g).matrix.p() == 1);
    }
}
