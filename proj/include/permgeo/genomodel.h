#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permgeo/error.h"

namespace permgeo {

// One marker's genotypes across n individuals, bit-packed 64 per word.
// Bits beyond n in the last word are always zero.
class BinaryProfile
{
public:
    BinaryProfile() = default;
    explicit BinaryProfile(std::size_t n);

    static BinaryProfile from_bits(std::span<const std::uint8_t> bits);
    // Parses "0101..." (no separators).
    static BinaryProfile from_string(std::string_view bits);

    std::size_t size() const { return n_; }
    std::size_t ones() const { return ones_; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i, bool value);
    void flip(std::size_t i);

    BinaryProfile complement() const;
    std::string to_string() const;

    std::span<const std::uint64_t> words() const { return words_; }

    friend bool operator==(const BinaryProfile& a, const BinaryProfile& b)
    {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

private:
    std::size_t n_ = 0;
    std::size_t ones_ = 0;
    std::vector<std::uint64_t> words_;
};

struct ProfileHash
{
    std::size_t operator()(const BinaryProfile& p) const noexcept;
};

// Number of individuals whose genotypes differ.
std::size_t manhattan_distance(const BinaryProfile& a, const BinaryProfile& b);

struct MarkerPosition
{
    std::string chromosome;
    double coordinate = 0.0;
};

// Ordered markers; order encodes chromosomal adjacency and is preserved
// through every transformation.
class GenotypeMatrix
{
public:
    GenotypeMatrix() = default;
    explicit GenotypeMatrix(std::vector<std::string> sample_ids);

    void add_marker(std::string id, BinaryProfile profile,
                    std::optional<MarkerPosition> position = std::nullopt);

    std::size_t n() const { return sample_ids_.size(); }
    std::size_t p() const { return profiles_.size(); }
    bool empty() const { return profiles_.empty(); }

    const BinaryProfile& profile(std::size_t k) const { return profiles_[k]; }
    const std::vector<BinaryProfile>& profiles() const { return profiles_; }
    const std::string& marker_id(std::size_t k) const { return marker_ids_[k]; }
    const std::optional<MarkerPosition>& position(std::size_t k) const { return positions_[k]; }
    const std::vector<std::string>& sample_ids() const { return sample_ids_; }

    // Copy with markers rearranged so that output marker k is input marker order[k].
    GenotypeMatrix reordered(std::span<const std::size_t> order) const;

private:
    std::vector<std::string> sample_ids_;
    std::vector<BinaryProfile> profiles_;
    std::vector<std::string> marker_ids_;
    std::vector<std::optional<MarkerPosition>> positions_;
};

enum class TraitKind { quantitative, binary };

struct TraitVector
{
    std::vector<double> values;
    TraitKind kind = TraitKind::quantitative;
    std::vector<std::string> sample_ids;

    std::size_t size() const { return values.size(); }
    bool is_constant() const;

    // Binary trait viewed as a profile (1 where value == 1).
    BinaryProfile as_profile() const;

    static TraitVector quantitative(std::vector<double> values);
    static TraitVector binary(std::vector<double> values);
};

enum class TraitKindOption { automatic, quantitative, binary };

struct LoadOptions
{
    TraitKindOption trait_kind = TraitKindOption::automatic;
};

struct Dataset
{
    GenotypeMatrix genotypes;
    TraitVector trait;
};

GenotypeMatrix read_genotypes(std::istream& in);
TraitVector read_trait(std::istream& in, const std::vector<std::string>& expected_ids,
                       const LoadOptions& options = {});
Dataset load_dataset(std::istream& genotype_source, std::istream& trait_source,
                     const LoadOptions& options = {});
Dataset load_dataset(const std::string& genotype_path, const std::string& trait_path,
                     const LoadOptions& options = {});

void write_genotypes(std::ostream& out, const GenotypeMatrix& g);
void write_trait(std::ostream& out, const TraitVector& trait);

struct DedupOptions
{
    // When set, identical profiles merge only if they lie on the same
    // chromosome with coordinates at most this far apart.
    std::optional<double> max_gap;
};

struct DedupResult
{
    GenotypeMatrix matrix;
    std::vector<std::size_t> mapping; // original index -> kept index
};

// Collapses exact duplicate profiles (complements are distinct profiles).
// The first occurrence is kept with its id and position.
DedupResult deduplicate_profiles(const GenotypeMatrix& g, const DedupOptions& options = {});

} // namespace permgeo
