#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "permgeo/genomodel.h"

namespace permgeo {

// Genome-wide minimum nominal p for arbitrary rearrangements of one trait.
//
// Each call recomputes every marker's statistic from the supplied values;
// since all markers share the degrees of freedom, the minimum p belongs to
// the largest statistic and only that one is converted to a p-value.
class ScanKernel
{
public:
    ScanKernel(const GenotypeMatrix& g, TraitKind kind);

    double min_p(std::span<const double> values) const;

    std::size_t n() const { return n_; }
    std::size_t p() const { return p_; }

private:
    double min_p_quantitative(std::span<const double> values) const;
    double min_p_binary(std::span<const double> values) const;

    TraitKind kind_;
    std::size_t n_ = 0;
    std::size_t p_ = 0;
    std::vector<double> dense_;                 // n x p, individual-major
    std::vector<std::size_t> ones_;             // per marker
    std::vector<std::uint64_t> words_;          // p x words, marker-major
    std::size_t words_per_marker_ = 0;
};

} // namespace permgeo
