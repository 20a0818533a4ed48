#pragma once

#include <cstddef>
#include <vector>

#include "oracles/enumerate.h"
#include "permgeo/genomodel.h"
#include "permgeo/rng.h"

namespace testutil {

inline permgeo::BinaryProfile to_profile(const oracle::Bits& bits)
{
    permgeo::BinaryProfile p(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        p.set(i, bits[i] != 0);
    }
    return p;
}

inline oracle::Bits to_bits(const permgeo::BinaryProfile& p)
{
    oracle::Bits b(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        b[i] = p.get(i) ? 1 : 0;
    }
    return b;
}

inline oracle::Bits random_bits(std::size_t n, permgeo::Rng& rng)
{
    oracle::Bits b(n);
    for (auto& x : b) {
        x = static_cast<int>(rng.below(2));
    }
    return b;
}

inline oracle::Bits random_balanced(std::size_t n, permgeo::Rng& rng)
{
    oracle::Bits b(n, 0);
    for (std::size_t i = 0; i < n / 2; ++i) {
        b[i] = 1;
    }
    permgeo::shuffle(b.begin(), b.end(), rng);
    return b;
}

inline permgeo::GenotypeMatrix matrix_of(const std::vector<oracle::Bits>& markers)
{
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < markers.front().size(); ++i) {
        ids.push_back("i" + std::to_string(i));
    }
    permgeo::GenotypeMatrix g(ids);
    for (std::size_t k = 0; k < markers.size(); ++k) {
        g.add_marker("m" + std::to_string(k), to_profile(markers[k]));
    }
    return g;
}

inline permgeo::TraitVector binary_trait(const oracle::Bits& bits)
{
    std::vector<double> v(bits.begin(), bits.end());
    return permgeo::TraitVector::binary(v);
}

} // namespace testutil
