#pragma once

#include <cstddef>

#include "permgeo/bigint.h"
#include "permgeo/genomodel.h"

namespace permgeo {

// A two-group split of n individuals into sizes t and n - t.
//
// The partition is identified by its representative: the profile with
// exactly t ones marking the t-group. When t == n/2 both a vector and its
// complement mark a t-group, and the representative is the one whose first
// coordinate is 0. Equality compares only (t, representative).
//
// center(0) is the profile whose 0-class is the t-group, center(1) its
// complement. For partitions built by best_partition, center(0) keeps the
// trait orientation (the t smallest values are 0).
class DesiredPartition
{
public:
    // v must have t ones or t zeros.
    static DesiredPartition from_profile(const BinaryProfile& v, std::size_t t);

    const BinaryProfile& representative() const { return representative_; }
    std::size_t t() const { return t_; }
    std::size_t n() const { return representative_.size(); }

    BinaryProfile center(int a) const { return a == 0 ? zero_center_ : zero_center_.complement(); }

    friend bool operator==(const DesiredPartition& a, const DesiredPartition& b)
    {
        return a.t_ == b.t_ && a.representative_ == b.representative_;
    }

private:
    friend DesiredPartition best_partition(const TraitVector& trait, std::size_t t);

    DesiredPartition(BinaryProfile zero_center, std::size_t t);

    BinaryProfile representative_;
    BinaryProfile zero_center_;
    std::size_t t_ = 0;
};

std::size_t default_group_size(std::size_t n);

// Individuals with the t smallest trait values (stable in index) form the
// 0-class. A binary trait is its own best partition; t must then equal the
// number of zeros or ones.
DesiredPartition best_partition(const TraitVector& trait, std::size_t t);

// C(n,t), halved when t == n/2.
BigInt num_desired_partitions(std::size_t n, std::size_t t);

// min(d(m, center0), d(m, center1)) = min(d, n - d).
std::size_t partition_distance(const BinaryProfile& m, const DesiredPartition& dp);

} // namespace permgeo
