#include "permgeo/partition.h"

#include <algorithm>
#include <numeric>
#include <vector>

namespace permgeo {

BigInt binomial(std::size_t n, std::size_t k)
{
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

namespace {

void check_group_size(std::size_t n, std::size_t t)
{
    if (t < 1 || t + 1 > n) {
        throw DomainError("group size t=" + std::to_string(t) + " must lie in [1, n-1] for n="
                          + std::to_string(n));
    }
}

} // namespace

DesiredPartition::DesiredPartition(BinaryProfile zero_center, std::size_t t)
    : zero_center_(std::move(zero_center)), t_(t)
{
    const std::size_t n = zero_center_.size();
    check_group_size(n, t);
    if (zero_center_.ones() != n - t) {
        throw DomainError("center profile must have t zeros");
    }
    representative_ = zero_center_.complement();
    if (2 * t == n && representative_.get(0)) {
        representative_ = zero_center_;
    }
}

DesiredPartition DesiredPartition::from_profile(const BinaryProfile& v, std::size_t t)
{
    const std::size_t n = v.size();
    check_group_size(n, t);
    if (v.ones() != t && v.ones() != n - t) {
        throw DomainError("profile with " + std::to_string(v.ones())
                          + " ones does not mark a group of size " + std::to_string(t));
    }
    BinaryProfile zero = v.ones() == n - t ? v : v.complement();
    if (2 * t == n && zero.get(0)) {
        zero = zero.complement();
    }
    return DesiredPartition(std::move(zero), t);
}

std::size_t default_group_size(std::size_t n) { return n / 2; }

DesiredPartition best_partition(const TraitVector& trait, std::size_t t)
{
    const std::size_t n = trait.size();
    check_group_size(n, t);
    if (trait.kind == TraitKind::binary) {
        const BinaryProfile y = trait.as_profile();
        if (y.ones() == n - t) {
            return DesiredPartition(y, t);
        }
        if (y.ones() == t) {
            return DesiredPartition(y.complement(), t);
        }
        throw DomainError("binary trait with " + std::to_string(y.ones())
                          + " ones cannot define a partition with group size " + std::to_string(t));
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return trait.values[a] < trait.values[b];
    });
    BinaryProfile zero(n);
    for (std::size_t i = t; i < n; ++i) {
        zero.set(order[i], true);
    }
    return DesiredPartition(std::move(zero), t);
}

BigInt num_desired_partitions(std::size_t n, std::size_t t)
{
    check_group_size(n, t);
    BigInt c = binomial(n, t);
    if (2 * t == n) {
        c /= 2;
    }
    return c;
}

std::size_t partition_distance(const BinaryProfile& m, const DesiredPartition& dp)
{
    const std::size_t d = manhattan_distance(m, dp.representative());
    return std::min(d, m.size() - d);
}

} // namespace permgeo
