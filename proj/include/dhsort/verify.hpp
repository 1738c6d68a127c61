#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dhsort {

// True iff `output` is ascending and a multiset permutation of `input`.
bool verify_sorted_permutation(std::span<const std::uint64_t> input,
                               std::span<const std::uint64_t> output);

// True iff `after` is a permutation of `before` whose first `small_count`
// slots hold its `small_count` smallest keys (as a multiset). Mismatched
// lengths or small_count > length are contract violations.
bool partition_oracle(std::span<const std::uint64_t> before,
                      std::span<const std::uint64_t> after, std::uint64_t small_count);

// Order statistics by full sort: for each 1-based rank in `ranks`, the key
// that belongs at that position of the sorted arrangement. Ranks outside
// 1..len are contract violations.
std::vector<std::uint64_t> reference_order_statistics(std::span<const std::uint64_t> arr,
                                                      std::span<const std::uint64_t> ranks);

}  // namespace dhsort
