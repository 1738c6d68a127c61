#include "dhsort/verify.hpp"

#include <algorithm>

#include "dhsort/contract.hpp"

namespace dhsort {
namespace {

std::vector<std::uint64_t> sorted_copy(std::span<const std::uint64_t> a) {
    std::vector<std::uint64_t> s(a.begin(), a.end());
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace

bool verify_sorted_permutation(std::span<const std::uint64_t> input,
                               std::span<const std::uint64_t> output) {
    if (input.size() != output.size()) return false;
    if (!std::is_sorted(output.begin(), output.end())) return false;
    return sorted_copy(input) == std::vector<std::uint64_t>(output.begin(), output.end());
}

bool partition_oracle(std::span<const std::uint64_t> before,
                      std::span<const std::uint64_t> after, std::uint64_t small_count) {
    require(before.size() == after.size(), "partition_oracle: length mismatch");
    require(small_count <= before.size(), "partition_oracle: small_count exceeds length");
    const auto expected = sorted_copy(before);
    if (sorted_copy(after) != expected) return false;
    auto head = sorted_copy(after.first(small_count));
    return std::equal(head.begin(), head.end(), expected.begin());
}

std::vector<std::uint64_t> reference_order_statistics(std::span<const std::uint64_t> arr,
                                                      std::span<const std::uint64_t> ranks) {
    const auto sorted = sorted_copy(arr);
    std::vector<std::uint64_t> out;
    out.reserve(ranks.size());
    for (const std::uint64_t rank : ranks) {
        require(rank >= 1 && rank <= sorted.size(),
                "reference_order_statistics: rank outside 1..len");
        out.push_back(sorted[rank - 1]);
    }
    return out;
}

}  // namespace dhsort
