#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "dhsort/counters.hpp"
#include "dhsort/input_gen.hpp"
#include "dhsort/sorters.hpp"
#include "dhsort/verify.hpp"

using namespace dhsort;

namespace {

using Keys = std::vector<std::uint64_t>;

struct Run {
    Keys out;
    OpCounters ops;
};

template <class Sorter>
Run run_sort(Sorter sorter, Keys input) {
    CountingContext ctx;
    sorter(std::span(input), ctx);
    return {std::move(input), ctx.counters()};
}

const auto kHeapsort = [](std::span<std::uint64_t> a, CountingContext& c) { return heapsort(a, c); };
const auto kModified = [](std::span<std::uint64_t> a, CountingContext& c) {
    return heapsort_modified(a, c);
};
const auto kDualheap = [](std::span<std::uint64_t> a, CountingContext& c) {
    return dualheap_sort(a, c);
};

std::uint64_t floor_lg(std::uint64_t n) {
    std::uint64_t lg = 0;
    while ((std::uint64_t{2} << lg) <= n) ++lg;
    return lg;
}

template <class Fn>
void for_each_permutation(std::uint64_t n, Fn&& fn) {
    Keys perm(n);
    std::iota(perm.begin(), perm.end(), std::uint64_t{1});
    do {
        fn(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

TEST_CASE("split_sizes pins the small side to an even count") {
    CHECK(split_sizes(10) == std::pair<std::uint64_t, std::uint64_t>{4, 6});
    CHECK(split_sizes(7) == std::pair<std::uint64_t, std::uint64_t>{2, 5});
    CHECK(split_sizes(16) == std::pair<std::uint64_t, std::uint64_t>{8, 8});
    for (std::uint64_t n = 2; n <= 300; ++n) {
        const auto [nS, nL] = split_sizes(n);
        REQUIRE(nS % 2 == 0);
        REQUIRE(nS + nL == n);
        REQUIRE(nS <= nL);
        REQUIRE(nL <= nS + 3);
    }
}

TEST_CASE("region views put the two roots side by side") {
    Keys a{9, 1, 8, 2, 7, 3};
    const PartitionRegion r{1, 6};
    CHECK(r.small_size() == 2);
    CHECK(r.large_size() == 4);
    const auto small = small_heap_view(std::span(a), r);
    const auto large = large_heap_view(std::span(a), r);
    CHECK(small.position(1) == 2);
    CHECK(small.position(2) == 1);
    CHECK(large.position(1) == 3);
    CHECK(large.position(4) == 6);
}

TEST_CASE("heapsort on [2,1]: one comparison, two moves") {
    const Run r = run_sort(kHeapsort, {2, 1});
    CHECK(r.out == Keys{1, 2});
    CHECK(r.ops.comparisons == 1);
    CHECK(r.ops.moves == 2);
}

TEST_CASE("trivial sizes cost nothing") {
    for (const auto sorter : {+kHeapsort, +kModified, +kDualheap}) {
        const Run empty = run_sort(sorter, {});
        CHECK(empty.out.empty());
        CHECK(empty.ops == OpCounters{});
        const Run one = run_sort(sorter, {42});
        CHECK(one.out == Keys{42});
        CHECK(one.ops == OpCounters{});
    }
}

TEST_CASE("dualheap on two keys: one comparison, moves only when inverted") {
    const Run sorted = run_sort(kDualheap, {1, 2});
    CHECK(sorted.out == Keys{1, 2});
    CHECK(sorted.ops.comparisons == 1);
    CHECK(sorted.ops.moves == 0);
    const Run inverted = run_sort(kDualheap, {2, 1});
    CHECK(inverted.out == Keys{1, 2});
    CHECK(inverted.ops.comparisons == 1);
    CHECK(inverted.ops.moves == 2);
}

TEST_CASE("dualheap on three keys behaves exactly like build plus one exchange") {
    for_each_permutation(3, [](const Keys& perm) {
        const Run actual = run_sort(kDualheap, perm);
        Keys model = perm;
        CountingContext ctx;
        HeapView<std::uint64_t> view{model.data(), 1, 3, HeapKind::min_heap, Growth::rightward};
        build_heap(view, ctx);
        ctx.count_comparison();
        if (model[1] > model[2]) {
            const Keys::value_type tmp = model[1];
            model[1] = model[2];
            model[2] = tmp;
            ctx.count_move();
            ctx.count_move();
        }
        REQUIRE(actual.out == model);
        REQUIRE(actual.ops.comparisons == ctx.counters().comparisons);
        REQUIRE(actual.ops.moves == ctx.counters().moves);
    });
}

TEST_CASE("all three sorts handle every permutation of sizes 0..7") {
    for (std::uint64_t n = 0; n <= 7; ++n) {
        for_each_permutation(n, [](const Keys& perm) {
            for (const auto sorter : {+kHeapsort, +kModified, +kDualheap}) {
                const Run r = run_sort(sorter, perm);
                REQUIRE(verify_sorted_permutation(perm, r.out));
            }
        });
    }
}

TEST_CASE("duplicates: every key pattern over a tiny alphabet, sizes 1..5") {
    for (std::uint64_t n = 1; n <= 5; ++n) {
        std::uint64_t patterns = 1;
        for (std::uint64_t i = 0; i < n; ++i) patterns *= 3;
        for (std::uint64_t code = 0; code < patterns; ++code) {
            Keys a(n);
            std::uint64_t c = code;
            for (auto& v : a) {
                v = c % 3;
                c /= 3;
            }
            for (const auto sorter : {+kHeapsort, +kModified, +kDualheap}) {
                const Run r = run_sort(sorter, a);
                REQUIRE(verify_sorted_permutation(a, r.out));
            }
        }
    }
}

TEST_CASE("random duplicate-heavy and plain inputs stay correct") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 400; ++trial) {
        const std::uint64_t n = rng.next() % 80;
        Keys a(n);
        const std::uint64_t modulus = trial % 3 == 0 ? 1 : (trial % 3 == 1 ? 4 : 0);
        for (auto& v : a) v = modulus ? rng.next() % modulus : rng.next();
        for (const auto sorter : {+kHeapsort, +kModified, +kDualheap}) {
            const Run r = run_sort(sorter, a);
            REQUIRE(verify_sorted_permutation(a, r.out));
        }
    }
}

TEST_CASE("modified heapsort beats plain heapsort on already sorted keys") {
    Keys a(16);
    std::iota(a.begin(), a.end(), std::uint64_t{1});
    const Run plain = run_sort(kHeapsort, a);
    const Run modified = run_sort(kModified, a);
    CHECK(plain.ops.comparisons + plain.ops.moves >
          modified.ops.comparisons + modified.ops.moves);
}

TEST_CASE("dualheap on sorted input performs zero moves") {
    for (const std::uint64_t n : {std::uint64_t{256}, std::uint64_t{1024}, std::uint64_t{4096}}) {
        Keys a(n);
        std::iota(a.begin(), a.end(), std::uint64_t{0});
        const Run r = run_sort(kDualheap, a);
        CHECK(r.out == a);
        CHECK(r.ops.moves == 0);
        CHECK(r.ops.tree_swaps == 0);
    }
}

TEST_CASE("partition_once on [5,2,8,1,9,3,7,4] finalises the boundary slots") {
    Keys a{5, 2, 8, 1, 9, 3, 7, 4};
    const Keys before = a;
    CountingContext ctx;
    partition_once(std::span(a), PartitionRegion{1, 8}, ctx);
    CHECK(Keys(a.begin() + 2, a.begin() + 6) == Keys{3, 4, 5, 7});
    CHECK(partition_oracle(before, a, 4));
}

TEST_CASE("dualheap_partition on [9,1,8,2,7,3] selects the two smallest") {
    Keys a{9, 1, 8, 2, 7, 3};
    const Keys before = a;
    CountingContext ctx;
    const std::uint64_t small = dualheap_partition(std::span(a), PartitionRegion{1, 6}, ctx);
    CHECK(small == 2);
    CHECK(a == Keys{1, 2, 3, 8, 7, 9});
    CHECK(partition_oracle(before, a, small));
}

TEST_CASE("partition contracts: regions must hold at least two keys and fit") {
    Keys a{3, 1, 2};
    CountingContext ctx;
    CHECK_THROWS_AS(partition_once(std::span(a), PartitionRegion{1, 1}, ctx), std::logic_error);
    CHECK_THROWS_AS(partition_once(std::span(a), PartitionRegion{2, 3}, ctx), std::logic_error);
    CHECK_THROWS_AS(partition_heap(std::span(a), PartitionRegion{1, 1}, ctx), std::logic_error);
}

TEST_CASE("exhaustive partition invariants, sizes 4..7") {
    for (std::uint64_t n = 4; n <= 7; ++n) {
        const std::uint64_t nS = split_sizes(n).first;
        for_each_permutation(n, [&](const Keys& perm) {
            Keys a = perm;
            CountingContext ctx;
            partition_once(std::span(a), PartitionRegion{1, n}, ctx);
            REQUIRE(partition_oracle(perm, a, nS));
            // The four slots around the boundary hold their exact order statistics.
            const std::uint64_t ranks[] = {nS - 1, nS, nS + 1, nS + 2};
            const auto expect = reference_order_statistics(perm, ranks);
            for (int i = 0; i < 4; ++i) REQUIRE(a[ranks[i] - 1] == expect[static_cast<size_t>(i)]);
        });
    }
}

TEST_CASE("exhaustive selection invariants, sizes 2..7") {
    for (std::uint64_t n = 2; n <= 7; ++n) {
        for_each_permutation(n, [&](const Keys& perm) {
            Keys a = perm;
            CountingContext ctx;
            const std::uint64_t small = dualheap_partition(std::span(a), PartitionRegion{1, n}, ctx);
            REQUIRE(small == split_sizes(n).first);
            REQUIRE(partition_oracle(perm, a, small));
        });
    }
}

TEST_CASE("partitioning a subregion never touches the rest of the array") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t n = 10 + rng.next() % 90;
        Keys a(n);
        for (auto& v : a) v = rng.next() % 64;
        const std::uint64_t len = 2 + rng.next() % (n - 2);
        const std::uint64_t offset = 1 + rng.next() % (n - len + 1);
        Keys before = a;
        CountingContext ctx;
        dualheap_partition(std::span(a), PartitionRegion{offset, len}, ctx);
        const Keys slice_before(before.begin() + static_cast<long>(offset) - 1,
                                before.begin() + static_cast<long>(offset + len) - 1);
        const Keys slice_after(a.begin() + static_cast<long>(offset) - 1,
                               a.begin() + static_cast<long>(offset + len) - 1);
        REQUIRE(partition_oracle(slice_before, slice_after, split_sizes(len).first));
        for (std::uint64_t p = 1; p <= n; ++p) {
            if (p < offset || p >= offset + len) REQUIRE(a[p - 1] == before[p - 1]);
        }
    }
}

TEST_CASE("tree_swap exchanges leaf roots unconditionally") {
    Keys a{7, 3};
    auto small = HeapView<std::uint64_t>{a.data(), 1, 1, HeapKind::max_heap, Growth::leftward};
    auto large = HeapView<std::uint64_t>{a.data(), 2, 1, HeapKind::min_heap, Growth::rightward};
    CountingContext ctx;
    tree_swap(small, large, 1, 1, ctx);
    CHECK(a == Keys{3, 7});
    CHECK(ctx.counters().tree_swaps == 1);
    CHECK(ctx.counters().comparisons == 0);
    CHECK(ctx.counters().moves == 2);
    CHECK(ctx.counters().max_depth == 1);
}

TEST_CASE("tree_swap on [2,9,1,8] restores both heaps with swapped roots") {
    Keys a{2, 9, 1, 8};
    const PartitionRegion r{1, 4};
    auto small = small_heap_view(std::span(a), r);
    auto large = large_heap_view(std::span(a), r);
    REQUIRE(heap_check(small));
    REQUIRE(heap_check(large));
    CountingContext ctx;
    tree_swap(small, large, 1, 1, ctx);
    CHECK(a == Keys{1, 2, 8, 9});
    CHECK(heap_check(small));
    CHECK(heap_check(large));
    CHECK(ctx.counters().tree_swaps >= 1);
}

TEST_CASE("tree_swap rejects nodes outside the views") {
    Keys a{2, 9, 1, 8};
    const PartitionRegion r{1, 4};
    auto small = small_heap_view(std::span(a), r);
    auto large = large_heap_view(std::span(a), r);
    CountingContext ctx;
    CHECK_THROWS_AS(tree_swap(small, large, 3, 1, ctx), std::logic_error);
    CHECK_THROWS_AS(tree_swap(small, large, 1, 0, ctx), std::logic_error);
}

TEST_CASE("with a two-node small heap no sibling recursion can ever fire") {
    // nS = 2 leaves node 3 outside the small view, so each top-level swap
    // spawns at most one nested activation.
    for_each_permutation(5, [](const Keys& perm) {
        Keys a = perm;
        const PartitionRegion r{1, 5};
        auto small = small_heap_view(std::span(a), r);
        auto large = large_heap_view(std::span(a), r);
        CountingContext ctx;
        build_heap(small, ctx);
        build_heap(large, ctx);
        CountingContext phase;
        const std::uint64_t swaps = exchange_phase(small, large, phase);
        REQUIRE(swaps <= r.small_size());
        REQUIRE(phase.counters().tree_swaps <= 2 * swaps);
    });
}

TEST_CASE("exchange_phase is a no-op when the heaps are already partitioned") {
    Keys a{1, 2, 3, 4};
    const PartitionRegion r{1, 4};
    auto small = small_heap_view(std::span(a), r);
    auto large = large_heap_view(std::span(a), r);
    REQUIRE(heap_check(small));
    REQUIRE(heap_check(large));
    CountingContext ctx;
    CHECK(exchange_phase(small, large, ctx) == 0);
    CHECK(a == Keys{1, 2, 3, 4});
    CHECK(ctx.counters().comparisons == 1);
    CHECK(ctx.counters().moves == 0);
}

TEST_CASE("exchange_phase with an empty side does nothing") {
    Keys a{2, 1};
    const PartitionRegion r{1, 2};  // small side is empty for n == 2
    auto small = small_heap_view(std::span(a), r);
    auto large = large_heap_view(std::span(a), r);
    REQUIRE(small.size == 0);
    CountingContext ctx;
    CHECK(exchange_phase(small, large, ctx) == 0);
    CHECK(ctx.counters() == OpCounters{});
}

TEST_CASE("recursion depth stays within 2 lg n plus a constant") {
    SplitMix64 rng(31);
    for (const std::uint64_t n :
         {std::uint64_t{64}, std::uint64_t{1000}, std::uint64_t{4096}, std::uint64_t{20000}}) {
        Keys a(n);
        for (auto& v : a) v = rng.next();
        const Run r = run_sort(kDualheap, a);
        REQUIRE(verify_sorted_permutation(a, r.out));
        REQUIRE(r.ops.max_depth <= 2 * floor_lg(n) + 4);
    }
}

TEST_CASE("SortOutcome reports the context counters and input size") {
    Keys a{4, 2, 7, 1};
    CountingContext ctx;
    const SortOutcome outcome = dualheap_sort(std::span(a), ctx);
    CHECK(outcome.n == 4);
    CHECK(outcome.counters == ctx.counters());
}
