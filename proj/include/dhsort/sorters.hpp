#pragma once

#include <concepts>
#include <cstdint>
#include <span>
#include <utility>

#include "dhsort/contract.hpp"
#include "dhsort/counters.hpp"
#include "dhsort/heap_view.hpp"

namespace dhsort {

// Split a region of n keys into the two subheap sizes. The small side takes
// floor(n/2) rounded down to even; keeping it even lets every partition pass
// retire the two slots on each side of the boundary.
inline std::pair<std::uint64_t, std::uint64_t> split_sizes(std::uint64_t n) {
    const std::uint64_t small = (n / 2) & ~std::uint64_t{1};
    return {small, n - small};
}

// A contiguous stretch of the master array: 1-based positions
// offset .. offset+n-1.
struct PartitionRegion {
    std::uint64_t offset = 1;
    std::uint64_t n = 0;

    std::uint64_t small_size() const { return split_sizes(n).first; }
    std::uint64_t large_size() const { return split_sizes(n).second; }
};

struct SortOutcome {
    OpCounters counters;  // the context's accumulated counters at completion
    std::uint64_t n = 0;
};

namespace detail {

template <class Ctx>
OpCounters snapshot(const Ctx& ctx) {
    if constexpr (requires { ctx.counters(); }) {
        return ctx.counters();
    } else {
        return {};
    }
}

template <std::totally_ordered Key, class Ctx>
Key load_at(std::span<Key> a, std::uint64_t pos, Ctx& ctx) {
    ctx.note_read(pos);
    return a[pos - 1];
}

template <std::totally_ordered Key, class Ctx>
void store_at(std::span<Key> a, std::uint64_t pos, const Key& value, Ctx& ctx) {
    ctx.note_write(pos);
    ctx.count_move();
    a[pos - 1] = value;
}

// Exchange two master positions; exchanging a slot with itself moves nothing.
template <std::totally_ordered Key, class Ctx>
void exchange(std::span<Key> a, std::uint64_t p, std::uint64_t q, Ctx& ctx) {
    if (p == q) return;
    const Key x = load_at(a, p, ctx);
    const Key y = load_at(a, q, ctx);
    store_at(a, p, y, ctx);
    store_at(a, q, x, ctx);
}

// Counted predicate: key at p strictly exceeds key at q.
template <std::totally_ordered Key, class Ctx>
bool greater_at(std::span<Key> a, std::uint64_t p, std::uint64_t q, Ctx& ctx) {
    ctx.count_comparison();
    const Key x = load_at(a, p, ctx);
    const Key y = load_at(a, q, ctx);
    return y < x;
}

}  // namespace detail

// The two opposing subheaps tiling a region: a leftward max heap over the
// small-side slots and a rightward min heap over the rest, with their roots
// physically adjacent at the boundary.
template <std::totally_ordered Key>
HeapView<Key> small_heap_view(std::span<Key> a, const PartitionRegion& r) {
    return {a.data(), r.offset + r.small_size() - 1, r.small_size(),
            HeapKind::max_heap, Growth::leftward};
}

template <std::totally_ordered Key>
HeapView<Key> large_heap_view(std::span<Key> a, const PartitionRegion& r) {
    return {a.data(), r.offset + r.small_size(), r.large_size(),
            HeapKind::min_heap, Growth::rightward};
}

// Plain heapsort: one max heap over the whole array, then repeatedly exchange
// the root with the last live slot and restore the root.
template <std::totally_ordered Key, class Ctx>
SortOutcome heapsort(std::span<Key> a, Ctx& ctx) {
    const std::uint64_t n = a.size();
    if (n >= 2) {
        HeapView<Key> heap{a.data(), 1, n, HeapKind::max_heap, Growth::rightward};
        build_heap(heap, ctx);
        for (std::uint64_t live = n; live >= 2; --live) {
            detail::exchange(a, 1, live, ctx);
            heap.size = live - 1;
            sift_down(heap, 1, ctx);
        }
    }
    return {detail::snapshot(ctx), n};
}

// Heapsort variant that retires two keys per round: once the maximum leaves,
// the superior child of the root is already the next maximum and goes straight
// to its final slot, so each pair of keys costs one restore of the root plus
// at most one short repair where that child stood.
template <std::totally_ordered Key, class Ctx>
SortOutcome heapsort_modified(std::span<Key> a, Ctx& ctx) {
    const std::uint64_t n = a.size();
    if (n < 2) return {detail::snapshot(ctx), n};
    HeapView<Key> heap{a.data(), 1, n, HeapKind::max_heap, Growth::rightward};
    build_heap(heap, ctx);
    std::uint64_t live = n;
    while (live > 3) {
        detail::exchange(a, 1, live, ctx);
        const std::uint64_t i = detail::greater_at(a, 2, 3, ctx) ? 2 : 3;
        detail::exchange(a, i, live - 1, ctx);  // self-exchange when live == 4, i == 3
        live -= 2;
        heap.size = live;
        if (i <= live) sift_down(heap, i, ctx);
        sift_down(heap, 1, ctx);
    }
    if (live == 3) {
        // Root is the maximum of the last three; place it last while holding
        // the displaced key, then order the remaining pair.
        const Key third = detail::load_at(a, 3, ctx);
        const Key root = detail::load_at(a, 1, ctx);
        detail::store_at(a, 3, root, ctx);
        ctx.count_comparison();
        const Key second = detail::load_at(a, 2, ctx);
        if (third < second) {
            detail::store_at(a, 1, third, ctx);
        } else {
            detail::store_at(a, 2, third, ctx);
            detail::store_at(a, 1, second, ctx);
        }
    } else {
        detail::exchange(a, 1, 2, ctx);
    }
    return {detail::snapshot(ctx), n};
}

// One simultaneous exchange between opposing subheap nodes kS and kL. A
// recursive pre-pass lets superior grandchildren cross first while both heaps
// still admit them (superior pair, then their siblings), after which the two
// nodes swap unconditionally and each heap is restored. Every activation
// counts one tree_swap and one recursion frame.
template <std::totally_ordered Key, class Ctx>
void tree_swap(HeapView<Key>& small, HeapView<Key>& large, std::uint64_t kS,
               std::uint64_t kL, Ctx& ctx) {
    require(kS >= 1 && kS <= small.size && kL >= 1 && kL <= large.size,
            "tree_swap: node outside its view");
    FrameGuard<Ctx> frame(ctx);
    ctx.count_tree_swap();
    std::uint64_t jS = 2 * kS;
    std::uint64_t jL = 2 * kL;
    if (jS <= small.size && jL <= large.size) {
        if (jS + 1 <= small.size) {
            const Key right = small.load(jS + 1, ctx);
            const Key left = small.load(jS, ctx);
            if (small.compare(right, left, ctx)) ++jS;
        }
        if (jL + 1 <= large.size) {
            const Key right = large.load(jL + 1, ctx);
            const Key left = large.load(jL, ctx);
            if (large.compare(right, left, ctx)) ++jL;
        }
        ctx.count_comparison();
        const Key s = small.load(jS, ctx);
        const Key l = large.load(jL, ctx);
        if (l < s) {
            tree_swap(small, large, jS, jL, ctx);
            const std::uint64_t sibS = jS ^ 1;
            const std::uint64_t sibL = jL ^ 1;
            if (sibS <= small.size && sibL <= large.size) {
                ctx.count_comparison();
                const Key ss = small.load(sibS, ctx);
                const Key sl = large.load(sibL, ctx);
                if (sl < ss) tree_swap(small, large, sibS, sibL, ctx);
            }
        }
    }
    const Key x = small.load(kS, ctx);
    const Key y = large.load(kL, ctx);
    small.store(kS, y, ctx);
    large.store(kL, x, ctx);
    sift_down(small, kS, ctx);
    sift_down(large, kL, ctx);
}

// Drain root inversions: while the small-side root exceeds the large-side
// root, run one tree_swap. Each top-level swap retires at least one small-side
// key from contention, so the loop runs at most small.size times.
template <std::totally_ordered Key, class Ctx>
std::uint64_t exchange_phase(HeapView<Key>& small, HeapView<Key>& large, Ctx& ctx) {
    if (small.size == 0 || large.size == 0) return 0;
    std::uint64_t swaps = 0;
    for (;;) {
        ctx.count_comparison();
        const Key s = small.load(1, ctx);
        const Key l = large.load(1, ctx);
        if (!(l < s)) break;
        tree_swap(small, large, 1, 1, ctx);
        ++swaps;
        require(swaps <= small.size,
                "exchange_phase: swap count exceeded the small-heap size");
    }
    return swaps;
}

namespace detail {

// After a partition pass the small root (largest of the small side) and the
// large root (smallest of the large side) are final. Their children are the
// next two candidates on each side; ordering each pair finalises two more
// slots per side of the boundary.
template <std::totally_ordered Key, class Ctx>
void set_asides(std::span<Key> a, const PartitionRegion& r, Ctx& ctx) {
    const std::uint64_t nS = r.small_size();
    if (nS >= 3) {
        const std::uint64_t p2 = r.offset + nS - 2;
        const std::uint64_t p3 = r.offset + nS - 3;
        ctx.count_comparison();
        const Key v2 = load_at(a, p2, ctx);
        const Key v3 = load_at(a, p3, ctx);
        if (v2 < v3) exchange(a, p2, p3, ctx);
    }
    if (r.large_size() >= 3) {
        const std::uint64_t q2 = r.offset + nS + 1;
        const std::uint64_t q3 = r.offset + nS + 2;
        ctx.count_comparison();
        const Key v2 = load_at(a, q2, ctx);
        const Key v3 = load_at(a, q3, ctx);
        if (v3 < v2) exchange(a, q2, q3, ctx);
    }
}

}  // namespace detail

// One partition pass over a region: build the opposing subheaps, drain root
// inversions, and (for the sort) set aside the two boundary keys per side.
// Afterwards every small-side key is <= every large-side key.
template <std::totally_ordered Key, class Ctx>
void partition_once(std::span<Key> a, const PartitionRegion& r, Ctx& ctx,
                    bool set_asides = true) {
    require(r.n >= 2, "partition_once: region needs at least 2 keys");
    require(r.offset >= 1 && r.offset + r.n - 1 <= a.size(),
            "partition_once: region outside the array");
    auto small = small_heap_view(a, r);
    auto large = large_heap_view(a, r);
    build_heap(small, ctx);
    build_heap(large, ctx);
    exchange_phase(small, large, ctx);
    if (set_asides) detail::set_asides(a, r, ctx);
}

// Recursive partitioning: each pass finalises four keys around the boundary,
// then recurses into what is left of both sides. Region lengths at least
// halve per level, which keeps the counted depth within 2*floor(lg n) + 4.
template <std::totally_ordered Key, class Ctx>
void partition_heap(std::span<Key> a, const PartitionRegion& r, Ctx& ctx) {
    require(r.n >= 2, "partition_heap: region needs at least 2 keys");
    FrameGuard<Ctx> frame(ctx);
    partition_once(a, r, ctx);
    const auto [nS, nL] = split_sizes(r.n);
    if (nS > 3) partition_heap(a, {r.offset, nS - 2}, ctx);
    if (nL > 3) partition_heap(a, {r.offset + nS + 2, nL - 2}, ctx);
}

// Selection: one partition pass with no set-asides. Afterwards the first
// small_size() slots of the region hold its small_size() smallest keys;
// returns that count.
template <std::totally_ordered Key, class Ctx>
std::uint64_t dualheap_partition(std::span<Key> a, const PartitionRegion& r, Ctx& ctx) {
    partition_once(a, r, ctx, /*set_asides=*/false);
    return r.small_size();
}

// Dualheap sort: one min heap over the whole array pins the minimum, its
// ordered children pin the second-smallest, and the rest of the array is
// partitioned recursively.
template <std::totally_ordered Key, class Ctx>
SortOutcome dualheap_sort(std::span<Key> a, Ctx& ctx) {
    const std::uint64_t n = a.size();
    if (n == 2) {
        if (detail::greater_at(a, 1, 2, ctx)) detail::exchange(a, 1, 2, ctx);
    } else if (n >= 3) {
        HeapView<Key> whole{a.data(), 1, n, HeapKind::min_heap, Growth::rightward};
        build_heap(whole, ctx);
        if (detail::greater_at(a, 2, 3, ctx)) detail::exchange(a, 2, 3, ctx);
        if (n > 3) partition_heap(a, {3, n - 2}, ctx);
    }
    return {detail::snapshot(ctx), n};
}

}  // namespace dhsort
