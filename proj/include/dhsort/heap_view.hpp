#pragma once

#include <concepts>
#include <cstdint>

#include "dhsort/contract.hpp"
#include "dhsort/counters.hpp"

namespace dhsort {

enum class HeapKind : std::uint8_t { max_heap, min_heap };
enum class Growth : std::uint8_t { leftward, rightward };

// An oriented binary heap laid over a slice of the master array. Nodes are
// numbered 1..size with children (2k, 2k+1); node k lives at master position
// anchor+k-1 when the heap grows rightward, anchor-k+1 when it grows leftward.
// Positions are 1-based; position p is stored at base[p-1].
//
// "Superior" is the key that belongs closer to the root: the larger key in a
// max heap, the smaller in a min heap. Two opposing views (a leftward max heap
// and a rightward min heap with adjacent anchors) tile a region so that both
// roots sit at the boundary between them.
template <std::totally_ordered Key>
struct HeapView {
    Key* base = nullptr;
    std::uint64_t anchor = 1;
    std::uint64_t size = 0;
    HeapKind kind = HeapKind::max_heap;
    Growth growth = Growth::rightward;

    std::uint64_t position(std::uint64_t node) const {
        return growth == Growth::rightward ? anchor + node - 1 : anchor - node + 1;
    }

    // Raw order predicate, not counted; use compare() inside algorithms.
    bool superior(const Key& a, const Key& b) const {
        return kind == HeapKind::max_heap ? b < a : a < b;
    }

    template <class Ctx>
    bool compare(const Key& a, const Key& b, Ctx& ctx) const {
        ctx.count_comparison();
        return superior(a, b);
    }

    template <class Ctx>
    Key load(std::uint64_t node, Ctx& ctx) const {
        const std::uint64_t pos = position(node);
        ctx.note_read(pos);
        return base[pos - 1];
    }

    template <class Ctx>
    void store(std::uint64_t node, const Key& value, Ctx& ctx) {
        const std::uint64_t pos = position(node);
        ctx.note_write(pos);
        ctx.count_move();
        base[pos - 1] = value;
    }

    // Uncounted peek for checks and oracles.
    const Key& peek(std::uint64_t node) const { return base[position(node) - 1]; }
};

// Restores the heap condition at `node`, assuming both of its subtrees already
// satisfy it. The displaced key is held while the hole chases strictly
// superior children; equal keys stop the descent, and a sibling is consulted
// only when it exists (no sentinel slots are ever read). Writing the held key
// back into its original slot is free, so a run over an intact heap costs
// comparisons but zero moves.
template <std::totally_ordered Key, class Ctx>
void sift_down(HeapView<Key>& view, std::uint64_t node, Ctx& ctx) {
    require(node >= 1 && node <= view.size, "sift_down: node outside the view");
    if (2 * node > view.size) return;  // leaf: nothing to restore

    const Key held = view.load(node, ctx);
    std::uint64_t hole = node;
    for (;;) {
        std::uint64_t child = 2 * hole;
        if (child > view.size) break;
        if (child + 1 <= view.size) {
            const Key right = view.load(child + 1, ctx);
            const Key left = view.load(child, ctx);
            // strictly superior sibling wins; ties keep the lower index
            if (view.compare(right, left, ctx)) ++child;
        }
        const Key winner = view.load(child, ctx);
        if (!view.compare(winner, held, ctx)) break;
        view.store(hole, winner, ctx);
        hole = child;
    }
    if (hole != node) view.store(hole, held, ctx);
}

// Bottom-up heap construction: sift every internal node, deepest first.
template <std::totally_ordered Key, class Ctx>
void build_heap(HeapView<Key>& view, Ctx& ctx) {
    for (std::uint64_t k = view.size / 2; k >= 1; --k) sift_down(view, k, ctx);
}

// Uncounted structural check: no child is superior to its parent.
template <std::totally_ordered Key>
bool heap_check(const HeapView<Key>& view) {
    for (std::uint64_t k = 2; k <= view.size; ++k) {
        if (view.superior(view.peek(k), view.peek(k / 2))) return false;
    }
    return true;
}

}  // namespace dhsort
