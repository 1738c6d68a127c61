#pragma once

#include <atomic>
#include <concepts>
#include <cstdint>
#include <future>
#include <span>

#include "dhsort/contract.hpp"
#include "dhsort/counters.hpp"
#include "dhsort/sorters.hpp"

namespace dhsort {

struct ParallelPolicy {
    unsigned max_concurrency = 1;        // calling thread included
    std::uint64_t sequential_cutoff = 4096;  // region length below which recursion runs inline
};

// Counting semaphore over the extra worker slots: the calling thread is one
// unit of concurrency, so max_concurrency-1 forks may run asynchronously at
// any time. Forks beyond the budget simply run inline.
class TaskBudget {
public:
    explicit TaskBudget(unsigned max_concurrency)
        : tokens_(max_concurrency >= 1 ? static_cast<int>(max_concurrency) - 1 : 0) {}

    bool try_acquire() {
        int have = tokens_.load(std::memory_order_relaxed);
        while (have > 0) {
            if (tokens_.compare_exchange_weak(have, have - 1, std::memory_order_acquire))
                return true;
        }
        return false;
    }
    void release() { tokens_.fetch_add(1, std::memory_order_release); }

private:
    std::atomic<int> tokens_;
};

namespace detail {

// Run f (on a worker thread if the budget allows) alongside g, then join.
// Whether f actually forked never changes what either side computes.
template <class F, class G>
void fork_join(TaskBudget& budget, F&& f, G&& g) {
    if (budget.try_acquire()) {
        auto handle = std::async(std::launch::async, [&] {
            struct Release {
                TaskBudget& budget;
                ~Release() { budget.release(); }
            } release{budget};
            f();
        });
        g();
        handle.get();
    } else {
        f();
        g();
    }
}

// Mirrors partition_heap, forking the two independent subheap builds and the
// two recursive calls. Every fork point hands the task a child context whether
// or not a worker picks it up, so the merged counters are identical under
// every schedule; the exchange phase touches both subheaps and stays
// sequential on the parent context.
template <std::totally_ordered Key, class Ctx>
void partition_heap_forked(std::span<Key> a, const PartitionRegion& r, Ctx& ctx,
                           const ParallelPolicy& policy, TaskBudget& budget) {
    if (r.n < policy.sequential_cutoff) {
        partition_heap(a, r, ctx);
        return;
    }
    FrameGuard<Ctx> frame(ctx);
    const auto [nS, nL] = split_sizes(r.n);
    {
        auto small = small_heap_view(a, r);
        auto large = large_heap_view(a, r);
        Ctx for_small = ctx.fork(r.offset, r.offset + nS - 1);
        Ctx for_large = ctx.fork(r.offset + nS, r.offset + r.n - 1);
        fork_join(
            budget, [&] { build_heap(small, for_small); },
            [&] { build_heap(large, for_large); });
        ctx.join(for_small);
        ctx.join(for_large);
        exchange_phase(small, large, ctx);
    }
    set_asides(a, r, ctx);
    const bool recurse_small = nS > 3;
    const bool recurse_large = nL > 3;
    if (recurse_small && recurse_large) {
        const PartitionRegion rs{r.offset, nS - 2};
        const PartitionRegion rl{r.offset + nS + 2, nL - 2};
        Ctx for_left = ctx.fork(rs.offset, rs.offset + rs.n - 1);
        Ctx for_right = ctx.fork(rl.offset, rl.offset + rl.n - 1);
        fork_join(
            budget, [&] { partition_heap_forked(a, rs, for_left, policy, budget); },
            [&] { partition_heap_forked(a, rl, for_right, policy, budget); });
        ctx.join(for_left);
        ctx.join(for_right);
    } else if (recurse_small) {
        partition_heap_forked(a, PartitionRegion{r.offset, nS - 2}, ctx, policy, budget);
    } else if (recurse_large) {
        partition_heap_forked(a, PartitionRegion{r.offset + nS + 2, nL - 2}, ctx, policy,
                              budget);
    }
}

}  // namespace detail

// Fork-join dualheap sort. The sorted output and the merged counters are
// bit-identical to dualheap_sort under every policy and schedule; only wall
// time varies.
template <std::totally_ordered Key, class Ctx>
SortOutcome dualheap_sort_parallel(std::span<Key> a, Ctx& ctx, const ParallelPolicy& policy) {
    require(policy.max_concurrency >= 1,
            "dualheap_sort_parallel: max_concurrency must be at least 1");
    require(policy.sequential_cutoff >= 4,
            "dualheap_sort_parallel: sequential_cutoff must be at least 4");
    const std::uint64_t n = a.size();
    if (n <= 3 || policy.max_concurrency == 1 || n < policy.sequential_cutoff) {
        return dualheap_sort(a, ctx);
    }
    HeapView<Key> whole{a.data(), 1, n, HeapKind::min_heap, Growth::rightward};
    build_heap(whole, ctx);
    if (detail::greater_at(a, 2, 3, ctx)) detail::exchange(a, 2, 3, ctx);
    TaskBudget budget(policy.max_concurrency);
    detail::partition_heap_forked(a, PartitionRegion{3, n - 2}, ctx, policy, budget);
    return {detail::snapshot(ctx), n};
}

}  // namespace dhsort
