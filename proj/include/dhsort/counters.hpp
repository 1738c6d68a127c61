#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dhsort/contract.hpp"

namespace dhsort {

// Abstract cost counters for one sorting run.
//   comparisons - key-vs-key order predicate evaluations
//   moves       - writes of a key into a slot it did not occupy just before
//                 (an exchange of two distinct slots costs 2, a write-back of a
//                 held key into its original slot costs 0)
//   tree_swaps  - tree_swap activations, including recursive ones
//   max_depth   - high-water mark of live counted recursion frames
struct OpCounters {
    std::uint64_t comparisons = 0;
    std::uint64_t moves = 0;
    std::uint64_t tree_swaps = 0;
    std::uint64_t max_depth = 0;

    bool operator==(const OpCounters&) const = default;
};

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b)
        throw std::overflow_error("OpCounters merge: counter sum exceeds 64 bits");
    return a + b;
}

// Merge counters from a joined task: sums for the work counters, max for depth.
inline OpCounters merge(const OpCounters& a, const OpCounters& b) {
    return OpCounters{
        checked_add(a.comparisons, b.comparisons),
        checked_add(a.moves, b.moves),
        checked_add(a.tree_swaps, b.tree_swaps),
        std::max(a.max_depth, b.max_depth),
    };
}

enum class AccessKind : std::uint8_t { read, write };

// One key access at a 1-based logical position of the master array.
struct TraceEvent {
    AccessKind kind = AccessKind::read;
    std::uint64_t index = 0;

    bool operator==(const TraceEvent&) const = default;
};

// Receives the access stream of a traced run. Implementations may aggregate
// (cache simulation) or record (tests); traces are only captured in
// single-threaded runs.
class TraceSink {
public:
    virtual ~TraceSink() = default;
    virtual void on_event(const TraceEvent& e) = 0;
};

class VectorTraceSink final : public TraceSink {
public:
    void on_event(const TraceEvent& e) override { events_.push_back(e); }
    const std::vector<TraceEvent>& events() const { return events_; }

private:
    std::vector<TraceEvent> events_;
};

// Instrumentation context threaded through every algorithm. Counting is
// unconditional; tracing only happens when a sink is attached, and never
// changes the counters.
class CountingContext {
public:
    CountingContext() = default;

    void count_comparison() { ++ops_.comparisons; }
    void count_move() { ++ops_.moves; }
    void count_tree_swap() { ++ops_.tree_swaps; }

    void note_read(std::uint64_t index) {
        if (sink_) sink_->on_event(TraceEvent{AccessKind::read, index});
    }
    void note_write(std::uint64_t index) {
        if (sink_) sink_->on_event(TraceEvent{AccessKind::write, index});
    }

    void enter_frame() {
        ++depth_;
        ops_.max_depth = std::max(ops_.max_depth, depth_);
    }
    void leave_frame() {
        require(depth_ > 0, "leave_frame without matching enter_frame");
        --depth_;
    }
    std::uint64_t depth() const { return depth_; }

    // Child context for a forked task covering master positions [lo, hi].
    // The window is unused here but lets checking contexts validate task
    // footprints; the child starts from the parent's current depth so merged
    // max_depth means the same thing as in a sequential run.
    CountingContext fork(std::uint64_t lo, std::uint64_t hi) const {
        (void)lo;
        (void)hi;
        CountingContext child;
        child.depth_ = depth_;
        return child;
    }
    void join(const CountingContext& child) { ops_ = merge(ops_, child.ops_); }

    const OpCounters& counters() const { return ops_; }
    void set_trace_sink(TraceSink* sink) { sink_ = sink; }

private:
    OpCounters ops_;
    std::uint64_t depth_ = 0;
    TraceSink* sink_ = nullptr;
};

// Zero-cost context for timing runs; every hook compiles away.
struct NullContext {
    void count_comparison() {}
    void count_move() {}
    void count_tree_swap() {}
    void note_read(std::uint64_t) {}
    void note_write(std::uint64_t) {}
    void enter_frame() {}
    void leave_frame() {}
    NullContext fork(std::uint64_t, std::uint64_t) const { return {}; }
    void join(const NullContext&) {}
};

// RAII depth bracket for the counted recursion frames.
template <class Ctx>
class FrameGuard {
public:
    explicit FrameGuard(Ctx& ctx) : ctx_(ctx) { ctx_.enter_frame(); }
    ~FrameGuard() { ctx_.leave_frame(); }
    FrameGuard(const FrameGuard&) = delete;
    FrameGuard& operator=(const FrameGuard&) = delete;

private:
    Ctx& ctx_;
};

}  // namespace dhsort
