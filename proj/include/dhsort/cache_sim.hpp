#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dhsort/counters.hpp"

namespace dhsort {

// Geometry of the simulated cache. Total capacity is
// line_bytes * num_sets * ways; the defaults model a 32 KiB, 8-way L1 over
// 8-byte keys.
struct CacheConfig {
    std::uint64_t line_bytes = 64;
    std::uint64_t num_sets = 64;
    std::uint64_t ways = 8;
    std::uint64_t element_bytes = 8;

    std::uint64_t capacity_bytes() const { return line_bytes * num_sets * ways; }
};

struct CacheStats {
    std::uint64_t accesses = 0;
    std::uint64_t misses = 0;

    double miss_rate() const {
        return accesses == 0 ? 0.0
                             : static_cast<double>(misses) / static_cast<double>(accesses);
    }
};

// Set-associative cache with true LRU replacement, fed 1-based element
// indexes. Reads and writes are treated alike: touch the line, allocate on a
// miss. Feeding it as a TraceSink keeps memory flat no matter how long the
// run is.
class CacheSim final : public TraceSink {
public:
    // Throws std::invalid_argument unless line_bytes and num_sets are powers
    // of two and ways and element_bytes are at least 1.
    explicit CacheSim(const CacheConfig& cfg);

    void access(std::uint64_t index);
    void on_event(const TraceEvent& e) override { access(e.index); }

    const CacheStats& stats() const { return stats_; }
    const CacheConfig& config() const { return cfg_; }

private:
    CacheConfig cfg_;
    CacheStats stats_;
    std::vector<std::uint64_t> lines_;  // num_sets x ways line tags, MRU first
};

// Replay a recorded trace through a fresh simulator.
CacheStats cache_simulate(std::span<const TraceEvent> trace, const CacheConfig& cfg);

}  // namespace dhsort
