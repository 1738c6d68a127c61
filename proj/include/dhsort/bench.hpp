#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dhsort/counters.hpp"
#include "dhsort/input_gen.hpp"
#include "dhsort/parallel.hpp"

namespace dhsort {

enum class Algorithm : std::uint8_t { heapsort, heapsort_modified, dualheap, dualheap_parallel };

std::string_view algorithm_name(Algorithm algo);
std::optional<Algorithm> parse_algorithm(std::string_view text);

// One measured run. Counter columns depend only on (algorithm, n, seed,
// distribution); wall_ns comes from a separate timing pass with the null
// context and is never deterministic.
struct BenchmarkRecord {
    Algorithm algorithm = Algorithm::heapsort;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::string distribution;
    std::uint64_t comparisons = 0;
    std::uint64_t moves = 0;
    std::uint64_t tree_swaps = 0;
    std::uint64_t max_depth = 0;
    std::uint64_t wall_ns = 0;

    bool operator==(const BenchmarkRecord&) const = default;
};

struct BenchPlan {
    std::vector<Algorithm> algorithms;
    std::vector<InputSpec> distributions;  // only dist/distinct are used
    std::vector<std::uint64_t> sizes;
    std::uint64_t reps = 30;
    std::uint64_t seed0 = 1;  // rep r uses seed seed0 + r
    ParallelPolicy policy;    // applied to dualheap_parallel rows
};

// Runs every (distribution, size, rep, algorithm) cell of the plan: one
// counted pass for the counters, then one untimed-context pass for wall_ns,
// each on a fresh copy of the same generated input. Every output is checked
// against the input; a sorting failure throws std::runtime_error.
std::vector<BenchmarkRecord> run_bench(const BenchPlan& plan);

inline constexpr std::string_view kCsvHeader =
    "algorithm,n,seed,distribution,comparisons,moves,tree_swaps,max_depth,wall_ns";

void write_csv(std::ostream& os, std::span<const BenchmarkRecord> records);

// Parses write_csv output; throws std::runtime_error naming the offending
// line on a schema or value mismatch.
std::vector<BenchmarkRecord> read_csv(std::istream& is);

}  // namespace dhsort
