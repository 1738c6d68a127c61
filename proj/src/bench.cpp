#include "dhsort/bench.hpp"

#include <charconv>
#include <chrono>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "dhsort/contract.hpp"
#include "dhsort/sorters.hpp"
#include "dhsort/verify.hpp"

namespace dhsort {
namespace {

using Keys = std::vector<std::uint64_t>;

void run_algorithm(Algorithm algo, std::span<std::uint64_t> a, CountingContext& ctx,
                   const ParallelPolicy& policy) {
    switch (algo) {
        case Algorithm::heapsort: heapsort(a, ctx); break;
        case Algorithm::heapsort_modified: heapsort_modified(a, ctx); break;
        case Algorithm::dualheap: dualheap_sort(a, ctx); break;
        case Algorithm::dualheap_parallel: dualheap_sort_parallel(a, ctx, policy); break;
    }
}

void run_algorithm(Algorithm algo, std::span<std::uint64_t> a, NullContext& ctx,
                   const ParallelPolicy& policy) {
    switch (algo) {
        case Algorithm::heapsort: heapsort(a, ctx); break;
        case Algorithm::heapsort_modified: heapsort_modified(a, ctx); break;
        case Algorithm::dualheap: dualheap_sort(a, ctx); break;
        case Algorithm::dualheap_parallel: dualheap_sort_parallel(a, ctx, policy); break;
    }
}

std::uint64_t parse_u64_field(std::string_view field, std::uint64_t line_no) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw std::runtime_error("csv line " + std::to_string(line_no) +
                                 ": invalid number '" + std::string(field) + "'");
    return value;
}

}  // namespace

std::string_view algorithm_name(Algorithm algo) {
    switch (algo) {
        case Algorithm::heapsort: return "heapsort";
        case Algorithm::heapsort_modified: return "heapsort_modified";
        case Algorithm::dualheap: return "dualheap";
        case Algorithm::dualheap_parallel: return "dualheap_parallel";
    }
    contract_fail("algorithm_name: unknown algorithm");
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
    if (text == "heapsort") return Algorithm::heapsort;
    if (text == "heapsort_modified") return Algorithm::heapsort_modified;
    if (text == "dualheap") return Algorithm::dualheap;
    if (text == "dualheap_parallel") return Algorithm::dualheap_parallel;
    return std::nullopt;
}

std::vector<BenchmarkRecord> run_bench(const BenchPlan& plan) {
    require(plan.reps >= 1, "run_bench: reps must be at least 1");
    require(!plan.algorithms.empty(), "run_bench: no algorithms selected");
    require(!plan.sizes.empty(), "run_bench: no sizes selected");
    require(!plan.distributions.empty(), "run_bench: no distributions selected");

    std::vector<BenchmarkRecord> records;
    records.reserve(plan.distributions.size() * plan.sizes.size() * plan.reps *
                    plan.algorithms.size());
    for (const InputSpec& dist : plan.distributions) {
        for (const std::uint64_t n : plan.sizes) {
            for (std::uint64_t rep = 0; rep < plan.reps; ++rep) {
                InputSpec spec = dist;
                spec.n = n;
                spec.seed = plan.seed0 + rep;
                const Keys input = gen_input(spec);
                for (const Algorithm algo : plan.algorithms) {
                    BenchmarkRecord rec;
                    rec.algorithm = algo;
                    rec.n = n;
                    rec.seed = spec.seed;
                    rec.distribution = format_distribution(spec);

                    Keys counted = input;
                    CountingContext ctx;
                    run_algorithm(algo, counted, ctx, plan.policy);
                    if (!verify_sorted_permutation(input, counted))
                        throw std::runtime_error(std::string("benchmark produced an unsorted result: ") +
                                                 std::string(algorithm_name(algo)) + " n=" +
                                                 std::to_string(n) + " seed=" +
                                                 std::to_string(spec.seed));
                    rec.comparisons = ctx.counters().comparisons;
                    rec.moves = ctx.counters().moves;
                    rec.tree_swaps = ctx.counters().tree_swaps;
                    rec.max_depth = ctx.counters().max_depth;

                    Keys timed = input;
                    NullContext null_ctx;
                    const auto t0 = std::chrono::steady_clock::now();
                    run_algorithm(algo, timed, null_ctx, plan.policy);
                    const auto t1 = std::chrono::steady_clock::now();
                    rec.wall_ns = static_cast<std::uint64_t>(
                        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());

                    records.push_back(std::move(rec));
                }
            }
        }
    }
    return records;
}

void write_csv(std::ostream& os, std::span<const BenchmarkRecord> records) {
    os << kCsvHeader << '\n';
    for (const BenchmarkRecord& r : records) {
        os << algorithm_name(r.algorithm) << ',' << r.n << ',' << r.seed << ','
           << r.distribution << ',' << r.comparisons << ',' << r.moves << ','
           << r.tree_swaps << ',' << r.max_depth << ',' << r.wall_ns << '\n';
    }
}

std::vector<BenchmarkRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader)
        throw std::runtime_error("csv line 1: expected header '" + std::string(kCsvHeader) + "'");
    std::vector<BenchmarkRecord> records;
    std::uint64_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        std::vector<std::string_view> fields;
        std::string_view rest = line;
        for (;;) {
            const auto comma = rest.find(',');
            if (comma == std::string_view::npos) {
                fields.push_back(rest);
                break;
            }
            fields.push_back(rest.substr(0, comma));
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() != 9)
            throw std::runtime_error("csv line " + std::to_string(line_no) +
                                     ": expected 9 fields, got " + std::to_string(fields.size()));
        const auto algo = parse_algorithm(fields[0]);
        if (!algo)
            throw std::runtime_error("csv line " + std::to_string(line_no) +
                                     ": unknown algorithm '" + std::string(fields[0]) + "'");
        BenchmarkRecord rec;
        rec.algorithm = *algo;
        rec.n = parse_u64_field(fields[1], line_no);
        rec.seed = parse_u64_field(fields[2], line_no);
        rec.distribution = std::string(fields[3]);
        rec.comparisons = parse_u64_field(fields[4], line_no);
        rec.moves = parse_u64_field(fields[5], line_no);
        rec.tree_swaps = parse_u64_field(fields[6], line_no);
        rec.max_depth = parse_u64_field(fields[7], line_no);
        rec.wall_ns = parse_u64_field(fields[8], line_no);
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace dhsort
