#include "dhsort/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dhsort/bench.hpp"
#include "dhsort/cache_sim.hpp"
#include "dhsort/input_gen.hpp"
#include "dhsort/parallel.hpp"
#include "dhsort/sorters.hpp"
#include "dhsort/svg_plot.hpp"
#include "dhsort/trace_io.hpp"
#include "dhsort/verify.hpp"

namespace dhsort {
namespace {

using Keys = std::vector<std::uint64_t>;

// ---- key I/O ----------------------------------------------------------

Keys read_keys_text(std::istream& is, const std::string& name) {
    Keys keys;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && is.peek() == std::char_traits<char>::eof()) break;
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
        if (ec != std::errc{} || ptr != line.data() + line.size())
            throw std::runtime_error(name + " line " + std::to_string(line_no) +
                                     ": invalid key '" + line + "'");
        keys.push_back(value);
    }
    return keys;
}

Keys read_keys_binary(std::istream& is, const std::string& name) {
    std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (bytes.size() % 8 != 0)
        throw std::runtime_error(name + ": " + std::to_string(bytes.size()) +
                                 " bytes is not a whole number of 64-bit keys (offset " +
                                 std::to_string(bytes.size() - bytes.size() % 8) + ")");
    Keys keys(bytes.size() / 8);
    for (size_t i = 0; i < keys.size(); ++i) {
        std::uint64_t v = 0;
        for (int b = 7; b >= 0; --b)
            v = (v << 8) | static_cast<unsigned char>(bytes[i * 8 + static_cast<size_t>(b)]);
        keys[i] = v;
    }
    return keys;
}

void write_keys_text(std::ostream& os, const Keys& keys) {
    for (const std::uint64_t v : keys) os << v << '\n';
}

void write_keys_binary(std::ostream& os, const Keys& keys) {
    for (const std::uint64_t v : keys) {
        char bytes[8];
        for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((v >> (8 * b)) & 0xFF);
        os.write(bytes, 8);
    }
}

template <class Fn>
void with_input(const std::string& path, Fn&& fn) {
    if (path == "-") {
        fn(std::cin);
        return;
    }
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open input file '" + path + "'");
    fn(is);
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
    fn(os);
    os.flush();
    if (!os) throw std::runtime_error("failed writing output file '" + path + "'");
}

// ---- flag helpers ------------------------------------------------------

Algorithm algorithm_from_flag(const std::string& name) {
    const auto algo = parse_algorithm(name);
    if (!algo) throw std::invalid_argument("unknown algorithm '" + name + "'");
    return *algo;
}

InputSpec distribution_from_flag(const std::string& name) {
    const auto spec = parse_distribution(name);
    if (!spec) throw std::invalid_argument("unknown distribution '" + name + "'");
    return *spec;
}

void sort_keys(Algorithm algo, Keys& keys, const ParallelPolicy& policy) {
    NullContext ctx;
    switch (algo) {
        case Algorithm::heapsort: heapsort(std::span(keys), ctx); break;
        case Algorithm::heapsort_modified: heapsort_modified(std::span(keys), ctx); break;
        case Algorithm::dualheap: dualheap_sort(std::span(keys), ctx); break;
        case Algorithm::dualheap_parallel: dualheap_sort_parallel(std::span(keys), ctx, policy); break;
    }
}

// ---- sort --------------------------------------------------------------

struct SortOptions {
    std::string input = "-";
    std::string out = "-";
    std::string algo = "dualheap";
    std::string format = "text";
    unsigned parallel = 4;
    std::uint64_t cutoff = 4096;
};

int cmd_sort(const SortOptions& opt) {
    const Algorithm algo = algorithm_from_flag(opt.algo);
    const bool binary = opt.format == "binary";
    Keys keys;
    const std::string name = opt.input == "-" ? "stdin" : opt.input;
    with_input(opt.input, [&](std::istream& is) {
        keys = binary ? read_keys_binary(is, name) : read_keys_text(is, name);
    });
    sort_keys(algo, keys, ParallelPolicy{opt.parallel, opt.cutoff});
    with_output(opt.out, [&](std::ostream& os) {
        binary ? write_keys_binary(os, keys) : write_keys_text(os, keys);
    });
    return 0;
}

// ---- bench -------------------------------------------------------------

struct BenchOptions {
    std::vector<std::string> algos = {"heapsort", "heapsort_modified", "dualheap",
                                      "dualheap_parallel"};
    std::vector<std::string> dists = {"uniform"};
    std::vector<std::uint64_t> sizes = {256, 512, 1024, 2048, 4096, 8192, 16384, 32768};
    std::uint64_t reps = 30;
    std::uint64_t seed0 = 1;
    unsigned parallel = 4;
    std::uint64_t cutoff = 4096;
    std::string out = "-";
};

int cmd_bench(const BenchOptions& opt) {
    BenchPlan plan;
    for (const auto& name : opt.algos) plan.algorithms.push_back(algorithm_from_flag(name));
    for (const auto& name : opt.dists) plan.distributions.push_back(distribution_from_flag(name));
    plan.sizes = opt.sizes;
    plan.reps = opt.reps;
    plan.seed0 = opt.seed0;
    plan.policy = ParallelPolicy{opt.parallel, opt.cutoff};
    const auto records = run_bench(plan);
    with_output(opt.out, [&](std::ostream& os) { write_csv(os, records); });
    return 0;
}

// ---- plot --------------------------------------------------------------

struct PlotOptions {
    std::string input;
    std::string out = "-";
};

int cmd_plot(const PlotOptions& opt) {
    std::vector<BenchmarkRecord> records;
    with_input(opt.input, [&](std::istream& is) { records = read_csv(is); });
    const std::string svg = render_ops_scatter(records);
    with_output(opt.out, [&](std::ostream& os) { os << svg; });
    return 0;
}

// ---- verify ------------------------------------------------------------

struct VerifyOptions {
    std::uint64_t exhaustive_max = 8;
    std::uint64_t random = 1000;
    std::uint64_t max_n = 512;
    std::uint64_t seed = 1;
};

struct VerifyReport {
    std::uint64_t failures = 0;
    std::ostream& os;

    void fail(const std::string& what, const Keys& input) {
        ++failures;
        if (failures > 20) return;  // keep the report readable
        os << "FAIL " << what << " input=[";
        for (size_t i = 0; i < input.size(); ++i) os << (i ? "," : "") << input[i];
        os << "]\n";
    }
};

std::uint64_t depth_bound(std::uint64_t n) {
    std::uint64_t lg = 0;
    while ((std::uint64_t{2} << lg) <= n) ++lg;  // lg = floor(log2 n) for n >= 2
    return 2 * lg + 4;
}

void verify_one_sort(Algorithm algo, const Keys& input, const ParallelPolicy& policy,
                     VerifyReport& report) {
    Keys work = input;
    CountingContext ctx;
    switch (algo) {
        case Algorithm::heapsort: heapsort(std::span(work), ctx); break;
        case Algorithm::heapsort_modified: heapsort_modified(std::span(work), ctx); break;
        case Algorithm::dualheap: dualheap_sort(std::span(work), ctx); break;
        case Algorithm::dualheap_parallel: dualheap_sort_parallel(std::span(work), ctx, policy); break;
    }
    const std::string tag(algorithm_name(algo));
    if (!verify_sorted_permutation(input, work)) report.fail(tag + ": not a sorted permutation", input);
    if (input.size() >= 2 && ctx.counters().max_depth > depth_bound(input.size()))
        report.fail(tag + ": recursion depth above bound", input);
}

void verify_partition_case(const Keys& input, VerifyReport& report) {
    if (input.size() < 2) return;
    // Selection pass against the order-statistic oracle.
    {
        Keys work = input;
        CountingContext ctx;
        const std::uint64_t small =
            dualheap_partition(std::span(work), PartitionRegion{1, work.size()}, ctx);
        if (!partition_oracle(input, work, small)) report.fail("dualheap_partition oracle", input);
    }
    // Full pass including set-asides: the four boundary slots must land their
    // exact order statistics.
    if (input.size() >= 4) {
        Keys work = input;
        CountingContext ctx;
        partition_once(std::span(work), PartitionRegion{1, work.size()}, ctx);
        const std::uint64_t small = split_sizes(work.size()).first;
        const std::uint64_t ranks_arr[] = {small - 1, small, small + 1, small + 2};
        const auto expect = reference_order_statistics(input, ranks_arr);
        for (int i = 0; i < 4; ++i) {
            if (work[ranks_arr[i] - 1] != expect[static_cast<size_t>(i)]) {
                report.fail("set-aside order statistics", input);
                break;
            }
        }
    }
}

int cmd_verify(const VerifyOptions& opt, std::ostream& os) {
    VerifyReport report{0, os};
    constexpr Algorithm kSequential[] = {Algorithm::heapsort, Algorithm::heapsort_modified,
                                         Algorithm::dualheap};
    const ParallelPolicy small_policy{2, 4};

    std::uint64_t exhaustive_cases = 0;
    for (std::uint64_t n = 0; n <= opt.exhaustive_max; ++n) {
        Keys perm(n);
        std::iota(perm.begin(), perm.end(), std::uint64_t{1});
        do {
            for (const Algorithm algo : kSequential) verify_one_sort(algo, perm, small_policy, report);
            verify_partition_case(perm, report);
            ++exhaustive_cases;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    os << "exhaustive permutations sizes 0.." << opt.exhaustive_max << ": " << exhaustive_cases
       << " cases\n";

    const InputSpec dist_cycle[] = {
        {Distribution::uniform, 0, 0, 16},      {Distribution::sorted, 0, 0, 16},
        {Distribution::reversed, 0, 0, 16},     {Distribution::constant, 0, 0, 16},
        {Distribution::few_distinct, 0, 0, 1},  {Distribution::few_distinct, 0, 0, 2},
        {Distribution::few_distinct, 0, 0, 16},
    };
    SplitMix64 rng(opt.seed);
    const ParallelPolicy random_policy{4, 64};
    for (std::uint64_t i = 0; i < opt.random; ++i) {
        InputSpec spec = dist_cycle[i % std::size(dist_cycle)];
        spec.n = rng.next() % (opt.max_n + 1);
        spec.seed = rng.next();
        const Keys input = gen_input(spec);

        for (const Algorithm algo : kSequential) verify_one_sort(algo, input, random_policy, report);
        verify_partition_case(input, report);

        // The parallel run must agree with the sequential one exactly.
        Keys seq = input;
        CountingContext seq_ctx;
        dualheap_sort(std::span(seq), seq_ctx);
        Keys par = input;
        CountingContext par_ctx;
        dualheap_sort_parallel(std::span(par), par_ctx, random_policy);
        if (seq != par || !(seq_ctx.counters() == par_ctx.counters()))
            report.fail("dualheap_parallel differs from sequential", input);

        if (spec.dist == Distribution::sorted) {
            if (seq_ctx.counters().moves != 0) report.fail("sorted input cost moves", input);
        }
    }
    os << "random cases: " << opt.random << " (sizes 0.." << opt.max_n
       << ", all distributions)\n";

    if (report.failures != 0) {
        os << "verification FAILED: " << report.failures << " case(s)\n";
        return 1;
    }
    os << "verification passed\n";
    return 0;
}

// ---- cachesim ----------------------------------------------------------

struct CachesimOptions {
    std::string algo = "dualheap";
    std::string dist = "uniform";
    std::uint64_t n = 65536;
    std::uint64_t seed = 1;
    CacheConfig cache;
    std::string dump_trace;
    std::string out = "-";
};

class TeeSink final : public TraceSink {
public:
    TeeSink(TraceSink& first, TraceSink* second) : first_(first), second_(second) {}
    void on_event(const TraceEvent& e) override {
        first_.on_event(e);
        if (second_) second_->on_event(e);
    }

private:
    TraceSink& first_;
    TraceSink* second_;
};

int cmd_cachesim(const CachesimOptions& opt) {
    const Algorithm algo = algorithm_from_flag(opt.algo);
    if (algo == Algorithm::dualheap_parallel)
        throw std::invalid_argument("cachesim records traces of single-threaded runs only; "
                                    "dualheap counters match dualheap_parallel by contract");
    InputSpec spec = distribution_from_flag(opt.dist);
    spec.n = opt.n;
    spec.seed = opt.seed;
    Keys keys = gen_input(spec);

    CacheSim cache(opt.cache);
    std::ofstream dump_file;
    std::unique_ptr<StreamTraceSink> dump_sink;
    if (!opt.dump_trace.empty()) {
        dump_file.open(opt.dump_trace, std::ios::binary);
        if (!dump_file)
            throw std::runtime_error("cannot open trace file '" + opt.dump_trace + "'");
        dump_sink = std::make_unique<StreamTraceSink>(dump_file);
    }
    TeeSink tee(cache, dump_sink.get());

    CountingContext ctx;
    ctx.set_trace_sink(&tee);
    Keys input = keys;
    switch (algo) {
        case Algorithm::heapsort: heapsort(std::span(keys), ctx); break;
        case Algorithm::heapsort_modified: heapsort_modified(std::span(keys), ctx); break;
        case Algorithm::dualheap: dualheap_sort(std::span(keys), ctx); break;
        case Algorithm::dualheap_parallel: break;  // rejected above
    }
    if (!verify_sorted_permutation(input, keys))
        throw std::runtime_error("cachesim run produced an unsorted result");

    with_output(opt.out, [&](std::ostream& os) {
        os << "algorithm: " << algorithm_name(algo) << '\n'
           << "n: " << spec.n << '\n'
           << "seed: " << spec.seed << '\n'
           << "distribution: " << format_distribution(spec) << '\n'
           << "line_bytes: " << opt.cache.line_bytes << '\n'
           << "num_sets: " << opt.cache.num_sets << '\n'
           << "ways: " << opt.cache.ways << '\n'
           << "element_bytes: " << opt.cache.element_bytes << '\n'
           << "capacity_bytes: " << opt.cache.capacity_bytes() << '\n'
           << "comparisons: " << ctx.counters().comparisons << '\n'
           << "moves: " << ctx.counters().moves << '\n'
           << "accesses: " << cache.stats().accesses << '\n'
           << "misses: " << cache.stats().misses << '\n';
        char rate[32];
        std::snprintf(rate, sizeof rate, "%.6f", cache.stats().miss_rate());
        os << "miss_rate: " << rate << '\n';
    });
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"instrumented sorting laboratory: heapsort, modified heapsort, dualheap"};
    app.require_subcommand(1);

    SortOptions sort_opt;
    auto* sort_cmd = app.add_subcommand("sort", "sort 64-bit keys from a file or stdin");
    sort_cmd->add_option("input", sort_opt.input, "input path, or - for stdin");
    sort_cmd->add_option("--algo", sort_opt.algo,
                         "heapsort | heapsort_modified | dualheap | dualheap_parallel");
    sort_cmd->add_option("--format", sort_opt.format, "text | binary")
        ->check(CLI::IsMember({"text", "binary"}));
    sort_cmd->add_option("--out", sort_opt.out, "output path, or - for stdout");
    sort_cmd->add_option("--parallel", sort_opt.parallel, "max concurrency for dualheap_parallel")
        ->check(CLI::PositiveNumber);
    sort_cmd->add_option("--cutoff", sort_opt.cutoff, "parallel sequential cutoff (>= 4)")
        ->check(CLI::Range(std::uint64_t{4}, std::uint64_t{1} << 62));

    BenchOptions bench_opt;
    auto* bench_cmd = app.add_subcommand("bench", "run the instrumented experiment grid");
    bench_cmd->add_option("--algos", bench_opt.algos, "comma-separated algorithm list")
        ->delimiter(',');
    bench_cmd->add_option("--sizes", bench_opt.sizes, "comma-separated input sizes")
        ->delimiter(',');
    bench_cmd->add_option("--dists", bench_opt.dists,
                          "uniform | sorted | reversed | constant | few_distinct[:K]")
        ->delimiter(',');
    bench_cmd->add_option("--reps", bench_opt.reps, "repetitions per cell")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed0", bench_opt.seed0, "seed of the first repetition");
    bench_cmd->add_option("--parallel", bench_opt.parallel, "max concurrency for dualheap_parallel")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--cutoff", bench_opt.cutoff, "parallel sequential cutoff (>= 4)")
        ->check(CLI::Range(std::uint64_t{4}, std::uint64_t{1} << 62));
    bench_cmd->add_option("--out", bench_opt.out, "CSV output path, or - for stdout");

    PlotOptions plot_opt;
    auto* plot_cmd = app.add_subcommand("plot", "render a benchmark CSV as an SVG scatter");
    plot_cmd->add_option("input", plot_opt.input, "CSV path, or - for stdin")->required();
    plot_cmd->add_option("--out", plot_opt.out, "SVG output path, or - for stdout");

    VerifyOptions verify_opt;
    auto* verify_cmd = app.add_subcommand("verify", "run the correctness oracle suites");
    verify_cmd->add_option("--exhaustive-max", verify_opt.exhaustive_max,
                           "largest size checked over every permutation")
        ->check(CLI::Range(std::uint64_t{0}, std::uint64_t{10}));
    verify_cmd->add_option("--random", verify_opt.random, "number of random cases");
    verify_cmd->add_option("--max-n", verify_opt.max_n, "largest random case size")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", verify_opt.seed, "seed of the random suite");

    CachesimOptions cache_opt;
    auto* cache_cmd = app.add_subcommand("cachesim", "trace one run through the cache model");
    cache_cmd->add_option("--algo", cache_opt.algo, "heapsort | heapsort_modified | dualheap");
    cache_cmd->add_option("--dist", cache_opt.dist, "input distribution");
    cache_cmd->add_option("--n", cache_opt.n, "input size");
    cache_cmd->add_option("--seed", cache_opt.seed, "input seed");
    cache_cmd->add_option("--line", cache_opt.cache.line_bytes, "cache line bytes (power of two)");
    cache_cmd->add_option("--sets", cache_opt.cache.num_sets, "number of sets (power of two)");
    cache_cmd->add_option("--ways", cache_opt.cache.ways, "associativity");
    cache_cmd->add_option("--element-bytes", cache_opt.cache.element_bytes, "bytes per key");
    cache_cmd->add_option("--dump-trace", cache_opt.dump_trace,
                          "also write the access trace (R/W index lines) to this path");
    cache_cmd->add_option("--out", cache_opt.out, "stats report path, or - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sort_cmd->parsed()) return cmd_sort(sort_opt);
        if (bench_cmd->parsed()) return cmd_bench(bench_opt);
        if (plot_cmd->parsed()) return cmd_plot(plot_opt);
        if (verify_cmd->parsed()) return cmd_verify(verify_opt, std::cout);
        if (cache_cmd->parsed()) return cmd_cachesim(cache_opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace dhsort
