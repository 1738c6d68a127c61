#include "dhsort/input_gen.hpp"

#include <charconv>
#include <numeric>

#include "dhsort/contract.hpp"

namespace dhsort {

std::vector<std::uint64_t> gen_input(const InputSpec& spec) {
    std::vector<std::uint64_t> out(spec.n);
    SplitMix64 rng(spec.seed);
    switch (spec.dist) {
        case Distribution::uniform:
            for (auto& v : out) v = rng.next();
            break;
        case Distribution::sorted:
            std::iota(out.begin(), out.end(), std::uint64_t{0});
            break;
        case Distribution::reversed:
            for (std::uint64_t i = 0; i < spec.n; ++i) out[i] = spec.n - 1 - i;
            break;
        case Distribution::constant: {
            const std::uint64_t c = rng.next();
            for (auto& v : out) v = c;
            break;
        }
        case Distribution::few_distinct:
            require(spec.distinct >= 1, "gen_input: few_distinct needs a nonempty value pool");
            for (auto& v : out) v = rng.next() % spec.distinct;
            break;
    }
    return out;
}

std::string format_distribution(const InputSpec& spec) {
    switch (spec.dist) {
        case Distribution::uniform: return "uniform";
        case Distribution::sorted: return "sorted";
        case Distribution::reversed: return "reversed";
        case Distribution::constant: return "constant";
        case Distribution::few_distinct:
            return "few_distinct:" + std::to_string(spec.distinct);
    }
    contract_fail("format_distribution: unknown distribution");
}

std::optional<InputSpec> parse_distribution(std::string_view text) {
    InputSpec spec;
    if (text == "uniform") {
        spec.dist = Distribution::uniform;
    } else if (text == "sorted") {
        spec.dist = Distribution::sorted;
    } else if (text == "reversed") {
        spec.dist = Distribution::reversed;
    } else if (text == "constant") {
        spec.dist = Distribution::constant;
    } else if (text == "few_distinct" || text.starts_with("few_distinct:")) {
        spec.dist = Distribution::few_distinct;
        if (text.size() > 12 && text[12] == ':') {
            const char* first = text.data() + 13;
            const char* last = text.data() + text.size();
            std::uint64_t k = 0;
            const auto [ptr, ec] = std::from_chars(first, last, k);
            if (ec != std::errc{} || ptr != last || k == 0) return std::nullopt;
            spec.distinct = k;
        }
    } else {
        return std::nullopt;
    }
    return spec;
}

}  // namespace dhsort
