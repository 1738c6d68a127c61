#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dhsort {

// splitmix64: tiny, seedable, and well mixed; fixed here so every build and
// every run generates bit-identical benchmark inputs.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

enum class Distribution : std::uint8_t { uniform, sorted, reversed, constant, few_distinct };

struct InputSpec {
    Distribution dist = Distribution::uniform;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::uint64_t distinct = 16;  // value pool size, few_distinct only
};

// Deterministic input generation: equal specs always produce equal arrays.
// uniform draws n values from splitmix64(seed); sorted/reversed are
// 0..n-1 ascending/descending; constant repeats the seed's first draw;
// few_distinct reduces uniform draws modulo `distinct`.
std::vector<std::uint64_t> gen_input(const InputSpec& spec);

// Canonical text for the distribution of a spec, e.g. "uniform" or
// "few_distinct:16".
std::string format_distribution(const InputSpec& spec);

// Parses the format_distribution names (few_distinct takes an optional ":K");
// returns a spec with n and seed left at their defaults, or nullopt.
std::optional<InputSpec> parse_distribution(std::string_view text);

}  // namespace dhsort
