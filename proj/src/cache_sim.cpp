#include "dhsort/cache_sim.hpp"

#include <limits>
#include <stdexcept>

#include "dhsort/contract.hpp"

namespace dhsort {
namespace {

constexpr std::uint64_t kEmpty = std::numeric_limits<std::uint64_t>::max();

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

CacheSim::CacheSim(const CacheConfig& cfg) : cfg_(cfg) {
    if (!is_power_of_two(cfg.line_bytes))
        throw std::invalid_argument("CacheSim: line_bytes must be a power of two");
    if (!is_power_of_two(cfg.num_sets))
        throw std::invalid_argument("CacheSim: num_sets must be a power of two");
    if (cfg.ways < 1) throw std::invalid_argument("CacheSim: ways must be at least 1");
    if (cfg.element_bytes < 1)
        throw std::invalid_argument("CacheSim: element_bytes must be at least 1");
    lines_.assign(cfg.num_sets * cfg.ways, kEmpty);
}

void CacheSim::access(std::uint64_t index) {
    require(index >= 1, "CacheSim::access: indexes are 1-based");
    ++stats_.accesses;
    const std::uint64_t addr = (index - 1) * cfg_.element_bytes;
    const std::uint64_t line = addr / cfg_.line_bytes;
    const std::uint64_t set = line & (cfg_.num_sets - 1);
    std::uint64_t* ways = lines_.data() + set * cfg_.ways;
    std::uint64_t w = 0;
    while (w < cfg_.ways && ways[w] != line) ++w;
    if (w == cfg_.ways) {
        ++stats_.misses;
        w = cfg_.ways - 1;  // overwrite the least recently used slot
    }
    for (; w > 0; --w) ways[w] = ways[w - 1];
    ways[0] = line;
}

CacheStats cache_simulate(std::span<const TraceEvent> trace, const CacheConfig& cfg) {
    CacheSim sim(cfg);
    for (const TraceEvent& e : trace) sim.access(e.index);
    return sim.stats();
}

}  // namespace dhsort
