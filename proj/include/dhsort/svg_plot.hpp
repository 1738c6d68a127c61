#pragma once

#include <span>
#include <string>

#include "dhsort/bench.hpp"

namespace dhsort {

// Standalone SVG 1.1 scatter of benchmark rows: x is n, y is
// comparisons+moves, one circle per row, one color and legend entry per
// algorithm in order of first appearance. Output bytes depend only on the
// rows, so equal inputs render byte-identical documents.
std::string render_ops_scatter(std::span<const BenchmarkRecord> rows);

}  // namespace dhsort
