#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "dhsort/counters.hpp"

namespace dhsort {

// Text form of an access trace: one event per line, "R <index>" or
// "W <index>" with 1-based decimal indexes.
void write_trace(std::ostream& os, std::span<const TraceEvent> trace);

// A TraceSink that streams events in the same format as write_trace.
class StreamTraceSink final : public TraceSink {
public:
    explicit StreamTraceSink(std::ostream& os) : os_(os) {}
    void on_event(const TraceEvent& e) override;

private:
    std::ostream& os_;
};

// Parses the write_trace format; throws std::runtime_error naming the line of
// the first malformed entry.
std::vector<TraceEvent> read_trace(std::istream& is);

}  // namespace dhsort
