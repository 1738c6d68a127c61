#include "dhsort/trace_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dhsort {
namespace {

void put_event(std::ostream& os, const TraceEvent& e) {
    os << (e.kind == AccessKind::read ? "R " : "W ") << e.index << '\n';
}

[[noreturn]] void bad_line(std::uint64_t line_no, const std::string& line) {
    throw std::runtime_error("trace line " + std::to_string(line_no) +
                             ": malformed event '" + line + "'");
}

}  // namespace

void write_trace(std::ostream& os, std::span<const TraceEvent> trace) {
    for (const TraceEvent& e : trace) put_event(os, e);
}

void StreamTraceSink::on_event(const TraceEvent& e) { put_event(os_, e); }

std::vector<TraceEvent> read_trace(std::istream& is) {
    std::vector<TraceEvent> out;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) bad_line(line_no, line);
        AccessKind kind;
        if (line[0] == 'R') {
            kind = AccessKind::read;
        } else if (line[0] == 'W') {
            kind = AccessKind::write;
        } else {
            bad_line(line_no, line);
        }
        if (line.size() < 3 || line[1] != ' ') bad_line(line_no, line);
        std::uint64_t index = 0;
        const char* first = line.data() + 2;
        const char* last = line.data() + line.size();
        const auto [ptr, ec] = std::from_chars(first, last, index);
        if (ec != std::errc{} || ptr != last || index == 0) bad_line(line_no, line);
        out.push_back(TraceEvent{kind, index});
    }
    return out;
}

}  // namespace dhsort
