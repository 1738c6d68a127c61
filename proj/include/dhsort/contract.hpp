#pragma once

#include <stdexcept>
#include <string>

namespace dhsort {

// Contract violations are programming errors on the caller's side; fail loudly
// instead of sliding into undefined behaviour.
[[noreturn]] inline void contract_fail(const char* what) {
    throw std::logic_error(std::string("contract violation: ") + what);
}

inline void require(bool cond, const char* what) {
    if (!cond) contract_fail(what);
}

}  // namespace dhsort
