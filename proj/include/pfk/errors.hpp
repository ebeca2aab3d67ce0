#pragma once

#include <stdexcept>
#include <string>

namespace pfk {

// Exceeded a configured size/node budget. Distinct from "no answer":
// callers must never interpret this as a negative result.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// An input violated a precondition the algorithm relies on (e.g. the
// bipartite neighborhood hypothesis). Carries the violated condition name.
struct hypothesis_error : std::runtime_error {
    explicit hypothesis_error(const std::string& what) : std::runtime_error(what) {}
};

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pfk
