#pragma once

#include <functional>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "pfk/deficiency.hpp"
#include "pfk/factor.hpp"
#include "pfk/graph.hpp"

namespace pfk {

struct budgets {
    sweep_options sweep;
    solver_options solver;
    int max_n = 64;
};

nlohmann::json witness_json(const witness& w);

// Condition verdicts (sufficient / necessary / theorem A) plus beta3.
nlohmann::json check_record(const graph& g, const budgets& b);

// One solver run; `constructive` requires orders {2,5}.
nlohmann::json solve_record(const graph& g, const std::set<int>& orders, bool constructive, const budgets& b);

enum class sweep_assertion { theorem1, prop_necessary, fact_a };
sweep_assertion parse_assertion(const std::string& name);

// Universally-quantified theorem checks over one stream element.
nlohmann::json sweep_record(const graph& g, sweep_assertion kind, const budgets& b);

// Conjecture hypothesis (exact scaled check, no additive constant) vs the
// exact {2,2k+1} solver; `candidate` marks a would-be counterexample.
nlohmann::json conjecture_record(const graph& g, int k, const budgets& b);

// Family-specific verification for the extremal generators.
nlohmann::json extremal_record(const std::string& family, const budgets& b);

// Order-preserving parallel map over graph6 lines: records are emitted to
// `out` (one JSON object per line) in input order, byte-identical for any
// worker count. Malformed lines produce {"malformed": true} records.
// When `stop_when` fires on a record, emission stops right after the first
// such record (by input order); later work is abandoned best-effort.
std::vector<nlohmann::json> run_stream(const std::vector<std::string>& lines, int jobs, bool timings,
                                       const std::function<nlohmann::json(const graph&)>& per_graph,
                                       std::ostream& out,
                                       const std::function<bool(const nlohmann::json&)>& stop_when = nullptr);

}  // namespace pfk
