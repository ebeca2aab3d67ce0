#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pfk/graph.hpp"

namespace pfk {

// A path as an ordered vertex sequence; a factor as a list of disjoint paths
// covering the whole graph.
using vertex_path = std::vector<int>;

struct path_factor {
    std::vector<vertex_path> paths;
    int total_order() const {
        int t = 0;
        for (const auto& p : paths) t += static_cast<int>(p.size());
        return t;
    }
};

struct verify_result {
    bool ok = true;
    std::string reason;  // first violated condition when !ok
    explicit operator bool() const { return ok; }
};

// True iff F is a spanning collection of vertex-disjoint paths of G whose
// component orders all lie in `allowed_orders`.
verify_result verify_factor(const graph& g, const path_factor& f, const std::set<int>& allowed_orders);

// Splits an order-n path into consecutive pieces of orders 2 and 5:
// all 2s when n is even, one leading 5 plus 2s when n is odd.
// Throws std::invalid_argument for n in {0, 1, 3}.
std::vector<int> decompose_path_orders(int n);

// Applies decompose_path_orders to one concrete path.
std::vector<vertex_path> split_path(const vertex_path& p);

struct solver_options {
    std::uint64_t max_nodes = 50'000'000;  // search nodes before budget_error
    std::size_t memo_capacity = 1u << 21;  // failed-state entries kept (two generations)
};

// Exhaustive factor search: branches on the minimum uncovered vertex and
// enumerates every allowed-order path through it (reversal-deduplicated),
// memoizing unsolvable uncovered-sets. Deterministic. Requires order <= 64
// and nonempty allowed_orders with every order >= 2.
// Returns nullopt only when no factor exists; throws budget_error when the
// node budget is exhausted.
std::optional<path_factor> find_factor_exact(const graph& g, const std::set<int>& allowed_orders,
                                             const solver_options& opts = {});

// Akiyama-Avis-Era test: a {P2,P3}-factor exists iff removing any X leaves
// at most 2|X| isolated vertices. Exhaustive over X; requires order <= 63.
bool has_path_factor(const graph& g);

}  // namespace pfk
