#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfk/bipartite.hpp"
#include "pfk/deficiency.hpp"
#include "pfk/factor.hpp"
#include "pfk/graph.hpp"

namespace pfk {

// Auxiliary bipartite view of (G, S): one token per order-1 component of G-S
// (T1 side) and one per order-3 component (T2 side, triangles only), with an
// s-token edge iff s sees the component in G.
struct auxiliary_map {
    bipartite_instance inst;
    std::vector<int> s_vertex;                  // instance S index -> G vertex
    std::vector<vertex_set> token_component;    // instance (v - |S|) -> component of G-S
    int s_count = 0;

    int token_of(int inst_vertex) const { return inst_vertex - s_count; }
};

// Throws std::invalid_argument when some order-3 component of G-S is not a
// triangle, hypothesis_error when the instance certificate fails.
auxiliary_map build_auxiliary(const graph& g, const vertex_set& s, const sweep_options& opts = {});

// Lift world of one auxiliary factor component A: its S vertices, its tokens,
// and the induced graph with edges inside S removed.
struct lift_piece {
    vertex_set u_a;              // S vertices of A (in G)
    std::vector<int> tokens;     // token indices on A, in path order
    graph lift_graph;            // G_A, re-indexed
    std::vector<int> lift_to_g;  // lift index -> G vertex
};

lift_piece make_lift_piece(const graph& g, const auxiliary_map& aux, const vertex_path& a);

// Turns one auxiliary component into a {2,5}-orders factor of its lift world,
// expressed in G vertex ids: a spine path through all tokens (full triangles
// at T2 endpoints, one or three vertices at interior triangles), leftover
// triangle edges as P2s, spine split into orders 2 and 5.
path_factor lift_component(const graph& g, const auxiliary_map& aux, const vertex_path& a);

struct reduction_options {
    sweep_options sweep;
};

struct find_factor_result {
    std::optional<path_factor> factor;  // set when the condition holds
    std::optional<witness> violated;    // set when it does not
};

// The constructive route: sufficient-condition check, then the recursive
// build (edge deletion while beta3 >= 6, cycle decomposition, auxiliary
// bipartite reduction + lift otherwise). Returned factors are verified.
find_factor_result find_factor(const graph& g, const reduction_options& opts = {});

struct cross_report {
    bool sufficient_ok = false;
    bool necessary_ok = false;
    bool exact_found = false;
    bool constructive_found = false;
    std::vector<std::string> inconsistencies;  // empty = all routes agree
};

// Runs both solvers and both condition checks and flags any combination the
// theory forbids.
cross_report cross_validate(const graph& g, const reduction_options& opts = {},
                            const solver_options& solver = {});

}  // namespace pfk
