#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfk/deficiency.hpp"
#include "pfk/factor.hpp"
#include "pfk/graph.hpp"

namespace pfk {

// Bipartite world: S on one side, T = T1 u T2 on the other, T-vertices
// carrying weight 1 (T1) or 2/3-scaled weight (T2). Edges only between S and T.
struct bipartite_instance {
    graph g;
    vertex_set s_side;
    vertex_set t1_side;
    vertex_set t2_side;

    vertex_set t_side() const { return t1_side | t2_side; }
    void validate() const;  // partition + no same-side edges; throws std::invalid_argument
};

// Convenience builder: S = [0,nS), T1 = [nS,nS+nT1), T2 = [nS+nT1,nS+nT1+nT2);
// edges given as (s index, t index) with t over [0, nT1+nT2).
bipartite_instance make_bipartite(int n_s, int n_t1, int n_t2,
                                  const std::vector<std::pair<int, int>>& st_edges);

// Hypothesis of the bipartite factor theorem:
//   1 <= |S| <= |T|,  3|T1| + 2|T2| <= 4|S| + 1, and
//   for every X subset of S: 3|N(X) n T1| + 2|N(X) n T2| >= 4|X| or N(X) = T.
std::optional<witness> check_t2_hypothesis(const bipartite_instance& inst, const sweep_options& opts = {});

// (component order, 1 if it avoids T2 / 2 if it meets T2)
std::pair<int, int> classify_component(const vertex_path& p, const bipartite_instance& inst);

// nullopt when valid, else the violated condition. The S-central check covers
// spanning + disjoint paths + per-component |T| >= |S|; the full central check
// additionally requires a T2 vertex in every order-3 component.
std::optional<std::string> validate_s_central(const bipartite_instance& inst, const path_factor& f);
std::optional<std::string> validate_central_factor(const bipartite_instance& inst, const path_factor& f);

// Spanning S-central path-factor via Hall matching plus layer-splice growth;
// order-3 components may still avoid T2. Throws hypothesis_error when the
// instance violates the hypothesis at runtime.
path_factor s_central_spanning(const bipartite_instance& inst);

// Digraph on factor components: arc A -> B iff some S-vertex of A sees a
// T-vertex of B; each arc carries the lexicographically least such edge.
struct factor_digraph {
    std::vector<std::vector<int>> out;  // sorted target lists
    // arc -> (sigma, tau): sigma in A's S-side, tau in B's T-side
    std::vector<std::vector<std::pair<int, int>>> phi_edge;  // parallel to out
    bool has_arc(int a, int b) const;
    std::pair<int, int> phi(int a, int b) const;  // throws if no arc
};

factor_digraph build_factor_digraph(const bipartite_instance& inst, const std::vector<vertex_path>& comps);

// A sequence of admissible directed paths over factor components obeying the
// freshness/termination rules; complete when the last path is strongly
// admissible.
struct path_system {
    std::vector<std::vector<int>> paths;  // node ids into the component list
};

// Extends `seed` to a complete path system by deterministic greedy search.
// Requires at least one T2-free order-3 component; throws hypothesis_error
// when no extension exists (impossible under the hypothesis).
path_system find_complete_system(const bipartite_instance& inst, const std::vector<vertex_path>& comps,
                                 const path_system& seed);

// One rewiring step along a component chain ending in a T2-free order-3
// component: reorients the chain, cuts it into pieces, and either eliminates
// that component (dropped_c13) or merges two chain members into `merged`.
struct rewire_result {
    std::vector<vertex_path> comps;  // new factor, canonical order
    int i0 = 0;                      // 1-based split index
    bool dropped_c13 = false;
    vertex_path merged;              // set when !dropped_c13
};

rewire_result rewire(const bipartite_instance& inst, const std::vector<vertex_path>& comps,
                     const std::vector<int>& chain);

// Full engine: spanning S-central path-factor whose every order-3 component
// meets T2. Validates the hypothesis first.
path_factor s_central_t2_factor(const bipartite_instance& inst, const sweep_options& opts = {});

// Exhaustive reference search over all spanning path partitions (test oracle
// and tiny-instance fallback).
std::optional<path_factor> brute_force_central_factor(const bipartite_instance& inst);

}  // namespace pfk
