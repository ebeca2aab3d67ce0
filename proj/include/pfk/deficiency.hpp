#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "pfk/graph.hpp"

namespace pfk {

// Scaled deficiency D(G,X) = 3*c1(G-X) + 2*c3(G-X) - 4*|X|.
// The main sufficient condition holds iff D <= 1 for every X.
struct deficit_value {
    long long value = 0;
};

deficit_value deficit(const graph& g, const vertex_set& x);

// A violated inequality: lhs > rhs for the named condition at set X.
struct witness {
    vertex_set x;
    long long lhs = 0;
    long long rhs = 0;
    std::string condition;
};

struct sweep_options {
    std::uint64_t max_subsets = 1ull << 26;  // subset evaluations per call
    int jobs = 1;                            // internal sharding; result identical to sequential
};

// Sufficient condition: 3*c1 + 2*c3 <= 4*|X| + 1 for all X.
// Witness (when violated): maximal deficit, then least (popcount, mask).
std::optional<witness> check_sufficient(const graph& g, const sweep_options& opts = {});

// Necessary condition: 2*c1 + c3 <= 3*|X| for all X.
std::optional<witness> check_necessary(const graph& g, const sweep_options& opts = {});

// Akiyama-Avis-Era condition: c1 <= 2*|X| for all X.
std::optional<witness> check_theorem_a(const graph& g, const sweep_options& opts = {});

// beta3 = 3*beta = min over X with c1+c3 >= 1 of (4|X| + 1 - 3*c1 - 2*c3).
// argmax_set: the minimizer of maximum cardinality (then least mask).
struct beta_result {
    long long beta3 = 0;
    vertex_set argmax_set;
    bool feasible = false;  // some X leaves an order-1 or order-3 component
};

beta_result beta_scaled(const graph& g, const sweep_options& opts = {});

// Generic weighted bound: sum_i weights[i]*c_i(G-X) <= (a_num/a_den)|X| + b_num/b_den,
// exact via cross-multiplication. Reports
//   max_slack = max over X of a_den*b_den*sum(w_i c_i) - b_den*a_num*|X| - a_den*b_num
// and a set attaining it (least popcount, then least mask).
struct bound_report {
    long long max_slack = 0;
    vertex_set argmax;
};

bound_report check_family_bound(const graph& g, const std::map<int, long long>& weights, long long a_num,
                                long long a_den, long long b_num, long long b_den,
                                const sweep_options& opts = {});

// Odd-component sum for the k >= 3 conjecture machinery:
// sum over j in [0,k) of c_{2j+1}(G-X).
long long odd_component_sum(const graph& g, const vertex_set& x, int k);

}  // namespace pfk
