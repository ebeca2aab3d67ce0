#pragma once

#include <cstdint>
#include <string>

#include "pfk/graph.hpp"

namespace pfk {

// H_n: a path (a,x,y) of order 3 plus n paths of order 7 whose centers are
// all joined to a. Vertex layout: Q0 = 0,1,2 with a = 0, then Q_i occupies
// 3+7(i-1) .. 3+7(i-1)+6 in path order, center b_i = 3+7(i-1)+3.
graph gen_hn(int n);

// H'_n for k = 3m: complete core K_n joined to 2n+1 blocks, each block a
// K_{2m-1} joined to 2m+1 disjoint P2s. Vertex layout: core 0..n-1, then
// block i (1-based) lists its K_{2m-1} first, then the P2 pairs in order.
graph gen_hprime(int k, int n);

graph gen_path(int n);
graph gen_cycle(int n);
graph gen_complete(int n);

// Each pair kept independently with probability p; splitmix64 stream seeded
// by `seed`, pairs scanned (0,1),(0,2),..,(1,2),.. ascending.
graph gen_random(int n, double p, std::uint64_t seed);

struct family_spec {
    enum class kind { hn, hprime, path, cycle, complete, random };
    kind id = kind::path;
    int n = 0;
    int k = 0;
    double p = 0.5;
    std::uint64_t seed = 0;
};

// "Hn:2", "Hprime:3,1", "path:5", "cycle:6", "complete:4", "random:8,0.5,7"
family_spec parse_family_spec(const std::string& text);
graph gen_standard(const family_spec& spec);

// splitmix64 step (public for cross-language reproduction)
std::uint64_t splitmix64_next(std::uint64_t& state);

}  // namespace pfk
