#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pfk {

// Subset of a fixed vertex universe [0, n). Single 64-bit word when n <= 64,
// multi-word otherwise; all operations require equal universes.
class vertex_set {
public:
    vertex_set() = default;
    explicit vertex_set(int universe);
    static vertex_set full(int universe);
    static vertex_set of(int universe, std::initializer_list<int> vs);
    static vertex_set from_mask(int universe, std::uint64_t mask);  // universe <= 64

    int universe() const { return n_; }
    bool contains(int v) const;
    void add(int v);
    void remove(int v);
    int size() const;
    bool empty() const;
    int min() const;  // -1 when empty

    vertex_set& operator|=(const vertex_set& o);
    vertex_set& operator&=(const vertex_set& o);
    vertex_set& operator-=(const vertex_set& o);
    friend vertex_set operator|(vertex_set a, const vertex_set& b) { return a |= b; }
    friend vertex_set operator&(vertex_set a, const vertex_set& b) { return a &= b; }
    friend vertex_set operator-(vertex_set a, const vertex_set& b) { return a -= b; }
    vertex_set complement() const;

    bool intersects(const vertex_set& o) const;
    bool subset_of(const vertex_set& o) const;
    bool operator==(const vertex_set& o) const = default;

    // numeric mask order (vertex 0 = least significant bit)
    bool mask_less(const vertex_set& o) const;

    std::uint64_t word(std::size_t i) const { return i < w_.size() ? w_[i] : 0; }
    std::uint64_t low_mask() const { return w_.empty() ? 0 : w_[0]; }  // universe <= 64

    std::vector<int> to_vector() const;
    template <class F>
    void for_each(F f) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t m = w_[i];
            while (m) {
                int b = __builtin_ctzll(m);
                f(static_cast<int>(i * 64) + b);
                m &= m - 1;
            }
        }
    }

private:
    int n_ = 0;
    std::vector<std::uint64_t> w_;
    void check_range(int v) const;
};

// Immutable simple undirected graph on vertices 0..n-1.
class graph {
public:
    graph() = default;

    // Throws std::invalid_argument on out-of-range endpoints or self-loops.
    // Duplicate edges collapse.
    static graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int order() const { return n_; }
    const vertex_set& neighbors(int v) const { return adj_[v]; }
    bool has_edge(int u, int v) const;
    int degree(int v) const { return adj_[v].size(); }
    long long edge_count() const;
    std::vector<std::pair<int, int>> edges() const;  // u < v, lexicographic

    // Single-word adjacency rows; only valid when order() <= 64.
    std::vector<std::uint64_t> adjacency_masks() const;

    bool operator==(const graph& o) const = default;

private:
    int n_ = 0;
    std::vector<vertex_set> adj_;
};

struct component_profile {
    std::vector<vertex_set> components;  // ordered by minimum contained vertex
    std::map<int, int> counts;           // order -> number of components of that order
    int count(int order) const {
        auto it = counts.find(order);
        return it == counts.end() ? 0 : it->second;
    }
};

// Components of G - X. X must live in G's universe.
component_profile components_after_removal(const graph& g, const vertex_set& x);

// Fast path for sweeps: c1 and c3 of G - X for n <= 64, via mask flood fill.
struct small_counts {
    int c1 = 0;
    int c3 = 0;
};
small_counts count_c1_c3(const std::vector<std::uint64_t>& adj, int n, std::uint64_t removed);

// Number of isolated vertices of G - X (n <= 64 fast path).
int count_isolated(const std::vector<std::uint64_t>& adj, int n, std::uint64_t removed);

// Join adds all cross edges; disjoint union adds none. Vertices of g2 are
// shifted by |V(g1)| in both.
graph join(const graph& g1, const graph& g2);
graph disjoint_union(const graph& g1, const graph& g2);

// Induced subgraph on `keep`; second result maps new index -> old vertex.
std::pair<graph, std::vector<int>> induced_subgraph(const graph& g, const vertex_set& keep);

graph remove_edge(const graph& g, int u, int v);

// graph6 text format (63-offset encoding, one graph per line).
graph parse_graph6(const std::string& line);
std::string to_graph6(const graph& g);

}  // namespace pfk
