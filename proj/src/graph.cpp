#include "pfk/graph.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

#include "pfk/errors.hpp"

namespace pfk {

namespace {
std::size_t words_for(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }
}  // namespace

vertex_set::vertex_set(int universe) : n_(universe), w_(words_for(universe), 0) {
    if (universe < 0) throw std::invalid_argument("negative universe");
}

vertex_set vertex_set::full(int universe) {
    vertex_set s(universe);
    for (std::size_t i = 0; i < s.w_.size(); ++i) s.w_[i] = ~0ull;
    if (universe % 64 != 0 && !s.w_.empty()) s.w_.back() &= (1ull << (universe % 64)) - 1;
    return s;
}

vertex_set vertex_set::of(int universe, std::initializer_list<int> vs) {
    vertex_set s(universe);
    for (int v : vs) s.add(v);
    return s;
}

vertex_set vertex_set::from_mask(int universe, std::uint64_t mask) {
    if (universe > 64) throw std::invalid_argument("from_mask requires universe <= 64");
    vertex_set s(universe);
    if (universe > 0) {
        std::uint64_t lim = universe == 64 ? ~0ull : (1ull << universe) - 1;
        if (mask & ~lim) throw std::invalid_argument("mask exceeds universe");
        s.w_[0] = mask;
    } else if (mask) {
        throw std::invalid_argument("mask exceeds universe");
    }
    return s;
}

void vertex_set::check_range(int v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("vertex out of range");
}

bool vertex_set::contains(int v) const {
    check_range(v);
    return (w_[v / 64] >> (v % 64)) & 1;
}

void vertex_set::add(int v) {
    check_range(v);
    w_[v / 64] |= 1ull << (v % 64);
}

void vertex_set::remove(int v) {
    check_range(v);
    w_[v / 64] &= ~(1ull << (v % 64));
}

int vertex_set::size() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
}

bool vertex_set::empty() const {
    for (auto w : w_)
        if (w) return false;
    return true;
}

int vertex_set::min() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i]) return static_cast<int>(i * 64) + __builtin_ctzll(w_[i]);
    return -1;
}

vertex_set& vertex_set::operator|=(const vertex_set& o) {
    if (n_ != o.n_) throw std::invalid_argument("universe mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
}

vertex_set& vertex_set::operator&=(const vertex_set& o) {
    if (n_ != o.n_) throw std::invalid_argument("universe mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
}

vertex_set& vertex_set::operator-=(const vertex_set& o) {
    if (n_ != o.n_) throw std::invalid_argument("universe mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
}

vertex_set vertex_set::complement() const { return full(n_) - *this; }

bool vertex_set::intersects(const vertex_set& o) const {
    if (n_ != o.n_) throw std::invalid_argument("universe mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & o.w_[i]) return true;
    return false;
}

bool vertex_set::subset_of(const vertex_set& o) const {
    if (n_ != o.n_) throw std::invalid_argument("universe mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & ~o.w_[i]) return false;
    return true;
}

bool vertex_set::mask_less(const vertex_set& o) const {
    if (n_ != o.n_) throw std::invalid_argument("universe mismatch");
    for (std::size_t i = w_.size(); i-- > 0;)
        if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
    return false;
}

std::vector<int> vertex_set::to_vector() const {
    std::vector<int> vs;
    vs.reserve(size());
    for_each([&](int v) { vs.push_back(v); });
    return vs;
}

graph graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    graph g;
    g.n_ = n;
    g.adj_.assign(n, vertex_set(n));
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop");
        g.adj_[u].add(v);
        g.adj_[v].add(u);
    }
    return g;
}

bool graph::has_edge(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) throw std::out_of_range("vertex out of range");
    return adj_[u].contains(v);
}

long long graph::edge_count() const {
    long long d = 0;
    for (int v = 0; v < n_; ++v) d += degree(v);
    return d / 2;
}

std::vector<std::pair<int, int>> graph::edges() const {
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n_; ++u)
        adj_[u].for_each([&](int v) {
            if (u < v) es.emplace_back(u, v);
        });
    return es;
}

std::vector<std::uint64_t> graph::adjacency_masks() const {
    if (n_ > 64) throw std::invalid_argument("adjacency_masks requires order <= 64");
    std::vector<std::uint64_t> m(n_);
    for (int v = 0; v < n_; ++v) m[v] = adj_[v].low_mask();
    return m;
}

component_profile components_after_removal(const graph& g, const vertex_set& x) {
    if (x.universe() != g.order()) throw std::invalid_argument("removal set universe mismatch");
    component_profile p;
    vertex_set alive = vertex_set::full(g.order()) - x;
    while (!alive.empty()) {
        int v = alive.min();
        vertex_set comp(g.order());
        comp.add(v);
        vertex_set frontier = comp;
        while (!frontier.empty()) {
            vertex_set next(g.order());
            frontier.for_each([&](int u) { next |= g.neighbors(u); });
            next &= alive;
            next -= comp;
            comp |= next;
            frontier = next;
        }
        // maximality: nothing alive outside comp is reachable from it
        vertex_set nb(g.order());
        comp.for_each([&](int u) { nb |= g.neighbors(u); });
        nb &= alive;
        nb -= comp;
        assert(nb.empty());
        alive -= comp;
        p.counts[comp.size()] += 1;
        p.components.push_back(std::move(comp));
    }
    return p;
}

small_counts count_c1_c3(const std::vector<std::uint64_t>& adj, int n, std::uint64_t removed) {
    small_counts r;
    std::uint64_t alive = (n == 64 ? ~0ull : (1ull << n) - 1) & ~removed;
    while (alive) {
        int v = __builtin_ctzll(alive);
        std::uint64_t comp = 1ull << v;
        std::uint64_t frontier = comp;
        while (frontier) {
            std::uint64_t next = 0;
            std::uint64_t f = frontier;
            while (f) {
                int u = __builtin_ctzll(f);
                f &= f - 1;
                next |= adj[u];
            }
            next &= alive & ~comp;
            comp |= next;
            frontier = next;
        }
        alive &= ~comp;
        int sz = std::popcount(comp);
        if (sz == 1)
            ++r.c1;
        else if (sz == 3)
            ++r.c3;
    }
    return r;
}

int count_isolated(const std::vector<std::uint64_t>& adj, int n, std::uint64_t removed) {
    std::uint64_t alive = (n == 64 ? ~0ull : (1ull << n) - 1) & ~removed;
    int c = 0;
    std::uint64_t a = alive;
    while (a) {
        int v = __builtin_ctzll(a);
        a &= a - 1;
        if ((adj[v] & alive) == 0) ++c;
    }
    return c;
}

graph join(const graph& g1, const graph& g2) {
    int n1 = g1.order(), n2 = g2.order();
    auto es = g1.edges();
    for (auto [u, v] : g2.edges()) es.emplace_back(u + n1, v + n1);
    for (int u = 0; u < n1; ++u)
        for (int v = 0; v < n2; ++v) es.emplace_back(u, v + n1);
    return graph::from_edges(n1 + n2, es);
}

graph disjoint_union(const graph& g1, const graph& g2) {
    int n1 = g1.order();
    auto es = g1.edges();
    for (auto [u, v] : g2.edges()) es.emplace_back(u + n1, v + n1);
    return graph::from_edges(n1 + g2.order(), es);
}

std::pair<graph, std::vector<int>> induced_subgraph(const graph& g, const vertex_set& keep) {
    std::vector<int> to_old = keep.to_vector();
    std::vector<int> to_new(g.order(), -1);
    for (std::size_t i = 0; i < to_old.size(); ++i) to_new[to_old[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> es;
    for (auto [u, v] : g.edges())
        if (to_new[u] >= 0 && to_new[v] >= 0) es.emplace_back(to_new[u], to_new[v]);
    return {graph::from_edges(static_cast<int>(to_old.size()), es), std::move(to_old)};
}

graph remove_edge(const graph& g, int u, int v) {
    if (!g.has_edge(u, v)) throw std::invalid_argument("remove_edge: no such edge");
    std::vector<std::pair<int, int>> es;
    for (auto [a, b] : g.edges())
        if (!((a == u && b == v) || (a == v && b == u))) es.emplace_back(a, b);
    return graph::from_edges(g.order(), es);
}

// ---------------------------------------------------------------------------
// graph6
// ---------------------------------------------------------------------------

namespace {

long long g6_read_n(const std::string& s, std::size_t& pos) {
    auto byte = [&](std::size_t i) -> int {
        if (i >= s.size()) throw parse_error("graph6: truncated header");
        int c = static_cast<unsigned char>(s[i]);
        if (c < 63 || c > 126) throw parse_error("graph6: character out of range");
        return c - 63;
    };
    if (byte(pos) != 63) {
        return byte(pos++);
    }
    if (byte(pos + 1) != 63) {
        long long n = 0;
        for (int i = 1; i <= 3; ++i) n = (n << 6) | byte(pos + i);
        pos += 4;
        return n;
    }
    long long n = 0;
    for (int i = 2; i <= 7; ++i) n = (n << 6) | byte(pos + i);
    pos += 8;
    return n;
}

}  // namespace

graph parse_graph6(const std::string& line_in) {
    std::string line = line_in;
    if (!line.empty() && line.back() == '\n') line.pop_back();
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string header = ">>graph6<<";
    if (line.rfind(header, 0) == 0) line = line.substr(header.size());
    if (line.empty()) throw parse_error("graph6: empty input");

    std::size_t pos = 0;
    long long n = g6_read_n(line, pos);
    if (n > 1'000'000) throw parse_error("graph6: order too large");
    long long bits = n * (n - 1) / 2;
    std::size_t body = static_cast<std::size_t>((bits + 5) / 6);
    if (line.size() - pos != body) throw parse_error("graph6: bad length");

    std::vector<std::pair<int, int>> es;
    long long bit = 0;
    for (std::size_t k = 0; k < body; ++k) {
        int c = static_cast<unsigned char>(line[pos + k]);
        if (c < 63 || c > 126) throw parse_error("graph6: character out of range");
        int val = c - 63;
        for (int b = 5; b >= 0; --b, ++bit) {
            int on = (val >> b) & 1;
            if (bit >= bits) {
                if (on) throw parse_error("graph6: nonzero padding");
                continue;
            }
            if (on) {
                // bit index -> pair (i, j), column-major upper triangle
                long long t = bit;
                int j = 1;
                while (t >= j) t -= j, ++j;
                es.emplace_back(static_cast<int>(t), j);
            }
        }
    }
    return graph::from_edges(static_cast<int>(n), es);
}

std::string to_graph6(const graph& g) {
    long long n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= 258047) {
        out.push_back(126);
        for (int sh = 12; sh >= 0; sh -= 6) out.push_back(static_cast<char>(((n >> sh) & 63) + 63));
    } else {
        out.push_back(126);
        out.push_back(126);
        for (int sh = 30; sh >= 0; sh -= 6) out.push_back(static_cast<char>(((n >> sh) & 63) + 63));
    }
    int acc = 0, nb = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++nb == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                nb = 0;
            }
        }
    if (nb > 0) out.push_back(static_cast<char>((acc << (6 - nb)) + 63));
    return out;
}

}  // namespace pfk
