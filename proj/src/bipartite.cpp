#include "pfk/bipartite.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

#include "pfk/errors.hpp"

namespace pfk {

void bipartite_instance::validate() const {
    int n = g.order();
    if (s_side.universe() != n || t1_side.universe() != n || t2_side.universe() != n)
        throw std::invalid_argument("bipartite instance: side universe mismatch");
    if (s_side.intersects(t1_side) || s_side.intersects(t2_side) || t1_side.intersects(t2_side))
        throw std::invalid_argument("bipartite instance: sides overlap");
    if ((s_side | t1_side | t2_side) != vertex_set::full(n))
        throw std::invalid_argument("bipartite instance: sides do not partition the vertices");
    for (auto [u, v] : g.edges())
        if (s_side.contains(u) == s_side.contains(v))
            throw std::invalid_argument("bipartite instance: same-side edge");
}

bipartite_instance make_bipartite(int n_s, int n_t1, int n_t2, const std::vector<std::pair<int, int>>& st_edges) {
    int n = n_s + n_t1 + n_t2;
    std::vector<std::pair<int, int>> es;
    es.reserve(st_edges.size());
    for (auto [s, t] : st_edges) {
        if (s < 0 || s >= n_s || t < 0 || t >= n_t1 + n_t2) throw std::invalid_argument("make_bipartite: bad edge");
        es.emplace_back(s, n_s + t);
    }
    bipartite_instance inst;
    inst.g = graph::from_edges(n, es);
    inst.s_side = vertex_set(n);
    inst.t1_side = vertex_set(n);
    inst.t2_side = vertex_set(n);
    for (int v = 0; v < n_s; ++v) inst.s_side.add(v);
    for (int v = n_s; v < n_s + n_t1; ++v) inst.t1_side.add(v);
    for (int v = n_s + n_t1; v < n; ++v) inst.t2_side.add(v);
    return inst;
}

std::optional<witness> check_t2_hypothesis(const bipartite_instance& inst, const sweep_options& opts) {
    inst.validate();
    vertex_set t = inst.t_side();
    long long s_sz = inst.s_side.size(), t_sz = t.size();
    if (s_sz < 1) return witness{vertex_set(inst.g.order()), 1, s_sz, "t2-size"};
    if (s_sz > t_sz) return witness{inst.s_side, s_sz, t_sz, "t2-size"};
    long long w = 3ll * inst.t1_side.size() + 2ll * inst.t2_side.size();
    if (w > 4 * s_sz + 1) return witness{inst.s_side, w, 4 * s_sz + 1, "t2-weight"};

    auto s_verts = inst.s_side.to_vector();
    int k = static_cast<int>(s_verts.size());
    if (k >= 64 || (1ull << k) > opts.max_subsets)
        throw budget_error("t2 hypothesis sweep budget exceeded");

    bool found = false;
    long long best_gap = 0;
    std::uint64_t best_mask = 0;
    for (std::uint64_t m = 0; m < (1ull << k); ++m) {
        vertex_set nb(inst.g.order());
        for (int i = 0; i < k; ++i)
            if ((m >> i) & 1) nb |= inst.g.neighbors(s_verts[i]);
        if (nb == t) continue;
        long long weighted = 3ll * (nb & inst.t1_side).size() + 2ll * (nb & inst.t2_side).size();
        long long gap = 4ll * std::popcount(m) - weighted;
        if (gap <= 0) continue;
        int pc = std::popcount(m);
        int bpc = std::popcount(best_mask);
        if (!found || gap > best_gap || (gap == best_gap && (pc < bpc || (pc == bpc && m < best_mask)))) {
            found = true;
            best_gap = gap;
            best_mask = m;
        }
    }
    if (!found) return std::nullopt;
    vertex_set x(inst.g.order());
    for (int i = 0; i < k; ++i)
        if ((best_mask >> i) & 1) x.add(s_verts[i]);
    vertex_set nb(inst.g.order());
    x.for_each([&](int v) { nb |= inst.g.neighbors(v); });
    long long weighted = 3ll * (nb & inst.t1_side).size() + 2ll * (nb & inst.t2_side).size();
    return witness{x, 4ll * x.size(), weighted, "t2-neighborhood"};
}

std::pair<int, int> classify_component(const vertex_path& p, const bipartite_instance& inst) {
    bool t2 = false;
    for (int v : p) t2 = t2 || inst.t2_side.contains(v);
    return {static_cast<int>(p.size()), t2 ? 2 : 1};
}

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

namespace {

vertex_path canon_path(vertex_path p) {
    if (!p.empty() && p.front() > p.back()) std::reverse(p.begin(), p.end());
    return p;
}

std::vector<vertex_path> canon_factor(std::vector<vertex_path> comps) {
    for (auto& p : comps) p = canon_path(std::move(p));
    std::sort(comps.begin(), comps.end(), [](const vertex_path& a, const vertex_path& b) {
        return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
    });
    return comps;
}

struct comp_info {
    int order = 0;
    int t2_count = 0;
    int s_count = 0;
    int center = -1;  // 4th vertex of an order-7 path
    bool c13() const { return order == 3 && t2_count == 0; }
    bool first_ok() const {  // head of an admissible path
        return !(order == 3) && !(order == 5 && t2_count == 0);
    }
    bool interior_ok() const { return (order == 3 && t2_count > 0) || (order == 5 && t2_count == 0); }
};

comp_info classify(const vertex_path& p, const bipartite_instance& inst) {
    comp_info c;
    c.order = static_cast<int>(p.size());
    for (int v : p) {
        if (inst.t2_side.contains(v)) ++c.t2_count;
        if (inst.s_side.contains(v)) ++c.s_count;
    }
    if (c.order == 7) c.center = p[3];
    return c;
}

std::vector<comp_info> classify_all(const std::vector<vertex_path>& comps, const bipartite_instance& inst) {
    std::vector<comp_info> out;
    out.reserve(comps.size());
    for (const auto& p : comps) out.push_back(classify(p, inst));
    return out;
}

// Weighted per-component identities, scaled by 3; violations mean the
// factor is not a valid S-central bipartite path collection.
void check_weighted_identities(const bipartite_instance& inst, const std::vector<vertex_path>& comps) {
    for (const auto& p : comps) {
        comp_info c = classify(p, inst);
        long long t1 = 0;
        for (int v : p)
            if (inst.t1_side.contains(v)) ++t1;
        long long lhs = 3 * t1 + 2ll * c.t2_count, rhs = 4ll * c.s_count;
        bool ok = true;
        if (c.order == 3 && c.t2_count == 0) ok = (lhs == 6 && rhs + 2 == 6);
        else if (c.order == 3) ok = lhs >= rhs;
        else if (c.order == 5 && c.t2_count == 0) ok = lhs > rhs;
        else if (c.order == 5 && c.t2_count == 1) ok = lhs == rhs;
        else if (c.order == 7 && c.t2_count == 0) ok = lhs == rhs;
        if (!ok) throw std::logic_error("weighted component identity violated");
    }
}

std::optional<std::string> validate_factor_shape(const bipartite_instance& inst, const path_factor& f,
                                                 bool require_t2_in_c3) {
    int n = inst.g.order();
    vertex_set covered(n);
    for (const auto& p : f.paths) {
        if (p.size() < 2) return "component of order < 2";
        int s_cnt = 0, t_cnt = 0;
        bool has_t2 = false;
        for (int v : p) {
            if (v < 0 || v >= n) return "vertex out of range";
            if (covered.contains(v)) return "vertex covered twice";
            covered.add(v);
            if (inst.s_side.contains(v)) ++s_cnt;
            else ++t_cnt;
            has_t2 = has_t2 || inst.t2_side.contains(v);
        }
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
            if (!inst.g.has_edge(p[i], p[i + 1])) return "consecutive vertices not adjacent";
        if (t_cnt < s_cnt) return "component with fewer T than S vertices";
        if (require_t2_in_c3 && p.size() == 3 && !has_t2) return "order-3 component avoiding T2";
    }
    if (covered != vertex_set::full(n)) return "not spanning";
    return std::nullopt;
}

}  // namespace

std::optional<std::string> validate_s_central(const bipartite_instance& inst, const path_factor& f) {
    return validate_factor_shape(inst, f, false);
}

std::optional<std::string> validate_central_factor(const bipartite_instance& inst, const path_factor& f) {
    return validate_factor_shape(inst, f, true);
}

// ---------------------------------------------------------------------------
// spanning growth: Hall matching + layer-splice augmentation
// ---------------------------------------------------------------------------

namespace {

bool kuhn_augment(const bipartite_instance& inst, int s, std::vector<int>& match_of_t, vertex_set& used) {
    bool found = false;
    inst.g.neighbors(s).for_each([&](int t) {
        if (found || used.contains(t)) return;
        used.add(t);
        if (match_of_t[t] == -1 || kuhn_augment(inst, match_of_t[t], match_of_t, used)) {
            match_of_t[t] = s;
            found = true;
        }
    });
    return found;
}

}  // namespace

path_factor s_central_spanning(const bipartite_instance& inst) {
    inst.validate();
    int n = inst.g.order();

    std::vector<int> match_of_t(n, -1);
    inst.s_side.for_each([&](int s) {
        vertex_set used(n);
        if (!kuhn_augment(inst, s, match_of_t, used))
            throw hypothesis_error("no matching covering S (Hall condition fails)");
    });

    std::vector<vertex_path> comps;
    for (int t = 0; t < n; ++t)
        if (match_of_t[t] != -1) comps.push_back(canon_path({match_of_t[t], t}));
    comps = canon_factor(std::move(comps));

    while (true) {
        vertex_set covered(n);
        for (const auto& p : comps)
            for (int v : p) covered.add(v);
        vertex_set uncovered = inst.t_side() - covered;
        if (uncovered.empty()) break;

        // breadth layers of components whose S-side reaches the previous layer
        std::vector<std::vector<int>> layers;
        std::vector<int> layer_of(comps.size(), -1);
        vertex_set target = uncovered;
        while (true) {
            std::vector<int> layer;
            for (std::size_t i = 0; i < comps.size(); ++i) {
                if (layer_of[i] != -1) continue;
                vertex_set reach(n);
                for (int v : comps[i])
                    if (inst.s_side.contains(v)) reach |= inst.g.neighbors(v);
                if (reach.intersects(target)) layer.push_back(static_cast<int>(i));
            }
            if (layer.empty()) break;
            for (int i : layer) layer_of[i] = static_cast<int>(layers.size());
            vertex_set next_target(n);
            for (int i : layer)
                for (int v : comps[i])
                    if (!inst.s_side.contains(v)) next_target.add(v);
            layers.push_back(std::move(layer));
            target = next_target;
        }

        int chain_depth = -1, top = -1;
        for (std::size_t d = 0; d < layers.size() && top == -1; ++d)
            for (int i : layers[d])
                if (comps[i].size() != 3) {
                    chain_depth = static_cast<int>(d);
                    top = i;
                    break;
                }
        if (top == -1)
            throw hypothesis_error("augmentation blocked: all reachable components are order-3 paths");

        // walk the chain down to an uncovered vertex, orienting P3s head-first
        std::vector<vertex_path> oriented;  // index d (descending layer) -> oriented path
        oriented.push_back(comps[top]);
        int glue_vertex = -1;  // S-vertex of the top component used by the splice
        for (int d = chain_depth - 1; d >= -1; --d) {
            const vertex_path& cur = oriented.back();
            vertex_set lower(n);
            if (d >= 0) {
                for (int i : layers[d])
                    for (int v : comps[i])
                        if (!inst.s_side.contains(v)) lower.add(v);
            } else {
                lower = uncovered;
            }
            int best_s = -1, best_t = -1;
            for (int v : cur) {
                if (!inst.s_side.contains(v)) continue;
                int cand = -1;
                (inst.g.neighbors(v) & lower).for_each([&](int t) {
                    if (cand == -1) cand = t;
                });
                if (cand != -1 && (best_s == -1 || v < best_s || (v == best_s && cand < best_t))) {
                    best_s = v;
                    best_t = cand;
                }
            }
            if (best_s == -1) throw std::logic_error("layer chain broken");
            if (oriented.size() == 1) glue_vertex = best_s;
            if (d >= 0) {
                int comp_idx = -1;
                for (int i : layers[d]) {
                    bool hit = std::find(comps[i].begin(), comps[i].end(), best_t) != comps[i].end();
                    if (hit) {
                        comp_idx = i;
                        break;
                    }
                }
                assert(comp_idx != -1);
                vertex_path p = comps[comp_idx];
                if (p.front() != best_t) std::reverse(p.begin(), p.end());
                assert(p.front() == best_t);
                oriented.push_back(std::move(p));
            } else {
                oriented.push_back({best_t});  // the absorbed vertex
            }
        }

        // orient the top component so the glue position m obeys the parity rules
        {
            vertex_path& a = oriented.front();
            int l = static_cast<int>(a.size());
            auto pos1 = [&](const vertex_path& q) {
                return static_cast<int>(std::find(q.begin(), q.end(), glue_vertex) - q.begin()) + 1;
            };
            vertex_path rev(a.rbegin(), a.rend());
            int m = pos1(a), mr = pos1(rev);
            if (l % 2 == 0) {
                if (m % 2 == 0) a = rev;
            } else {
                bool ok_a = m != 2, ok_r = mr != 2;
                if (ok_a && ok_r) {
                    if (rev < a) a = rev;
                } else if (!ok_a) {
                    a = rev;
                }
            }
        }

        // splice: pieces replace the chain and absorb the uncovered vertex
        int depth = static_cast<int>(oriented.size()) - 1;  // oriented[depth] = absorbed vertex
        std::vector<vertex_path> pieces;
        for (int d = depth - 1; d >= 1; --d) {
            // oriented[d] is a P3 [t', center, other]; prev head comes from below
            const vertex_path& a = oriented[d];
            int prev_head = oriented[d + 1].front();
            pieces.push_back({prev_head, a[1], a[2]});
        }
        {
            const vertex_path& a = oriented.front();
            int m = static_cast<int>(std::find(a.begin(), a.end(), glue_vertex) - a.begin()) + 1;
            int prev_head = oriented[1].front();
            vertex_path tail{prev_head};
            tail.insert(tail.end(), a.begin() + (m - 1), a.end());
            pieces.push_back(std::move(tail));
            if (m >= 2) pieces.emplace_back(a.begin(), a.begin() + (m - 1));
        }

        std::set<int> removed;
        removed.insert(top);
        {
            // map oriented chain components back to their indices
            int d = chain_depth - 1;
            for (std::size_t oi = 1; oi + 1 < oriented.size(); ++oi, --d) {
                for (int i : layers[d])
                    if (std::is_permutation(comps[i].begin(), comps[i].end(), oriented[oi].begin(),
                                            oriented[oi].end())) {
                        removed.insert(i);
                        break;
                    }
            }
        }

        std::vector<vertex_path> next;
        for (std::size_t i = 0; i < comps.size(); ++i)
            if (!removed.count(i)) next.push_back(comps[i]);
        for (auto& p : pieces) {
            if (p.empty()) continue;
            if (p.size() < 2) throw std::logic_error("splice produced a singleton piece");
            for (std::size_t i = 0; i + 1 < p.size(); ++i)
                if (!inst.g.has_edge(p[i], p[i + 1])) throw std::logic_error("splice produced a non-path");
            next.push_back(p);
        }
        comps = canon_factor(std::move(next));
    }

    path_factor f;
    f.paths = comps;
    if (auto bad = validate_s_central(inst, f)) throw std::logic_error("spanning growth failed: " + *bad);
    check_weighted_identities(inst, comps);
    return f;
}

// ---------------------------------------------------------------------------
// factor digraph and path systems
// ---------------------------------------------------------------------------

bool factor_digraph::has_arc(int a, int b) const {
    const auto& row = out[a];
    return std::binary_search(row.begin(), row.end(), b);
}

std::pair<int, int> factor_digraph::phi(int a, int b) const {
    const auto& row = out[a];
    auto it = std::lower_bound(row.begin(), row.end(), b);
    if (it == row.end() || *it != b) throw std::invalid_argument("no such digraph arc");
    return phi_edge[a][it - row.begin()];
}

factor_digraph build_factor_digraph(const bipartite_instance& inst, const std::vector<vertex_path>& comps) {
    int c = static_cast<int>(comps.size());
    factor_digraph d;
    d.out.resize(c);
    d.phi_edge.resize(c);
    for (int a = 0; a < c; ++a) {
        std::vector<int> s_verts;
        for (int v : comps[a])
            if (inst.s_side.contains(v)) s_verts.push_back(v);
        std::sort(s_verts.begin(), s_verts.end());
        for (int b = 0; b < c; ++b) {
            if (a == b) continue;
            vertex_set bt(inst.g.order());
            for (int v : comps[b])
                if (!inst.s_side.contains(v)) bt.add(v);
            int sig = -1, tau = -1;
            for (int s : s_verts) {
                int cand = -1;
                (inst.g.neighbors(s) & bt).for_each([&](int t) {
                    if (cand == -1) cand = t;
                });
                if (cand != -1) {
                    sig = s;
                    tau = cand;
                    break;
                }
            }
            if (sig != -1) {
                d.out[a].push_back(b);
                d.phi_edge[a].emplace_back(sig, tau);
            }
        }
    }
    return d;
}

namespace {

bool weakly_admissible(const std::vector<int>& path, const std::vector<comp_info>& info, const factor_digraph& dg) {
    const comp_info& head = info[path[0]];
    if (head.order == 5 && head.t2_count == 1) return true;  // W1
    if (head.order == 7 && head.t2_count == 0) {             // W2
        auto [sig, tau] = dg.phi(path[0], path[1]);
        (void)tau;
        return sig == head.center;
    }
    return false;
}

void validate_system(const std::vector<comp_info>& info, const factor_digraph& dg, const path_system& sys) {
    std::set<int> visited;
    for (std::size_t i = 0; i < sys.paths.size(); ++i) {
        const auto& p = sys.paths[i];
        if (p.size() < 2) throw std::invalid_argument("path system: path with fewer than two nodes");
        std::set<int> inpath(p.begin(), p.end());
        if (inpath.size() != p.size()) throw std::invalid_argument("path system: repeated node");
        if (!info[p[0]].first_ok()) throw std::invalid_argument("path system: inadmissible first node");
        for (std::size_t j = 1; j + 1 < p.size(); ++j)
            if (!info[p[j]].interior_ok()) throw std::invalid_argument("path system: inadmissible interior node");
        for (std::size_t j = 0; j + 1 < p.size(); ++j)
            if (!dg.has_arc(p[j], p[j + 1])) throw std::invalid_argument("path system: missing arc");
        for (std::size_t j = 0; j + 1 < p.size(); ++j)
            if (visited.count(p[j])) throw std::invalid_argument("path system: non-fresh node (P1)");
        int last = p.back();
        if (!info[last].c13() && !visited.count(last))
            throw std::invalid_argument("path system: last node neither order-3 T2-free nor visited (P1)");
        if (i + 1 < sys.paths.size() && !weakly_admissible(p, info, dg))
            throw std::invalid_argument("path system: non-final path not weakly admissible (P2)");
        for (int v : p) visited.insert(v);
    }
}

}  // namespace

path_system find_complete_system(const bipartite_instance& inst, const std::vector<vertex_path>& comps,
                                 const path_system& seed) {
    auto info = classify_all(comps, inst);
    auto dg = build_factor_digraph(inst, comps);
    bool any_c13 = false;
    for (const auto& c : info) any_c13 = any_c13 || c.c13();
    if (!any_c13) throw std::invalid_argument("find_complete_system: no T2-free order-3 component");
    validate_system(info, dg, seed);

    path_system sys = seed;
    std::set<int> visited;
    for (const auto& p : sys.paths) visited.insert(p.begin(), p.end());
    if (!sys.paths.empty() && !weakly_admissible(sys.paths.back(), info, dg)) return sys;  // already complete

    int c = static_cast<int>(comps.size());
    while (true) {
        // deterministic DFS for the first appendable admissible path
        std::vector<int> found;
        std::vector<int> stack;
        std::vector<char> instack(c, 0);
        auto dfs = [&](auto&& self, int node) -> bool {
            stack.push_back(node);
            instack[node] = 1;
            for (int nxt : dg.out[node]) {
                if (instack[nxt]) continue;
                if (info[nxt].c13() || visited.count(nxt)) {
                    found = stack;
                    found.push_back(nxt);
                    stack.pop_back();
                    instack[node] = 0;
                    return true;
                }
                if (info[nxt].interior_ok() && !visited.count(nxt)) {
                    if (self(self, nxt)) {
                        stack.pop_back();
                        instack[node] = 0;
                        return true;
                    }
                }
            }
            stack.pop_back();
            instack[node] = 0;
            return false;
        };
        for (int f = 0; f < c && found.empty(); ++f) {
            if (visited.count(f) || !info[f].first_ok()) continue;
            dfs(dfs, f);
        }
        if (found.empty())
            throw hypothesis_error("path system cannot be completed (hypothesis violated)");
        sys.paths.push_back(found);
        visited.insert(found.begin(), found.end());
        if (!weakly_admissible(found, info, dg)) return sys;  // strongly admissible: complete
    }
}

// ---------------------------------------------------------------------------
// rewiring
// ---------------------------------------------------------------------------

rewire_result rewire(const bipartite_instance& inst, const std::vector<vertex_path>& comps,
                     const std::vector<int>& chain) {
    int p = static_cast<int>(chain.size());
    if (p < 2) throw std::invalid_argument("rewire: chain too short");
    {
        std::set<int> uniq(chain.begin(), chain.end());
        if (static_cast<int>(uniq.size()) != p) throw std::invalid_argument("rewire: repeated chain node");
    }
    auto info = classify_all(comps, inst);
    auto dg = build_factor_digraph(inst, comps);
    if (!info[chain.back()].c13())
        throw std::invalid_argument("rewire: chain does not end in a T2-free order-3 component (B5)");
    if (info[chain.front()].order == 3 || (info[chain.front()].order == 5 && info[chain.front()].t2_count == 0))
        throw std::invalid_argument("rewire: chain head is not a valid admissible-path head");
    for (int i = 0; i + 1 < p; ++i)
        if (!dg.has_arc(chain[i], chain[i + 1])) throw std::invalid_argument("rewire: missing digraph arc");

    // oriented vertex sequences plus sigma/tau positions (1-based)
    std::vector<vertex_path> seq(p);
    std::vector<int> sig_v(p, -1), tau_v(p, -1);
    for (int i = 0; i < p; ++i) seq[i] = comps[chain[i]];
    for (int i = 0; i + 1 < p; ++i) {
        auto [sg, tu] = dg.phi(chain[i], chain[i + 1]);
        sig_v[i] = sg;
        tau_v[i + 1] = tu;
    }
    auto pos1 = [](const vertex_path& q, int v) {
        auto it = std::find(q.begin(), q.end(), v);
        assert(it != q.end());
        return static_cast<int>(it - q.begin()) + 1;
    };

    {  // head orientation: (B1)-(B3)
        vertex_path a = seq[0], r(seq[0].rbegin(), seq[0].rend());
        int q1 = static_cast<int>(a.size());
        auto ok = [&](const vertex_path& cand) {
            int s1 = pos1(cand, sig_v[0]);
            if (q1 % 2 == 1 && s1 < (q1 + 1) / 2) return false;                          // B1
            if (q1 % 2 == 0 && s1 % 2 == 0) return false;                                // B3
            if (info[chain[0]].order == 7 && info[chain[0]].t2_count > 0 && s1 == 4) {   // B2
                if (!inst.t2_side.contains(cand[0]) && !inst.t2_side.contains(cand[2])) return false;
            }
            return true;
        };
        bool oa = ok(a), orv = ok(r);
        if (!oa && !orv) throw std::invalid_argument("rewire: no head orientation satisfies (B1)-(B3)");
        seq[0] = oa && orv ? std::min(a, r) : (oa ? a : r);
    }
    for (int i = 1; i + 1 < p; ++i) {  // interior orientation: (B4) entry before exit
        if (pos1(seq[i], tau_v[i]) > pos1(seq[i], sig_v[i])) std::reverse(seq[i].begin(), seq[i].end());
        if (pos1(seq[i], tau_v[i]) >= pos1(seq[i], sig_v[i]))
            throw std::invalid_argument("rewire: cannot orient interior component (B4)");
    }
    if (pos1(seq[p - 1], tau_v[p - 1]) != 3) {  // (B5)
        std::reverse(seq[p - 1].begin(), seq[p - 1].end());
        if (pos1(seq[p - 1], tau_v[p - 1]) != 3)
            throw std::invalid_argument("rewire: cannot place tail entry at position 3 (B5)");
    }

    std::vector<int> s(p, -1), t(p, -1);  // 1-based positions
    for (int i = 0; i + 1 < p; ++i) s[i] = pos1(seq[i], sig_v[i]);
    for (int i = 1; i < p; ++i) t[i] = pos1(seq[i], tau_v[i]);

    for (int i = 1; i + 1 < p; ++i) {  // interior class/exit sanity
        const comp_info& c = info[chain[i]];
        bool ok = (c.order == 3 && c.t2_count > 0 && s[i] == 2) || (c.order == 5 && (s[i] == 2 || s[i] == 4)) ||
                  (c.order == 7 && c.t2_count == 0 && s[i] == 4);
        if (!ok) throw std::invalid_argument("rewire: interior component class or exit position inadmissible");
    }

    int i0 = -1;  // 1-based
    for (int i = 2; i <= p; ++i)
        if (i == p || t[i - 1] == 1) {
            i0 = i;
            break;
        }

    // pieces (1-based index i; stored 0-based at i-1)
    std::vector<vertex_path> piece(i0);
    piece[0] = vertex_path(seq[0].begin(), seq[0].begin() + (s[0] - 1));
    for (int i = 2; i <= i0; ++i) {
        vertex_path b;
        const vertex_path& prev = seq[i - 2];
        int sp = s[i - 2];  // sigma position in B_{i-1}
        for (int j = static_cast<int>(prev.size()); j >= sp; --j) b.push_back(prev[j - 1]);
        const vertex_path& cur = seq[i - 1];
        for (int j = t[i - 1]; j >= 1; --j) b.push_back(cur[j - 1]);
        piece[i - 1] = std::move(b);
    }

    auto check_piece = [&](const vertex_path& q, bool allow_c13) {
        if (q.empty()) return;
        if (q.size() < 2) throw std::logic_error("rewire produced a singleton piece");
        int s_cnt = 0, t_cnt = 0;
        bool has_t2 = false;
        for (int v : q) {
            if (inst.s_side.contains(v)) ++s_cnt;
            else ++t_cnt;
            has_t2 = has_t2 || inst.t2_side.contains(v);
        }
        for (std::size_t j = 0; j + 1 < q.size(); ++j)
            if (!inst.g.has_edge(q[j], q[j + 1])) throw std::logic_error("rewire produced a non-path");
        if (t_cnt < s_cnt) throw std::logic_error("rewire produced a non-central piece");
        if (!allow_c13 && q.size() == 3 && !has_t2)
            throw std::logic_error("rewire produced a T2-free order-3 piece");
    };

    rewire_result res;
    res.i0 = i0;
    std::set<int> removed;
    std::vector<vertex_path> fresh;

    if (i0 == p) {
        res.dropped_c13 = true;
        if (piece[p - 1].size() < 5) throw std::logic_error("rewire tail piece shorter than 5");
        for (int i = 0; i < p; ++i) removed.insert(chain[i]);
        for (auto& q : piece) {
            check_piece(q, false);
            if (!q.empty()) fresh.push_back(std::move(q));
        }
    } else {
        for (int i = 0; i < i0; ++i) removed.insert(chain[i]);
        for (int i = 0; i + 1 < i0; ++i) {
            check_piece(piece[i], false);
            if (!piece[i].empty()) fresh.push_back(std::move(piece[i]));
        }
        // merged component: reversed B_{i0} followed by the tail of B_{i0-1}
        vertex_path merged(seq[i0 - 1].rbegin(), seq[i0 - 1].rend());
        const vertex_path& prev = seq[i0 - 2];
        for (int j = s[i0 - 2]; j <= static_cast<int>(prev.size()); ++j) merged.push_back(prev[j - 1]);
        if (merged.size() < 5) throw std::logic_error("rewire merge produced a short component");
        check_piece(merged, false);
        res.merged = canon_path(merged);
        fresh.push_back(std::move(merged));
    }

    std::vector<vertex_path> next;
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (!removed.count(static_cast<int>(i))) next.push_back(comps[i]);
    for (auto& q : fresh) next.push_back(std::move(q));
    res.comps = canon_factor(std::move(next));
    return res;
}

// ---------------------------------------------------------------------------
// full engine
// ---------------------------------------------------------------------------

namespace {

std::vector<int> c13_nodes(const std::vector<comp_info>& info) {
    std::vector<int> out;
    for (std::size_t i = 0; i < info.size(); ++i)
        if (info[i].c13()) out.push_back(static_cast<int>(i));
    return out;
}

struct chain_data {
    std::vector<int> nodes;
    std::vector<std::pair<int, int>> home;  // (path index, position) per node
};

chain_data extract_chain(const path_system& sys, const std::vector<comp_info>& info) {
    chain_data cd;
    int k = static_cast<int>(sys.paths.size()) - 1;
    int j = 0;
    while (true) {
        const auto& path = sys.paths[k];
        for (int idx = j; idx < static_cast<int>(path.size()); ++idx) {
            cd.nodes.push_back(path[idx]);
            cd.home.emplace_back(k, idx);
        }
        int last = path.back();
        if (info[last].c13()) break;
        int nk = -1, nj = -1;
        for (int q = 0; q < k && nk == -1; ++q) {
            const auto& cand = sys.paths[q];
            auto it = std::find(cand.begin(), cand.end(), last);
            if (it != cand.end()) {
                nk = q;
                nj = static_cast<int>(it - cand.begin());
            }
        }
        if (nk == -1) throw std::logic_error("chain extraction: dangling path terminus");
        cd.home.back() = {nk, nj};
        k = nk;
        j = nj + 1;
    }
    return cd;
}

}  // namespace

path_factor s_central_t2_factor(const bipartite_instance& inst, const sweep_options& opts) {
    if (auto w = check_t2_hypothesis(inst, opts))
        throw hypothesis_error("instance violates hypothesis: " + w->condition);

    path_factor f0 = s_central_spanning(inst);
    std::vector<vertex_path> comps = f0.paths;

    long long initial_c13 = static_cast<long long>(c13_nodes(classify_all(comps, inst)).size());
    long long bound = std::max<long long>(1, initial_c13 * static_cast<long long>(comps.size()) *
                                                 static_cast<long long>(comps.size()));
    long long iterations = 0;

    std::optional<path_system> sys;
    while (true) {
        auto info = classify_all(comps, inst);
        if (c13_nodes(info).empty()) break;
        if (++iterations > bound) throw std::logic_error("rewiring progress bound exceeded");

        if (!sys) sys = find_complete_system(inst, comps, path_system{});
        chain_data cd = extract_chain(*sys, info);
        int i0_idx;  // 0-based chain index of B_{i0}
        rewire_result rr = rewire(inst, comps, cd.nodes);
        i0_idx = rr.i0 - 1;

        if (rr.dropped_c13) {
            comps = std::move(rr.comps);
            sys.reset();
            check_weighted_identities(inst, comps);
            continue;
        }

        // carry the system over: keep the prefix before the glue path, replace
        // the glue path's head with the merged component
        auto [k0, j0] = cd.home[i0_idx];
        std::map<int, int> new_id;  // min vertex -> new node id
        for (std::size_t i = 0; i < rr.comps.size(); ++i)
            new_id[*std::min_element(rr.comps[i].begin(), rr.comps[i].end())] = static_cast<int>(i);
        auto remap = [&](int old_node) {
            int mv = *std::min_element(comps[old_node].begin(), comps[old_node].end());
            auto it = new_id.find(mv);
            if (it == new_id.end() ||
                !std::is_permutation(rr.comps[it->second].begin(), rr.comps[it->second].end(),
                                     comps[old_node].begin(), comps[old_node].end()))
                throw std::logic_error("system carry-over lost a component");
            return it->second;
        };

        path_system carried;
        for (int q = 0; q < k0; ++q) {
            std::vector<int> path;
            for (int node : sys->paths[q]) path.push_back(remap(node));
            carried.paths.push_back(std::move(path));
        }
        std::vector<int> tail;
        tail.push_back(new_id.at(*std::min_element(rr.merged.begin(), rr.merged.end())));
        const auto& old_path = sys->paths[k0];
        for (int idx = j0 + 1; idx < static_cast<int>(old_path.size()); ++idx) tail.push_back(remap(old_path[idx]));
        if (tail.size() < 2) throw std::logic_error("carried system path too short");
        carried.paths.push_back(std::move(tail));

        comps = std::move(rr.comps);
        check_weighted_identities(inst, comps);
        auto new_info = classify_all(comps, inst);
        auto new_dg = build_factor_digraph(inst, comps);
        validate_system(new_info, new_dg, carried);

        bool last_weak = weakly_admissible(carried.paths.back(), new_info, new_dg);
        if (j0 == 0 && last_weak) throw std::logic_error("glue-at-head must be strongly admissible");
        if (last_weak) {
            if (c13_nodes(new_info).empty()) {
                sys.reset();  // nothing left to eliminate
            } else {
                sys = find_complete_system(inst, comps, carried);
            }
        } else {
            sys = carried;
        }
    }

    path_factor f;
    f.paths = comps;
    if (auto bad = validate_central_factor(inst, f)) throw std::logic_error("engine output invalid: " + *bad);
    return f;
}

// ---------------------------------------------------------------------------
// exhaustive reference search
// ---------------------------------------------------------------------------

namespace {

bool brute_partition(const bipartite_instance& inst, vertex_set& uncovered, std::vector<vertex_path>& acc) {
    if (uncovered.empty()) return true;
    int v = uncovered.min();
    int n = inst.g.order();

    // enumerate simple paths through v inside `uncovered` of every order >= 2
    std::vector<int> left{v}, right;
    vertex_set avail = uncovered;
    avail.remove(v);

    auto try_path = [&](const vertex_path& p) {
        int s_cnt = 0, t_cnt = 0;
        bool has_t2 = false;
        for (int u : p) {
            if (inst.s_side.contains(u)) ++s_cnt;
            else ++t_cnt;
            has_t2 = has_t2 || inst.t2_side.contains(u);
        }
        if (t_cnt < s_cnt) return false;
        if (p.size() == 3 && !has_t2) return false;
        for (int u : p) uncovered.remove(u);
        acc.push_back(p);
        if (brute_partition(inst, uncovered, acc)) return true;
        acc.pop_back();
        for (int u : p) uncovered.add(u);
        return false;
    };

    // grow the right arm first (left arm fixed so far), then extend left
    auto emit = [&](auto&& self_left) -> bool {
        vertex_path p(left.rbegin(), left.rend());
        p.insert(p.end(), right.begin(), right.end());
        if (p.size() >= 2 && p.front() < p.back() && try_path(p)) return true;
        int tip = right.empty() ? v : right.back();
        bool done = false;
        (inst.g.neighbors(tip) & avail).for_each([&](int u) {
            if (done) return;
            right.push_back(u);
            avail.remove(u);
            done = self_left(self_left);
            if (!done) {
                right.pop_back();
                avail.add(u);
            }
        });
        return done;
    };
    auto grow = [&](auto&& self) -> bool {
        if (emit(self)) return true;
        if (!right.empty()) return false;  // extend left only before the right arm starts
        int tip = left.back();
        bool done = false;
        (inst.g.neighbors(tip) & avail).for_each([&](int u) {
            if (done) return;
            left.push_back(u);
            avail.remove(u);
            done = self(self);
            if (!done) {
                left.pop_back();
                avail.add(u);
            }
        });
        return done;
    };
    (void)n;
    return grow(grow);
}

}  // namespace

std::optional<path_factor> brute_force_central_factor(const bipartite_instance& inst) {
    inst.validate();
    vertex_set uncovered = vertex_set::full(inst.g.order());
    std::vector<vertex_path> acc;
    if (brute_partition(inst, uncovered, acc)) {
        path_factor f;
        f.paths = canon_factor(acc);
        if (auto bad = validate_central_factor(inst, f)) throw std::logic_error("brute factor invalid: " + *bad);
        return f;
    }
    return std::nullopt;
}

}  // namespace pfk
