#include "pfk/reduction.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "pfk/errors.hpp"

namespace pfk {

namespace {

bool is_triangle(const graph& g, const vertex_set& comp) {
    if (comp.size() != 3) return false;
    auto vs = comp.to_vector();
    return g.has_edge(vs[0], vs[1]) && g.has_edge(vs[0], vs[2]) && g.has_edge(vs[1], vs[2]);
}

std::vector<vertex_path> sort_by_min_vertex(std::vector<vertex_path> paths) {
    std::sort(paths.begin(), paths.end(), [](const vertex_path& a, const vertex_path& b) {
        return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
    });
    return paths;
}

}  // namespace

auxiliary_map build_auxiliary(const graph& g, const vertex_set& s, const sweep_options& opts) {
    auto profile = components_after_removal(g, s);
    std::vector<vertex_set> tokens;
    std::vector<bool> token_is_triangle;
    for (const auto& comp : profile.components) {
        if (comp.size() == 1) {
            tokens.push_back(comp);
            token_is_triangle.push_back(false);
        } else if (comp.size() == 3) {
            if (!is_triangle(g, comp))
                throw std::invalid_argument("build_auxiliary: order-3 component of G-S is not a triangle");
            tokens.push_back(comp);
            token_is_triangle.push_back(true);
        }
    }

    auxiliary_map aux;
    aux.s_vertex = s.to_vector();
    aux.s_count = static_cast<int>(aux.s_vertex.size());
    aux.token_component = tokens;

    int n_inst = aux.s_count + static_cast<int>(tokens.size());
    std::vector<std::pair<int, int>> es;
    for (int si = 0; si < aux.s_count; ++si) {
        const vertex_set& nb = g.neighbors(aux.s_vertex[si]);
        for (std::size_t ti = 0; ti < tokens.size(); ++ti)
            if (nb.intersects(tokens[ti])) es.emplace_back(si, aux.s_count + static_cast<int>(ti));
    }
    aux.inst.g = graph::from_edges(n_inst, es);
    aux.inst.s_side = vertex_set(n_inst);
    aux.inst.t1_side = vertex_set(n_inst);
    aux.inst.t2_side = vertex_set(n_inst);
    for (int v = 0; v < aux.s_count; ++v) aux.inst.s_side.add(v);
    for (std::size_t ti = 0; ti < tokens.size(); ++ti) {
        int v = aux.s_count + static_cast<int>(ti);
        if (token_is_triangle[ti]) aux.inst.t2_side.add(v);
        else aux.inst.t1_side.add(v);
    }

    if (auto w = check_t2_hypothesis(aux.inst, opts))
        throw hypothesis_error("auxiliary certificate failure: " + w->condition);
    return aux;
}

lift_piece make_lift_piece(const graph& g, const auxiliary_map& aux, const vertex_path& a) {
    lift_piece piece;
    piece.u_a = vertex_set(g.order());
    vertex_set all(g.order());
    for (int v : a) {
        if (v < aux.s_count) {
            piece.u_a.add(aux.s_vertex[v]);
            all.add(aux.s_vertex[v]);
        } else {
            piece.tokens.push_back(aux.token_of(v));
            all |= aux.token_component[aux.token_of(v)];
        }
    }
    auto [sub, to_old] = induced_subgraph(g, all);
    // drop edges inside U_A
    std::vector<std::pair<int, int>> es;
    for (auto [u, v] : sub.edges())
        if (!(piece.u_a.contains(to_old[u]) && piece.u_a.contains(to_old[v]))) es.emplace_back(u, v);
    piece.lift_graph = graph::from_edges(sub.order(), es);
    piece.lift_to_g = to_old;
    return piece;
}

namespace {

// Spine path through one auxiliary component: S vertices verbatim, tokens
// expanded inside G.
vertex_path walk_spine(const graph& g, const auxiliary_map& aux, const vertex_path& a) {
    int len = static_cast<int>(a.size());
    vertex_path q;
    auto g_of_s = [&](int inst_v) { return aux.s_vertex[inst_v]; };
    for (int i = 0; i < len; ++i) {
        int v = a[i];
        if (v < aux.s_count) {
            q.push_back(g_of_s(v));
            continue;
        }
        const vertex_set& comp = aux.token_component[aux.token_of(v)];
        auto verts = comp.to_vector();
        int prev_s = i > 0 ? g_of_s(a[i - 1]) : -1;
        int next_s = i + 1 < len ? g_of_s(a[i + 1]) : -1;
        auto least_adjacent = [&](int s_vert) {
            for (int w : verts)
                if (g.has_edge(w, s_vert)) return w;
            throw std::logic_error("lift: token not adjacent to its flank");
        };
        if (comp.size() == 1) {
            if (prev_s != -1) least_adjacent(prev_s);
            if (next_s != -1) least_adjacent(next_s);
            q.push_back(verts[0]);
        } else if (prev_s != -1 && next_s != -1) {
            int both = -1;
            for (int w : verts)
                if (g.has_edge(w, prev_s) && g.has_edge(w, next_s)) {
                    both = w;
                    break;
                }
            if (both != -1) {
                q.push_back(both);
            } else {
                int win = least_adjacent(prev_s), wout = least_adjacent(next_s);
                int third = -1;
                for (int w : verts)
                    if (w != win && w != wout) third = w;
                q.push_back(win);
                q.push_back(third);
                q.push_back(wout);
            }
        } else {
            // endpoint triangle: contribute it whole, gate vertex next to the flank
            int flank = prev_s != -1 ? prev_s : next_s;
            int gate = least_adjacent(flank);
            std::vector<int> rest;
            for (int w : verts)
                if (w != gate) rest.push_back(w);
            if (prev_s != -1) {
                q.push_back(gate);
                q.push_back(rest[0]);
                q.push_back(rest[1]);
            } else {
                q.push_back(rest[0]);
                q.push_back(rest[1]);
                q.push_back(gate);
            }
        }
    }
    for (std::size_t i = 0; i + 1 < q.size(); ++i)
        if (!g.has_edge(q[i], q[i + 1])) throw std::logic_error("lift: spine is not a path");
    return q;
}

}  // namespace

path_factor lift_component(const graph& g, const auxiliary_map& aux, const vertex_path& a) {
    if (a.size() < 2) throw std::invalid_argument("lift_component: component of order < 2");
    vertex_path spine = walk_spine(g, aux, a);
    if (spine.size() == 3) throw std::logic_error("lift: spine of order 3 (missing T2 token?)");

    path_factor f;
    for (auto& part : split_path(spine)) f.paths.push_back(std::move(part));

    vertex_set on_spine(g.order());
    for (int v : spine) on_spine.add(v);
    for (int v : a) {
        if (v < aux.s_count) continue;
        const vertex_set& comp = aux.token_component[aux.token_of(v)];
        vertex_set rest = comp - on_spine;
        if (rest.empty()) continue;
        if (rest.size() != 2) throw std::logic_error("lift: triangle leftover is not an edge");
        auto vs = rest.to_vector();
        if (!g.has_edge(vs[0], vs[1])) throw std::logic_error("lift: leftover pair not adjacent");
        f.paths.push_back({vs[0], vs[1]});
    }

    // the factor must cover exactly the lift world
    vertex_set want(g.order());
    for (int v : a) {
        if (v < aux.s_count) want.add(aux.s_vertex[v]);
        else want |= aux.token_component[aux.token_of(v)];
    }
    vertex_set got(g.order());
    for (const auto& p : f.paths)
        for (int v : p) {
            if (got.contains(v)) throw std::logic_error("lift: vertex covered twice");
            got.add(v);
        }
    if (got != want) throw std::logic_error("lift: factor does not cover the lift world");
    f.paths = sort_by_min_vertex(std::move(f.paths));
    return f;
}

// ---------------------------------------------------------------------------
// constructive recursion
// ---------------------------------------------------------------------------

namespace {

path_factor construct(const graph& g, const sweep_options& sweep);

path_factor decompose_cycles(const graph& g) {
    path_factor f;
    auto profile = components_after_removal(g, vertex_set(g.order()));
    for (const auto& comp : profile.components) {
        int start = comp.min();
        auto nb = (g.neighbors(start) & comp).to_vector();
        if (nb.size() != 2) throw std::logic_error("cycle branch: non-cycle component");
        // delete the least edge (start, nb[0]); walk the other way round
        vertex_path path{start};
        int prev = start, cur = nb[1];
        while (cur != start) {
            path.push_back(cur);
            auto cnb = (g.neighbors(cur) & comp).to_vector();
            if (cnb.size() != 2) throw std::logic_error("cycle branch: non-cycle component");
            int nxt = cnb[0] == prev ? cnb[1] : cnb[0];
            prev = cur;
            cur = nxt;
        }
        if (static_cast<int>(path.size()) != comp.size()) throw std::logic_error("cycle branch: walk mismatch");
        if (path.back() != nb[0]) throw std::logic_error("cycle branch: walk did not end at the cut edge");
        for (auto& part : split_path(path)) f.paths.push_back(std::move(part));
    }
    return f;
}

path_factor construct(const graph& g, const sweep_options& sweep) {
    path_factor f;
    int n = g.order();
    if (n == 0) return f;

    {
        auto p0 = components_after_removal(g, vertex_set(n));
        if (p0.count(1) != 0 || p0.count(3) != 0)
            throw std::logic_error("construct: c1/c3 nonzero at the root (condition violated)");
    }

    beta_result beta = beta_scaled(g, sweep);
    if (!beta.feasible) throw std::logic_error("construct: empty candidate family on a nonempty graph");

    if (beta.beta3 >= 6) {
        int x0 = -1;
        for (int v = 0; v < n; ++v) {
            if (g.degree(v) < 2) throw std::logic_error("construct: degree < 2 in the high-beta branch");
            if (x0 == -1 && g.degree(v) >= 3) x0 = v;
        }
        if (x0 == -1) return decompose_cycles(g);
        int y0 = g.neighbors(x0).min();
        path_factor sub = construct(remove_edge(g, x0, y0), sweep);
        sub.paths = sort_by_min_vertex(std::move(sub.paths));
        return sub;
    }

    const vertex_set& s = beta.argmax_set;
    if (s.empty()) throw std::logic_error("construct: empty witness set in the low-beta branch");

    auto profile = components_after_removal(g, s);
    for (const auto& comp : profile.components) {
        if (comp.size() == 1 || comp.size() == 3) continue;
        auto [sub, to_old] = induced_subgraph(g, comp);
        path_factor pf = construct(sub, sweep);
        for (auto& p : pf.paths) {
            for (int& v : p) v = to_old[v];
            f.paths.push_back(std::move(p));
        }
    }

    auxiliary_map aux = build_auxiliary(g, s, sweep);
    path_factor central = s_central_t2_factor(aux.inst, sweep);
    for (const auto& a : central.paths) {
        path_factor lifted = lift_component(g, aux, a);
        for (auto& p : lifted.paths) f.paths.push_back(std::move(p));
    }

    f.paths = sort_by_min_vertex(std::move(f.paths));
    return f;
}

}  // namespace

find_factor_result find_factor(const graph& g, const reduction_options& opts) {
    find_factor_result res;
    if (auto w = check_sufficient(g, opts.sweep)) {
        res.violated = std::move(w);
        return res;
    }
    path_factor f = construct(g, opts.sweep);
    auto chk = verify_factor(g, f, {2, 5});
    if (!chk) throw std::logic_error("constructive factor failed verification: " + chk.reason);
    res.factor = std::move(f);
    return res;
}

cross_report cross_validate(const graph& g, const reduction_options& opts, const solver_options& solver) {
    cross_report rep;
    rep.sufficient_ok = !check_sufficient(g, opts.sweep).has_value();
    rep.necessary_ok = !check_necessary(g, opts.sweep).has_value();

    auto exact = find_factor_exact(g, {2, 5}, solver);
    rep.exact_found = exact.has_value();

    auto constructive = find_factor(g, opts);
    rep.constructive_found = constructive.factor.has_value();

    if (rep.sufficient_ok && !rep.exact_found)
        rep.inconsistencies.push_back("sufficient condition holds but the exact solver found no factor");
    if (rep.sufficient_ok && !rep.constructive_found)
        rep.inconsistencies.push_back("sufficient condition holds but the constructive route found no factor");
    if (rep.constructive_found && !rep.exact_found)
        rep.inconsistencies.push_back("constructive route succeeded where the exact solver failed");
    if (rep.exact_found && !rep.necessary_ok)
        rep.inconsistencies.push_back("a factor exists but the necessary condition is violated");
    return rep;
}

}  // namespace pfk
