#include "pfk/deficiency.hpp"

#include <bit>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "pfk/errors.hpp"

namespace pfk {

deficit_value deficit(const graph& g, const vertex_set& x) {
    auto p = components_after_removal(g, x);
    return {3ll * p.count(1) + 2ll * p.count(3) - 4ll * x.size()};
}

long long odd_component_sum(const graph& g, const vertex_set& x, int k) {
    auto p = components_after_removal(g, x);
    long long s = 0;
    for (int j = 0; j < k; ++j) s += p.count(2 * j + 1);
    return s;
}

namespace {

// Per-component weight accumulation under mask removal (n <= 64).
long long weighted_components(const std::vector<std::uint64_t>& adj, int n, std::uint64_t removed,
                              const std::vector<long long>& weight_by_order) {
    long long total = 0;
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
        total += weight_by_order[std::popcount(comp)];
    }
    return total;
}

struct sweep_best {
    bool has = false;
    long long value = 0;
    std::uint64_t mask = 0;
};

// Full-subset reduction. eval returns (value, keep); `prefer` is a strict
// total order on (value, mask) pairs, so sharded scans merge to exactly the
// sequential answer.
template <class Eval, class Prefer>
sweep_best sweep_all_masks(int n, const sweep_options& opts, Eval eval, Prefer prefer) {
    if (n < 0) throw std::invalid_argument("negative order");
    if (n >= 64) throw budget_error("subset sweep requires order <= 63");
    std::uint64_t lim = 1ull << n;
    if (lim > opts.max_subsets) throw budget_error("subset sweep budget exceeded (2^n > max_subsets)");

    int jobs = std::max(1, opts.jobs);
    auto scan = [&](std::uint64_t lo, std::uint64_t hi) {
        sweep_best best;
        for (std::uint64_t m = lo; m < hi; ++m) {
            auto [value, keep] = eval(m);
            if (!keep) continue;
            if (!best.has || prefer(value, m, best.value, best.mask)) {
                best.has = true;
                best.value = value;
                best.mask = m;
            }
        }
        return best;
    };

    if (jobs == 1 || lim < 1024) return scan(0, lim);

    std::vector<sweep_best> parts(jobs);
    std::vector<std::thread> threads;
    std::uint64_t chunk = (lim + jobs - 1) / jobs;
    for (int t = 0; t < jobs; ++t) {
        std::uint64_t lo = std::min<std::uint64_t>(lim, chunk * t);
        std::uint64_t hi = std::min<std::uint64_t>(lim, lo + chunk);
        threads.emplace_back([&, t, lo, hi] { parts[t] = scan(lo, hi); });
    }
    for (auto& th : threads) th.join();
    sweep_best best;
    for (const auto& p : parts) {
        if (!p.has) continue;
        if (!best.has || prefer(p.value, p.mask, best.value, best.mask)) best = p;
    }
    return best;
}

// larger value first, then fewer vertices, then smaller mask
bool prefer_max(long long v, std::uint64_t m, long long bv, std::uint64_t bm) {
    if (v != bv) return v > bv;
    int p = std::popcount(m), bp = std::popcount(bm);
    if (p != bp) return p < bp;
    return m < bm;
}

using lhs_rhs = std::pair<long long, long long>;

std::optional<witness> sweep_condition(const graph& g, const sweep_options& opts, const std::string& name,
                                       const std::function<lhs_rhs(const std::vector<std::uint64_t>&, int,
                                                                   std::uint64_t)>& sides) {
    int n = g.order();
    if (n == 0) {
        auto [lhs, rhs] = sides({}, 0, 0);
        if (lhs > rhs) return witness{vertex_set(0), lhs, rhs, name};
        return std::nullopt;
    }
    auto adj = g.adjacency_masks();
    auto best = sweep_all_masks(
        n, opts,
        [&](std::uint64_t m) {
            auto [lhs, rhs] = sides(adj, n, m);
            return std::pair<long long, bool>(lhs - rhs, true);
        },
        prefer_max);
    if (best.value <= 0) return std::nullopt;
    auto [lhs, rhs] = sides(adj, n, best.mask);
    return witness{vertex_set::from_mask(n, best.mask), lhs, rhs, name};
}

}  // namespace

std::optional<witness> check_sufficient(const graph& g, const sweep_options& opts) {
    return sweep_condition(g, opts, "sufficient", [](const auto& adj, int n, std::uint64_t m) {
        auto c = n ? count_c1_c3(adj, n, m) : small_counts{};
        return lhs_rhs{3ll * c.c1 + 2ll * c.c3, 4ll * std::popcount(m) + 1};
    });
}

std::optional<witness> check_necessary(const graph& g, const sweep_options& opts) {
    return sweep_condition(g, opts, "necessary", [](const auto& adj, int n, std::uint64_t m) {
        auto c = n ? count_c1_c3(adj, n, m) : small_counts{};
        return lhs_rhs{2ll * c.c1 + c.c3, 3ll * std::popcount(m)};
    });
}

std::optional<witness> check_theorem_a(const graph& g, const sweep_options& opts) {
    return sweep_condition(g, opts, "theorem_a", [](const auto& adj, int n, std::uint64_t m) {
        long long iso = n ? count_isolated(adj, n, m) : 0;
        return lhs_rhs{iso, 2ll * std::popcount(m)};
    });
}

beta_result beta_scaled(const graph& g, const sweep_options& opts) {
    int n = g.order();
    beta_result r;
    r.argmax_set = vertex_set(n);
    if (n == 0) return r;
    auto adj = g.adjacency_masks();
    auto best = sweep_all_masks(
        n, opts,
        [&](std::uint64_t m) {
            auto c = count_c1_c3(adj, n, m);
            long long value = 4ll * std::popcount(m) + 1 - 3ll * c.c1 - 2ll * c.c3;
            return std::pair<long long, bool>(value, c.c1 + c.c3 >= 1);
        },
        [](long long v, std::uint64_t m, long long bv, std::uint64_t bm) {
            if (v != bv) return v < bv;  // minimize
            int p = std::popcount(m), bp = std::popcount(bm);
            if (p != bp) return p > bp;  // maximum set among attainers
            return m < bm;
        });
    if (best.has) {
        r.feasible = true;
        r.beta3 = best.value;
        r.argmax_set = vertex_set::from_mask(n, best.mask);
    }
    return r;
}

bound_report check_family_bound(const graph& g, const std::map<int, long long>& weights, long long a_num,
                                long long a_den, long long b_num, long long b_den, const sweep_options& opts) {
    if (a_den <= 0 || b_den <= 0) throw std::invalid_argument("nonpositive denominator");
    int n = g.order();
    bound_report rep;
    rep.argmax = vertex_set(n);
    std::vector<long long> weight_by_order(n + 1, 0);
    for (auto [order, w] : weights)
        if (order >= 1 && order <= n) weight_by_order[order] = w;
    if (n == 0) {
        rep.max_slack = -a_den * b_num;
        return rep;
    }
    auto adj = g.adjacency_masks();
    auto best = sweep_all_masks(
        n, opts,
        [&](std::uint64_t m) {
            long long lhs = weighted_components(adj, n, m, weight_by_order);
            long long slack = a_den * b_den * lhs - b_den * a_num * std::popcount(m) - a_den * b_num;
            return std::pair<long long, bool>(slack, true);
        },
        prefer_max);
    rep.max_slack = best.value;
    rep.argmax = vertex_set::from_mask(n, best.mask);
    return rep;
}

}  // namespace pfk
