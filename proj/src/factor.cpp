#include "pfk/factor.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_set>

#include "pfk/errors.hpp"

namespace pfk {

verify_result verify_factor(const graph& g, const path_factor& f, const std::set<int>& allowed_orders) {
    vertex_set covered(g.order());
    for (const auto& p : f.paths) {
        if (p.size() < 2) return {false, "component of order < 2"};
        if (!allowed_orders.count(static_cast<int>(p.size()))) return {false, "component order not allowed"};
        for (int v : p) {
            if (v < 0 || v >= g.order()) return {false, "vertex out of range"};
            if (covered.contains(v)) return {false, "vertex covered twice"};
            covered.add(v);
        }
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
            if (!g.has_edge(p[i], p[i + 1])) return {false, "consecutive vertices not adjacent"};
    }
    if (covered != vertex_set::full(g.order())) return {false, "not spanning"};
    return {};
}

std::vector<int> decompose_path_orders(int n) {
    if (n == 0 || n == 1 || n == 3) throw std::invalid_argument("indecomposable order");
    if (n < 0) throw std::invalid_argument("negative order");
    std::vector<int> parts;
    if (n % 2 == 1) {
        parts.push_back(5);
        n -= 5;
    }
    for (; n > 0; n -= 2) parts.push_back(2);
    return parts;
}

std::vector<vertex_path> split_path(const vertex_path& p) {
    auto parts = decompose_path_orders(static_cast<int>(p.size()));
    std::vector<vertex_path> out;
    std::size_t at = 0;
    for (int len : parts) {
        out.emplace_back(p.begin() + at, p.begin() + at + len);
        at += len;
    }
    return out;
}

namespace {

// Two-generation failed-state cache: inserts go to the current generation;
// when it fills, it becomes the previous generation and the oldest entries
// drop. Never affects correctness, only re-search cost.
class fail_memo {
public:
    explicit fail_memo(std::size_t cap) : cap_(std::max<std::size_t>(cap, 2)) {}
    bool contains(std::uint64_t key) const { return cur_.count(key) || prev_.count(key); }
    void insert(std::uint64_t key) {
        cur_.insert(key);
        if (cur_.size() >= cap_ / 2) {
            prev_ = std::move(cur_);
            cur_.clear();
        }
    }

private:
    std::size_t cap_;
    std::unordered_set<std::uint64_t> cur_, prev_;
};

class exact_solver {
public:
    exact_solver(const graph& g, const std::set<int>& orders, const solver_options& opts)
        : g_(g), n_(g.order()), orders_(orders.begin(), orders.end()), opts_(opts), memo_(opts.memo_capacity) {
        adj_ = g.adjacency_masks();
    }

    std::optional<path_factor> run() {
        std::uint64_t all = n_ == 64 ? ~0ull : (1ull << n_) - 1;
        if (solve(all)) {
            path_factor f;
            f.paths = stack_;
            return f;
        }
        return std::nullopt;
    }

private:
    const graph& g_;
    int n_;
    std::vector<int> orders_;
    solver_options opts_;
    fail_memo memo_;
    std::vector<std::uint64_t> adj_;
    std::vector<vertex_path> stack_;
    std::uint64_t nodes_ = 0;

    bool solve(std::uint64_t uncovered) {
        if (uncovered == 0) return true;
        if (memo_.contains(uncovered)) return false;
        if (++nodes_ > opts_.max_nodes) throw budget_error("factor search node budget exceeded");
        int v = __builtin_ctzll(uncovered);
        for (int len : orders_) {
            if (static_cast<int>(std::popcount(uncovered)) < len) continue;
            if (enumerate_through(v, len, uncovered)) return true;
        }
        memo_.insert(uncovered);
        return false;
    }

    // All order-`len` paths containing v inside `uncovered`, v at every
    // possible position; a path and its reverse count once (front < back).
    bool enumerate_through(int v, int len, std::uint64_t uncovered) {
        vertex_path left{v}, right;
        for (int k = 0; k < len; ++k)
            if (extend_left(len, k, uncovered & ~(1ull << v), left, right, uncovered)) return true;
        return false;
    }

    bool extend_left(int len, int want_left, std::uint64_t avail, vertex_path& left, vertex_path& right,
                     std::uint64_t uncovered) {
        if (static_cast<int>(left.size()) - 1 == want_left)
            return extend_right(len, avail, left, right, uncovered);
        std::uint64_t cand = adj_[left.back()] & avail;
        while (cand) {
            int u = __builtin_ctzll(cand);
            cand &= cand - 1;
            left.push_back(u);
            if (extend_left(len, want_left, avail & ~(1ull << u), left, right, uncovered)) return true;
            left.pop_back();
        }
        return false;
    }

    bool extend_right(int len, std::uint64_t avail, vertex_path& left, vertex_path& right, std::uint64_t uncovered) {
        if (static_cast<int>(left.size() + right.size()) == len) {
            // assembled path: left reversed, then right
            vertex_path p(left.rbegin(), left.rend());
            p.insert(p.end(), right.begin(), right.end());
            if (p.front() > p.back()) return false;  // reversal duplicate
            std::uint64_t mask = 0;
            for (int u : p) mask |= 1ull << u;
            stack_.push_back(p);
            if (solve(uncovered & ~mask)) return true;
            stack_.pop_back();
            return false;
        }
        int tip = right.empty() ? left.front() : right.back();
        std::uint64_t cand = adj_[tip] & avail;
        while (cand) {
            int u = __builtin_ctzll(cand);
            cand &= cand - 1;
            right.push_back(u);
            if (extend_right(len, avail & ~(1ull << u), left, right, uncovered)) return true;
            right.pop_back();
        }
        return false;
    }
};

}  // namespace

std::optional<path_factor> find_factor_exact(const graph& g, const std::set<int>& allowed_orders,
                                             const solver_options& opts) {
    if (allowed_orders.empty()) throw std::invalid_argument("allowed_orders empty");
    for (int o : allowed_orders)
        if (o < 2) throw std::invalid_argument("allowed order < 2");
    if (g.order() > 64) throw budget_error("factor search requires order <= 64");
    if (g.order() == 0) return path_factor{};
    exact_solver s(g, allowed_orders, opts);
    auto f = s.run();
    if (f) {
        auto chk = verify_factor(g, *f, allowed_orders);
        if (!chk) throw std::logic_error("solver produced invalid factor: " + chk.reason);
    }
    return f;
}

bool has_path_factor(const graph& g) {
    int n = g.order();
    if (n > 63) throw budget_error("has_path_factor requires order <= 63");
    if (n == 0) return true;
    auto adj = g.adjacency_masks();
    std::uint64_t lim = 1ull << n;
    for (std::uint64_t x = 0; x < lim; ++x)
        if (count_isolated(adj, n, x) > 2 * std::popcount(x)) return false;
    return true;
}

}  // namespace pfk
