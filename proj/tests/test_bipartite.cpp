#include <doctest.h>

#include <algorithm>
#include <bit>
#include <set>

#include "pfk/bipartite.hpp"
#include "pfk/errors.hpp"
#include "pfk/extremal.hpp"
#include "support/brute.hpp"
#include "support/instances.hpp"

using pfk::bipartite_instance;
using pfk::path_factor;
using pfk::vertex_path;

namespace {

// the 2+3 world: s1=0, s2=1, t1=2, t2=3 (both T1), c=4 (T2);
// edges s1-t1, s1-t2, s2-c, s2-t1
bipartite_instance make_23() { return pfk::make_bipartite(2, 2, 1, {{0, 0}, {0, 1}, {1, 2}, {1, 0}}); }

long long weighted_t(const bipartite_instance& inst, const vertex_path& p) {
    long long t1 = 0, t2 = 0;
    for (int v : p) {
        if (inst.t1_side.contains(v)) ++t1;
        if (inst.t2_side.contains(v)) ++t2;
    }
    return 3 * t1 + 2 * t2;
}

long long s_count(const bipartite_instance& inst, const vertex_path& p) {
    long long s = 0;
    for (int v : p)
        if (inst.s_side.contains(v)) ++s;
    return s;
}

}  // namespace

TEST_CASE("check_t2_hypothesis") {
    // single edge
    auto single = pfk::make_bipartite(1, 1, 0, {{0, 0}});
    CHECK(!pfk::check_t2_hypothesis(single).has_value());

    // K_{2,3}: 3*3 = 9 <= 4*2+1 = 9, every X has N(X) = T
    std::vector<std::pair<int, int>> k23;
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 3; ++t) k23.emplace_back(s, t);
    auto inst = pfk::make_bipartite(2, 3, 0, k23);
    CHECK(!pfk::check_t2_hypothesis(inst).has_value());
    {  // direct sweep over the 4 subsets of S
        for (int mask = 0; mask < 4; ++mask) {
            std::set<int> nb;
            for (int s = 0; s < 2; ++s)
                if ((mask >> s) & 1)
                    for (int t = 0; t < 3; ++t) nb.insert(t);
            bool ok = 3 * static_cast<int>(nb.size()) >= 4 * std::popcount(static_cast<unsigned>(mask)) ||
                      static_cast<int>(nb.size()) == 3;
            CHECK(ok);
        }
    }

    // one S vertex cannot carry three T1 vertices: 9 > 5
    auto bad = pfk::make_bipartite(1, 3, 0, {{0, 0}, {0, 1}, {0, 2}});
    auto w = pfk::check_t2_hypothesis(bad);
    REQUIRE(w.has_value());
    CHECK(w->condition == "t2-weight");
    CHECK(w->lhs == 9);
    CHECK(w->rhs == 5);

    // neighborhood violation: two S vertices sharing one T1 vertex
    auto nb_bad = pfk::make_bipartite(2, 2, 0, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(!pfk::check_t2_hypothesis(nb_bad).has_value());
    auto nb_bad2 = pfk::make_bipartite(2, 2, 0, {{0, 0}, {1, 0}});
    auto w2 = pfk::check_t2_hypothesis(nb_bad2);
    REQUIRE(w2.has_value());
    CHECK(w2->condition == "t2-neighborhood");
}

TEST_CASE("classify_component") {
    auto inst = make_23();
    CHECK(pfk::classify_component({2, 0, 3}, inst) == std::pair<int, int>{3, 1});
    CHECK(pfk::classify_component({4, 1}, inst) == std::pair<int, int>{2, 2});
    auto big = pfk::make_bipartite(3, 4, 0, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 3}});
    CHECK(pfk::classify_component({3, 0, 4, 1, 5, 2, 6}, big) == std::pair<int, int>{7, 1});
}

TEST_CASE("s_central_spanning") {
    auto single = pfk::make_bipartite(1, 1, 0, {{0, 0}});
    auto f = pfk::s_central_spanning(single);
    REQUIRE(f.paths.size() == 1);
    CHECK(f.paths[0] == vertex_path{0, 1});

    // K_{2,3}: spanning S-central factor must exist; oracle = exhaustive
    std::vector<std::pair<int, int>> k23;
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 3; ++t) k23.emplace_back(s, t);
    auto inst = pfk::make_bipartite(2, 3, 0, k23);
    auto fk = pfk::s_central_spanning(inst);
    CHECK(!pfk::validate_s_central(inst, fk).has_value());
    CHECK(pfk::brute_force_central_factor(inst).has_value());

    // isolated T vertex: hypothesis failure caught by the checker and,
    // structurally, by the growth loop
    auto iso = pfk::make_bipartite(1, 2, 0, {{0, 0}});
    CHECK(pfk::check_t2_hypothesis(iso).has_value());
    CHECK_THROWS_AS(pfk::s_central_spanning(iso), pfk::hypothesis_error);
}

TEST_CASE("s_central_spanning satisfies the scaled weighted identities") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto inst = testgen::random_hypothesis_instance(seed);
        auto f = pfk::s_central_spanning(inst);
        REQUIRE(!pfk::validate_s_central(inst, f).has_value());
        for (const auto& p : f.paths) {
            auto [order, cls] = pfk::classify_component(p, inst);
            long long lhs = weighted_t(inst, p), s = s_count(inst, p);
            if (order == 3 && cls == 1) CHECK(lhs == 4 * s + 2);  // = 6
            if (order == 3 && cls == 2) CHECK(lhs >= 4 * s);
            if (order == 5 && cls == 1) CHECK(lhs > 4 * s);
            if (order == 7 && cls == 1) CHECK(lhs == 4 * s);
        }
    }
}

TEST_CASE("factor digraph arcs and phi") {
    auto inst = make_23();
    std::vector<vertex_path> comps{{2, 0, 3}, {1, 4}};
    auto dg = pfk::build_factor_digraph(inst, comps);
    CHECK(dg.has_arc(1, 0));           // s2 sees t1 in the other component
    CHECK(!dg.has_arc(0, 1));          // s1 does not see c
    CHECK(dg.phi(1, 0) == std::pair<int, int>{1, 2});
    CHECK_THROWS_AS(dg.phi(0, 1), std::invalid_argument);
}

TEST_CASE("find_complete_system on the 2+3 world") {
    auto inst = make_23();
    std::vector<vertex_path> comps{{2, 0, 3}, {1, 4}};  // [t1,s1,t2], [s2,c]

    // oracle: enumerate all admissible paths of the 2-node digraph by hand:
    // only arc is 1 -> 0, head order 2 (valid), tail in C13 -> exactly one
    auto dg = pfk::build_factor_digraph(inst, comps);
    int arc_count = 0;
    for (const auto& row : dg.out) arc_count += static_cast<int>(row.size());
    CHECK(arc_count == 1);

    auto sys = pfk::find_complete_system(inst, comps, {});
    REQUIRE(sys.paths.size() == 1);
    CHECK(sys.paths[0] == std::vector<int>{1, 0});

    // a complete seed is a fixed point
    auto again = pfk::find_complete_system(inst, comps, sys);
    CHECK(again.paths == sys.paths);

    // no C13 component -> precondition error
    std::vector<vertex_path> no_c13{{2, 1, 4}, {0, 3}};
    CHECK_THROWS_AS(pfk::find_complete_system(inst, no_c13, {}), std::invalid_argument);
}

TEST_CASE("rewire on the 2+3 world") {
    auto inst = make_23();
    std::vector<vertex_path> comps{{2, 0, 3}, {1, 4}};

    auto res = pfk::rewire(inst, comps, {1, 0});
    CHECK(res.dropped_c13);
    CHECK(res.i0 == 2);
    REQUIRE(res.comps.size() == 1);
    // hand-simulated: the P5 c,s2,t1,s1,t2 stored canonically
    CHECK(res.comps[0] == vertex_path{3, 0, 2, 1, 4});
    path_factor f;
    f.paths = res.comps;
    CHECK(!pfk::validate_central_factor(inst, f).has_value());

    // chain not ending in a T2-free order-3 component
    CHECK_THROWS_AS(pfk::rewire(inst, comps, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(pfk::rewire(inst, comps, {1}), std::invalid_argument);
}

TEST_CASE("rewire drop step never leaves short or T2-free-order-3 pieces") {
    // across random instances, drive the engine pieces through rewire directly
    int exercised = 0;
    for (std::uint64_t seed = 100; seed < 260 && exercised < 25; ++seed) {
        auto inst = testgen::random_hypothesis_instance(seed);
        auto f = pfk::s_central_spanning(inst);
        auto comps = f.paths;
        // count T2-free order-3 components
        std::vector<int> c13;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            auto [o, c] = pfk::classify_component(comps[i], inst);
            if (o == 3 && c == 1) c13.push_back(static_cast<int>(i));
        }
        if (c13.empty()) continue;
        ++exercised;
        auto sys = pfk::find_complete_system(inst, comps, {});
        // reconstruct the chain exactly as the engine does: follow the last
        // path; on a visited terminus jump to its earliest occurrence
        std::vector<int> chain;
        {
            int k = static_cast<int>(sys.paths.size()) - 1, j = 0;
            while (true) {
                const auto& p = sys.paths[k];
                for (int idx = j; idx < static_cast<int>(p.size()); ++idx) chain.push_back(p[idx]);
                int last = p.back();
                auto [o, c] = pfk::classify_component(comps[last], inst);
                if (o == 3 && c == 1) break;
                int nk = -1, nj = -1;
                for (int q = 0; q < k && nk == -1; ++q) {
                    auto it = std::find(sys.paths[q].begin(), sys.paths[q].end(), last);
                    if (it != sys.paths[q].end()) {
                        nk = q;
                        nj = static_cast<int>(it - sys.paths[q].begin());
                    }
                }
                REQUIRE(nk != -1);
                k = nk;
                j = nj + 1;
            }
        }
        auto res = pfk::rewire(inst, comps, chain);
        // new pieces: components of the result not present before
        for (const auto& p : res.comps) {
            if (std::find(comps.begin(), comps.end(), p) != comps.end()) continue;
            auto [o, c] = pfk::classify_component(p, inst);
            CHECK(p.size() >= 2);
            CHECK((o != 3 || c == 2));
            if (res.dropped_c13 && chain.size() == 2) CHECK(o != 3);
        }
    }
    CHECK(exercised > 0);
}

TEST_CASE("s_central_t2_factor on the named instances") {
    // 2+3 world
    auto inst = make_23();
    auto f = pfk::s_central_t2_factor(inst);
    CHECK(!pfk::validate_central_factor(inst, f).has_value());

    // T2 empty, perfectly matchable (complete bipartite K_{2,2})
    auto k22 = pfk::make_bipartite(2, 2, 0, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    auto fm = pfk::s_central_t2_factor(k22);
    CHECK(fm.paths.size() == 2);
    for (const auto& p : fm.paths) CHECK(p.size() == 2);

    // single edge
    auto single = pfk::make_bipartite(1, 1, 0, {{0, 0}});
    auto fs = pfk::s_central_t2_factor(single);
    REQUIRE(fs.paths.size() == 1);
    CHECK(fs.paths[0] == vertex_path{0, 1});

    // hypothesis violation is rejected up front
    auto bad = pfk::make_bipartite(1, 3, 0, {{0, 0}, {0, 1}, {0, 2}});
    CHECK_THROWS_AS(pfk::s_central_t2_factor(bad), pfk::hypothesis_error);
}

TEST_CASE("engine output is always a valid central factor; brute force agrees on existence") {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        auto inst = testgen::random_hypothesis_instance(seed);
        auto f = pfk::s_central_t2_factor(inst);
        CHECK(!pfk::validate_central_factor(inst, f).has_value());
        if (inst.g.order() <= 8) {
            auto brute = pfk::brute_force_central_factor(inst);
            REQUIRE(brute.has_value());  // theorem: a central factor exists
        }
        // determinism
        auto f2 = pfk::s_central_t2_factor(inst);
        CHECK(f.paths == f2.paths);
    }
}
