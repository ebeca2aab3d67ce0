// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Runs everything by default; pass criterion numbers to run a subset.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "pfk/bipartite.hpp"
#include "pfk/deficiency.hpp"
#include "pfk/extremal.hpp"
#include "pfk/factor.hpp"
#include "pfk/graph.hpp"
#include "pfk/reduction.hpp"
#include "support/enumerate.hpp"
#include "support/instances.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// expected counts: all graphs / connected graphs on n vertices
const std::array<long long, 9> all_counts = {1, 1, 2, 4, 11, 34, 156, 1044, 12346};
const std::array<long long, 9> connected_counts = {1, 1, 1, 2, 6, 21, 112, 853, 11117};

std::vector<pfk::graph>& connected_upto8() {
    static std::vector<pfk::graph> graphs;
    if (graphs.empty()) {
        for (int n = 1; n <= 8; ++n) {
            auto cs = enumerate::connected_graphs(n);
            if (static_cast<long long>(cs.size()) != connected_counts[n])
                throw std::runtime_error("enumerator count mismatch at n=" + std::to_string(n));
            for (auto& g : cs) graphs.push_back(std::move(g));
        }
    }
    return graphs;
}

bool criterion1() {
    auto t0 = clock_type::now();
    long long checked = 0, with_condition = 0, failures = 0;
    for (const auto& g : connected_upto8()) {
        ++checked;
        if (pfk::check_sufficient(g).has_value()) continue;
        ++with_condition;
        auto exact = pfk::find_factor_exact(g, {2, 5});
        bool exact_ok = exact && pfk::verify_factor(g, *exact, {2, 5}).ok;
        auto cons = pfk::find_factor(g);
        bool cons_ok = cons.factor && pfk::verify_factor(g, *cons.factor, {2, 5}).ok;
        if (!exact_ok || !cons_ok) {
            ++failures;
            std::cerr << "  counterexample? " << pfk::to_graph6(g) << " exact=" << exact_ok
                      << " constructive=" << cons_ok << "\n";
        }
    }
    double secs = seconds_since(t0);
    bool pass = failures == 0 && secs <= 300.0;
    std::printf("criterion 1 [%s]: sufficient-condition sweep, %lld connected graphs <= 8 vertices, %lld satisfy "
                "the condition, %lld failures, %.1fs (limit 300s)\n",
                pass ? "PASS" : "FAIL", checked, with_condition, failures, secs);
    return pass;
}

bool criterion2() {
    auto t0 = clock_type::now();
    long long with_factor = 0, failures = 0;
    for (const auto& g : connected_upto8()) {
        if (!pfk::find_factor_exact(g, {2, 5}).has_value()) continue;
        ++with_factor;
        if (pfk::check_necessary(g).has_value()) {
            ++failures;
            std::cerr << "  necessary-condition failure: " << pfk::to_graph6(g) << "\n";
        }
    }
    double secs = seconds_since(t0);
    bool pass = failures == 0;
    std::printf("criterion 2 [%s]: necessary-condition sweep, %lld graphs with a {2,5}-factor, %lld failures, "
                "%.1fs\n",
                pass ? "PASS" : "FAIL", with_factor, failures, secs);
    return pass;
}

bool criterion3() {
    auto t0 = clock_type::now();
    long long checked = 0, discrepancies = 0;
    for (int n = 1; n <= 7; ++n) {
        auto graphs = enumerate::all_graphs(n);
        if (static_cast<long long>(graphs.size()) != all_counts[n])
            throw std::runtime_error("enumerator count mismatch (all graphs) at n=" + std::to_string(n));
        for (const auto& g : graphs) {
            ++checked;
            bool cond = !pfk::check_theorem_a(g).has_value();
            bool solved = pfk::find_factor_exact(g, {2, 3}).has_value();
            if (cond != solved) {
                ++discrepancies;
                std::cerr << "  theorem-A discrepancy: " << pfk::to_graph6(g) << "\n";
            }
        }
    }
    double secs = seconds_since(t0);
    bool pass = discrepancies == 0;
    std::printf("criterion 3 [%s]: Theorem A iff-check, %lld graphs <= 7 vertices, %lld discrepancies, %.1fs\n",
                pass ? "PASS" : "FAIL", checked, discrepancies, secs);
    return pass;
}

bool criterion4() {
    auto t0 = clock_type::now();
    bool pass = true;
    for (int n = 1; n <= 2; ++n) {
        pfk::graph h = pfk::gen_hn(n);
        bool no_factor = !pfk::find_factor_exact(h, {2, 5}).has_value();
        // max over X of 3c1+2c3-4|X|: slack against 4|X|+2 must be exactly 0
        auto bound = pfk::check_family_bound(h, {{1, 3}, {3, 2}}, 4, 1, 2, 1);
        bool tight = bound.max_slack == 0;
        bool sufficient_fails = pfk::check_sufficient(h).has_value();
        if (!(no_factor && tight && sufficient_fails)) pass = false;
        std::printf("  H_%d: no {2,5}-factor=%d, max(3c1+2c3-4|X|)=%lld (want 2)\n", n, no_factor,
                    bound.max_slack + 2);
    }
    double secs = seconds_since(t0);
    pass = pass && secs <= 120.0;
    std::printf("criterion 4 [%s]: extremal tightness for H_1, H_2, %.1fs (limit 120s)\n", pass ? "PASS" : "FAIL",
                secs);
    return pass;
}

bool criterion5() {
    auto t0 = clock_type::now();
    pfk::graph hp = pfk::gen_hprime(3, 1);
    pfk::sweep_options sweep;
    sweep.jobs = 4;
    int k = 3;
    std::map<int, long long> weights;
    for (int j = 0; j < k; ++j) weights[2 * j + 1] = 8ll * k + 3;
    auto bound = pfk::check_family_bound(hp, weights, 4ll * k + 6, 1, 2ll * k + 3, 1, sweep);
    bool bound_ok = bound.max_slack <= 0;
    bool no_factor = !pfk::find_factor_exact(hp, {2, 7}).has_value();
    double secs = seconds_since(t0);
    bool pass = bound_ok && no_factor && secs <= 900.0;
    std::printf("criterion 5 [%s]: H'_1 (22 vertices): 2^22 bound sweep max_slack=%lld (<=0), no {2,7}-factor=%d, "
                "%.1fs (limit 900s)\n",
                pass ? "PASS" : "FAIL", bound.max_slack, no_factor, secs);
    return pass;
}

bool criterion6() {
    auto t0 = clock_type::now();
    long long validated = 0, brute_checked = 0, failures = 0;
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        auto inst = testgen::random_hypothesis_instance(seed * 7919);
        pfk::path_factor f;
        try {
            f = pfk::s_central_t2_factor(inst);
        } catch (const std::exception& e) {
            ++failures;
            std::cerr << "  engine threw on seed " << seed << ": " << e.what() << "\n";
            continue;
        }
        if (pfk::validate_central_factor(inst, f).has_value()) {
            ++failures;
            std::cerr << "  invalid central factor on seed " << seed << "\n";
            continue;
        }
        ++validated;
        if (inst.g.order() <= 8) {
            ++brute_checked;
            if (!pfk::brute_force_central_factor(inst).has_value()) {
                ++failures;
                std::cerr << "  brute-force disagreement on seed " << seed << "\n";
            }
        }
    }
    double secs = seconds_since(t0);
    bool pass = failures == 0 && validated == 500;
    std::printf("criterion 6 [%s]: bipartite engine on 500 random instances, %lld validated, %lld brute-checked, "
                "%lld failures, %.1fs\n",
                pass ? "PASS" : "FAIL", validated, brute_checked, failures, secs);
    return pass;
}

std::string run_cmd(const std::string& cmd) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed");
    std::array<char, 8192> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    out += "\nexit:" + std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) + "\n";
    return out;
}

bool criterion7() {
    auto t0 = clock_type::now();
    const char* bin_env = std::getenv("PFK_BIN");
    std::string bin = bin_env ? bin_env : "./build/tools/pfk";

    // stream: all connected graphs on exactly 6 vertices
    std::string stream_path = "/tmp/pfk_acceptance_stream.g6";
    {
        FILE* f = fopen(stream_path.c_str(), "w");
        if (!f) throw std::runtime_error("cannot write stream file");
        for (const auto& g : enumerate::connected_graphs(6)) {
            std::string line = pfk::to_graph6(g) + "\n";
            fwrite(line.data(), 1, line.size(), f);
        }
        fclose(f);
    }

    // (command, exit code the stream must produce)
    std::vector<std::pair<std::string, int>> commands = {
        {"check --file " + stream_path, -1},  // some graphs violate the condition
        {"solve --orders 2,5 --method exact --file " + stream_path, -1},
        {"solve --orders 2,5 --method constructive --file " + stream_path, -1},
        {"solve --orders 2,3 --file " + stream_path, -1},
        {"sweep --assert theorem1 --file " + stream_path, 0},
        {"sweep --assert prop-necessary --file " + stream_path, 0},
        {"sweep --assert factA --file " + stream_path, 0},
        {"conjecture --k 3 --file " + stream_path, 0},
    };
    long long mismatches = 0;
    for (const auto& [cmd, want_exit] : commands) {
        // stderr (the human summary) participates in the comparison as well
        std::string one = run_cmd(bin + " " + cmd + " --jobs 1 2>&1 1>/tmp/pfk_out1.txt");
        one += run_cmd("cat /tmp/pfk_out1.txt");
        std::string four = run_cmd(bin + " " + cmd + " --jobs 4 2>&1 1>/tmp/pfk_out4.txt");
        four += run_cmd("cat /tmp/pfk_out4.txt");
        if (one != four || one.empty()) {
            ++mismatches;
            std::cerr << "  jobs mismatch for: " << cmd << "\n";
        }
        if (want_exit >= 0 && one.find("exit:" + std::to_string(want_exit) + "\n") == std::string::npos) {
            ++mismatches;
            std::cerr << "  unexpected exit code for: " << cmd << "\n";
        }
    }
    double secs = seconds_since(t0);
    bool pass = mismatches == 0;
    std::printf("criterion 7 [%s]: --jobs 4 vs --jobs 1 byte-identical records over %zu commands, %lld mismatches, "
                "%.1fs\n",
                pass ? "PASS" : "FAIL", commands.size(), mismatches, secs);
    return pass;
}

bool criterion8() {
    auto t0 = clock_type::now();
    long long failures = 0, count = 0;
    std::uint64_t seed = 20260810;
    for (int rep = 0; rep < 10000; ++rep) {
        int n = static_cast<int>(pfk::splitmix64_next(seed) % 13);  // 0..12
        double p = (pfk::splitmix64_next(seed) % 1000) / 999.0;
        pfk::graph g = pfk::gen_random(n, p, pfk::splitmix64_next(seed));
        ++count;
        if (pfk::parse_graph6(pfk::to_graph6(g)) != g) {
            ++failures;
            std::cerr << "  round-trip failure: " << pfk::to_graph6(g) << "\n";
        }
    }
    double secs = seconds_since(t0);
    bool pass = failures == 0;
    std::printf("criterion 8 [%s]: graph6 round-trip on %lld random graphs (n <= 12), %lld failures, %.1fs\n",
                pass ? "PASS" : "FAIL", count, failures, secs);
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
    auto want = [&](int c) { return wanted.empty() || wanted.count(c); };

    bool all = true;
    try {
        if (want(1)) all = criterion1() && all;
        if (want(2)) all = criterion2() && all;
        if (want(3)) all = criterion3() && all;
        if (want(4)) all = criterion4() && all;
        if (want(5)) all = criterion5() && all;
        if (want(6)) all = criterion6() && all;
        if (want(7)) all = criterion7() && all;
        if (want(8)) all = criterion8() && all;
    } catch (const std::exception& e) {
        std::printf("acceptance aborted: %s\n", e.what());
        return 2;
    }
    std::printf("acceptance: %s\n", all ? "ALL PASS" : "FAILURES");
    return all ? 0 : 1;
}
