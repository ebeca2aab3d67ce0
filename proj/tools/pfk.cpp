#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pfk/errors.hpp"
#include "pfk/extremal.hpp"
#include "pfk/report.hpp"

using nlohmann::json;

namespace {

int default_jobs() {
    if (const char* env = std::getenv("PFK_JOBS")) {
        int j = std::atoi(env);
        if (j >= 1) return j;
    }
    return 1;
}

struct io_options {
    std::string input;  // positional graph6
    bool input_given = false;
    std::string family;  // family spec
    std::string file;    // graph6 file
};

// One graph6 line per stream element; --family is serialized through graph6
// so every path through the toolkit exercises the same ingestion.
std::vector<std::string> gather_lines(const io_options& io) {
    std::vector<std::string> lines;
    if (!io.family.empty()) {
        lines.push_back(pfk::to_graph6(pfk::gen_standard(pfk::parse_family_spec(io.family))));
        return lines;
    }
    if (io.input_given) {
        lines.push_back(io.input);
        return lines;
    }
    std::istream* in = &std::cin;
    std::ifstream f;
    if (!io.file.empty()) {
        f.open(io.file);
        if (!f) throw pfk::parse_error("cannot open file: " + io.file);
        in = &f;
    }
    std::string line;
    while (std::getline(*in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

struct tally {
    long long malformed = 0, errors = 0, bad = 0, total = 0;
};

tally scan(const std::vector<json>& records, const char* bad_key, bool bad_when_false) {
    tally t;
    t.total = static_cast<long long>(records.size());
    for (const auto& r : records) {
        if (r.contains("malformed")) {
            ++t.malformed;
        } else if (r.contains("error")) {
            ++t.errors;
        } else if (r.contains(bad_key) && r[bad_key].is_boolean() && r[bad_key].get<bool>() == bad_when_false) {
            ++t.bad;
        }
    }
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pfk: exact checkers, solvers and generators for {P2,P5}- and {P2,P2k+1}-factors"};
    app.require_subcommand(1);

    int jobs = default_jobs();
    bool timings = false;
    pfk::budgets budgets;
    std::uint64_t max_nodes = budgets.solver.max_nodes;
    std::uint64_t max_subsets = budgets.sweep.max_subsets;
    app.add_option("--jobs", jobs, "worker count (default: PFK_JOBS or 1)");
    app.add_flag("--timings", timings, "add per-record wall-clock fields (nondeterministic)");
    app.add_option("--max-n", budgets.max_n, "largest accepted graph order");
    app.add_option("--max-subsets", max_subsets, "subset sweep budget");
    app.add_option("--max-nodes", max_nodes, "solver node budget");

    io_options io;
    std::vector<CLI::Option*> input_opts;
    auto add_io = [&](CLI::App* cmd, bool positional) {
        if (positional) input_opts.push_back(cmd->add_option("input", io.input, "graph6 line"));
        cmd->add_option("--family", io.family, "family spec (Hn:1 | Hprime:3,1 | path:5 | cycle:6 | complete:4 | random:8,0.5,7)");
        cmd->add_option("--file", io.file, "graph6 file (default: stdin)");
    };

    auto* cmd_check = app.add_subcommand("check", "deficiency condition checks per graph");
    add_io(cmd_check, true);

    auto* cmd_solve = app.add_subcommand("solve", "factor search per graph");
    add_io(cmd_solve, true);
    std::string orders_text = "2,5";
    std::string method = "exact";
    cmd_solve->add_option("--orders", orders_text, "allowed component orders, e.g. 2,5 or 2,7 or 2,3");
    cmd_solve->add_option("--method", method, "exact | constructive")
        ->check(CLI::IsMember({"exact", "constructive"}));

    auto* cmd_sweep = app.add_subcommand("sweep", "assert a theorem over a graph6 stream");
    add_io(cmd_sweep, false);
    std::string assert_name;
    cmd_sweep->add_option("--assert", assert_name, "theorem1 | prop-necessary | factA")->required();

    auto* cmd_extremal = app.add_subcommand("extremal", "generate/verify the extremal families");
    std::string ex_family;
    bool emit_g6 = false, verify = false;
    cmd_extremal->add_option("--family", ex_family, "family spec")->required();
    cmd_extremal->add_flag("--emit-graph6", emit_g6, "print the graph6 line");
    cmd_extremal->add_flag("--verify", verify, "run the family verification");

    auto* cmd_conj = app.add_subcommand("conjecture", "list counterexample candidates for the k>=3 bound");
    add_io(cmd_conj, false);
    int conj_k = 3;
    cmd_conj->add_option("--k", conj_k, "k >= 3")->required();

    for (auto* cmd : {cmd_check, cmd_solve, cmd_sweep, cmd_extremal, cmd_conj}) cmd->fallthrough();

    CLI11_PARSE(app, argc, argv);
    budgets.solver.max_nodes = max_nodes;
    budgets.sweep.max_subsets = max_subsets;
    for (auto* opt : input_opts) io.input_given = io.input_given || opt->count() > 0;

    try {
        if (cmd_extremal->parsed()) {
            if (emit_g6) std::cout << pfk::to_graph6(pfk::gen_standard(pfk::parse_family_spec(ex_family))) << "\n";
            if (!verify) return 0;
            budgets.sweep.jobs = jobs;
            json rec = pfk::extremal_record(ex_family, budgets);
            std::cout << rec.dump() << "\n";
            bool ok = rec["ok"].get<bool>();
            std::cerr << "extremal " << ex_family << ": " << (ok ? "ok" : "FAILED") << "\n";
            return ok ? 0 : 1;
        }

        std::vector<std::string> lines = gather_lines(io);
        // one big graph: shard its subset sweeps instead of the stream
        budgets.sweep.jobs = lines.size() <= 1 ? jobs : 1;
        std::vector<json> records;

        if (cmd_check->parsed()) {
            records = pfk::run_stream(lines, jobs, timings,
                                      [&](const pfk::graph& g) { return pfk::check_record(g, budgets); }, std::cout);
            // exit 1 when some graph violates the sufficient condition
            long long violated = 0;
            tally t = scan(records, "", false);
            for (const auto& r : records)
                if (r.contains("sufficient") && !r["sufficient"]["ok"].get<bool>()) ++violated;
            std::cerr << "check: " << t.total << " graphs, " << violated << " violate the sufficient condition, "
                      << t.malformed << " malformed, " << t.errors << " errors\n";
            if (t.malformed + t.errors > 0) return 2;
            return violated > 0 ? 1 : 0;
        }

        if (cmd_solve->parsed()) {
            std::set<int> orders;
            std::stringstream ss(orders_text);
            std::string part;
            while (std::getline(ss, part, ',')) orders.insert(std::stoi(part));
            bool constructive = method == "constructive";
            records = pfk::run_stream(
                lines, jobs, timings,
                [&](const pfk::graph& g) { return pfk::solve_record(g, orders, constructive, budgets); }, std::cout);
            tally t = scan(records, "found", false);
            std::cerr << "solve: " << t.total << " graphs, " << t.bad << " without a factor, " << t.malformed
                      << " malformed, " << t.errors << " errors\n";
            if (t.malformed + t.errors > 0) return 2;
            return t.bad > 0 ? 1 : 0;
        }

        if (cmd_sweep->parsed()) {
            auto kind = pfk::parse_assertion(assert_name);
            auto failed = [](const json& r) {
                return r.contains("ok") && r["ok"].is_boolean() && !r["ok"].get<bool>();
            };
            records = pfk::run_stream(lines, jobs, timings,
                                      [&](const pfk::graph& g) { return pfk::sweep_record(g, kind, budgets); },
                                      std::cout, failed);
            tally t = scan(records, "ok", false);
            std::cerr << "sweep --assert " << assert_name << ": " << t.total << " graphs, " << t.bad
                      << " assertion failures, " << t.malformed << " malformed (skipped), " << t.errors
                      << " errors\n";
            if (records.size() < lines.size())
                std::cerr << "sweep stopped early at index " << records.size() - 1 << " (counterexample)\n";
            if (t.errors > 0) return 2;
            return t.bad > 0 ? 1 : 0;
        }

        if (cmd_conj->parsed()) {
            records = pfk::run_stream(lines, jobs, timings,
                                      [&](const pfk::graph& g) { return pfk::conjecture_record(g, conj_k, budgets); },
                                      std::cout);
            long long candidates = 0;
            for (const auto& r : records)
                if (r.contains("candidate") && r["candidate"].get<bool>()) ++candidates;
            tally t = scan(records, "", false);
            std::cerr << "conjecture k=" << conj_k << ": " << t.total << " graphs, " << candidates
                      << " counterexample candidates, " << t.malformed << " malformed, " << t.errors << " errors\n";
            if (t.malformed + t.errors > 0) return 2;
            return 0;
        }
    } catch (const pfk::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
