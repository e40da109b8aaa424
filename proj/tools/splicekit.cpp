#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "splicekit/report.hpp"

namespace {

using namespace splicekit;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct LoadedGraph {
    ResolutionGraph graph;
    std::string text;
};

LoadedGraph load_graph(const std::string& path) {
    LoadedGraph lg;
    lg.text = read_file(path);
    lg.graph = parse_graph(lg.text);
    GraphDiagnostics d = validate(lg.graph);
    if (!d.ok()) {
        std::string msg = "invalid graph:";
        for (const auto& m : d.messages) msg += "\n  " + m;
        throw GraphError(msg);
    }
    return lg;
}

void print_report(const nlohmann::json& rep, bool as_json, const std::string& text_form) {
    if (as_json)
        std::cout << rep.dump(2) << "\n";
    else
        std::cout << text_form;
}

std::string analyze_text(const nlohmann::json& rep) {
    std::ostringstream out;
    out << "discriminant group: order " << rep["discriminant"]["order"] << ", elementary divisors "
        << rep["discriminant"]["elementary_divisors"].dump() << "\n";
    out << "splice diagram (with leaf weights):\n";
    for (const auto& e : rep["splice_diagram"]["edges"])
        out << "  edge " << e["a"] << " -- " << e["b"] << "  weights " << e["weight_at_a"] << " | "
            << e["weight_at_b"] << "\n";
    out << "  leaf weights: " << rep["splice_diagram"]["leaf_weights"].dump() << "\n";
    out << "linking matrix (ids " << rep["linking_matrix"]["ids"].dump() << "):\n";
    for (const auto& row : rep["linking_matrix"]["rows"]) out << "  " << row.dump() << "\n";
    if (!rep["d_action"]["rows"].empty()) {
        out << "group action exponents (zeta = exp(-2*pi*i/" << rep["d_action"]["order"] << ")):\n";
        for (size_t i = 0; i < rep["d_action"]["rows"].size(); ++i)
            out << "  e_" << rep["d_action"]["leaf_ids"][i] << ": " << rep["d_action"]["rows"][i].dump() << "\n";
    }
    return out.str();
}

std::string check_text(const nlohmann::json& rep) {
    std::ostringstream out;
    out << "semigroup condition: " << (rep["semigroup"]["all"].get<bool>() ? "holds" : "FAILS") << "\n";
    for (const auto& e : rep["semigroup"]["edges"])
        if (!e["ok"].get<bool>())
            out << "  no admissible monomial at node " << e["node"] << " toward " << e["toward"] << "\n";
    out << "congruence condition: " << (rep["congruence"]["all"].get<bool>() ? "holds" : "FAILS") << "\n";
    for (const auto& n : rep["congruence"]["nodes"])
        if (!n["ok"].get<bool>()) out << "  no common character at node " << n["node"] << "\n";
    return out.str();
}

std::string curve_text(const nlohmann::json& rep) {
    std::ostringstream out;
    out << "root " << rep["root"] << ": s = " << rep["s"] << ", r = " << rep["r"] << ", |D| = " << rep["order"]
        << "\n";
    out << "qhat weight " << rep["qhat"]["weight"] << "\n";
    out << "delta = " << rep["delta"] << ", conductor weight " << rep["conductor_weight"] << ", nu = " << rep["nu"]
        << "\n";
    out << "2*delta - r = " << rep["maj"]["two_delta_minus_r"]
        << (rep["maj"]["equality"].get<bool>() ? " = " : " < ") << "nu\n";
    if (rep.contains("gaps")) out << "gaps: " << rep["gaps"].dump() << "\n";
    if (!rep["presentation"].is_null()) {
        out << "presentation (" << rep["presentation"]["equations"].size() << " binomials, branch count "
            << rep["presentation"]["branch_count"] << "):\n";
        for (const auto& eq : rep["presentation"]["equations"])
            out << "  " << eq["text"].get<std::string>() << " = 0\n";
    } else {
        out << "presentation unavailable: " << rep["presentation_error"].get<std::string>() << "\n";
    }
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"splicekit: combinatorics of splice quotient singularities from resolution graphs"};
    app.require_subcommand(1);

    std::string file;
    std::string random_spec;
    std::int64_t root_id = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool as_json = false, as_text = false, want_gaps = false;

    auto add_io = [&](CLI::App* cmd, bool file_required) {
        if (file_required)
            cmd->add_option("file", file, "graph file (text or JSON)")->required();
        else
            cmd->add_option("file", file, "graph file (text or JSON)");
        cmd->add_flag("--json", as_json, "emit the JSON report");
        cmd->add_flag("--text", as_text, "emit the text report (default)");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "discriminant group, splice diagram, linking data");
    add_io(analyze, true);
    CLI::App* check = app.add_subcommand("check", "semigroup and congruence conditions");
    add_io(check, true);
    CLI::App* equations = app.add_subcommand("equations", "generate the splice diagram equations");
    add_io(equations, true);
    equations->add_option("--seed", seed, "seeded random coefficients instead of Vandermonde rows")
        ->each([&](const std::string&) { seed_set = true; });
    CLI::App* curve = app.add_subcommand("curve", "rooted curve invariants");
    add_io(curve, true);
    curve->add_option("--root", root_id, "root leaf id")->required();
    curve->add_flag("--gaps", want_gaps, "list the gap characters");
    CLI::App* verify = app.add_subcommand("verify", "run the identity suite");
    add_io(verify, false);
    verify->add_option("--random", random_spec, "COUNT,MAXV : random negative-definite trees");
    verify->add_option("--seed", seed, "seed for --random (default 1)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            LoadedGraph lg = load_graph(file);
            nlohmann::json rep = splicekit::analyze_report(lg.graph, lg.text);
            print_report(rep, as_json, analyze_text(rep));
            return kExitOk;
        }
        if (check->parsed()) {
            LoadedGraph lg = load_graph(file);
            nlohmann::json rep = splicekit::check_report(lg.graph, lg.text);
            print_report(rep, as_json, check_text(rep));
            return rep["conditions_hold"].get<bool>() ? kExitOk : kExitCheckFailed;
        }
        if (equations->parsed()) {
            LoadedGraph lg = load_graph(file);
            splicekit::SpliceSystemOptions opts;
            if (seed_set) opts.seed = seed;
            try {
                nlohmann::json rep = splicekit::equations_report(lg.graph, lg.text, opts);
                print_report(rep, as_json, rep["system"]["text"].get<std::string>());
                return kExitOk;
            } catch (const splicekit::SemigroupConditionError& e) {
                nlohmann::json rep = splicekit::check_report(lg.graph, lg.text);
                std::cerr << e.what() << "\n";
                print_report(rep, as_json, check_text(rep));
                return kExitCheckFailed;
            } catch (const splicekit::CongruenceConditionError& e) {
                nlohmann::json rep = splicekit::check_report(lg.graph, lg.text);
                std::cerr << e.what() << "\n";
                print_report(rep, as_json, check_text(rep));
                return kExitCheckFailed;
            }
        }
        if (curve->parsed()) {
            LoadedGraph lg = load_graph(file);
            if (!lg.graph.has_vertex(root_id) || !lg.graph.is_leaf(root_id))
                throw splicekit::GraphError("--root must name a leaf of the graph");
            nlohmann::json rep = splicekit::curve_report(lg.graph, root_id, lg.text, want_gaps);
            print_report(rep, as_json, curve_text(rep));
            return kExitOk;
        }
        if (verify->parsed()) {
            splicekit::IdentitySuiteResult total;
            nlohmann::json rep;
            rep["command"] = "verify";
            int graphs = 0;
            int dumped = 0;
            auto run_one = [&](const splicekit::ResolutionGraph& g) {
                splicekit::IdentitySuiteResult res = splicekit::run_identity_suite(g);
                if (!res.ok() && dumped < 10) {
                    std::string path = "counterexample_" + std::to_string(dumped++) + ".graph";
                    std::ofstream out(path);
                    out << splicekit::serialize(g);
                    std::cerr << "identity failure witness written to " << path << "\n";
                }
                total.merge(res);
                ++graphs;
            };
            if (!random_spec.empty()) {
                splicekit::RandomGraphSpec spec;
                spec.seed = seed ? seed : 1;
                if (std::sscanf(random_spec.c_str(), "%d,%d", &spec.count, &spec.max_vertices) < 1)
                    throw std::runtime_error("--random expects COUNT or COUNT,MAXV");
                rep["random"] = {{"count", spec.count}, {"max_vertices", spec.max_vertices}, {"seed", spec.seed}};
                splicekit::RandomGraphGenerator gen(spec);
                for (int i = 0; i < spec.count; ++i) run_one(gen.next());
            } else if (!file.empty()) {
                LoadedGraph lg = load_graph(file);
                rep["input_digest"] = splicekit::input_digest(lg.text);
                run_one(lg.graph);
            } else {
                throw std::runtime_error("verify needs a graph file or --random");
            }
            rep["graphs"] = graphs;
            rep["identities"] = splicekit::identity_result_to_json(total);
            std::ostringstream text;
            text << "checked " << graphs << " graph(s)\n";
            for (const auto& [name, count] : total.passed) text << "  " << name << ": " << count << " checks\n";
            for (const auto& f : total.failures) text << "  FAIL " << f << "\n";
            text << (total.ok() ? "all identities hold\n" : "identity failures found\n");
            print_report(rep, as_json, text.str());
            return total.ok() ? kExitOk : kExitCheckFailed;
        }
    } catch (const splicekit::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const splicekit::GraphError& e) {
        std::cerr << "graph error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
