#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "splicekit/dcurve.hpp"
#include "splicekit/discriminant.hpp"
#include "splicekit/equations.hpp"
#include "splicekit/graph.hpp"
#include "splicekit/identities.hpp"
#include "splicekit/randomgraph.hpp"
#include "splicekit/semigroup.hpp"
#include "splicekit/splice.hpp"

namespace splicekit {

using nlohmann::json;

inline std::string input_digest(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;  // FNV-1a
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace detail {

inline json json_class(const DClass& c) {
    json a = json::array();
    for (const auto& x : c.coords) a.push_back(json_int(x));
    return a;
}

inline json json_tuple(const std::vector<Int>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(json_int(x));
    return a;
}

inline json json_rat(const Rat& q) {
    return json{{"num", json_int(Int(q.get_num()))}, {"den", json_int(Int(q.get_den()))}};
}

}  // namespace detail

inline json diagnostics_to_json(const GraphDiagnostics& d) {
    return json{{"is_tree", d.is_tree},
                {"is_negative_definite", d.is_negative_definite},
                {"leaf_ids", d.leaf_ids},
                {"node_ids", d.node_ids},
                {"messages", d.messages}};
}

inline json discriminant_to_json(const DiscriminantGroup& d) {
    json divisors = json::array();
    for (const auto& x : d.divisors) divisors.push_back(detail::json_int(x));
    json classes = json::object();
    for (const auto& [v, c] : d.vertex_class) classes[std::to_string(v)] = detail::json_class(c);
    return json{{"order", detail::json_int(d.order)}, {"elementary_divisors", divisors}, {"vertex_classes", classes}};
}

inline json splice_to_json(const SpliceDiagram& sd) {
    json maximal = json::array();
    for (const auto& [key, w] : sd.half_edge)
        maximal.push_back(json{{"vertex", key.first}, {"toward", key.second}, {"weight", detail::json_int(w)}});
    json edges = json::array();
    for (const auto& e : sd.delta_edges)
        edges.push_back(json{{"a", e.a},
                             {"b", e.b},
                             {"weight_at_a", detail::json_int(e.weight_at_a)},
                             {"weight_at_b", detail::json_int(e.weight_at_b)},
                             {"gamma_path", e.gamma_path}});
    json leafw = json::object();
    for (const auto& [v, w] : sd.leaf_weights) leafw[std::to_string(v)] = detail::json_int(w);
    return json{{"vertices", sd.delta_vertices}, {"edges", edges}, {"leaf_weights", leafw}, {"maximal", maximal}};
}

inline json linking_to_json(const LinkingMatrix& lm) {
    json rows = json::array();
    for (size_t i = 0; i < lm.ids.size(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < lm.ids.size(); ++j)
            row.push_back(detail::json_int(lm.m.at(static_cast<int>(i), static_cast<int>(j))));
        rows.push_back(row);
    }
    return json{{"ids", lm.ids}, {"rows", rows}};
}

inline json d_action_to_json(const DActionTable& t) {
    json rows = json::array();
    for (const auto& r : t.exponents) rows.push_back(detail::json_tuple(r));
    return json{{"order", detail::json_int(t.order)}, {"leaf_ids", t.leaf_ids}, {"rows", rows}};
}

inline json analyze_report(const ResolutionGraph& g, const std::string& input_text) {
    json rep;
    rep["command"] = "analyze";
    rep["input_digest"] = input_digest(input_text);
    rep["graph"] = graph_to_json(g);
    rep["diagnostics"] = diagnostics_to_json(validate(g));
    rep["discriminant"] = discriminant_to_json(discriminant_group(g));
    rep["splice_diagram"] = splice_to_json(maximal_splice_diagram(g));
    rep["linking_matrix"] = linking_to_json(linking_matrix(g));
    rep["d_action"] = d_action_to_json(d_action(g));
    return rep;
}

inline json check_report(const ResolutionGraph& g, const std::string& input_text) {
    json rep;
    rep["command"] = "check";
    rep["input_digest"] = input_digest(input_text);
    SemigroupConditionReport sc = semigroup_condition(g);
    json edges = json::array();
    for (const auto& [key, okay] : sc.edge_flags)
        edges.push_back(json{{"node", key.first}, {"toward", key.second}, {"ok", okay}});
    rep["semigroup"] = json{{"edges", edges}, {"all", sc.all}};
    bool congruence_all = true;
    json nodes = json::array();
    if (sc.all) {
        for (const auto& [node, witness] : congruence_condition(g)) {
            json jn{{"node", node}, {"ok", witness.has_value()}};
            if (witness) {
                jn["character"] = detail::json_class(witness->character);
                json choices = json::object();
                for (const auto& [nb, mono] : witness->choice) choices[std::to_string(nb)] = detail::json_tuple(mono);
                jn["choices"] = choices;
            } else {
                congruence_all = false;
            }
            nodes.push_back(jn);
        }
    } else {
        congruence_all = false;
    }
    rep["congruence"] = json{{"nodes", nodes}, {"all", congruence_all}};
    rep["conditions_hold"] = sc.all && congruence_all;
    return rep;
}

inline json splice_system_to_json(const SpliceSystem& sys) {
    json nodes = json::array();
    for (const auto& blk : sys.nodes) {
        json monos = json::array();
        for (const auto& m : blk.monomials) monos.push_back(detail::json_tuple(m));
        json coeffs = json::array();
        for (const auto& row : blk.coefficients) coeffs.push_back(detail::json_tuple(row));
        json weights{{"unreduced", detail::json_tuple(blk.weights.unreduced)},
                     {"gcd", detail::json_int(blk.weights.gcd)},
                     {"reduced", detail::json_tuple(blk.weights.reduced)},
                     {"total_unreduced", detail::json_int(blk.weights.total_unreduced)},
                     {"total_reduced", detail::json_int(blk.weights.total_reduced)}};
        json jn{{"node", blk.node},
                {"edge_order", blk.edge_order},
                {"weights", weights},
                {"monomials", monos},
                {"coefficients", coeffs},
                {"higher_term_weight_floor", detail::json_int(blk.higher_term_weight_floor)}};
        if (blk.character) jn["character"] = detail::json_class(*blk.character);
        nodes.push_back(jn);
    }
    return json{{"leaves", sys.leaves},
                {"equation_count", sys.equation_count},
                {"equivariant", sys.equivariant},
                {"random_coefficients", sys.random_coefficients},
                {"seed", sys.seed},
                {"nodes", nodes},
                {"text", render_splice_system(sys)}};
}

inline json equations_report(const ResolutionGraph& g, const std::string& input_text, const SpliceSystemOptions& opts) {
    json rep;
    rep["command"] = "equations";
    rep["input_digest"] = input_digest(input_text);
    rep["system"] = splice_system_to_json(generate_splice_system(g, opts));
    return rep;
}

inline json presentation_to_json(const CurvePresentation& pres) {
    std::map<VertexId, int> names;
    for (size_t i = 0; i < pres.variables.size(); ++i) names[pres.variables[i]] = static_cast<int>(i) + 1;
    json eqs = json::array();
    for (const auto& eq : pres.equations)
        eqs.push_back(json{{"lhs", detail::json_tuple(eq.lhs)},
                           {"rhs", detail::json_tuple(eq.rhs)},
                           {"text", render_monomial(pres, eq.lhs, names) + " - " + render_monomial(pres, eq.rhs, names)}});
    return json{{"variables", pres.variables},
                {"equations", eqs},
                {"branch_count", detail::json_int(pres.branch_count)}};
}

inline json curve_report(const ResolutionGraph& g, VertexId root, const std::string& input_text, bool want_gaps) {
    json rep;
    rep["command"] = "curve";
    rep["input_digest"] = input_digest(input_text);
    rep["root"] = root;
    RootedCharSystem sys = rooted_char_system(g, root);
    rep["variables"] = sys.variables;
    json gens = json::array();
    for (const auto& gch : sys.generators)
        gens.push_back(json{{"weight", detail::json_int(gch.weight)}, {"class", detail::json_class(gch.cls)}});
    rep["generators"] = gens;
    rep["s"] = detail::json_int(sys.s);
    rep["r"] = detail::json_int(sys.r);
    rep["order"] = detail::json_int(sys.order);
    rep["qhat"] = json{{"weight", detail::json_int(sys.qhat.weight)}, {"class", detail::json_class(sys.qhat.cls)}};
    SemigroupReport sg = delta(sys, want_gaps);
    rep["delta"] = detail::json_int(sg.delta);
    rep["conductor_weight"] = detail::json_int(sg.conductor_weight);
    if (sg.gaps) {
        json gaps = json::array();
        for (const auto& gp : *sg.gaps)
            gaps.push_back(json{{"weight", detail::json_int(gp.weight)}, {"class", detail::json_class(gp.cls)}});
        rep["gaps"] = gaps;
    }
    if (auto qw = member(sys, sys.qhat)) {
        sg.witnesses[sys.qhat] = *qw;
        rep["qhat_witness"] = detail::json_tuple(*qw);
    }
    MajReport maj = verify_maj(g, root);
    rep["nu"] = detail::json_int(maj.nu);
    rep["maj"] = json{{"two_delta_minus_r", detail::json_int(maj.two_delta_minus_r)},
                      {"nu", detail::json_int(maj.nu)},
                      {"equality", maj.equality},
                      {"conditions_away_from_root", maj.conditions_away_from_root}};
    try {
        rep["presentation"] = presentation_to_json(curve_presentation(g, root));
    } catch (const PresentationError& e) {
        rep["presentation"] = nullptr;
        rep["presentation_error"] = e.what();
    }
    return rep;
}

inline json identity_result_to_json(const IdentitySuiteResult& res) {
    json passed = json::object();
    for (const auto& [name, count] : res.passed) passed[name] = count;
    return json{{"ok", res.ok()}, {"passed", passed}, {"failures", res.failures}};
}

}  // namespace splicekit
