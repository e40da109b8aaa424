#include <doctest.h>

#include <fstream>
#include <sstream>

#include "splicekit/report.hpp"

#include "fixtures.hpp"

using namespace splicekit;
using nlohmann::json;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

json golden(const std::string& name) { return load_json(std::string(SPLICEKIT_GOLDEN_DIR) + "/" + name); }
json schema(const std::string& name) { return load_json(std::string(SPLICEKIT_SCHEMA_DIR) + "/" + name); }

// Minimal structural validator: type / required / properties / items,
// with multi-type alternatives like ["integer", "string"].
bool validates(const json& value, const json& sch, std::string* why) {
    auto type_ok = [&](const std::string& t) {
        if (t == "object") return value.is_object();
        if (t == "array") return value.is_array();
        if (t == "string") return value.is_string();
        if (t == "integer") return value.is_number_integer();
        if (t == "number") return value.is_number();
        if (t == "boolean") return value.is_boolean();
        if (t == "null") return value.is_null();
        return false;
    };
    if (sch.contains("type")) {
        bool okay = false;
        if (sch["type"].is_array()) {
            for (const auto& t : sch["type"]) okay = okay || type_ok(t.get<std::string>());
        } else {
            okay = type_ok(sch["type"].get<std::string>());
        }
        if (!okay) {
            *why = "type mismatch: expected " + sch["type"].dump() + ", got " + value.dump().substr(0, 80);
            return false;
        }
    }
    if (value.is_object()) {
        if (sch.contains("required"))
            for (const auto& key : sch["required"])
                if (!value.contains(key.get<std::string>())) {
                    *why = "missing required key " + key.get<std::string>();
                    return false;
                }
        if (sch.contains("properties"))
            for (const auto& [key, sub] : sch["properties"].items())
                if (value.contains(key) && !validates(value[key], sub, why)) {
                    *why = key + "." + *why;
                    return false;
                }
    }
    if (value.is_array() && sch.contains("items"))
        for (const auto& item : value)
            if (!validates(item, sch["items"], why)) {
                *why = "[]." + *why;
                return false;
            }
    return true;
}

void check_schema(const json& rep, const std::string& schema_name) {
    std::string why;
    bool okay = validates(rep, schema(schema_name), &why);
    if (!okay) MESSAGE(why);
    CHECK(okay);
}

}  // namespace

TEST_CASE("analyze reports match the stored golden files verbatim") {
    std::string text33 = fixtures::read_file(fixtures::data_path("d33.graph"));
    json rep33 = analyze_report(parse_graph(text33), text33);
    CHECK(rep33 == golden("d33_analyze.json"));
    check_schema(rep33, "analyze.schema.json");

    std::string text9 = fixtures::read_file(fixtures::data_path("d9.graph"));
    json rep9 = analyze_report(parse_graph(text9), text9);
    CHECK(rep9 == golden("d9_analyze.json"));
    check_schema(rep9, "analyze.schema.json");

    CHECK(rep33["discriminant"]["order"] == 33);
    CHECK(rep9["discriminant"]["order"] == 9);
}

TEST_CASE("equations and curve reports match their golden files") {
    std::string text33 = fixtures::read_file(fixtures::data_path("d33.graph"));
    auto g = parse_graph(text33);
    json eq = equations_report(g, text33, {});
    CHECK(eq == golden("d33_equations.json"));
    check_schema(eq, "equations.schema.json");
    CHECK(eq["system"]["text"] == "Y1^3 + Y2^2 + Y4^3 = 0\nY2^5 + Y3^3 + Y4^2 = 0\n");

    json cv = curve_report(g, 1, text33, true);
    CHECK(cv == golden("d33_curve_root1.json"));
    check_schema(cv, "curve.schema.json");
    CHECK(cv["delta"] == 6);
    CHECK(cv["maj"]["equality"] == true);
}

TEST_CASE("check report and its schema") {
    std::string text = fixtures::read_file(fixtures::data_path("d33.graph"));
    json rep = check_report(parse_graph(text), text);
    check_schema(rep, "check.schema.json");
    CHECK(rep["conditions_hold"] == true);

    std::string bad_text = fixtures::read_file(fixtures::data_path("sgfail.graph"));
    json bad = check_report(parse_graph(bad_text), bad_text);
    check_schema(bad, "check.schema.json");
    CHECK(bad["conditions_hold"] == false);
    bool found = false;
    for (const auto& e : bad["semigroup"]["edges"])
        if (e["node"] == 4 && e["toward"] == 1) {
            found = true;
            CHECK(e["ok"] == false);
        }
    CHECK(found);

    std::string cong_text = fixtures::read_file(fixtures::data_path("congfail.graph"));
    json cong = check_report(parse_graph(cong_text), cong_text);
    check_schema(cong, "check.schema.json");
    CHECK(cong["semigroup"]["all"] == true);
    CHECK(cong["congruence"]["all"] == false);
    CHECK(cong["conditions_hold"] == false);
}

TEST_CASE("verify report schema") {
    json rep;
    rep["command"] = "verify";
    rep["graphs"] = 1;
    rep["identities"] = identity_result_to_json(run_identity_suite(fixtures::e8()));
    check_schema(rep, "verify.schema.json");
    CHECK(rep["identities"]["ok"] == true);
}

TEST_CASE("reports round-trip through JSON text") {
    std::string text = fixtures::read_file(fixtures::data_path("d9.graph"));
    json rep = analyze_report(parse_graph(text), text);
    json reparsed = json::parse(rep.dump());
    CHECK(reparsed == rep);
}

TEST_CASE("integers beyond 2^53 become decimal strings in reports") {
    Int w = -(Int(1) << 60);
    ResolutionGraph g({{1, w}}, {});
    json rep = analyze_report(g, "synthetic");
    CHECK(rep["graph"]["vertices"][0]["weight"].is_string());
    CHECK(rep["graph"]["vertices"][0]["weight"] == w.get_str());
}

TEST_CASE("the identity-suite comparator catches a corrupted linking matrix") {
    // negative test of the harness: verify that disagreement between the
    // two linking routes is actually detected by the comparison the suite
    // performs
    auto g = fixtures::d33();
    LinkingMatrix lm = linking_matrix(g);
    SpliceDiagram sd = maximal_splice_diagram(g);
    lm.m.at(0, 1) += 1;  // corrupt one entry
    bool caught = false;
    for (VertexId v : g.ids())
        for (VertexId w : g.ids())
            if (lm.at(v, w) != linking_path(sd, v, w)) caught = true;
    CHECK(caught);
}
