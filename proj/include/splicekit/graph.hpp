#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "splicekit/matrix.hpp"
#include "splicekit/numbers.hpp"

namespace splicekit {

using VertexId = std::int64_t;

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(int ln, int col, const std::string& msg)
        : std::runtime_error("line " + std::to_string(ln) + ", column " + std::to_string(col) + ": " + msg),
          line(ln), column(col) {}
};

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Weighted tree of exceptional curves. Construction enforces well-formed
// combinatorial data (distinct ids, edges into the vertex set, no loops);
// tree-ness and negative definiteness are reported by validate(), since
// parsing is allowed to accept graphs that fail them.
class ResolutionGraph {
public:
    struct Vertex {
        VertexId id;
        Int weight;
        bool operator==(const Vertex& o) const { return id == o.id && weight == o.weight; }
    };

    ResolutionGraph() = default;
    ResolutionGraph(std::vector<Vertex> vertices, std::vector<std::pair<VertexId, VertexId>> edges,
                    std::optional<VertexId> root = std::nullopt)
        : vertices_(std::move(vertices)), edges_(std::move(edges)), root_(root) {
        std::sort(vertices_.begin(), vertices_.end(), [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
        for (size_t i = 0; i + 1 < vertices_.size(); ++i)
            if (vertices_[i].id == vertices_[i + 1].id)
                throw GraphError("duplicate vertex id " + std::to_string(vertices_[i].id));
        for (auto& e : edges_) {
            if (e.first == e.second) throw GraphError("self-loop at vertex " + std::to_string(e.first));
            if (!has_vertex(e.first) || !has_vertex(e.second))
                throw GraphError("edge references unknown vertex");
            if (e.first > e.second) std::swap(e.first, e.second);
        }
        std::sort(edges_.begin(), edges_.end());
        if (root_ && !has_vertex(*root_)) throw GraphError("root is not a declared vertex");
        for (const auto& e : edges_) {
            adj_[e.first].push_back(e.second);
            adj_[e.second].push_back(e.first);
        }
        for (const auto& v : vertices_) {
            auto& nb = adj_[v.id];  // ensure every vertex has an entry
            std::sort(nb.begin(), nb.end());
        }
    }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<std::pair<VertexId, VertexId>>& edges() const { return edges_; }
    std::optional<VertexId> root() const { return root_; }

    bool has_vertex(VertexId id) const {
        return std::binary_search(vertices_.begin(), vertices_.end(), Vertex{id, 0},
                                  [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
    }
    bool has_edge(VertexId a, VertexId b) const {
        if (a > b) std::swap(a, b);
        return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(a, b));
    }
    const Int& weight(VertexId id) const {
        auto it = std::lower_bound(vertices_.begin(), vertices_.end(), Vertex{id, 0},
                                   [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
        if (it == vertices_.end() || it->id != id) throw GraphError("unknown vertex " + std::to_string(id));
        return it->weight;
    }
    const std::vector<VertexId>& neighbors(VertexId id) const {
        auto it = adj_.find(id);
        if (it == adj_.end()) throw GraphError("unknown vertex " + std::to_string(id));
        return it->second;
    }
    int valency(VertexId id) const { return static_cast<int>(neighbors(id).size()); }
    size_t size() const { return vertices_.size(); }

    std::vector<VertexId> ids() const {
        std::vector<VertexId> out;
        out.reserve(vertices_.size());
        for (const auto& v : vertices_) out.push_back(v.id);
        return out;
    }
    // Leaves in ascending id order; this ordering fixes the variable
    // indexing Y_1..Y_t everywhere. A lone vertex counts as a leaf.
    std::vector<VertexId> leaf_ids() const {
        std::vector<VertexId> out;
        for (const auto& v : vertices_)
            if (valency(v.id) <= 1) out.push_back(v.id);
        return out;
    }
    std::vector<VertexId> node_ids() const {
        std::vector<VertexId> out;
        for (const auto& v : vertices_)
            if (valency(v.id) >= 3) out.push_back(v.id);
        return out;
    }
    bool is_leaf(VertexId id) const { return valency(id) <= 1; }

    ResolutionGraph with_root(std::optional<VertexId> r) const {
        return ResolutionGraph(vertices_, edges_, r);
    }

    bool operator==(const ResolutionGraph& o) const {
        return vertices_ == o.vertices_ && edges_ == o.edges_ && root_ == o.root_;
    }

private:
    std::vector<Vertex> vertices_;
    std::vector<std::pair<VertexId, VertexId>> edges_;
    std::optional<VertexId> root_;
    std::map<VertexId, std::vector<VertexId>> adj_;
};

struct GraphDiagnostics {
    bool is_tree = false;
    bool is_negative_definite = false;
    std::vector<VertexId> leaf_ids;
    std::vector<VertexId> node_ids;
    std::vector<std::string> messages;
    bool ok() const { return is_tree && is_negative_definite; }
};

// Intersection matrix A(Γ): weights on the diagonal, 1 for adjacency.
// Row/column order is ascending vertex id.
inline IntMatrix intersection_matrix(const ResolutionGraph& g) {
    const auto ids = g.ids();
    std::map<VertexId, int> idx;
    for (size_t i = 0; i < ids.size(); ++i) idx[ids[i]] = static_cast<int>(i);
    IntMatrix m(static_cast<int>(ids.size()));
    for (size_t i = 0; i < ids.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = g.weight(ids[i]);
    for (const auto& e : g.edges()) {
        m.at(idx[e.first], idx[e.second]) = 1;
        m.at(idx[e.second], idx[e.first]) = 1;
    }
    return m;
}

inline GraphDiagnostics validate(const ResolutionGraph& g) {
    GraphDiagnostics d;
    if (g.size() == 0) {
        d.messages.push_back("graph has no vertices");
        return d;
    }
    // connectivity
    std::set<VertexId> seen;
    std::vector<VertexId> stack{g.vertices().front().id};
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        if (!seen.insert(v).second) continue;
        for (VertexId w : g.neighbors(v)) stack.push_back(w);
    }
    const bool connected = seen.size() == g.size();
    const bool edge_count_ok = g.edges().size() + 1 == g.size();
    d.is_tree = connected && edge_count_ok;
    if (!connected) d.messages.push_back("graph is not connected");
    if (!edge_count_ok) d.messages.push_back("edge count does not match a tree");
    for (size_t i = 0; i + 1 < g.edges().size(); ++i)
        if (g.edges()[i] == g.edges()[i + 1]) {
            d.is_tree = false;
            d.messages.push_back("duplicate edge");
            break;
        }
    for (const auto& v : g.vertices())
        if (v.weight >= 0)
            d.messages.push_back("vertex " + std::to_string(v.id) + " has non-negative weight " + v.weight.get_str());
    d.is_negative_definite = is_negative_definite(intersection_matrix(g));
    if (!d.is_negative_definite) d.messages.push_back("intersection matrix is not negative definite");
    if (g.root() && !g.is_leaf(*g.root())) d.messages.push_back("root is not a leaf");
    d.leaf_ids = g.leaf_ids();
    d.node_ids = g.node_ids();
    return d;
}

inline ResolutionGraph require_valid(const ResolutionGraph& g) {
    GraphDiagnostics d = validate(g);
    if (!d.ok()) {
        std::string msg = "invalid resolution graph:";
        for (const auto& m : d.messages) msg += " " + m + ";";
        throw GraphError(msg);
    }
    return g;
}

namespace detail {

inline nlohmann::json json_int(const Int& v) {
    static const Int lim = Int(1) << 53;
    if (abs(v) < lim) return nlohmann::json(static_cast<std::int64_t>(mpz_get_si(v.get_mpz_t())));
    return nlohmann::json(v.get_str());
}

inline Int int_from_json(const nlohmann::json& j) {
    if (j.is_string()) return Int(j.get<std::string>());
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
    throw GraphError("expected integer or decimal string in JSON");
}

inline ResolutionGraph parse_graph_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(1, 1, std::string("JSON parse error: ") + e.what());
    }
    std::vector<ResolutionGraph::Vertex> verts;
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::optional<VertexId> root;
    if (!j.contains("vertices") || !j["vertices"].is_array()) throw GraphError("JSON graph: missing \"vertices\"");
    for (const auto& v : j["vertices"]) {
        VertexId id = v.at("id").get<VertexId>();
        if (id <= 0) throw GraphError("vertex ids must be positive");
        verts.push_back({id, int_from_json(v.at("weight"))});
    }
    if (j.contains("edges"))
        for (const auto& e : j["edges"]) edges.emplace_back(e.at(0).get<VertexId>(), e.at(1).get<VertexId>());
    if (j.contains("root") && !j["root"].is_null()) root = j["root"].get<VertexId>();
    return ResolutionGraph(std::move(verts), std::move(edges), root);
}

}  // namespace detail

// Line-oriented graph text: `# comment`, `vertex <id> <weight>`,
// `edge <id> <id>`, optional `root <id>`. A JSON object is accepted too.
inline ResolutionGraph parse_graph(const std::string& text) {
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return detail::parse_graph_json(text);

    std::vector<ResolutionGraph::Vertex> verts;
    std::set<VertexId> vert_ids;
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::optional<VertexId> root;
    int root_line = 0;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::vector<std::string> tok;
        std::vector<int> tokcol;
        for (size_t i = 0; i < line.size();) {
            if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
            size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            tok.push_back(line.substr(i, j - i));
            tokcol.push_back(static_cast<int>(i) + 1);
            i = j;
        }
        if (tok.empty()) continue;
        auto want = [&](size_t n) {
            if (tok.size() != n)
                throw ParseError(lineno, 1, "expected " + std::to_string(n - 1) + " arguments after '" + tok[0] + "'");
        };
        auto as_int = [&](size_t k) -> Int {
            const std::string& s = tok[k];
            size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
            if (start == s.size() || s.find_first_not_of("0123456789", start) != std::string::npos)
                throw ParseError(lineno, tokcol[k], "expected an integer, got '" + s + "'");
            return Int(s);
        };
        auto as_id = [&](size_t k) -> VertexId {
            Int v = as_int(k);
            if (v <= 0 || !mpz_fits_slong_p(v.get_mpz_t()))
                throw ParseError(lineno, tokcol[k], "vertex id must be a positive machine integer");
            return static_cast<VertexId>(mpz_get_si(v.get_mpz_t()));
        };
        if (tok[0] == "vertex") {
            want(3);
            VertexId id = as_id(1);
            if (!vert_ids.insert(id).second)
                throw ParseError(lineno, tokcol[1], "duplicate vertex id " + std::to_string(id));
            verts.push_back({id, as_int(2)});
        } else if (tok[0] == "edge") {
            want(3);
            edges.emplace_back(as_id(1), as_id(2));
        } else if (tok[0] == "root") {
            want(2);
            root = as_id(1);
            root_line = lineno;
        } else {
            throw ParseError(lineno, tokcol[0], "unknown directive '" + tok[0] + "'");
        }
    }
    if (verts.empty()) throw ParseError(lineno ? lineno : 1, 1, "no vertices declared");
    for (const auto& e : edges) {
        for (VertexId x : {e.first, e.second})
            if (!vert_ids.count(x)) throw ParseError(lineno, 1, "edge references unknown vertex " + std::to_string(x));
        if (e.first == e.second) throw ParseError(lineno, 1, "self-loop at vertex " + std::to_string(e.first));
    }
    if (root && !vert_ids.count(*root))
        throw ParseError(root_line, 1, "root " + std::to_string(*root) + " is not a declared vertex");
    return ResolutionGraph(std::move(verts), std::move(edges), root);
}

enum class GraphFormat { Text, Json };

inline nlohmann::json graph_to_json(const ResolutionGraph& g) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : g.vertices()) j["vertices"].push_back({{"id", v.id}, {"weight", detail::json_int(v.weight)}});
    j["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges()) j["edges"].push_back({e.first, e.second});
    if (g.root()) j["root"] = *g.root();
    return j;
}

inline std::string serialize(const ResolutionGraph& g, GraphFormat format = GraphFormat::Text) {
    if (format == GraphFormat::Json) return graph_to_json(g).dump();
    std::string out;
    for (const auto& v : g.vertices()) out += "vertex " + std::to_string(v.id) + " " + v.weight.get_str() + "\n";
    for (const auto& e : g.edges()) out += "edge " + std::to_string(e.first) + " " + std::to_string(e.second) + "\n";
    if (g.root()) out += "root " + std::to_string(*g.root()) + "\n";
    return out;
}

// Blow up the edge e: insert a -1 vertex on it and decrease both endpoint
// weights by 1. det(-A) is unchanged.
inline ResolutionGraph blow_up_edge(const ResolutionGraph& g, std::pair<VertexId, VertexId> e) {
    if (!g.has_edge(e.first, e.second))
        throw GraphError("edge " + std::to_string(e.first) + "-" + std::to_string(e.second) + " not in graph");
    if (e.first > e.second) std::swap(e.first, e.second);
    VertexId fresh = 0;
    for (const auto& v : g.vertices()) fresh = std::max(fresh, v.id);
    ++fresh;
    std::vector<ResolutionGraph::Vertex> verts;
    for (const auto& v : g.vertices()) {
        Int w = v.weight;
        if (v.id == e.first || v.id == e.second) w -= 1;
        verts.push_back({v.id, w});
    }
    verts.push_back({fresh, Int(-1)});
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& f : g.edges())
        if (f != e) edges.push_back(f);
    edges.emplace_back(e.first, fresh);
    edges.emplace_back(fresh, e.second);
    return ResolutionGraph(std::move(verts), std::move(edges), g.root());
}

// Blow up every node-node edge so that no two nodes are adjacent.
// Idempotent: insertions do not change any valency.
inline ResolutionGraph separate_nodes(const ResolutionGraph& g) {
    std::vector<std::pair<VertexId, VertexId>> targets;
    for (const auto& e : g.edges())
        if (g.valency(e.first) >= 3 && g.valency(e.second) >= 3) targets.push_back(e);
    ResolutionGraph out = g;
    for (const auto& e : targets) out = blow_up_edge(out, e);
    return out;
}

// Induced subgraph on the given vertex set.
inline ResolutionGraph induced_subgraph(const ResolutionGraph& g, const std::set<VertexId>& keep,
                                        std::optional<VertexId> root = std::nullopt) {
    std::vector<ResolutionGraph::Vertex> verts;
    for (const auto& v : g.vertices())
        if (keep.count(v.id)) verts.push_back(v);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& e : g.edges())
        if (keep.count(e.first) && keep.count(e.second)) edges.push_back(e);
    return ResolutionGraph(std::move(verts), std::move(edges), root);
}

// Vertices of the component of g - cut containing `from`.
inline std::set<VertexId> component_without(const ResolutionGraph& g, VertexId cut, VertexId from) {
    std::set<VertexId> comp;
    std::vector<VertexId> stack{from};
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        if (v == cut || !comp.insert(v).second) continue;
        for (VertexId w : g.neighbors(v)) stack.push_back(w);
    }
    return comp;
}

// Unique path between two vertices of a tree, endpoints included.
inline std::vector<VertexId> tree_path(const ResolutionGraph& g, VertexId from, VertexId to) {
    std::map<VertexId, VertexId> parent;
    std::vector<VertexId> stack{from};
    parent[from] = from;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        if (v == to) break;
        for (VertexId w : g.neighbors(v))
            if (!parent.count(w)) {
                parent[w] = v;
                stack.push_back(w);
            }
    }
    if (!parent.count(to)) throw GraphError("vertices not connected");
    std::vector<VertexId> path{to};
    while (path.back() != from) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace splicekit
