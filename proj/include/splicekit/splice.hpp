#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "splicekit/graph.hpp"
#include "splicekit/matrix.hpp"
#include "splicekit/numbers.hpp"

namespace splicekit {

struct StringGraphError : GraphError {
    using GraphError::GraphError;
};

// Splice diagram data for a resolution graph. The maximal form keeps a
// weight on every half-edge of Γ (the determinant of the subtree on the
// far side); the Δ view keeps only nodes and leaves, with the suppressed
// valency-2 chains recorded so paths can be replayed on Γ.
struct SpliceDiagram {
    ResolutionGraph graph;  // provenance
    // weight at vertex v on the edge toward neighbor u
    std::map<std::pair<VertexId, VertexId>, Int> half_edge;
    std::vector<VertexId> delta_vertices;  // leaves and nodes of Γ
    struct DeltaEdge {
        VertexId a, b;
        Int weight_at_a, weight_at_b;
        std::vector<VertexId> gamma_path;  // from a to b inclusive
    };
    std::vector<DeltaEdge> delta_edges;
    std::map<VertexId, Int> leaf_weights;

    const Int& weight_at(VertexId v, VertexId toward) const {
        auto it = half_edge.find({v, toward});
        if (it == half_edge.end()) throw GraphError("no half-edge weight at " + std::to_string(v));
        return it->second;
    }
};

inline Int subtree_determinant(const ResolutionGraph& g, VertexId v, VertexId toward) {
    auto comp = component_without(g, v, toward);
    return determinant(-intersection_matrix(induced_subgraph(g, comp)));
}

inline SpliceDiagram maximal_splice_diagram(const ResolutionGraph& g) {
    require_valid(g);
    SpliceDiagram d;
    d.graph = g;
    for (const auto& e : g.edges()) {
        d.half_edge[{e.first, e.second}] = subtree_determinant(g, e.first, e.second);
        d.half_edge[{e.second, e.first}] = subtree_determinant(g, e.second, e.first);
    }
    for (VertexId v : g.ids())
        if (g.valency(v) != 2) d.delta_vertices.push_back(v);
    // Δ edges: follow each Γ edge leaving a leaf/node through valency-2 chains
    std::set<std::pair<VertexId, VertexId>> used;
    for (VertexId v : d.delta_vertices) {
        for (VertexId first : g.neighbors(v)) {
            if (used.count({v, first})) continue;
            std::vector<VertexId> path{v};
            VertexId prev = v, cur = first;
            while (g.valency(cur) == 2) {
                path.push_back(cur);
                VertexId nxt = g.neighbors(cur)[0] == prev ? g.neighbors(cur)[1] : g.neighbors(cur)[0];
                prev = cur;
                cur = nxt;
            }
            path.push_back(cur);
            used.insert({v, first});
            used.insert({cur, prev});
            d.delta_edges.push_back({v, cur, d.weight_at(v, first), d.weight_at(cur, prev), path});
        }
    }
    for (VertexId v : g.leaf_ids()) {
        if (g.valency(v) == 0) {
            d.leaf_weights[v] = 1;  // lone vertex: empty far side
        } else {
            d.leaf_weights[v] = d.weight_at(v, g.neighbors(v)[0]);
        }
    }
    return d;
}

// Same data; kept as a distinct entry point because reports render it at
// the Δ level (weights near nodes plus leaf weights only).
inline SpliceDiagram splice_diagram(const ResolutionGraph& g) { return maximal_splice_diagram(g); }

// Linking number by Definition: the product of splice diagram weights
// adjacent to, but not on, the path from v to w; for v == w the product
// of all weights at v (a leaf's own leaf weight).
inline Int linking_path(const SpliceDiagram& d, VertexId v, VertexId w) {
    const ResolutionGraph& g = d.graph;
    if (!g.has_vertex(v) || !g.has_vertex(w)) throw GraphError("linking_path: unknown vertex");
    std::vector<VertexId> path = tree_path(g, v, w);
    std::set<std::pair<VertexId, VertexId>> onpath;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        onpath.insert({path[i], path[i + 1]});
        onpath.insert({path[i + 1], path[i]});
    }
    Int out = 1;
    for (VertexId u : path)
        for (VertexId y : g.neighbors(u))
            if (!onpath.count({u, y})) out *= d.weight_at(u, y);
    return out;
}

// (l_vw) = Adj(-A(Γ)); shares no code with linking_path.
struct LinkingMatrix {
    std::vector<VertexId> ids;
    IntMatrix m;
    Int order;  // det(-A)

    const Int& at(VertexId v, VertexId w) const { return m.at(index(v), index(w)); }
    int index(VertexId v) const {
        auto it = std::lower_bound(ids.begin(), ids.end(), v);
        if (it == ids.end() || *it != v) throw GraphError("linking matrix: unknown vertex");
        return static_cast<int>(it - ids.begin());
    }
};

inline LinkingMatrix linking_matrix(const ResolutionGraph& g) {
    require_valid(g);
    LinkingMatrix lm;
    lm.ids = g.ids();
    IntMatrix neg_a = -intersection_matrix(g);
    lm.m = adjugate(neg_a);
    lm.order = determinant(neg_a);
    return lm;
}

// Rooted decomposition: remove the root leaf, the nearest node v*, and the
// chain between them; the remaining components are rooted at their vertex
// closest to v*.
struct RootedDecomposition {
    VertexId root;
    VertexId star_node;                // v*
    Int c;                             // weight at v* toward the root
    struct Part {
        ResolutionGraph graph;         // rooted at root_id
        VertexId root_id;
        Int order;                     // det(-A(Γ_i))
        std::vector<VertexId> variable_ids;  // non-root leaves (the vertex itself if single)
    };
    std::vector<Part> parts;           // sorted by smallest variable id
    Int total_order() const {          // 𝒟 = |D_1|...|D_k|
        Int t = 1;
        for (const auto& p : parts) t *= p.order;
        return t;
    }
};

inline std::vector<VertexId> part_variable_ids(const ResolutionGraph& part, VertexId part_root) {
    if (part.size() == 1) return {part_root};  // lone vertex doubles as leaf and root
    std::vector<VertexId> out;
    for (VertexId v : part.leaf_ids())
        if (v != part_root) out.push_back(v);
    return out;
}

inline RootedDecomposition decompose_at_root(const ResolutionGraph& g, VertexId root) {
    require_valid(g);
    if (!g.is_leaf(root)) throw GraphError("decompose_at_root: root must be a leaf");
    if (g.node_ids().empty()) throw StringGraphError("decompose_at_root: graph is a string");
    for (const auto& e : g.edges())
        if (g.valency(e.first) >= 3 && g.valency(e.second) >= 3)
            throw GraphError("decompose_at_root: adjacent nodes (separate_nodes first)");

    RootedDecomposition dec;
    dec.root = root;
    std::vector<VertexId> chain{root};
    VertexId prev = root, cur = g.neighbors(root)[0];
    while (g.valency(cur) == 2) {
        chain.push_back(cur);
        VertexId nxt = g.neighbors(cur)[0] == prev ? g.neighbors(cur)[1] : g.neighbors(cur)[0];
        prev = cur;
        cur = nxt;
    }
    dec.star_node = cur;
    if (g.valency(dec.star_node) < 3)
        throw std::logic_error("decompose_at_root: walk from root did not reach a node");
    dec.c = subtree_determinant(g, dec.star_node, prev);

    for (VertexId nb : g.neighbors(dec.star_node)) {
        if (nb == prev) continue;
        auto comp = component_without(g, dec.star_node, nb);
        ResolutionGraph part = induced_subgraph(g, comp, nb);
        RootedDecomposition::Part p;
        p.order = determinant(-intersection_matrix(part));
        p.variable_ids = part_variable_ids(part, nb);
        p.root_id = nb;
        p.graph = std::move(part);
        dec.parts.push_back(std::move(p));
    }
    std::sort(dec.parts.begin(), dec.parts.end(), [](const auto& a, const auto& b) {
        return a.variable_ids.front() < b.variable_ids.front();
    });
    return dec;
}

// Exact checks of the three linking-number relations tying Γ to its rooted
// parts. A failure here is an implementation bug, never bad input.
struct LinkIdentityReport {
    bool ok = true;
    std::vector<std::string> failures;
    int checks = 0;

    void fail(const std::string& what) {
        ok = false;
        failures.push_back(what);
    }
};

inline LinkIdentityReport check_link_identities(const ResolutionGraph& g, VertexId root) {
    RootedDecomposition dec = decompose_at_root(g, root);
    SpliceDiagram dg = maximal_splice_diagram(g);
    LinkIdentityReport rep;

    const Int big_d = determinant(-intersection_matrix(g));
    const Int lvv = linking_path(dg, dec.star_node, dec.star_node);
    const Int total = dec.total_order();
    // l_{v*v*} = c * |D_1|...|D_k| by definition of the splice weights
    if (lvv != dec.c * total) rep.fail("l_{v*v*} != c * product of part orders");

    std::vector<SpliceDiagram> part_diagrams;
    part_diagrams.reserve(dec.parts.size());
    for (const auto& p : dec.parts) part_diagrams.push_back(maximal_splice_diagram(p.graph));

    for (size_t i = 0; i < dec.parts.size(); ++i) {
        const auto& pi = dec.parts[i];
        const Int cofactor = divexact(total, pi.order);  // |D_2|...|D_k| relative to part i
        for (VertexId w : pi.variable_ids) {
            const Int lw = linking_path(dg, w, root);
            const Int lw_tilde = linking_path(part_diagrams[i], w, pi.root_id);
            ++rep.checks;
            if (lw != lw_tilde * cofactor)
                rep.fail("identity (1a) fails at leaf " + std::to_string(w));
            ++rep.checks;
            if (lw * dec.c * pi.order != lw_tilde * lvv)
                rep.fail("identity (1b) fails at leaf " + std::to_string(w));
            // (3): within one part (w' may equal w; leaf weights supply l_ww)
            for (VertexId w2 : pi.variable_ids) {
                if (w2 < w) continue;
                const Int lww2 = linking_path(dg, w, w2);
                const Int lww2_tilde = linking_path(part_diagrams[i], w, w2);
                const Int lw2_tilde = linking_path(part_diagrams[i], w2, pi.root_id);
                ++rep.checks;
                if (lww2 * pi.order * pi.order != lww2_tilde * big_d * pi.order + lw_tilde * lw2_tilde * lvv)
                    rep.fail("identity (3) fails at leaves " + std::to_string(w) + "," + std::to_string(w2));
            }
            // (2): across parts
            for (size_t j = i + 1; j < dec.parts.size(); ++j) {
                for (VertexId w2 : dec.parts[j].variable_ids) {
                    const Int lww2 = linking_path(dg, w, w2);
                    const Int lw2 = linking_path(dg, w2, root);
                    ++rep.checks;
                    if (lvv * lww2 != dec.c * dec.c * lw * lw2)
                        rep.fail("identity (2) fails at leaves " + std::to_string(w) + "," + std::to_string(w2));
                }
            }
        }
    }
    return rep;
}

}  // namespace splicekit
