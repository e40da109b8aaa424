#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "splicekit/discriminant.hpp"
#include "splicekit/graph.hpp"
#include "splicekit/numbers.hpp"
#include "splicekit/semigroup.hpp"
#include "splicekit/splice.hpp"

namespace splicekit {

struct ReducedWeights {
    VertexId node;
    std::vector<VertexId> leaves;      // ascending, the global Y order
    std::vector<Int> unreduced;        // l_{v,v_i}
    Int gcd = 1;
    std::vector<Int> reduced;
    Int total_unreduced;               // l_vv
    Int total_reduced;
};

inline ReducedWeights reduced_weights(const ResolutionGraph& g, VertexId node) {
    require_valid(g);
    if (g.valency(node) < 3) throw GraphError("reduced_weights: vertex is not a node");
    LinkingMatrix lm = linking_matrix(g);
    ReducedWeights out;
    out.node = node;
    out.leaves = g.leaf_ids();
    for (VertexId w : out.leaves) out.unreduced.push_back(lm.at(node, w));
    out.gcd = gcd_all(out.unreduced);
    for (const auto& u : out.unreduced) out.reduced.push_back(divexact(u, out.gcd));
    out.total_unreduced = lm.at(node, node);
    out.total_reduced = divexact(out.total_unreduced, out.gcd);
    return out;
}

// Diagonal action of the leaf generators on the leaf coordinates. Row for
// e_v stores the raw linking numbers (l_{v,v_1}, ..., l_{v,v_t}); the
// entry k means multiplication by zeta^k with zeta = e^{-2 pi i / |D|},
// so equality of exponents is equality mod |D|.
struct DActionTable {
    Int order;
    std::vector<VertexId> leaf_ids;
    std::vector<std::vector<Int>> exponents;  // one row per leaf generator
};

inline DActionTable d_action(const ResolutionGraph& g) {
    require_valid(g);
    LinkingMatrix lm = linking_matrix(g);
    DActionTable t;
    t.order = lm.order;
    if (t.order == 1) return t;  // trivial group: empty table
    t.leaf_ids = g.leaf_ids();
    for (VertexId v : t.leaf_ids) {
        std::vector<Int> row;
        for (VertexId w : t.leaf_ids) row.push_back(lm.at(v, w));
        t.exponents.push_back(std::move(row));
    }
    return t;
}

struct SemigroupConditionError : std::runtime_error {
    std::vector<std::pair<VertexId, VertexId>> failing;  // (node, edge neighbor)
    SemigroupConditionError(std::vector<std::pair<VertexId, VertexId>> f, const std::string& msg)
        : std::runtime_error(msg), failing(std::move(f)) {}
};

struct CongruenceConditionError : std::runtime_error {
    std::vector<VertexId> failing_nodes;
    CongruenceConditionError(std::vector<VertexId> f, const std::string& msg)
        : std::runtime_error(msg), failing_nodes(std::move(f)) {}
};

// One group of (valency - 2) weighted-homogeneous equations per node,
// t - 2 in total.
struct SpliceSystem {
    std::vector<VertexId> leaves;  // Y_1..Y_t by ascending id
    struct NodeBlock {
        VertexId node;
        std::vector<VertexId> edge_order;           // neighbor ids, ascending
        ReducedWeights weights;
        std::vector<std::vector<Int>> monomials;    // chosen M_vj per edge, full-length tuples
        std::vector<std::vector<Int>> coefficients; // (valency-2) x valency
        std::optional<DClass> character;            // shared class when equivariant
        Int higher_term_weight_floor;               // extra summands need v-weight > this (= l_vv)
    };
    std::vector<NodeBlock> nodes;
    bool equivariant = true;
    int equation_count = 0;  // t - 2
    bool random_coefficients = false;
    std::uint64_t seed = 0;
};

struct SpliceSystemOptions {
    std::optional<std::uint64_t> seed;   // draw random coefficients when set
    bool allow_non_equivariant = false;  // fall back to plain choices on congruence failure
};

inline SpliceSystem generate_splice_system(const ResolutionGraph& g, const SpliceSystemOptions& opts = {}) {
    require_valid(g);
    SpliceSystem sys;
    sys.leaves = g.leaf_ids();
    sys.equation_count = static_cast<int>(sys.leaves.size()) - 2;
    if (sys.equation_count < 0) sys.equation_count = 0;
    if (g.node_ids().empty()) return sys;  // strings: nothing to write

    SemigroupConditionReport sc = semigroup_condition(g);
    if (!sc.all) {
        std::vector<std::pair<VertexId, VertexId>> bad;
        std::string msg = "semigroup condition fails at";
        for (const auto& [key, okay] : sc.edge_flags)
            if (!okay) {
                bad.push_back(key);
                msg += " (node " + std::to_string(key.first) + ", edge toward " + std::to_string(key.second) + ")";
            }
        throw SemigroupConditionError(std::move(bad), msg);
    }
    auto congruence = congruence_condition(g);
    std::vector<VertexId> bad_nodes;
    for (const auto& [node, witness] : congruence)
        if (!witness) bad_nodes.push_back(node);
    if (!bad_nodes.empty() && !opts.allow_non_equivariant) {
        std::string msg = "congruence condition fails at node(s)";
        for (VertexId v : bad_nodes) msg += " " + std::to_string(v);
        throw CongruenceConditionError(std::move(bad_nodes), msg);
    }
    sys.equivariant = bad_nodes.empty();

    std::mt19937_64 rng(opts.seed.value_or(0));
    sys.random_coefficients = opts.seed.has_value();
    sys.seed = opts.seed.value_or(0);

    for (VertexId v : g.node_ids()) {
        SpliceSystem::NodeBlock blk;
        blk.node = v;
        blk.edge_order = g.neighbors(v);
        blk.weights = reduced_weights(g, v);
        blk.higher_term_weight_floor = blk.weights.total_unreduced;
        const auto& witness = congruence.at(v);
        if (witness) {
            blk.character = witness->character;
            for (VertexId nb : blk.edge_order) blk.monomials.push_back(witness->choice.at(nb));
        } else {
            for (VertexId nb : blk.edge_order) blk.monomials.push_back(admissible_monomials(g, v, nb).front());
        }

        const int cols = static_cast<int>(blk.edge_order.size());
        const int rows = cols - 2;
        auto minors_full_rank = [&](const std::vector<std::vector<Int>>& a) {
            std::vector<int> pick(static_cast<size_t>(rows));
            auto rec = [&](auto&& self, int from, int depth) -> bool {
                if (depth == rows) {
                    IntMatrix mm(rows);
                    for (int i = 0; i < rows; ++i)
                        for (int j = 0; j < rows; ++j) mm.at(i, j) = a[static_cast<size_t>(i)][static_cast<size_t>(pick[static_cast<size_t>(j)])];
                    return determinant(mm) != 0;
                }
                for (int c = from; c < cols; ++c) {
                    pick[static_cast<size_t>(depth)] = c;
                    if (!self(self, c + 1, depth + 1)) return false;
                }
                return true;
            };
            return rows == 0 || rec(rec, 0, 0);
        };

        if (sys.random_coefficients) {
            // seeded draws, re-drawn until every maximal minor is nonzero
            do {
                blk.coefficients.assign(static_cast<size_t>(rows), std::vector<Int>(static_cast<size_t>(cols)));
                for (auto& row : blk.coefficients)
                    for (auto& cval : row) cval = Int(static_cast<long>(rng() % 19)) - 9;
            } while (!minors_full_rank(blk.coefficients));
        } else {
            // Vandermonde rows over column tags 1..valency: every maximal
            // minor is a product of differences of distinct tags
            blk.coefficients.assign(static_cast<size_t>(rows), std::vector<Int>(static_cast<size_t>(cols)));
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) {
                    Int p = 1;
                    for (int e = 0; e < i; ++e) p *= Int(j + 1);
                    blk.coefficients[static_cast<size_t>(i)][static_cast<size_t>(j)] = p;
                }
            if (!minors_full_rank(blk.coefficients))
                throw std::logic_error("Vandermonde coefficients fail the minor check (implementation bug)");
        }
        sys.nodes.push_back(std::move(blk));
    }
    return sys;
}

struct SystemVerification {
    bool ok = true;
    std::vector<std::string> failures;
};

// Re-check the generated system from scratch: support, weight
// homogeneity, per-node equivariance, and exact full-rank minors.
inline SystemVerification verify_system(const ResolutionGraph& g, const SpliceSystem& sys) {
    SystemVerification rep;
    auto fail = [&](const std::string& m) {
        rep.ok = false;
        rep.failures.push_back(m);
    };
    LinkingMatrix lm = linking_matrix(g);
    DiscriminantGroup group = discriminant_group(g);
    const auto& leaves = sys.leaves;
    for (const auto& blk : sys.nodes) {
        for (size_t e = 0; e < blk.edge_order.size(); ++e) {
            const auto& mono = blk.monomials[e];
            auto beyond = component_without(g, blk.node, blk.edge_order[e]);
            Int wsum = 0;
            DClass cls = group.zero();
            for (size_t i = 0; i < leaves.size(); ++i) {
                if (mono[i] == 0) continue;
                if (!beyond.count(leaves[i]))
                    fail("node " + std::to_string(blk.node) + ": monomial for edge " +
                         std::to_string(blk.edge_order[e]) + " uses a variable not beyond the edge");
                wsum += mono[i] * lm.at(blk.node, leaves[i]);
                cls = group.add(cls, group.scale(mono[i], group.vertex_class.at(leaves[i])));
            }
            if (wsum != lm.at(blk.node, blk.node))
                fail("node " + std::to_string(blk.node) + ": monomial for edge " +
                     std::to_string(blk.edge_order[e]) + " is not weight-homogeneous");
            if (blk.character && !(cls == *blk.character))
                fail("node " + std::to_string(blk.node) + ": monomial for edge " +
                     std::to_string(blk.edge_order[e]) + " transforms by a different character");
        }
        const int cols = static_cast<int>(blk.edge_order.size());
        const int rows = cols - 2;
        std::vector<int> pick(static_cast<size_t>(rows));
        auto rec = [&](auto&& self, int from, int depth) -> void {
            if (depth == rows) {
                IntMatrix mm(rows);
                for (int i = 0; i < rows; ++i)
                    for (int j = 0; j < rows; ++j)
                        mm.at(i, j) = blk.coefficients[static_cast<size_t>(i)][static_cast<size_t>(pick[static_cast<size_t>(j)])];
                if (determinant(mm) == 0)
                    fail("node " + std::to_string(blk.node) + ": a maximal coefficient minor vanishes");
                return;
            }
            for (int c = from; c < cols; ++c) {
                pick[static_cast<size_t>(depth)] = c;
                self(self, c + 1, depth + 1);
            }
        };
        if (rows > 0) rec(rec, 0, 0);
    }
    int expected = static_cast<int>(leaves.size()) - 2;
    int actual = 0;
    for (const auto& blk : sys.nodes) actual += static_cast<int>(blk.edge_order.size()) - 2;
    if (expected > 0 && actual != expected) fail("equation count != t - 2");
    return rep;
}

// One equation per line: coefficient, then the monomial as Y<i>^<k>
// factors joined by '*'; terms joined by ' + '/' - '.
inline std::string render_splice_system(const SpliceSystem& sys) {
    std::map<VertexId, int> var_names;
    for (size_t i = 0; i < sys.leaves.size(); ++i) var_names[sys.leaves[i]] = static_cast<int>(i) + 1;
    auto mono_str = [&](const std::vector<Int>& exps) {
        std::string s;
        for (size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += "Y" + std::to_string(var_names.at(sys.leaves[i])) + "^" + exps[i].get_str();
        }
        return s.empty() ? std::string("1") : s;
    };
    std::string out;
    for (const auto& blk : sys.nodes) {
        for (const auto& row : blk.coefficients) {
            std::string line;
            for (size_t j = 0; j < row.size(); ++j) {
                if (row[j] == 0) continue;
                Int a = abs(row[j]);
                std::string term = (a == 1 ? "" : a.get_str() + "*") + mono_str(blk.monomials[j]);
                if (line.empty())
                    line = (row[j] < 0 ? "-" : "") + term;
                else
                    line += (row[j] < 0 ? " - " : " + ") + term;
            }
            out += line + " = 0\n";
        }
    }
    return out;
}

}  // namespace splicekit
