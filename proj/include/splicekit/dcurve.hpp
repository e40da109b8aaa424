#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "splicekit/discriminant.hpp"
#include "splicekit/graph.hpp"
#include "splicekit/matrix.hpp"
#include "splicekit/numbers.hpp"
#include "splicekit/semigroup.hpp"
#include "splicekit/splice.hpp"

namespace splicekit {

struct NuValue {
    Int value = 0;
    std::map<VertexId, Int> contributions;  // (valency - 2) * l_{*,v}, v != root
};

// nu(Γ,*) = sum over v != * of (valency(v) - 2) * l_{*,v}. A lone vertex
// plays both leaf and root with linking number 1, contributing
// (1 - 2) * 1 = -1; this is the value the part-wise recursion
// nu = sum 𝒟_i nu_i + (k-1)𝒟 requires for single-vertex parts.
inline NuValue nu(const ResolutionGraph& g, VertexId root) {
    require_valid(g);
    if (!g.is_leaf(root)) throw GraphError("nu: root must be a leaf");
    NuValue out;
    if (g.size() == 1) {
        out.value = -1;
        out.contributions[root] = -1;
        return out;
    }
    LinkingMatrix lm = linking_matrix(g);
    for (VertexId v : g.ids()) {
        if (v == root) continue;
        Int c = Int(g.valency(v) - 2) * lm.at(root, v);
        out.contributions[v] = c;
        out.value += c;
    }
    return out;
}

// Right-hand side of the part-wise gap bound:
// sum_i 𝒟_i (2 delta_i - r_i) + (k-1) 𝒟, with the string base case -1.
inline Int delta_recursive_bound(const ResolutionGraph& g, VertexId root) {
    ResolutionGraph sep = separate_nodes(g);
    if (sep.node_ids().empty()) return Int(-1);
    RootedDecomposition dec = decompose_at_root(sep, root);
    const Int total = dec.total_order();
    Int bound = (Int(static_cast<long>(dec.parts.size())) - 1) * total;
    for (const auto& part : dec.parts) {
        RootedCharSystem psys = rooted_char_system(part.graph, part.root_id);
        SemigroupReport prep = delta(psys);
        bound += divexact(total, part.order) * (2 * prep.delta - psys.r);
    }
    return bound;
}

// Direct lattice-point count N = #{x : x_1 < 0, 0 <= x_i < q_i (i >= 2),
// sum x_i / q_i >= 0}, cross-checked against the closed form
// 2N = (k-1)Q - sum Q_i + gcd(Q_1..Q_k).
inline Int lattice_count_check(const std::vector<Int>& q) {
    if (q.empty()) throw std::invalid_argument("lattice_count_check: empty tuple");
    for (const auto& qi : q)
        if (qi < 1) throw std::invalid_argument("lattice_count_check: entries must be >= 1");
    const size_t k = q.size();
    Int big_q = 1;
    for (const auto& qi : q) big_q *= qi;
    std::vector<Int> cof(k);  // Q_i = Q / q_i
    for (size_t i = 0; i < k; ++i) cof[i] = divexact(big_q, q[i]);

    Int n = 0;
    // weighted sum uses the common denominator Q: sum x_i * Q_i >= 0
    std::vector<Int> x(k);
    auto rec = [&](auto&& self, size_t i, const Int& partial) -> void {
        if (i == k) {
            if (partial >= 0) ++n;
            return;
        }
        for (Int v = 0; v < q[i]; ++v) self(self, i + 1, partial + v * cof[i]);
    };
    for (Int x1 = -1; x1 * cof[0] + (big_q - 1) * Int(static_cast<long>(k) - 1) >= 0; --x1)
        rec(rec, 1, x1 * cof[0]);

    Int h = gcd_all(cof);
    Int sum_cof = 0;
    for (const auto& c : cof) sum_cof += c;
    if (2 * n != (Int(static_cast<long>(k)) - 1) * big_q - sum_cof + h)
        throw std::logic_error("lattice point count disagrees with closed form");
    return n;
}

struct BrieskornInvariants {
    Int s;                   // GCD of the cofactor products, = branch count
    Int two_delta_minus_r;   // (m-1)N - sum N_i
    Int mu;                  // 2 delta - r + 1
};

// Closed forms for the curve Y_1^{n_1} = Y_i^{n_i}.
inline BrieskornInvariants instructive_example(const std::vector<Int>& n) {
    if (n.empty()) throw std::invalid_argument("instructive_example: empty tuple");
    for (const auto& ni : n)
        if (ni < 1) throw std::invalid_argument("instructive_example: entries must be positive");
    Int big_n = 1;
    for (const auto& ni : n) big_n *= ni;
    std::vector<Int> cof;
    Int sum = 0;
    for (const auto& ni : n) {
        cof.push_back(divexact(big_n, ni));
        sum += cof.back();
    }
    BrieskornInvariants out;
    out.s = gcd_all(cof);
    out.two_delta_minus_r = (Int(static_cast<long>(n.size())) - 1) * big_n - sum;
    out.mu = out.two_delta_minus_r + 1;
    return out;
}

// Discriminant of a one-node graph through the continued-fraction data of
// its arms: |D| = n_1...n_k (b - sum p_i/n_i), where n_i is the arm
// determinant and p_i the determinant of the arm minus its innermost
// vertex. Independent of the determinant route.
inline Int one_node_discriminant(const ResolutionGraph& g) {
    auto nodes = g.node_ids();
    if (nodes.size() != 1) throw GraphError("one_node_discriminant: graph must have exactly one node");
    VertexId node = nodes[0];
    Rat acc = Rat(-g.weight(node));  // b
    Int prod = 1;
    for (VertexId nb : g.neighbors(node)) {
        auto arm_vts = component_without(g, node, nb);
        ResolutionGraph arm = induced_subgraph(g, arm_vts);
        Int arm_det = determinant(-intersection_matrix(arm));
        arm_vts.erase(nb);
        Int arm_sub = determinant(-intersection_matrix(induced_subgraph(g, arm_vts)));
        prod *= arm_det;
        Rat frac(arm_sub, arm_det);
        frac.canonicalize();
        acc -= frac;
    }
    Rat result = Rat(prod) * acc;
    result.canonicalize();
    if (result.get_den() != 1) throw std::logic_error("one-node discriminant is not an integer");
    return result.get_num();
}

struct PresentationError : std::runtime_error {
    VertexId part_root;
    PresentationError(VertexId pr, const std::string& msg) : std::runtime_error(msg), part_root(pr) {}
};

// Binomial complete-intersection presentation of the rooted curve:
// the parts' relations plus k-1 gluing binomials Y_1^{Q_1} - Y_i^{Q_i}.
struct CurvePresentation {
    std::vector<VertexId> variables;  // non-root leaf ids, ascending
    struct Binomial {
        std::vector<Int> lhs, rhs;    // exponent tuples over `variables`
    };
    std::vector<Binomial> equations;  // exactly |variables| - 1 of them
    Int branch_count = 1;
};

namespace detail {

inline CurvePresentation presentation_recursive(const ResolutionGraph& g, VertexId root) {
    RootedCharSystem sys = rooted_char_system(g, root);
    CurvePresentation pres;
    pres.variables = sys.variables;
    pres.branch_count = sys.r;
    if (g.node_ids().empty()) return pres;  // string: one variable, no relations

    RootedDecomposition dec = decompose_at_root(g, root);
    std::map<VertexId, size_t> var_index;
    for (size_t i = 0; i < pres.variables.size(); ++i) var_index[pres.variables[i]] = i;

    std::vector<std::vector<Int>> glue;  // Q_i embedded into the full tuple
    for (const auto& part : dec.parts) {
        RootedCharSystem psys = rooted_char_system(part.graph, part.root_id);
        auto witness = member(psys, psys.qhat);
        if (!witness)
            throw PresentationError(part.root_id,
                                    "qhat of the part rooted at " + std::to_string(part.root_id) +
                                        " is not in its value semigroup; no curve presentation");
        std::vector<Int> embedded(pres.variables.size(), Int(0));
        for (size_t i = 0; i < psys.variables.size(); ++i) embedded[var_index.at(psys.variables[i])] = (*witness)[i];
        glue.push_back(std::move(embedded));

        CurvePresentation sub = presentation_recursive(part.graph, part.root_id);
        for (const auto& eq : sub.equations) {
            CurvePresentation::Binomial b;
            b.lhs.assign(pres.variables.size(), Int(0));
            b.rhs.assign(pres.variables.size(), Int(0));
            for (size_t i = 0; i < sub.variables.size(); ++i) {
                size_t gi = var_index.at(sub.variables[i]);
                b.lhs[gi] = eq.lhs[i];
                b.rhs[gi] = eq.rhs[i];
            }
            pres.equations.push_back(std::move(b));
        }
    }
    for (size_t i = 1; i < glue.size(); ++i)
        pres.equations.push_back({glue[0], glue[i]});
    return pres;
}

}  // namespace detail

inline CurvePresentation curve_presentation(const ResolutionGraph& g, VertexId root) {
    require_valid(g);
    if (!g.is_leaf(root)) throw GraphError("curve_presentation: root must be a leaf");
    ResolutionGraph sep = separate_nodes(g);
    CurvePresentation pres = detail::presentation_recursive(sep, root);
    if (!pres.variables.empty() && pres.equations.size() + 1 != pres.variables.size())
        throw std::logic_error("presentation is not a complete intersection (implementation bug)");
    return pres;
}

inline std::string render_monomial(const CurvePresentation& pres, const std::vector<Int>& exps,
                                   const std::map<VertexId, int>& var_names) {
    std::string s;
    for (size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += "Y" + std::to_string(var_names.at(pres.variables[i])) + "^" + exps[i].get_str();
    }
    return s.empty() ? "1" : s;
}

// Both combinatorial conditions at every node, in the directions away
// from the root: admissible monomials exist on each away edge, and per
// node the away edges admit a common character.
inline bool conditions_away_from_root(const ResolutionGraph& g, VertexId root) {
    require_valid(g);
    DiscriminantGroup group = discriminant_group(g);
    const std::vector<VertexId> leaves = g.leaf_ids();
    auto class_of = [&](const std::vector<Int>& mono) {
        DClass c = group.zero();
        for (size_t i = 0; i < leaves.size(); ++i)
            c = group.add(c, group.scale(mono[i], group.vertex_class.at(leaves[i])));
        return c;
    };
    for (VertexId v : g.node_ids()) {
        std::vector<VertexId> path = tree_path(g, v, root);
        VertexId toward_root = path[1];
        std::optional<std::set<DClass>> common;
        for (VertexId nb : g.neighbors(v)) {
            if (nb == toward_root) continue;
            auto monos = admissible_monomials(g, v, nb);
            if (monos.empty()) return false;
            std::set<DClass> classes;
            for (const auto& mn : monos) classes.insert(class_of(mn));
            if (!common) {
                common = std::move(classes);
            } else {
                std::set<DClass> next;
                for (const auto& c : classes)
                    if (common->count(c)) next.insert(c);
                *common = std::move(next);
            }
            if (common->empty()) return false;
        }
    }
    return true;
}

struct MajReport {
    Int two_delta_minus_r;
    Int nu;
    bool equality = false;
    bool conditions_away_from_root = false;
};

// The gap-count bound 2 delta - r <= nu(Γ,*); on equality the semigroup
// and congruence conditions away from the root must hold.
inline MajReport verify_maj(const ResolutionGraph& g, VertexId root) {
    RootedCharSystem sys = rooted_char_system(g, root);
    SemigroupReport rep = delta(sys);
    MajReport out;
    out.two_delta_minus_r = 2 * rep.delta - sys.r;
    out.nu = nu(g, root).value;
    if (out.two_delta_minus_r > out.nu)
        throw std::logic_error("gap bound violated at root " + std::to_string(root) + " (implementation bug)");
    out.equality = out.two_delta_minus_r == out.nu;
    out.conditions_away_from_root = conditions_away_from_root(g, root);
    if (out.equality && !out.conditions_away_from_root)
        throw std::logic_error("equality without away-from-root conditions at root " + std::to_string(root));
    return out;
}

struct MilnorData {
    Int chi_fiber;   // Euler characteristic of the model Milnor fiber
    Rat chi_fz;      // A'Campo value for the degree-d function downstairs
    Rat delta_top;   // (r + nu)/2
    Int mu;          // 2 delta_top - r + 1 = nu + 1
    Int branch_count;
};

inline MilnorData milnor_data(const ResolutionGraph& g, VertexId leaf, const Int& d) {
    require_valid(g);
    if (!g.is_leaf(leaf)) throw GraphError("milnor_data: vertex must be a leaf");
    if (d <= 0) throw std::invalid_argument("milnor_data: d must be positive");
    MilnorData out;
    NuValue nv = nu(g, leaf);
    RootedCharSystem sys = rooted_char_system(g, leaf);
    out.chi_fiber = -nv.value;
    Rat fz(d * out.chi_fiber, sys.order);
    fz.canonicalize();
    out.chi_fz = fz;
    Rat dt(sys.r + nv.value, 2);
    dt.canonicalize();
    out.delta_top = dt;
    out.mu = nv.value + 1;
    out.branch_count = sys.r;
    return out;
}

// l(K_v, K_w) = l_vw / |D| as an exact rational; the torsion linking form
// value is its negative mod 1.
inline Rat knot_linking(const ResolutionGraph& g, VertexId v, VertexId w) {
    LinkingMatrix lm = linking_matrix(g);
    Rat q(lm.at(v, w), lm.order);
    q.canonicalize();
    return q;
}

// Branch count of the curve cut out at a leaf, with the cross-check
// r * (order of e_leaf in D) = |D|.
inline Int branch_count_of_end_curve(const ResolutionGraph& g, VertexId leaf) {
    RootedCharSystem sys = rooted_char_system(g, leaf);
    Int d_prime = sys.group.order_of(sys.group.vertex_class.at(leaf));
    if (sys.r * d_prime != sys.order)
        throw std::logic_error("r * ord(e_leaf) != |D| at leaf " + std::to_string(leaf) + " (implementation bug)");
    return sys.r;
}

}  // namespace splicekit
