#pragma once

#include <map>
#include <string>
#include <vector>

#include "splicekit/dcurve.hpp"
#include "splicekit/discriminant.hpp"
#include "splicekit/graph.hpp"
#include "splicekit/semigroup.hpp"
#include "splicekit/splice.hpp"

namespace splicekit {

// Exact identity suite run against one graph. Names are stable: reports
// and the CLI key off them.
struct IdentitySuiteResult {
    std::map<std::string, int> passed;   // identity name -> checks run
    std::vector<std::string> failures;   // human-readable witnesses
    bool ok() const { return failures.empty(); }

    void pass(const std::string& name) { ++passed[name]; }
    void fail(const std::string& name, const std::string& witness) {
        failures.push_back(name + ": " + witness);
    }
    void merge(const IdentitySuiteResult& o) {
        for (const auto& [k, v] : o.passed) passed[k] += v;
        failures.insert(failures.end(), o.failures.begin(), o.failures.end());
    }
};

inline IdentitySuiteResult run_identity_suite(const ResolutionGraph& g) {
    IdentitySuiteResult res;
    GraphDiagnostics diag = validate(g);
    if (!diag.ok()) {
        res.fail("input", "graph is not a negative definite tree");
        return res;
    }

    // (a) adjugate linking matrix vs path products on the maximal diagram
    {
        LinkingMatrix lm = linking_matrix(g);
        SpliceDiagram sd = maximal_splice_diagram(g);
        bool okay = true;
        for (VertexId v : g.ids())
            for (VertexId w : g.ids())
                if (lm.at(v, w) != linking_path(sd, v, w)) {
                    res.fail("linking-two-routes", "entry (" + std::to_string(v) + "," + std::to_string(w) + ")");
                    okay = false;
                }
        if (okay) res.pass("linking-two-routes");
    }
    // Prop on knot linking: symmetry of l(K_v, K_w)
    {
        bool okay = true;
        for (VertexId v : g.ids())
            for (VertexId w : g.ids())
                if (knot_linking(g, v, w) != knot_linking(g, w, v)) okay = false;
        if (okay)
            res.pass("knot-linking-symmetry");
        else
            res.fail("knot-linking-symmetry", "asymmetric pair found");
    }

    ResolutionGraph sep = separate_nodes(g);
    const bool has_node = !sep.node_ids().empty();
    const Int big_d = determinant(-intersection_matrix(g));

    for (VertexId root : g.leaf_ids()) {
        const std::string at = " at root " + std::to_string(root);

        // (c) r = s, and the qhat weight identity, both asserted inside
        RootedCharSystem sys;
        try {
            sys = rooted_char_system(g, root);
            res.pass("branch-count-equals-gcd");
        } catch (const std::logic_error& e) {
            res.fail("branch-count-equals-gcd", e.what() + at);
            continue;
        }

        // (g) r * ord(e_leaf) = |D|
        try {
            branch_count_of_end_curve(g, root);
            res.pass("branch-count-times-knot-order");
        } catch (const std::logic_error& e) {
            res.fail("branch-count-times-knot-order", e.what() + at);
        }

        // nu is a splice-diagram invariant: blow-ups must not change it
        const Int nu_g = nu(g, root).value;
        if (nu_g == nu(sep, root).value)
            res.pass("nu-splice-invariant");
        else
            res.fail("nu-splice-invariant", "nu changed under blow-up" + at);

        if (has_node) {
            // (b) linking identities across the rooted decomposition
            LinkIdentityReport link = check_link_identities(sep, root);
            if (link.ok)
                res.pass("link-identities");
            else
                for (const auto& f : link.failures) res.fail("link-identities", f + at);

            // (d) nu recursion over the parts
            RootedDecomposition dec = decompose_at_root(sep, root);
            Int total = dec.total_order();
            Int rhs = (Int(static_cast<long>(dec.parts.size())) - 1) * total;
            for (const auto& part : dec.parts)
                rhs += divexact(total, part.order) * nu(part.graph, part.root_id).value;
            if (nu_g == rhs)
                res.pass("nu-recursion");
            else
                res.fail("nu-recursion", nu_g.get_str() + " != " + rhs.get_str() + at);

            // kernel basis compatibility of the parts' distinguished characters
            try {
                KernelBasisReport kb = kernel_basis_check(g, root);
                if (kb.ok)
                    res.pass("kernel-basis");
                else
                    for (const auto& note : kb.notes) res.fail("kernel-basis", note + at);
            } catch (const std::logic_error& e) {
                res.fail("kernel-basis", e.what() + at);
            }
        }

        // (e) 2 delta - r <= part-wise bound <= nu
        SemigroupReport rep = delta(sys);
        Int two_dr = 2 * rep.delta - sys.r;
        Int bound = delta_recursive_bound(g, root);
        if (two_dr <= bound && bound <= nu_g)
            res.pass("gap-bound-chain");
        else
            res.fail("gap-bound-chain",
                     "2d-r=" + two_dr.get_str() + " bound=" + bound.get_str() + " nu=" + nu_g.get_str() + at);

        // one-node graphs attain equality
        if (sep.node_ids().size() == 1 && two_dr != nu_g)
            res.fail("one-node-equality", two_dr.get_str() + " != " + nu_g.get_str() + at);
        else if (sep.node_ids().size() == 1)
            res.pass("one-node-equality");

        // (f) equality instances satisfy the conditions away from the root
        // and admit a presentation (all recursive qhat_i representable)
        if (two_dr == nu_g) {
            if (conditions_away_from_root(g, root))
                res.pass("equality-implies-conditions");
            else
                res.fail("equality-implies-conditions", "conditions fail" + at);
            if (has_node) {
                bool parts_ok = true;
                RootedDecomposition dec = decompose_at_root(sep, root);
                for (const auto& part : dec.parts) {
                    RootedCharSystem psys = rooted_char_system(part.graph, part.root_id);
                    if (!member(psys, psys.qhat)) parts_ok = false;
                }
                if (parts_ok)
                    res.pass("equality-implies-qhat-representable");
                else
                    res.fail("equality-implies-qhat-representable", "some part qhat not in its semigroup" + at);
                try {
                    CurvePresentation pres = curve_presentation(g, root);
                    bool balanced = true;
                    RootedCharSystem gsys = rooted_char_system(sep, root);
                    for (const auto& eq : pres.equations)
                        if (!(char_of_monomial(gsys, eq.lhs) == char_of_monomial(gsys, eq.rhs))) balanced = false;
                    if (balanced && pres.equations.size() + 1 == pres.variables.size())
                        res.pass("presentation-balanced");
                    else
                        res.fail("presentation-balanced", "unbalanced or wrong count" + at);
                } catch (const PresentationError& e) {
                    res.fail("presentation-balanced", std::string(e.what()) + at);
                }
            }
        }

        // Milnor fiber bookkeeping: chi(F) = (|D|/d) chi(F_z) with d = |D|
        MilnorData md = milnor_data(g, root, big_d);
        if (Rat(md.chi_fiber) == md.chi_fz && md.mu == nu_g + 1)
            res.pass("milnor-consistency");
        else
            res.fail("milnor-consistency", "chi/delta bookkeeping" + at);
    }
    return res;
}

}  // namespace splicekit
