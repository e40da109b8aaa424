#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "splicekit/discriminant.hpp"
#include "splicekit/graph.hpp"
#include "splicekit/matrix.hpp"
#include "splicekit/numbers.hpp"
#include "splicekit/splice.hpp"

namespace splicekit {

// Element of the character group of a rooted diagram: unreduced weight
// (linking-number scale) plus the class in D that represents the character
// through the nondegenerate pairing. Reduced weight is weight/s on demand.
struct GChar {
    Int weight;
    DClass cls;

    bool operator==(const GChar& o) const { return weight == o.weight && cls == o.cls; }
    bool operator!=(const GChar& o) const { return !(*this == o); }
    bool operator<(const GChar& o) const {
        if (weight != o.weight) return weight < o.weight;
        return cls < o.cls;
    }
};

struct GapEnumerationCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Character data of a rooted diagram (Γ,*): one generator per non-root
// leaf, the GCD s of their weights, the branch count r computed
// independently from the weight-zero sublattice, and the distinguished
// trivial-character element qhat of minimal positive weight.
//
// Strings need no special handling: a lone vertex doubles as leaf and
// root (weight 1, class e_v), and the far leaf of a longer string gets
// linking number 1 from the adjugate.
struct RootedCharSystem {
    ResolutionGraph graph;
    VertexId root = 0;
    DiscriminantGroup group;
    Int order = 1;  // |D|
    std::vector<VertexId> variables;
    std::vector<GChar> generators;
    Int s = 1;
    Int r = 1;
    GChar qhat;
    std::vector<DClass> kernel_image_gens;

    size_t arity() const { return variables.size(); }
};

inline GChar char_of_monomial(const RootedCharSystem& sys, const std::vector<Int>& exponents) {
    if (exponents.size() != sys.arity()) throw std::invalid_argument("exponent tuple arity mismatch");
    GChar out{Int(0), sys.group.zero()};
    for (size_t i = 0; i < exponents.size(); ++i) {
        out.weight += exponents[i] * sys.generators[i].weight;
        out.cls = sys.group.add(out.cls, sys.group.scale(exponents[i], sys.generators[i].cls));
    }
    return out;
}

inline RootedCharSystem rooted_char_system(const ResolutionGraph& g, VertexId root) {
    require_valid(g);
    if (!g.is_leaf(root)) throw GraphError("rooted_char_system: root must be a leaf");
    RootedCharSystem sys;
    sys.graph = g;
    sys.root = root;
    sys.group = discriminant_group(g);
    sys.order = sys.group.order;

    if (g.size() == 1) {
        sys.variables = {root};  // the lone vertex plays both leaf and root
    } else {
        for (VertexId v : g.leaf_ids())
            if (v != root) sys.variables.push_back(v);
    }
    LinkingMatrix lm = linking_matrix(g);
    const int m = static_cast<int>(sys.variables.size());
    std::vector<Int> ells;
    for (VertexId w : sys.variables) {
        Int l = (g.size() == 1) ? Int(1) : lm.at(w, root);
        if (l <= 0) throw std::logic_error("nonpositive linking number at leaf " + std::to_string(w));
        sys.generators.push_back({l, sys.group.vertex_class.at(w)});
        ells.push_back(l);
    }
    sys.s = gcd_all(ells);

    // r: order in D of the image of the weight-zero sublattice
    IntMatrix wrow(1, m);
    for (int i = 0; i < m; ++i) wrow.at(0, i) = ells[static_cast<size_t>(i)];
    for (const auto& basis_vec : kernel_basis(wrow)) {
        DClass img = sys.group.zero();
        for (int i = 0; i < m; ++i)
            img = sys.group.add(img, sys.group.scale(basis_vec[static_cast<size_t>(i)], sys.generators[static_cast<size_t>(i)].cls));
        sys.kernel_image_gens.push_back(img);
    }
    sys.r = sys.group.subgroup_order(sys.kernel_image_gens);

    // qhat: gcd of the weight functional over the kernel of Z^m -> D
    const int k = static_cast<int>(sys.group.divisors.size());
    IntMatrix cm(k, m + k);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < k; ++j) cm.at(j, i) = sys.generators[static_cast<size_t>(i)].cls.coords[static_cast<size_t>(j)];
    for (int j = 0; j < k; ++j) cm.at(j, m + j) = sys.group.divisors[static_cast<size_t>(j)];
    std::vector<Int> kernel_weights;
    for (const auto& basis_vec : kernel_basis(cm)) {
        Int w = 0;
        for (int i = 0; i < m; ++i) w += basis_vec[static_cast<size_t>(i)] * ells[static_cast<size_t>(i)];
        kernel_weights.push_back(w);
    }
    Int qw = gcd_all(kernel_weights);
    sys.qhat = GChar{qw, sys.group.zero()};

    if (sys.r != sys.s)
        throw std::logic_error("branch count r != s at root " + std::to_string(root) + " (implementation bug)");
    if (qw <= 0 || qw * sys.r != sys.s * sys.order)
        throw std::logic_error("qhat weight identity violated at root " + std::to_string(root));
    return sys;
}

// Integer (not necessarily non-negative) exponent tuple realizing the
// given element of the character group, if the element lies in it.
inline std::optional<std::vector<Int>> integer_representative(const RootedCharSystem& sys, const GChar& target) {
    const int m = static_cast<int>(sys.arity());
    const int k = static_cast<int>(sys.group.divisors.size());
    IntMatrix mtx(1 + k, m + k);
    std::vector<Int> rhs(1 + static_cast<size_t>(k));
    rhs[0] = target.weight;
    for (int i = 0; i < m; ++i) mtx.at(0, i) = sys.generators[static_cast<size_t>(i)].weight;
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < m; ++i) mtx.at(1 + j, i) = sys.generators[static_cast<size_t>(i)].cls.coords[static_cast<size_t>(j)];
        mtx.at(1 + j, m + j) = sys.group.divisors[static_cast<size_t>(j)];
        rhs[1 + static_cast<size_t>(j)] = target.cls.coords[static_cast<size_t>(j)];
    }
    auto sol = solve_integer(mtx, rhs);
    if (!sol) return std::nullopt;
    return std::vector<Int>(sol->begin(), sol->begin() + m);
}

namespace detail {

// Dense interning of D-classes so the weight-level dynamic programs can
// work with small integer ids and per-generator translation tables.
class ClassInterner {
public:
    explicit ClassInterner(const DiscriminantGroup& group) : group_(group) {}

    std::int32_t intern(const DClass& c) {
        auto it = ids_.find(c);
        if (it != ids_.end()) return it->second;
        std::int32_t id = static_cast<std::int32_t>(classes_.size());
        ids_.emplace(c, id);
        classes_.push_back(c);
        return id;
    }
    const DClass& at(std::int32_t id) const { return classes_[static_cast<size_t>(id)]; }
    size_t size() const { return classes_.size(); }

    // id of class + generator class, memoized per generator
    std::int32_t translate(size_t gen, std::int32_t id, const DClass& gen_class) {
        if (gen >= trans_.size()) trans_.resize(gen + 1);
        auto& table = trans_[gen];
        if (static_cast<size_t>(id) >= table.size()) table.resize(classes_.size(), -1);
        if (table[static_cast<size_t>(id)] < 0)
            table[static_cast<size_t>(id)] = intern(group_.add(at(id), gen_class));
        return table[static_cast<size_t>(id)];
    }

    // epoch-stamped membership scratchpad for linear-time level dedup
    bool mark(std::int32_t id) {
        if (static_cast<size_t>(id) >= stamp_.size()) stamp_.resize(classes_.size(), 0);
        if (stamp_[static_cast<size_t>(id)] == epoch_) return false;
        stamp_[static_cast<size_t>(id)] = epoch_;
        return true;
    }
    void next_epoch() { ++epoch_; }

private:
    const DiscriminantGroup& group_;
    std::map<DClass, std::int32_t> ids_;
    std::vector<DClass> classes_;
    std::vector<std::vector<std::int32_t>> trans_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t epoch_ = 1;
};

inline std::uint64_t level_cap() {
    const char* env = std::getenv("SPLICEKIT_MAX_WEIGHT_LEVELS");
    if (!env || !*env) return UINT64_MAX;
    return std::strtoull(env, nullptr, 10);
}

// Level-walk class arithmetic over the exact DClass representation.
class GenericClassOps {
public:
    explicit GenericClassOps(const RootedCharSystem& sys) : sys_(sys), interner_(sys.group) {}
    std::int32_t zero() { return interner_.intern(sys_.group.zero()); }
    std::int32_t translate(size_t gen, std::int32_t id) {
        return interner_.translate(gen, id, sys_.generators[gen].cls);
    }
    bool mark(std::int32_t id) { return interner_.mark(id); }
    void next_epoch() { interner_.next_epoch(); }
    DClass class_of(std::int32_t id) const { return interner_.at(id); }

private:
    const RootedCharSystem& sys_;
    ClassInterner interner_;
};

// Same interface with classes packed into one machine word (mixed radix
// over the elementary divisors). Applicable when every divisor fits in
// 32 bits and the group order fits in 62.
class FastClassOps {
public:
    static bool applicable(const DiscriminantGroup& group) {
        Int prod = 1;
        for (const auto& d : group.divisors) {
            if (!fits_u64(d) || to_u64(d) >= (std::uint64_t(1) << 32)) return false;
            prod *= d;
        }
        return fits_u64(prod) && to_u64(prod) < (std::uint64_t(1) << 62);
    }

    explicit FastClassOps(const RootedCharSystem& sys) : group_(sys.group) {
        for (const auto& d : group_.divisors) moduli_.push_back(to_u64(d));
        k_ = moduli_.size();
        for (const auto& g : sys.generators) gens_.push_back(pack(g.cls));
    }
    std::int32_t zero() { return intern(std::vector<std::uint64_t>(k_, 0)); }
    std::int32_t translate(size_t gen, std::int32_t id) {
        if (gen >= trans_.size()) trans_.resize(gen + 1);
        auto& table = trans_[gen];
        if (static_cast<size_t>(id) >= table.size()) table.resize(count(), -1);
        std::int32_t& slot = table[static_cast<size_t>(id)];
        if (slot < 0) {
            std::vector<std::uint64_t> c(k_);
            for (size_t j = 0; j < k_; ++j) {
                c[j] = coords_[static_cast<size_t>(id) * k_ + j] + gens_[gen][j];
                if (c[j] >= moduli_[j]) c[j] -= moduli_[j];
            }
            slot = intern(c);
        }
        return slot;
    }
    bool mark(std::int32_t id) {
        if (static_cast<size_t>(id) >= stamp_.size()) stamp_.resize(count(), 0);
        if (stamp_[static_cast<size_t>(id)] == epoch_) return false;
        stamp_[static_cast<size_t>(id)] = epoch_;
        return true;
    }
    void next_epoch() { ++epoch_; }
    DClass class_of(std::int32_t id) const {
        std::vector<Int> coords(k_);
        for (size_t j = 0; j < k_; ++j)
            coords[j] = Int(static_cast<unsigned long>(coords_[static_cast<size_t>(id) * k_ + j]));
        return DClass{std::move(coords)};
    }

private:
    size_t count() const { return static_cast<size_t>(n_); }
    std::vector<std::uint64_t> pack(const DClass& c) const {
        std::vector<std::uint64_t> out(k_);
        for (size_t j = 0; j < k_; ++j) out[j] = to_u64(c.coords[j]);
        return out;
    }
    std::int32_t intern(const std::vector<std::uint64_t>& c) {
        std::uint64_t key = 0, stride = 1;
        for (size_t j = 0; j < k_; ++j) {
            key += c[j] * stride;
            stride *= moduli_[j];
        }
        auto [it, fresh] = ids_.try_emplace(key, n_);
        if (fresh) {
            coords_.insert(coords_.end(), c.begin(), c.end());
            ++n_;
        }
        return it->second;
    }

    const DiscriminantGroup& group_;
    std::vector<std::uint64_t> moduli_;
    size_t k_ = 0;
    std::int32_t n_ = 0;
    std::vector<std::vector<std::uint64_t>> gens_;
    std::vector<std::uint64_t> coords_;  // k_ entries per class id
    std::unordered_map<std::uint64_t, std::int32_t> ids_;
    std::vector<std::vector<std::int32_t>> trans_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t epoch_ = 1;
};

// Coefficients b with sum b_i x_i = gcd(x_i).
inline std::vector<Int> gcd_combination(const std::vector<Int>& xs) {
    std::vector<Int> combo(xs.size(), Int(0));
    if (xs.empty()) return combo;
    Int g = xs[0];
    combo[0] = 1;
    for (size_t i = 1; i < xs.size(); ++i) {
        Int g2, u, v;
        mpz_gcdext(g2.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t(), xs[i].get_mpz_t());
        for (size_t j = 0; j < i; ++j) combo[j] *= u;
        combo[i] = v;
        g = g2;
    }
    return combo;
}

}  // namespace detail

struct SemigroupReport {
    Int delta = 0;
    Int conductor_weight = 0;  // least W with every weight >= W realized
    std::optional<std::vector<GChar>> gaps;
    std::map<GChar, std::vector<Int>> witnesses;  // filled on demand by callers
};

namespace detail {

// Gap count of the value semigroup: iterate weight levels (multiples of
// s), tracking the set of reachable classes per level; each level
// contributes r minus the number of reachable classes. Enumeration stops
// once min_i(l_i)/s consecutive levels are fully reachable - subtracting
// the corresponding generator then puts every higher element in the
// semigroup.
template <typename Ops>
SemigroupReport delta_core(const RootedCharSystem& sys, bool want_gaps, Ops ops) {
    SemigroupReport rep;
    const size_t m = sys.arity();
    std::vector<std::uint64_t> steps;
    for (const auto& g : sys.generators) steps.push_back(to_u64(divexact(g.weight, sys.s)));
    const std::uint64_t u_min = *std::min_element(steps.begin(), steps.end());
    const std::uint64_t u_max = *std::max_element(steps.begin(), steps.end());
    if (!fits_u64(sys.r)) throw std::overflow_error("branch count too large for gap enumeration");
    const std::uint64_t r = to_u64(sys.r);
    const std::uint64_t cap = level_cap();

    std::set<DClass> coset;  // valid classes per level, translated along the base combo
    DClass base_step = sys.group.zero();
    if (want_gaps) {
        if (r > 1000000) throw std::overflow_error("gap listing infeasible: r = " + sys.r.get_str());
        coset = sys.group.subgroup_elements(sys.kernel_image_gens);
        std::vector<Int> ells;
        for (const auto& g : sys.generators) ells.push_back(g.weight);
        std::vector<Int> combo = gcd_combination(ells);
        for (size_t i = 0; i < m; ++i)
            base_step = sys.group.add(base_step, sys.group.scale(combo[i], sys.generators[i].cls));
        rep.gaps.emplace();
    }

    std::vector<std::vector<std::int32_t>> ring(u_max);
    ring[0] = {ops.zero()};
    rep.delta = Int(r - 1);
    Int last_gap_level = (r > 1) ? Int(0) : Int(-1);
    if (want_gaps && r > 1) {
        DClass base = sys.group.zero();
        for (const auto& c : coset)
            if (!(c == base)) rep.gaps->push_back(GChar{Int(0), c});
    }

    std::uint64_t run = (r == 1) ? 1 : 0;
    std::uint64_t n = 0;
    DClass level_base = sys.group.zero();
    while (run < u_min) {
        ++n;
        if (n > cap)
            throw GapEnumerationCapExceeded("gap enumeration exceeded SPLICEKIT_MAX_WEIGHT_LEVELS=" + std::to_string(cap));
        std::vector<std::int32_t> cur;
        ops.next_epoch();
        for (size_t j = 0; j < m; ++j) {
            if (steps[j] > n) continue;
            const auto& prev = ring[(n - steps[j]) % u_max];
            for (std::int32_t id : prev) {
                std::int32_t nid = ops.translate(j, id);
                if (ops.mark(nid)) cur.push_back(nid);
            }
        }
        if (cur.size() > r) throw std::logic_error("reachable classes exceed r (implementation bug)");
        const std::uint64_t missing = r - cur.size();
        if (missing > 0) {
            rep.delta += Int(missing);
            last_gap_level = Int(static_cast<long>(n));
            run = 0;
        } else {
            ++run;
        }
        if (want_gaps) {
            level_base = sys.group.add(level_base, base_step);
            if (missing > 0) {
                std::set<DClass> present;
                for (std::int32_t id : cur) present.insert(ops.class_of(id));
                for (const auto& kcls : coset) {
                    DClass cand = sys.group.add(level_base, kcls);
                    if (!present.count(cand)) rep.gaps->push_back(GChar{Int(static_cast<long>(n)) * sys.s, cand});
                }
            }
        }
        ring[n % u_max] = std::move(cur);
    }
    rep.conductor_weight = (last_gap_level < 0) ? Int(0) : (last_gap_level + 1) * sys.s;
    return rep;
}

// exposed for cross-checking the packed representation in tests
inline SemigroupReport delta_generic(const RootedCharSystem& sys, bool want_gaps = false) {
    return delta_core(sys, want_gaps, GenericClassOps(sys));
}

}  // namespace detail

inline SemigroupReport delta(const RootedCharSystem& sys, bool want_gaps = false) {
    if (detail::FastClassOps::applicable(sys.group))
        return detail::delta_core(sys, want_gaps, detail::FastClassOps(sys));
    return detail::delta_generic(sys, want_gaps);
}

// Membership test with a replayable witness: the graded-lexicographically
// smallest non-negative tuple realizing the target, or absent. Same level
// walk as delta(), but carrying grlex-minimal witnesses instead of sets.
inline std::optional<std::vector<Int>> member(const RootedCharSystem& sys, const GChar& target) {
    if (target.cls.coords.size() != sys.group.divisors.size())
        throw std::invalid_argument("member: target class has wrong divisor profile");
    if (target.weight < 0) return std::nullopt;
    if (mod_floor(target.weight, sys.s) != 0) return std::nullopt;
    const size_t m = sys.arity();
    const std::uint64_t target_level = to_u64(divexact(target.weight, sys.s));
    const std::uint64_t cap = detail::level_cap();
    if (target_level > cap)
        throw GapEnumerationCapExceeded("member target exceeds SPLICEKIT_MAX_WEIGHT_LEVELS=" + std::to_string(cap));

    std::vector<std::uint64_t> steps;
    for (const auto& g : sys.generators) steps.push_back(to_u64(divexact(g.weight, sys.s)));
    const std::uint64_t u_max = *std::max_element(steps.begin(), steps.end());

    auto grlex_less = [](const std::vector<Int>& a, const std::vector<Int>& b) {
        Int da = 0, db = 0;
        for (const auto& x : a) da += x;
        for (const auto& x : b) db += x;
        if (da != db) return da < db;
        return a < b;
    };

    detail::ClassInterner interner(sys.group);
    using Level = std::map<std::int32_t, std::vector<Int>>;
    std::vector<Level> ring(std::max<std::uint64_t>(u_max, 1));
    ring[0] = Level{{interner.intern(sys.group.zero()), std::vector<Int>(m, Int(0))}};

    for (std::uint64_t n = 1; n <= target_level; ++n) {
        Level cur;
        for (size_t j = 0; j < m; ++j) {
            if (steps[j] > n) continue;
            const Level& prev = ring[(n - steps[j]) % u_max];
            const DClass& gc = sys.generators[j].cls;
            for (const auto& [id, wit] : prev) {
                std::int32_t nid = interner.translate(j, id, gc);
                std::vector<Int> cand = wit;
                cand[j] += 1;
                auto it = cur.find(nid);
                if (it == cur.end())
                    cur.emplace(nid, std::move(cand));
                else if (grlex_less(cand, it->second))
                    it->second = std::move(cand);
            }
        }
        ring[n % u_max] = std::move(cur);
    }
    const Level& last = ring[target_level % std::max<std::uint64_t>(u_max, 1)];
    auto it = last.find(interner.intern(target.cls));
    if (it == last.end()) return std::nullopt;
    return it->second;
}

// ---- admissible monomials and the two combinatorial conditions ----

// All non-negative tuples over the full leaf list, supported on the leaves
// beyond the given edge at the node, of total v-weight l_vv. Sorted grlex
// ascending, so [0] is the canonical choice.
inline std::vector<std::vector<Int>> admissible_monomials(const ResolutionGraph& g, VertexId node,
                                                          VertexId edge_neighbor) {
    require_valid(g);
    if (g.valency(node) < 3) throw GraphError("admissible_monomials: vertex is not a node");
    if (!g.has_edge(node, edge_neighbor)) throw GraphError("admissible_monomials: edge not incident to node");
    LinkingMatrix lm = linking_matrix(g);
    const std::vector<VertexId> leaves = g.leaf_ids();
    auto beyond = component_without(g, node, edge_neighbor);
    std::vector<size_t> var_pos;
    std::vector<Int> wts;
    for (size_t i = 0; i < leaves.size(); ++i)
        if (beyond.count(leaves[i])) {
            var_pos.push_back(i);
            wts.push_back(lm.at(node, leaves[i]));
        }
    const Int target = lm.at(node, node);

    std::vector<Int> suffix_gcd(wts.size() + 1, Int(0));
    for (size_t i = wts.size(); i-- > 0;) suffix_gcd[i] = gcd(wts[i], suffix_gcd[i + 1]);

    std::vector<std::vector<Int>> out;
    std::vector<Int> acc(wts.size(), Int(0));
    auto rec = [&](auto&& self, size_t i, const Int& rem) -> void {
        if (i == wts.size()) {
            if (rem == 0) {
                std::vector<Int> full(leaves.size(), Int(0));
                for (size_t t = 0; t < var_pos.size(); ++t) full[var_pos[t]] = acc[t];
                out.push_back(std::move(full));
            }
            return;
        }
        if (suffix_gcd[i] == 0) {
            if (rem == 0) self(self, wts.size(), rem);
            return;
        }
        if (mod_floor(rem, suffix_gcd[i]) != 0) return;
        Int kmax = rem / wts[i];
        for (Int k = 0; k <= kmax; ++k) {
            acc[i] = k;
            self(self, i + 1, rem - k * wts[i]);
        }
        acc[i] = 0;
    };
    rec(rec, 0, target);

    auto grlex_less = [](const std::vector<Int>& a, const std::vector<Int>& b) {
        Int da = 0, db = 0;
        for (const auto& x : a) da += x;
        for (const auto& x : b) db += x;
        if (da != db) return da < db;
        return a < b;
    };
    std::sort(out.begin(), out.end(), grlex_less);
    return out;
}

struct SemigroupConditionReport {
    std::map<std::pair<VertexId, VertexId>, bool> edge_flags;  // (node, neighbor)
    bool all = true;
};

inline SemigroupConditionReport semigroup_condition(const ResolutionGraph& g) {
    SemigroupConditionReport rep;
    for (VertexId v : g.node_ids())
        for (VertexId nb : g.neighbors(v)) {
            bool okay = !admissible_monomials(g, v, nb).empty();
            rep.edge_flags[{v, nb}] = okay;
            rep.all = rep.all && okay;
        }
    return rep;
}

struct CongruenceWitness {
    DClass character;                              // shared class of the chosen monomials
    std::map<VertexId, std::vector<Int>> choice;   // edge neighbor -> exponent tuple
};

// Per node: intersect the character sets of the admissible monomials over
// all outgoing edges; absent when the semigroup condition fails at the
// node or no common character exists.
inline std::map<VertexId, std::optional<CongruenceWitness>> congruence_condition(const ResolutionGraph& g) {
    require_valid(g);
    DiscriminantGroup group = discriminant_group(g);
    const std::vector<VertexId> leaves = g.leaf_ids();
    auto class_of = [&](const std::vector<Int>& mono) {
        DClass c = group.zero();
        for (size_t i = 0; i < leaves.size(); ++i)
            c = group.add(c, group.scale(mono[i], group.vertex_class.at(leaves[i])));
        return c;
    };

    std::map<VertexId, std::optional<CongruenceWitness>> out;
    for (VertexId v : g.node_ids()) {
        bool feasible = true;
        // per edge: class -> grlex-min monomial with that class
        std::vector<std::pair<VertexId, std::map<DClass, std::vector<Int>>>> per_edge;
        for (VertexId nb : g.neighbors(v)) {
            auto monos = admissible_monomials(g, v, nb);
            if (monos.empty()) { feasible = false; break; }
            std::map<DClass, std::vector<Int>> by_class;
            for (auto& mn : monos) by_class.try_emplace(class_of(mn), mn);  // monos grlex-sorted
            per_edge.emplace_back(nb, std::move(by_class));
        }
        if (!feasible) { out[v] = std::nullopt; continue; }
        std::set<DClass> common;
        for (const auto& [cls, mono] : per_edge[0].second) common.insert(cls);
        for (size_t e = 1; e < per_edge.size(); ++e) {
            std::set<DClass> next;
            for (const auto& [cls, mono] : per_edge[e].second)
                if (common.count(cls)) next.insert(cls);
            common = std::move(next);
        }
        if (common.empty()) { out[v] = std::nullopt; continue; }
        CongruenceWitness w;
        w.character = *common.begin();
        for (auto& [nb, by_class] : per_edge) w.choice[nb] = by_class.at(w.character);
        out[v] = std::move(w);
    }
    return out;
}

// ---- kernel basis compatibility across a rooted decomposition ----

struct KernelBasisReport {
    bool ok = true;
    bool vacuous = false;           // single part
    bool used_monomials = true;     // all parts represented qhat by non-negative tuples
    std::optional<GChar> common_image;
    std::vector<std::string> notes;
};

// Check that the images in the whole graph's character group of the
// distinguished elements qhat_i of all parts coincide, with unreduced
// weight equal to the product of the part orders.
inline KernelBasisReport kernel_basis_check(const ResolutionGraph& g, VertexId root) {
    ResolutionGraph sep = separate_nodes(g);
    RootedDecomposition dec = decompose_at_root(sep, root);
    RootedCharSystem gamma = rooted_char_system(sep, root);
    KernelBasisReport rep;
    if (dec.parts.size() == 1) {
        rep.vacuous = true;
        return rep;
    }
    std::map<VertexId, size_t> var_index;
    for (size_t i = 0; i < gamma.variables.size(); ++i) var_index[gamma.variables[i]] = i;

    const Int expected_weight = dec.total_order();
    for (const auto& part : dec.parts) {
        RootedCharSystem psys = rooted_char_system(part.graph, part.root_id);
        std::optional<std::vector<Int>> tuple = member(psys, psys.qhat);
        if (!tuple) {
            rep.used_monomials = false;
            tuple = integer_representative(psys, psys.qhat);
            if (!tuple) throw std::logic_error("qhat has no integer representative (implementation bug)");
            rep.notes.push_back("part rooted at " + std::to_string(part.root_id) +
                                ": qhat not in the value semigroup; used an integer representative");
        }
        std::vector<Int> global(gamma.variables.size(), Int(0));
        for (size_t i = 0; i < psys.variables.size(); ++i) global[var_index.at(psys.variables[i])] = (*tuple)[i];
        GChar image = char_of_monomial(gamma, global);
        if (image.weight != expected_weight) {
            rep.ok = false;
            rep.notes.push_back("image weight " + image.weight.get_str() + " != product of part orders " +
                                expected_weight.get_str());
        }
        if (!rep.common_image) {
            rep.common_image = image;
        } else if (!(*rep.common_image == image)) {
            rep.ok = false;
            rep.notes.push_back("images of part qhat elements disagree");
        }
    }
    return rep;
}

}  // namespace splicekit
