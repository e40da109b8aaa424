#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "splicekit/graph.hpp"
#include "splicekit/matrix.hpp"
#include "splicekit/numbers.hpp"

namespace splicekit {

// Element of the discriminant group in Smith normal form coordinates:
// one residue in [0, d_j) per elementary divisor d_j. Equality is
// componentwise, so character equality is exact tuple equality.
struct DClass {
    std::vector<Int> coords;

    bool operator==(const DClass& o) const { return coords == o.coords; }
    bool operator!=(const DClass& o) const { return coords != o.coords; }
    bool operator<(const DClass& o) const { return coords < o.coords; }
    bool is_zero() const {
        for (const auto& c : coords)
            if (c != 0) return false;
        return true;
    }
};

// Cokernel of the intersection matrix, presented by elementary divisors
// d_1 | d_2 | ... (each > 1), with the class of every vertex basis vector
// and the Q-valued intersection pairing A^{-1} (so e_v.e_w = -l_vw/|D|).
class DiscriminantGroup {
public:
    Int order = 1;
    std::vector<Int> divisors;
    std::map<VertexId, DClass> vertex_class;
    std::vector<VertexId> vertex_order;
    std::vector<std::vector<Rat>> pairing;

    DClass zero() const { return DClass{std::vector<Int>(divisors.size(), Int(0))}; }

    DClass reduce(std::vector<Int> coords) const {
        if (coords.size() != divisors.size()) throw std::invalid_argument("class coordinate size mismatch");
        for (size_t j = 0; j < coords.size(); ++j) coords[j] = mod_floor(coords[j], divisors[j]);
        return DClass{std::move(coords)};
    }
    DClass add(const DClass& a, const DClass& b) const {
        check(a); check(b);
        std::vector<Int> c(divisors.size());
        for (size_t j = 0; j < c.size(); ++j) c[j] = mod_floor(a.coords[j] + b.coords[j], divisors[j]);
        return DClass{std::move(c)};
    }
    DClass neg(const DClass& a) const {
        check(a);
        std::vector<Int> c(divisors.size());
        for (size_t j = 0; j < c.size(); ++j) c[j] = mod_floor(-a.coords[j], divisors[j]);
        return DClass{std::move(c)};
    }
    DClass scale(const Int& k, const DClass& a) const {
        check(a);
        std::vector<Int> c(divisors.size());
        for (size_t j = 0; j < c.size(); ++j) c[j] = mod_floor(k * a.coords[j], divisors[j]);
        return DClass{std::move(c)};
    }
    Int order_of(const DClass& a) const {
        check(a);
        Int n = 1;
        for (size_t j = 0; j < divisors.size(); ++j) n = lcm(n, divexact(divisors[j], gcd(a.coords[j], divisors[j])));
        return n;
    }

    // Order of the subgroup generated by the given classes: the index of
    // diag(d) Z^k inside the lattice spanned by the lifts and diag(d).
    Int subgroup_order(const std::vector<DClass>& gens) const {
        const int k = static_cast<int>(divisors.size());
        if (k == 0) return 1;
        IntMatrix m(k, static_cast<int>(gens.size()) + k);
        for (size_t p = 0; p < gens.size(); ++p) {
            check(gens[p]);
            for (int j = 0; j < k; ++j) m.at(j, static_cast<int>(p)) = gens[p].coords[j];
        }
        for (int j = 0; j < k; ++j) m.at(j, static_cast<int>(gens.size()) + j) = divisors[j];
        SmithNormalForm f = smith_normal_form(m);
        Int lattice_det = 1;
        for (int j = 0; j < f.rank; ++j) lattice_det *= f.s.at(j, j);
        Int full = 1;
        for (const auto& d : divisors) full *= d;
        return divexact(full, lattice_det);
    }

    // All elements of the subgroup generated by the given classes.
    std::set<DClass> subgroup_elements(const std::vector<DClass>& gens) const {
        std::set<DClass> out{zero()};
        std::vector<DClass> frontier{zero()};
        while (!frontier.empty()) {
            std::vector<DClass> next;
            for (const auto& x : frontier)
                for (const auto& g : gens) {
                    DClass y = add(x, g);
                    if (out.insert(y).second) next.push_back(y);
                }
            frontier = std::move(next);
        }
        return out;
    }

private:
    void check(const DClass& a) const {
        if (a.coords.size() != divisors.size()) throw std::invalid_argument("class has wrong divisor profile");
    }
};

// D = coker A(Γ), computed from the Smith normal form of -A so the
// divisors come out positive. vertex_class(v) is the image of the v-th
// standard basis vector; pairing is A^{-1} as exact rationals.
inline DiscriminantGroup discriminant_group(const ResolutionGraph& g) {
    IntMatrix a = intersection_matrix(g);
    if (!is_negative_definite(a)) throw GraphError("discriminant group requires a negative definite graph");
    IntMatrix neg_a = -a;
    const int n = neg_a.rows();
    SmithNormalForm f = smith_normal_form(neg_a);

    DiscriminantGroup d;
    d.vertex_order = g.ids();
    d.order = 1;
    std::vector<int> keep_rows;
    for (int j = 0; j < n; ++j) {
        d.order *= f.s.at(j, j);
        if (f.s.at(j, j) > 1) {
            keep_rows.push_back(j);
            d.divisors.push_back(f.s.at(j, j));
        }
    }
    for (int v = 0; v < n; ++v) {
        std::vector<Int> coords;
        coords.reserve(keep_rows.size());
        for (int j : keep_rows) coords.push_back(mod_floor(f.u.at(j, v), f.s.at(j, j)));
        d.vertex_class[d.vertex_order[static_cast<size_t>(v)]] = DClass{std::move(coords)};
    }
    // pairing = A^{-1} = -adj(-A)/det(-A); entries are -l_vw/|D|
    IntMatrix adj = adjugate(neg_a);
    d.pairing.assign(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat q(-adj.at(i, j), d.order);
            q.canonicalize();
            d.pairing[i][j] = q;
        }
    return d;
}

}  // namespace splicekit
