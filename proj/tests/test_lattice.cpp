#include <doctest.h>

#include <random>

#include "splicekit/discriminant.hpp"
#include "splicekit/graph.hpp"
#include "splicekit/matrix.hpp"
#include "splicekit/randomgraph.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace splicekit;

namespace {

IntMatrix random_symmetric(std::mt19937_64& rng, int n, int span = 9) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Int v = Int(static_cast<long>(rng() % (2 * span + 1)) - span);
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    return m;
}

IntMatrix random_matrix(std::mt19937_64& rng, int n, int span = 9) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = Int(static_cast<long>(rng() % (2 * span + 1)) - span);
    return m;
}

}  // namespace

TEST_CASE("intersection matrix basics") {
    auto g = fixtures::single(-2);
    IntMatrix m = intersection_matrix(g);
    CHECK(m.rows() == 1);
    CHECK(m.at(0, 0) == -2);

    auto chain = fixtures::chain23();
    IntMatrix c = intersection_matrix(chain);
    CHECK(c.at(0, 0) == -2);
    CHECK(c.at(1, 1) == -3);
    CHECK(c.at(0, 1) == 1);
    CHECK(c.at(1, 0) == 1);
    CHECK(determinant(-c) == 5);

    CHECK(determinant(-intersection_matrix(fixtures::d33())) == 33);
    CHECK(determinant(-intersection_matrix(fixtures::e8())) == 1);
    CHECK(determinant(-intersection_matrix(fixtures::d9())) == 9);
}

TEST_CASE("determinant agrees with Laplace expansion") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + static_cast<int>(rng() % 6);
        IntMatrix m = random_matrix(rng, n);
        CHECK(determinant(m) == oracles::laplace_det(m));
    }
}

TEST_CASE("adjugate identity M * adj(M) = det(M) * I") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + static_cast<int>(rng() % 5);
        IntMatrix m = random_matrix(rng, n);
        IntMatrix adj = adjugate(m);
        IntMatrix prod = m * adj;
        Int d = determinant(m);
        IntMatrix expect(n);
        for (int i = 0; i < n; ++i) expect.at(i, i) = d;
        CHECK(prod == expect);
    }
    // frozen small case: chain -2,-3
    IntMatrix neg = -intersection_matrix(fixtures::chain23());
    IntMatrix adj = adjugate(neg);
    CHECK(adj.at(0, 0) == 3);
    CHECK(adj.at(0, 1) == 1);
    CHECK(adj.at(1, 0) == 1);
    CHECK(adj.at(1, 1) == 2);
    // 1x1
    IntMatrix one(1);
    one.at(0, 0) = 2;
    CHECK(adjugate(one).at(0, 0) == 1);
}

TEST_CASE("leaf rows of adj(-A) for the order-33 graph") {
    auto g = fixtures::d33();
    IntMatrix adj = adjugate(-intersection_matrix(g));
    // ids 1..8 in order; leaves are 1,2,7,8 at indices 0,1,6,7
    const int leaf[4] = {0, 1, 6, 7};
    const long expected[4][4] = {{17, 9, 4, 6}, {9, 30, 6, 9}, {4, 6, 32, 15}, {6, 9, 15, 39}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(adj.at(leaf[i], leaf[j]) == expected[i][j]);
}

TEST_CASE("smith normal form: shape, divisibility, unimodularity") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 5);
        int cols = 1 + static_cast<int>(rng() % 5);
        IntMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m.at(i, j) = Int(static_cast<long>(rng() % 21) - 10);
        SmithNormalForm f = smith_normal_form(m);
        CHECK(f.u * m * f.v == f.s);
        CHECK(abs(determinant(f.u)) == 1);
        CHECK(abs(determinant(f.v)) == 1);
        for (int t = 0; t + 1 < f.rank; ++t) {
            CHECK(f.s.at(t, t) > 0);
            CHECK(mod_floor(f.s.at(t + 1, t + 1), f.s.at(t, t)) == 0);
        }
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (i != j) CHECK(f.s.at(i, j) == 0);
    }
}

TEST_CASE("SNF of [-2] and of the order-33 graph") {
    IntMatrix m(1);
    m.at(0, 0) = -2;
    SmithNormalForm f = smith_normal_form(m);
    CHECK(f.s.at(0, 0) == 2);

    auto g = fixtures::d33();
    SmithNormalForm f33 = smith_normal_form(-intersection_matrix(g));
    for (int i = 0; i < 7; ++i) CHECK(f33.s.at(i, i) == 1);
    CHECK(f33.s.at(7, 7) == 33);
}

TEST_CASE("negative definiteness via leading principal minors") {
    IntMatrix one(1);
    one.at(0, 0) = -2;
    CHECK(is_negative_definite(one));

    // center -2 with four -2 legs: the vector (2,1,1,1,1) gives quadratic
    // form value 0, so definiteness fails
    auto star = fixtures::star(-2, {-2, -2, -2, -2});
    IntMatrix m = intersection_matrix(star);
    std::vector<Int> v{2, 1, 1, 1, 1};
    Int q = 0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) q += v[static_cast<size_t>(i)] * m.at(i, j) * v[static_cast<size_t>(j)];
    CHECK(q == 0);
    CHECK(!is_negative_definite(m));

    CHECK(is_negative_definite(intersection_matrix(fixtures::d33())));
    CHECK(is_negative_definite(intersection_matrix(fixtures::d9())));

    IntMatrix nonsym(2);
    nonsym.at(0, 1) = 1;
    CHECK_THROWS_AS((void)is_negative_definite(nonsym), std::invalid_argument);
}

TEST_CASE("discriminant group of the fixtures") {
    auto d = discriminant_group(fixtures::d33());
    CHECK(d.order == 33);
    REQUIRE(d.divisors.size() == 1);
    CHECK(d.divisors[0] == 33);

    auto e = discriminant_group(fixtures::e8());
    CHECK(e.order == 1);
    CHECK(e.divisors.empty());

    auto s = discriminant_group(fixtures::d9());
    CHECK(s.order == 9);
    REQUIRE(s.divisors.size() == 1);
    CHECK(s.divisors[0] == 9);

    CHECK_THROWS_AS(discriminant_group(fixtures::star(-2, {-2, -2, -2, -2})), GraphError);
}

TEST_CASE("pairing is A^{-1}: symmetric, |D|-integral, -l/|D| entries") {
    auto g = fixtures::d33();
    auto d = discriminant_group(g);
    IntMatrix adj = adjugate(-intersection_matrix(g));
    const int n = static_cast<int>(d.vertex_order.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CHECK(d.pairing[i][j] == d.pairing[j][i]);
            Rat expect(-adj.at(i, j), d.order);
            expect.canonicalize();
            CHECK(d.pairing[i][j] == expect);
            Rat scaled = d.pairing[i][j] * d.order;
            CHECK(scaled.get_den() == 1);
        }
    // leaf Y1 row over the leaves: (-17/33, -9/33, -4/33, -6/33)
    const int leaf[4] = {0, 1, 6, 7};
    const long num[4] = {-17, -9, -4, -6};
    for (int j = 0; j < 4; ++j) {
        Rat expect(num[j], 33);
        expect.canonicalize();
        CHECK(d.pairing[leaf[0]][leaf[j]] == expect);
    }
}

TEST_CASE("class arithmetic in SNF coordinates") {
    auto g = fixtures::d33();
    auto d = discriminant_group(g);
    DClass e1 = d.vertex_class.at(1);
    CHECK(d.add(e1, d.neg(e1)).is_zero());
    CHECK(d.scale(33, e1).is_zero());
    CHECK(d.order_of(e1) == 33);  // e_1 generates the cyclic group

    // d_j times the j-th standard generator vanishes
    for (size_t j = 0; j < d.divisors.size(); ++j) {
        DClass gen = d.zero();
        gen.coords[j] = 1;
        CHECK(d.scale(d.divisors[j], gen).is_zero());
    }

    // profile mismatch is an error
    DClass wrong{std::vector<Int>(d.divisors.size() + 1, Int(0))};
    CHECK_THROWS_AS((void)d.add(e1, wrong), std::invalid_argument);

    // the class of Y2^2 equals the class of Y1^3 (both transform by zeta^18)
    DClass e2 = d.vertex_class.at(2);
    CHECK(d.scale(2, e2) == d.scale(3, e1));

    // any t-1 of the leaf classes generate the whole group
    std::vector<VertexId> leaves = g.leaf_ids();
    for (size_t drop = 0; drop < leaves.size(); ++drop) {
        std::vector<DClass> gens;
        for (size_t i = 0; i < leaves.size(); ++i)
            if (i != drop) gens.push_back(d.vertex_class.at(leaves[i]));
        CHECK(d.subgroup_order(gens) == 33);
    }
}

TEST_CASE("product of elementary divisors equals det(-A) on random trees") {
    RandomGraphSpec spec;
    spec.seed = 19;
    RandomGraphGenerator gen(spec);
    for (int i = 0; i < 30; ++i) {
        auto g = gen.next();
        auto d = discriminant_group(g);
        Int prod = 1;
        for (const auto& x : d.divisors) prod *= x;
        CHECK(prod == d.order);
        CHECK(d.order == determinant(-intersection_matrix(g)));

        // any t-1 of the leaf classes generate the whole group
        auto leaves = g.leaf_ids();
        if (leaves.size() >= 2) {
            for (size_t drop = 0; drop < leaves.size(); ++drop) {
                std::vector<DClass> gens;
                for (size_t t = 0; t < leaves.size(); ++t)
                    if (t != drop) gens.push_back(d.vertex_class.at(leaves[t]));
                CHECK(d.subgroup_order(gens) == d.order);
            }
        }
    }
}

TEST_CASE("subgroup order via SNF matches brute enumeration") {
    std::mt19937_64 rng(17);
    auto g = fixtures::d9();
    auto d = discriminant_group(g);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<DClass> gens;
        int count = 1 + static_cast<int>(rng() % 2);
        for (int i = 0; i < count; ++i) {
            VertexId v = static_cast<VertexId>(1 + rng() % 6);
            gens.push_back(d.scale(Int(static_cast<long>(rng() % 5)), d.vertex_class.at(v)));
        }
        CHECK(d.subgroup_order(gens) == Int(static_cast<long>(d.subgroup_elements(gens).size())));
    }
}
