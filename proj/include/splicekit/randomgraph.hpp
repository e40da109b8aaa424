#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "splicekit/graph.hpp"
#include "splicekit/matrix.hpp"

namespace splicekit {

struct RandomGraphSpec {
    int max_vertices = 10;
    long weight_min = -5;  // inclusive, negative
    long weight_max = -1;
    std::uint64_t seed = 1;
    int count = 200;
};

// Random labelled trees (Prüfer sequences) with uniform negative weights,
// rejection-sampled to negative definite. Explicit modulo reduction keeps
// the stream identical across standard libraries.
class RandomGraphGenerator {
public:
    explicit RandomGraphGenerator(const RandomGraphSpec& spec) : spec_(spec), rng_(spec.seed) {}

    ResolutionGraph next() {
        for (;;) {
            ResolutionGraph g = draw();
            if (is_negative_definite(intersection_matrix(g))) return g;
        }
    }

private:
    ResolutionGraph draw() {
        const int n = 1 + static_cast<int>(rng_() % static_cast<std::uint64_t>(spec_.max_vertices));
        std::vector<ResolutionGraph::Vertex> verts;
        const std::uint64_t span = static_cast<std::uint64_t>(spec_.weight_max - spec_.weight_min + 1);
        for (int i = 1; i <= n; ++i)
            verts.push_back({i, Int(spec_.weight_min + static_cast<long>(rng_() % span))});
        std::vector<std::pair<VertexId, VertexId>> edges;
        if (n == 2) edges.emplace_back(1, 2);
        if (n > 2) {
            std::vector<int> seq(static_cast<size_t>(n - 2));
            for (auto& s : seq) s = 1 + static_cast<int>(rng_() % static_cast<std::uint64_t>(n));
            std::vector<int> deg(static_cast<size_t>(n + 1), 1);
            for (int s : seq) ++deg[static_cast<size_t>(s)];
            std::vector<int> leaves;
            for (int i = 1; i <= n; ++i)
                if (deg[static_cast<size_t>(i)] == 1) leaves.push_back(i);
            std::make_heap(leaves.begin(), leaves.end(), std::greater<>());
            for (int s : seq) {
                std::pop_heap(leaves.begin(), leaves.end(), std::greater<>());
                int leaf = leaves.back();
                leaves.pop_back();
                edges.emplace_back(leaf, s);
                if (--deg[static_cast<size_t>(s)] == 1) {
                    leaves.push_back(s);
                    std::push_heap(leaves.begin(), leaves.end(), std::greater<>());
                }
            }
            std::pop_heap(leaves.begin(), leaves.end(), std::greater<>());
            int a = leaves.back();
            leaves.pop_back();
            edges.emplace_back(a, leaves.front());
        }
        return ResolutionGraph(std::move(verts), std::move(edges));
    }

    RandomGraphSpec spec_;
    std::mt19937_64 rng_;
};

}  // namespace splicekit
