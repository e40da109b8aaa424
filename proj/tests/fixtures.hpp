#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "splicekit/graph.hpp"

namespace fixtures {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("fixture missing: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string data_path(const std::string& name) { return std::string(SPLICEKIT_DATA_DIR) + "/" + name; }

inline splicekit::ResolutionGraph load(const std::string& name) {
    return splicekit::parse_graph(read_file(data_path(name)));
}

// two-node graph with |D| = 33; leaves 1,2,7,8 are Y1..Y4
inline splicekit::ResolutionGraph d33() { return load("d33.graph"); }
// one-node graph with |D| = 9 and splice weights (9,9,2)
inline splicekit::ResolutionGraph d9() { return load("d9.graph"); }
inline splicekit::ResolutionGraph e8() { return load("e8.graph"); }
inline splicekit::ResolutionGraph chain23() { return load("chain23.graph"); }

inline splicekit::ResolutionGraph single(long w = -2) {
    return splicekit::ResolutionGraph({{1, splicekit::Int(w)}}, {});
}

// star: center weight b, one arm vertex per entry of arms
inline splicekit::ResolutionGraph star(long center, const std::vector<long>& arms) {
    std::vector<splicekit::ResolutionGraph::Vertex> vs{{1, splicekit::Int(center)}};
    std::vector<std::pair<splicekit::VertexId, splicekit::VertexId>> es;
    for (size_t i = 0; i < arms.size(); ++i) {
        vs.push_back({static_cast<splicekit::VertexId>(i + 2), splicekit::Int(arms[i])});
        es.emplace_back(1, static_cast<splicekit::VertexId>(i + 2));
    }
    return splicekit::ResolutionGraph(std::move(vs), std::move(es));
}

}  // namespace fixtures
