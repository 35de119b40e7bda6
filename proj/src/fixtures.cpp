#include "zetagraph/fixtures.hpp"

namespace zetagraph::fixtures {

WeightedGraph edge() { return WeightedGraph::from_spec({{"a", "b"}, {{"a", "b", 2.0, 3.0}}}); }

WeightedGraph unit_edge() { return WeightedGraph::from_spec({{"a", "b"}, {{"a", "b", 1.0, 1.0}}}); }

WeightedGraph path3() {
    return WeightedGraph::from_spec({{"a", "b", "c"}, {{"a", "b", 1.0, 1.0}, {"b", "c", 1.0, 1.0}}});
}

WeightedGraph triangle() {
    return WeightedGraph::from_spec(
        {{"x", "y", "z"}, {{"x", "y", 1.0, 1.0}, {"y", "z", 1.0, 1.0}, {"z", "x", 1.0, 1.0}}});
}

WeightedGraph weighted_triangle() {
    return WeightedGraph::from_spec(
        {{"x", "y", "z"}, {{"x", "y", 0.5, 0.1}, {"y", "z", 0.25, 0.4}, {"z", "x", 0.5, 0.2}}});
}

WeightedGraph edge_backtrack_both() {
    return WeightedGraph::from_spec({{"a", "b"}, {{"a", "b", 2.0, 3.0, true, true}}});
}

WeightedGraph edge_backtrack_one() {
    return WeightedGraph::from_spec({{"a", "b"}, {{"a", "b", 2.0, 3.0, true, false}}});
}

WeightedGraph triangle_backtrack_xy() {
    return WeightedGraph::from_spec(
        {{"x", "y", "z"}, {{"x", "y", 1.0, 1.0, true, true}, {"y", "z", 1.0, 1.0}, {"z", "x", 1.0, 1.0}}});
}

WeightedGraph complete(std::size_t n) {
    GraphSpec spec;
    for (std::size_t i = 0; i < n; ++i) spec.vertices.push_back("v" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) spec.edges.push_back({spec.vertices[i], spec.vertices[j]});
    }
    return WeightedGraph::from_spec(spec);
}

}  // namespace zetagraph::fixtures
