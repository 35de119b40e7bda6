#pragma once

#include "zetagraph/graph.hpp"

namespace zetagraph::fixtures {

// Reference graphs shared by the tests, the acceptance suite and the docs.

WeightedGraph edge();           // a-b, w(a->b)=2, w(b->a)=3
WeightedGraph path3();          // a-b-c, unit weights
WeightedGraph triangle();       // x,y,z, unit weights
WeightedGraph weighted_triangle();
WeightedGraph edge_backtrack_both();  // edge() with both orientations backtracking
WeightedGraph edge_backtrack_one();   // edge() with only a->b backtracking
WeightedGraph triangle_backtrack_xy();  // triangle() with x->y and y->x backtracking

WeightedGraph complete(std::size_t n);  // K_n on v0..v{n-1}, unit weights
WeightedGraph unit_edge();              // edge() with unit weights

}  // namespace zetagraph::fixtures
