#pragma once

#include "zetagraph/graph.hpp"
#include "zetagraph/linear_operator.hpp"

namespace zetagraph {

// Bases: vertex space C0 spanned by vertices, edge space C1 spanned by
// oriented edges, both in the graph's canonical order. Operators honour the
// graph's backtracking set; an empty set gives the plain non-backtracking
// versions.

std::vector<std::string> vertex_labels(const WeightedGraph& g);
std::vector<std::string> edge_labels(const WeightedGraph& g);

/// Weighted non-backtracking operator on C1: e maps to Σ w(e') e' over e'
/// leaving t(e), skipping e' = e^{-1} unless e is in the backtracking set.
LinearOperator build_T(const WeightedGraph& g);

struct EdgeMaps {
    LinearOperator sigma;  // C0 -> C1, x -> Σ_{o(e)=x} w(e) e
    LinearOperator tau;    // C1 -> C0, e -> t(e)
    LinearOperator flip;   // C1 -> C1, weighted flip e -> w(e^{-1}) e^{-1}
};

/// The flip vanishes on every edge whose orientation or reverse allows
/// backtracking.
EdgeMaps build_edge_maps(const WeightedGraph& g);

struct AdjacencyPair {
    LinearOperator adjacency;  // A_1[x', x] = w(x, x')
    LinearOperator q;          // diagonal, (neighbours x' with x->x' outside the set) - 1
};

AdjacencyPair build_A1_Q(const WeightedGraph& g);

/// B_n from its closed form (including the backtracking-filtered table).
LinearOperator build_B_n(const WeightedGraph& g, long n);

/// A_m by the recursion A_m = Σ_{j=1..m} (-1)^{j+1} A_{m-j} B_j.
LinearOperator build_A_m(const WeightedGraph& g, long m);
/// A_0 .. A_m in one pass of the recursion.
std::vector<Matrix> build_A_sequence(const WeightedGraph& g, std::size_t m);

/// A_m by depth-first enumeration of admissible vertex paths of length m.
/// Exponential in m; used to check the recursion.
LinearOperator enumerate_A_m(const WeightedGraph& g, long m);

/// C_{m,n} x = Σ W(x_0,x_1)^n w(p) x_m over admissible paths p of length m from x.
LinearOperator build_C_mn(const WeightedGraph& g, long m, long n);

/// Max |entry| of Σ_{j=0..m} (-1)^j A_{m-j} B_j with A from enumeration.
/// Zero (to rounding) whenever A(u)B(-u) = 1 holds at order m.
double inversion_residual(const WeightedGraph& g, std::size_t m);

}  // namespace zetagraph
