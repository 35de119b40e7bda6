#pragma once

#include "zetagraph/graph.hpp"
#include "zetagraph/linear_operator.hpp"
#include "zetagraph/series.hpp"

#include <optional>
#include <vector>

namespace zetagraph {

// Brute-force ground truth. A closed edge sequence (e_1, ..., e_n) is
// admissible when every consecutive step e -> e' has o(e') = t(e) and
// e' != e^{-1} unless e allows backtracking, including the seam e_n -> e_1.

inline constexpr std::size_t default_length_cap = 14;
inline constexpr std::size_t hard_length_cap = 20;

struct ClosedSequence {
    std::vector<EdgeId> edges;
    double weight = 0.0;
};

struct CycleRecord {
    std::vector<EdgeId> edges;  // lexicographically minimal rotation
    std::size_t length = 0;
    double weight = 0.0;
    std::size_t primitive_length = 0;
    bool is_prime = false;
    std::optional<Matrix> holonomy;
};

/// Rooted admissible closed sequences, indexed by length 0..max_length
/// (slot 0 is empty). Throws ResourceCapError when max_length exceeds
/// length_cap or length_cap exceeds hard_length_cap.
std::vector<std::vector<ClosedSequence>> closed_sequences(const WeightedGraph& g, std::size_t max_length,
                                                          std::size_t length_cap = default_length_cap);

struct ClosedPathCounts {
    /// N_m for m = 0..max_length: total weight of rooted admissible
    /// sequences of length m (equals tr T^m).
    std::vector<double> strict;
    /// Vertex-path count with the one-sided tail rule read literally:
    /// closed paths that are regular at interior vertices, rejected only when
    /// x_0 = x_{n-1} and x_1 -> x_0 does not allow backtracking. Present only
    /// when the graph has a backtracking set.
    std::optional<std::vector<double>> literal;
};

ClosedPathCounts compute_Nm(const WeightedGraph& g, std::size_t max_length,
                            std::size_t length_cap = default_length_cap);

/// One record per rotation class of admissible closed sequences of length
/// <= max_length, sorted by length then edge sequence. Non-prime classes
/// (powers) are included with is_prime = false.
std::vector<CycleRecord> prime_cycles(const WeightedGraph& g, std::size_t max_length,
                                      std::size_t length_cap = default_length_cap);

/// Reciprocal zeta function Π_p (1 - w(p) u^{l(p)}) over primes of length
/// <= order, which is exact through u^order.
TruncatedSeries euler_product(const WeightedGraph& g, std::size_t order,
                              std::size_t length_cap = default_length_cap);

/// "a->b;b->c;c->a"
std::string edge_sequence_label(const WeightedGraph& g, const std::vector<EdgeId>& edges);

/// CSV "length,weight,primitive_length,is_prime,edge_sequence" with header.
std::string cycles_csv(const WeightedGraph& g, const std::vector<CycleRecord>& cycles);

}  // namespace zetagraph
