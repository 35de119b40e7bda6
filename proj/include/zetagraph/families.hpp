#pragma once

#include "zetagraph/graph.hpp"
#include "zetagraph/series.hpp"

#include <string>
#include <vector>

namespace zetagraph {

inline constexpr std::size_t max_blocks = 64;

/// An infinite weighted graph of finite total weight, given as a nested
/// sequence of finite truncations F_0 ⊂ F_1 ⊂ ... Block k carries weights
/// r^k; F_K holds blocks 0..K including their outgoing connectors, so the
/// frontier vertex of block K+1 is already present.
///
///   triangle-chain: triangle a_k b_k c_k plus bridge c_k - a_{k+1}, 8 r^k per block
///   ladder:         rung l_k - r_k plus rails to depth k+1, 6 r^k per block
///   path:           edge p_k - p_{k+1} (a tree), 2 r^k per block
class GraphSource {
public:
    enum class Kind { triangle_chain, ladder, path };

    GraphSource(Kind kind, double r);

    Kind kind() const noexcept { return kind_; }
    std::string name() const;
    double ratio() const noexcept { return r_; }

    /// F_k; throws ResourceCapError for k > max_blocks.
    WeightedGraph truncation(std::size_t k) const;
    /// w(F_∞) - w(F_k), in closed form.
    double tail_weight(std::size_t k) const;
    double total_weight() const;
    std::size_t max_valency() const noexcept;

private:
    double per_block_weight() const noexcept;

    Kind kind_;
    double r_;
};

/// Known names: "triangle-chain", "ladder", "path". Requires 0 < r < 1.
GraphSource make_source(const std::string& name, double r);

struct Truncation {
    WeightedGraph graph;
    std::size_t blocks;  // K
    double tail_weight;
};

/// Smallest K with tail_weight(K) <= epsilon. Throws ResourceCapError when
/// that K exceeds max_blocks.
Truncation truncate_source(const GraphSource& source, double epsilon);

/// deltas[k][n] = |coef_n det(1 - uT) on F_{k+1} - coef_n on F_k| for
/// k = 0..k_max-1 and n = 0..order.
std::vector<std::vector<double>> convergence_study(const GraphSource& source, std::size_t k_max, std::size_t order);

/// Geometric decay rate of deltas[k][n] over k in [k_from, k_to], from a
/// least-squares fit of log delta against k.
double fitted_decay_ratio(const std::vector<std::vector<double>>& deltas, std::size_t n, std::size_t k_from,
                          std::size_t k_to);

/// CSV "k,n,delta".
std::string study_csv(const std::vector<std::vector<double>>& deltas);

}  // namespace zetagraph
