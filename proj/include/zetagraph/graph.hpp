#pragma once

#include "zetagraph/errors.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zetagraph {

using VertexId = std::size_t;
using EdgeId = std::size_t;  // index into the canonical oriented-edge list

/// One edge as written in a graph document, before validation.
struct EdgeSpec {
    std::string u;
    std::string v;
    double w_uv = 1.0;
    double w_vu = 1.0;
    bool bt_uv = false;
    bool bt_vu = false;
};

/// Unvalidated graph description; what the file format carries.
struct GraphSpec {
    std::vector<std::string> vertices;
    std::vector<EdgeSpec> edges;
};

struct ValidationReport {
    std::vector<std::string> problems;

    bool ok() const noexcept { return problems.empty(); }
};

struct OrientedEdge {
    VertexId origin;
    VertexId target;

    auto operator<=>(const OrientedEdge&) const = default;
};

/// Unordered edge, stored with first < second (vertex indices).
struct UndirectedEdge {
    VertexId first;
    VertexId second;

    auto operator<=>(const UndirectedEdge&) const = default;
};

/// Simple connected graph with a positive weight on every oriented edge and
/// an optional set of oriented edges at which backtracking is permitted.
///
/// Immutable after construction. Vertices are kept in lexicographic order of
/// their identifiers and oriented edges in lexicographic (origin, target)
/// order; every operator in the library uses these bases.
class WeightedGraph {
public:
    /// Validates `spec` and throws ValidationError listing every problem.
    static WeightedGraph from_spec(const GraphSpec& spec);

    std::size_t vertex_count() const noexcept { return vertex_names_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::size_t oriented_edge_count() const noexcept { return oriented_.size(); }

    const std::vector<std::string>& vertex_names() const noexcept { return vertex_names_; }
    const std::string& vertex_name(VertexId x) const { return vertex_names_.at(x); }
    VertexId vertex_index(std::string_view name) const;

    std::span<const OrientedEdge> oriented_edges() const noexcept { return oriented_; }
    const OrientedEdge& oriented_edge(EdgeId e) const { return oriented_.at(e); }
    std::span<const UndirectedEdge> edges() const noexcept { return edges_; }

    EdgeId reverse(EdgeId e) const { return reverse_.at(e); }
    /// Index into edges() of the underlying unordered edge.
    std::size_t undirected_of(EdgeId e) const { return undirected_of_.at(e); }
    /// Oriented edge x -> y; throws if x and y are not adjacent.
    EdgeId find_edge(VertexId x, VertexId y) const;
    bool adjacent(VertexId x, VertexId y) const;

    double weight(EdgeId e) const { return weight_.at(e); }
    double weight(VertexId x, VertexId y) const { return weight_[find_edge(x, y)]; }
    /// Product of both orientation weights.
    double edge_product_weight(EdgeId e) const { return weight_[e] * weight_[reverse_[e]]; }

    bool backtrack_allowed(EdgeId e) const { return backtrack_.at(e); }
    bool has_backtracking() const noexcept;
    /// e in the backtracking set iff its reverse is.
    bool backtracking_symmetric() const noexcept;

    /// Oriented edges leaving x, in canonical order.
    std::span<const EdgeId> out_edges(VertexId x) const { return out_edges_.at(x); }
    std::size_t valency(VertexId x) const { return out_edges_.at(x).size(); }

    std::string edge_label(EdgeId e) const;

    /// Same topology with a different weight/backtracking assignment
    /// (indexed by canonical oriented edge).
    WeightedGraph with_weights(std::span<const double> weights) const;
    WeightedGraph with_backtracking(const std::vector<bool>& flags) const;

    GraphSpec to_spec() const;

    bool operator==(const WeightedGraph&) const = default;

private:
    WeightedGraph() = default;
    void index_adjacency();

    std::vector<std::string> vertex_names_;
    std::vector<OrientedEdge> oriented_;
    std::vector<UndirectedEdge> edges_;
    std::vector<EdgeId> reverse_;
    std::vector<std::size_t> undirected_of_;
    std::vector<double> weight_;
    std::vector<bool> backtrack_;
    std::vector<std::vector<EdgeId>> out_edges_;
};

struct GraphStats {
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    long euler_number = 0;
    double total_weight = 0.0;
    std::size_t valency_bound = 0;
    /// W(e) per unordered edge, keyed by (smaller name, larger name).
    std::map<std::pair<std::string, std::string>, double> W_per_edge;
    /// Length of the shortest cycle; vertex_count + 1 for a tree.
    std::size_t girth_lower_bound = 0;
};

ValidationReport validate(const GraphSpec& spec);

GraphStats graph_stats(const WeightedGraph& g);

struct CanonicalOrder {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> oriented_edges;
};

CanonicalOrder canonical_order(const WeightedGraph& g);

/// Parses a graph document. Throws ParseError for malformed text and
/// ValidationError for an inadmissible graph. A "local_system" block is
/// ignored here; see twist.hpp.
WeightedGraph parse_graph(std::string_view text);
GraphSpec parse_graph_spec(std::string_view text);

/// Emits the document with keys in the fixed order vertices, edges and, per
/// edge, u, v, wuv, wvu, bt_uv, bt_vu.
std::string serialize_graph(const WeightedGraph& g);

}  // namespace zetagraph
