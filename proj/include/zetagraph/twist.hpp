#pragma once

#include "zetagraph/cycles.hpp"
#include "zetagraph/graph.hpp"
#include "zetagraph/linear_operator.hpp"
#include "zetagraph/series.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>

namespace zetagraph {

/// Unitary parallel transport: U_e maps the fibre over o(e) to the fibre
/// over t(e). Keyed by (origin name, target name).
struct LocalSystem {
    std::size_t dim = 1;
    std::map<std::pair<std::string, std::string>, Matrix> transfer;
};

inline constexpr double unitarity_tolerance = 1e-10;

/// Dimension, unitarity, U_{e^{-1}} = U_e^{-1} and coverage of every oriented edge.
ValidationReport validate_local_system(const WeightedGraph& g, const LocalSystem& rho);

/// U_e indexed by canonical oriented edge; throws ValidationError unless rho
/// is valid on g.
std::vector<Matrix> transfer_table(const WeightedGraph& g, const LocalSystem& rho);

LocalSystem trivial_system(const WeightedGraph& g, std::size_t dim = 1);

/// Haar-random unitaries on the edges origin < target, with reverses set to
/// the adjoint.
LocalSystem random_unitary_system(const WeightedGraph& g, std::size_t dim, std::mt19937_64& rng);

/// U_e -> V_{t(e)} U_e V_{o(e)}^* for one unitary V_x per vertex.
LocalSystem gauge_transform(const WeightedGraph& g, const LocalSystem& rho, const std::vector<Matrix>& per_vertex);

/// U_{e_l} ··· U_{e_1} along the cycle's edge sequence.
Matrix holonomy(const WeightedGraph& g, const CycleRecord& c, const LocalSystem& rho);

struct TwistedOperators {
    LinearOperator sigma;  // C0 -> C1
    LinearOperator tau;    // C1 -> C0
    LinearOperator flip;   // C1 -> C1
    LinearOperator t;      // C1 -> C1
};

/// Fibre-expanded operators with edge fibres trivialised at the origin
/// vertex: slot e carries V_{o(e)}. Block (i, j) of a slot uses row/column
/// fibre index j within the slot.
TwistedOperators twisted_operators(const WeightedGraph& g, const LocalSystem& rho);

enum class LRoute { oracle, determinant, fredholm };

/// 1/L(ρ, u) through u^order. Requires an empty backtracking set.
///   oracle:      Π_p det(1 - w(p) u^{l(p)} H_p)
///   determinant: det(1 - uτ(1 + uJ)^{-1}σ) · Π_e (1 - u²W(e))^dim
///   fredholm:    det(1 - uT_ρ)
TruncatedSeries lfunction(const WeightedGraph& g, const LocalSystem& rho, std::size_t order, LRoute route,
                          std::size_t length_cap = default_length_cap);

/// Reads the optional "local_system" block of a graph document:
/// {"dim": d, "transfers": [{"u":..., "v":..., "matrix": [[[re,im],...],...]}]}.
/// A transfer u->v without an explicit v->u entry gets its adjoint.
std::optional<LocalSystem> parse_local_system(std::string_view text);

}  // namespace zetagraph
