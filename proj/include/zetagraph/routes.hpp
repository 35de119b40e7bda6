#pragma once

#include "zetagraph/cycles.hpp"
#include "zetagraph/graph.hpp"
#include "zetagraph/series.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace zetagraph {

// Each route returns the reciprocal zeta function 1/Z(u) as a series
// through u^order. The Fredholm determinant det(1 - uT) is the reference.

enum class BassVariant { corrected, as_printed };
/// How α is weighted in the partial-backtracking formula: by W(x, x') or by
/// w(x, x')^2.
enum class AlphaVariant { product_weight, squared_weight };

struct RouteMetadata {
    std::string variant;
    std::optional<double> alpha;
    std::optional<std::pair<std::size_t, std::size_t>> block_sizes;
    std::vector<std::string> warnings;
    bool experimental = false;
};

struct RouteResult {
    std::string route;
    TruncatedSeries series;
    RouteMetadata meta;
};

RouteResult zeta_oracle(const WeightedGraph& g, std::size_t order, std::size_t length_cap = default_length_cap);

/// det(1 - uT); with a backtracking set, T is the backtracking-aware operator.
RouteResult zeta_fredholm(const WeightedGraph& g, std::size_t order);

/// det(1 - uτ(1 + uJ)^{-1}σ) · Π_e (1 - u²W(e)). A graph with a
/// backtracking set is handed to zeta_partial_formula.
RouteResult zeta_sunada(const WeightedGraph& g, std::size_t order);

/// Evaluates the same factorization at a point from the closed forms
/// B_ev(u)x = x + Σ u²W/(1 - u²W) x and B_odd(u)x = Σ u w/(1 - u²W) x'.
/// Throws PreconditionError when |u| >= min_e 1/sqrt(W(e)) or the graph has
/// a backtracking set.
Complex sunada_closed_form(const WeightedGraph& g, Complex u);

/// Smallest 1/sqrt(W(e)) over edges; the closed form is valid strictly inside.
double sunada_radius(const WeightedGraph& g);

/// det[1 + u((uB_2 - A, u·τJ^k), (σ, J))] on C0 ⊕ C1 with k = 2 (corrected)
/// or k = 1 (as printed). Requires an empty backtracking set.
RouteResult zeta_bass(const WeightedGraph& g, std::size_t order, BassVariant variant = BassVariant::corrected);

/// α = ½ Σ over oriented x->x' outside the set whose reverse x'->x is
/// inside it, of W(x, x') or w(x, x')^2.
double backtrack_alpha(const WeightedGraph& g, AlphaVariant variant);

/// det(B_E(-u)) · Π_{e outside the unoriented set}(1 - u²W(e)) · exp(-αu²).
/// Agrees with zeta_fredholm for symmetric sets; an asymmetric set adds a
/// warning to the metadata.
RouteResult zeta_partial_formula(const WeightedGraph& g, std::size_t order,
                                 AlphaVariant variant = AlphaVariant::product_weight);

/// (1 - u²)^{-χ} det(1 - uA + u²Q); unit weights and no backtracking only.
RouteResult zeta_classical(const WeightedGraph& g, std::size_t order);

struct PairDeviation {
    std::string first;
    std::string second;
    double max_dev = 0.0;
    bool agree = true;
    bool experimental = false;
};

struct DiscrepancyReport {
    std::vector<RouteResult> results;
    std::vector<PairDeviation> pairs;
    bool asymmetric_backtracking = false;

    bool all_agree() const;
    /// Looks up a pair in either order.
    const PairDeviation& pair(const std::string& a, const std::string& b) const;
};

/// Runs every route that applies to g and compares all pairs coefficientwise:
/// |a_n - b_n| <= tol.abs + tol.rel·max(1, |a_n|, |b_n|). The partial formula
/// joins for symmetric sets, and for asymmetric sets only when
/// include_experimental is set.
DiscrepancyReport cross_validate(const WeightedGraph& g, std::size_t order, bool include_experimental,
                                 Tolerance tol = {}, std::size_t length_cap = default_length_cap);

/// CSV "routeA,routeB,max_dev,verdict".
std::string discrepancy_csv(const DiscrepancyReport& report);

struct Pole {
    Complex value;
    std::size_t multiplicity = 1;
};

inline constexpr std::size_t max_pole_dimension = 2000;

/// 1/λ for every eigenvalue λ of T with |λ| > 1e-12, with numerically equal
/// poles merged, sorted by modulus then argument.
std::vector<Pole> spectrum_poles(const WeightedGraph& g);

/// CSV "re,im,multiplicity".
std::string poles_csv(const std::vector<Pole>& poles);

}  // namespace zetagraph
