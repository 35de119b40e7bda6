#include "zetagraph/routes.hpp"

#include "zetagraph/errors.hpp"
#include "zetagraph/format.hpp"
#include "zetagraph/operators.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace zetagraph {

namespace {

// Π_e (1 - u²W(e)) over unordered edges, optionally skipping edges touched
// by the backtracking set.
TruncatedSeries flip_product(const WeightedGraph& g, std::size_t order, bool skip_backtracking) {
    TruncatedSeries product = TruncatedSeries::constant(order, 1.0);
    for (const auto& [a, b] : g.edges()) {
        const EdgeId e = g.find_edge(a, b);
        if (skip_backtracking && (g.backtrack_allowed(e) || g.backtrack_allowed(g.reverse(e)))) continue;
        TruncatedSeries factor = TruncatedSeries::constant(order, 1.0);
        if (order >= 2) factor[2] = -g.edge_product_weight(e);
        product *= factor;
    }
    return product;
}

// Σ_n (-u)^n B_n with B_n supplied per order.
template <class CoefficientFn>
OperatorSeries alternating_series(Eigen::Index dim, std::size_t order, CoefficientFn&& coefficient) {
    OperatorSeries s(order, dim);
    s[0] = Matrix::Identity(dim, dim);
    for (std::size_t n = 1; n <= order; ++n) s[n] = (n % 2 == 0 ? 1.0 : -1.0) * coefficient(n);
    return s;
}

void require_no_backtracking(const WeightedGraph& g, const char* route) {
    if (g.has_backtracking()) throw PreconditionError(std::string(route) + " route needs an empty backtracking set");
}

bool unit_weights(const WeightedGraph& g) {
    for (EdgeId e = 0; e < g.oriented_edge_count(); ++e) {
        if (g.weight(e) != 1.0) return false;
    }
    return true;
}

}  // namespace

RouteResult zeta_oracle(const WeightedGraph& g, std::size_t order, std::size_t length_cap) {
    return {"oracle", euler_product(g, order, length_cap), {}};
}

RouteResult zeta_fredholm(const WeightedGraph& g, std::size_t order) {
    return {"fredholm", det_from_traces(build_T(g), order), {}};
}

RouteResult zeta_sunada(const WeightedGraph& g, std::size_t order) {
    require_order(order);
    if (g.has_backtracking()) {
        RouteResult routed = zeta_partial_formula(g, order);
        routed.route = "sunada";
        routed.meta.warnings.push_back("backtracking set present; evaluated by the partial-backtracking formula");
        return routed;
    }
    const EdgeMaps maps = build_edge_maps(g);
    Matrix pushed = maps.sigma.matrix;  // J^{n-1} σ
    const auto s = alternating_series(static_cast<Eigen::Index>(g.vertex_count()), order, [&](std::size_t n) {
        if (n > 1) pushed = maps.flip.matrix * pushed;
        return Matrix(maps.tau.matrix * pushed);
    });
    TruncatedSeries series = det_operator_series(s) * flip_product(g, order, false);
    return {"sunada", std::move(series), {}};
}

double sunada_radius(const WeightedGraph& g) {
    double radius = std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : g.edges()) {
        radius = std::min(radius, 1.0 / std::sqrt(g.edge_product_weight(g.find_edge(a, b))));
    }
    return radius;
}

Complex sunada_closed_form(const WeightedGraph& g, Complex u) {
    require_no_backtracking(g, "closed-form sunada");
    if (std::abs(u) >= sunada_radius(g)) {
        throw PreconditionError("closed form evaluated at or beyond a singularity ±1/sqrt(W(e))");
    }
    const auto nv = static_cast<Eigen::Index>(g.vertex_count());
    const Complex u2 = u * u;
    // B(-u) = B_ev(u) - B_odd(u).
    Matrix b = Matrix::Identity(nv, nv);
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        for (EdgeId e : g.out_edges(x)) {
            const double big_w = g.edge_product_weight(e);
            const Complex denom = 1.0 - u2 * big_w;
            const auto xi = static_cast<Eigen::Index>(x);
            const auto yi = static_cast<Eigen::Index>(g.oriented_edge(e).target);
            b(xi, xi) += u2 * big_w / denom;
            b(yi, xi) -= u * g.weight(e) / denom;
        }
    }
    Complex product{1.0};
    for (const auto& [a, c] : g.edges()) product *= 1.0 - u2 * g.edge_product_weight(g.find_edge(a, c));
    return b.determinant() * product;
}

RouteResult zeta_bass(const WeightedGraph& g, std::size_t order, BassVariant variant) {
    require_order(order);
    require_no_backtracking(g, "bass");
    const EdgeMaps maps = build_edge_maps(g);
    const Matrix adjacency = build_A1_Q(g).adjacency.matrix;
    const Matrix b2 = build_B_n(g, 2).matrix;
    const Matrix& j = maps.flip.matrix;
    const Matrix corner = variant == BassVariant::corrected ? Matrix(maps.tau.matrix * j * j) : Matrix(maps.tau.matrix * j);

    const auto nv = static_cast<Eigen::Index>(g.vertex_count());
    const auto ne = static_cast<Eigen::Index>(g.oriented_edge_count());
    OperatorSeries s(order, nv + ne);
    s[0] = Matrix::Identity(nv + ne, nv + ne);
    if (order >= 1) {
        s[1].topLeftCorner(nv, nv) = -adjacency;
        s[1].bottomLeftCorner(ne, nv) = maps.sigma.matrix;
        s[1].bottomRightCorner(ne, ne) = j;
    }
    if (order >= 2) {
        s[2].topLeftCorner(nv, nv) = b2;
        s[2].topRightCorner(nv, ne) = corner;
    }
    RouteResult r{"bass", det_operator_series(s), {}};
    r.meta.variant = variant == BassVariant::corrected ? "corrected" : "as-printed";
    r.meta.block_sizes = std::pair{g.vertex_count(), g.oriented_edge_count()};
    return r;
}

double backtrack_alpha(const WeightedGraph& g, AlphaVariant variant) {
    double alpha = 0.0;
    for (EdgeId e = 0; e < g.oriented_edge_count(); ++e) {
        if (g.backtrack_allowed(e) || !g.backtrack_allowed(g.reverse(e))) continue;
        const double w = g.weight(e);
        alpha += variant == AlphaVariant::product_weight ? g.edge_product_weight(e) : w * w;
    }
    return 0.5 * alpha;
}

RouteResult zeta_partial_formula(const WeightedGraph& g, std::size_t order, AlphaVariant variant) {
    require_order(order);
    const auto s = alternating_series(static_cast<Eigen::Index>(g.vertex_count()), order,
                                      [&](std::size_t n) { return build_B_n(g, static_cast<long>(n)).matrix; });
    const double alpha = backtrack_alpha(g, variant);
    const TruncatedSeries damping = exp(TruncatedSeries::monomial(order, 2, -alpha));

    RouteResult r{"partial", det_operator_series(s) * flip_product(g, order, true) * damping, {}};
    r.meta.variant = variant == AlphaVariant::product_weight ? "W" : "w-squared";
    r.meta.alpha = alpha;
    if (!g.backtracking_symmetric()) {
        r.meta.experimental = true;
        r.meta.warnings.push_back("asymmetric backtracking set; formula not expected to match det(1-uT)");
    }
    return r;
}

RouteResult zeta_classical(const WeightedGraph& g, std::size_t order) {
    require_order(order);
    require_no_backtracking(g, "classical");
    if (!unit_weights(g)) throw PreconditionError("classical route needs unit weights");
    const auto [a, q] = build_A1_Q(g);
    OperatorSeries s(order, a.rows());
    s[0] = Matrix::Identity(a.rows(), a.rows());
    if (order >= 1) s[1] = -a.matrix;
    if (order >= 2) s[2] = q.matrix;
    const long chi = static_cast<long>(g.vertex_count()) - static_cast<long>(g.edge_count());
    const TruncatedSeries one_minus_u2(order, {1.0, 0.0, -1.0});
    return {"classical", det_operator_series(s) * one_minus_u2.pow(-chi), {}};
}

bool DiscrepancyReport::all_agree() const {
    return std::all_of(pairs.begin(), pairs.end(), [](const PairDeviation& p) { return p.agree; });
}

const PairDeviation& DiscrepancyReport::pair(const std::string& a, const std::string& b) const {
    for (const auto& p : pairs) {
        if ((p.first == a && p.second == b) || (p.first == b && p.second == a)) return p;
    }
    throw PreconditionError("no route pair " + a + "/" + b + " in report");
}

DiscrepancyReport cross_validate(const WeightedGraph& g, std::size_t order, bool include_experimental, Tolerance tol,
                                 std::size_t length_cap) {
    DiscrepancyReport report;
    report.asymmetric_backtracking = !g.backtracking_symmetric();
    auto& results = report.results;
    results.push_back(zeta_oracle(g, order, length_cap));
    results.push_back(zeta_fredholm(g, order));
    if (!g.has_backtracking()) {
        results.push_back(zeta_sunada(g, order));
        results.push_back(zeta_bass(g, order));
        if (unit_weights(g)) results.push_back(zeta_classical(g, order));
    } else if (!report.asymmetric_backtracking || include_experimental) {
        results.push_back(zeta_partial_formula(g, order));
    }

    for (std::size_t i = 0; i < results.size(); ++i) {
        for (std::size_t k = i + 1; k < results.size(); ++k) {
            const auto& a = results[i].series;
            const auto& b = results[k].series;
            PairDeviation p{results[i].route, results[k].route, 0.0, true,
                            results[i].meta.experimental || results[k].meta.experimental};
            for (std::size_t n = 0; n <= std::min(a.order(), b.order()); ++n) {
                const double dev = std::abs(a[n] - b[n]);
                p.max_dev = std::max(p.max_dev, dev);
                const double scale = std::max({1.0, std::abs(a[n]), std::abs(b[n])});
                if (dev > tol.abs + tol.rel * scale) p.agree = false;
            }
            report.pairs.push_back(std::move(p));
        }
    }
    return report;
}

std::string discrepancy_csv(const DiscrepancyReport& report) {
    std::string out = "routeA,routeB,max_dev,verdict\n";
    for (const auto& p : report.pairs) {
        std::string verdict = p.agree ? "agree" : "disagree";
        if (p.experimental) verdict += "(experimental)";
        out += csv_row({p.first, p.second, format_real(p.max_dev), verdict}) + "\n";
    }
    return out;
}

std::vector<Pole> spectrum_poles(const WeightedGraph& g) {
    if (g.oriented_edge_count() > max_pole_dimension) {
        throw ResourceCapError("pole extraction limited to " + std::to_string(max_pole_dimension) + " oriented edges");
    }
    const Matrix t = build_T(g).matrix;
    Eigen::ComplexEigenSolver<Matrix> solver(t, false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue computation did not converge");

    struct Cluster {
        Complex sum;
        std::size_t count;
        Complex centre() const { return sum / static_cast<double>(count); }
    };
    std::vector<Cluster> clusters;
    for (const Complex& lambda : solver.eigenvalues()) {
        if (std::abs(lambda) <= 1e-12) continue;
        const Complex pole = 1.0 / lambda;
        auto it = std::find_if(clusters.begin(), clusters.end(), [&](const Cluster& c) {
            return std::abs(c.centre() - pole) <= 1e-6 * std::max(1.0, std::abs(c.centre()));
        });
        if (it == clusters.end()) {
            clusters.push_back({pole, 1});
        } else {
            it->sum += pole;
            ++it->count;
        }
    }

    std::vector<Pole> poles;
    for (const auto& c : clusters) {
        Complex p = c.centre();
        const double noise = 1e-12 * std::max(1.0, std::abs(p));
        if (std::abs(p.imag()) <= noise) p.imag(0.0);
        if (std::abs(p.real()) <= noise) p.real(0.0);
        poles.push_back({p, c.count});
    }
    auto key = [](const Pole& p) { return std::pair{std::round(std::abs(p.value) * 1e9), std::arg(p.value)}; };
    std::sort(poles.begin(), poles.end(), [&](const Pole& a, const Pole& b) { return key(a) < key(b); });
    return poles;
}

std::string poles_csv(const std::vector<Pole>& poles) {
    std::string out = "re,im,multiplicity\n";
    for (const auto& p : poles) {
        out += csv_row({format_real(p.value.real()), format_real(p.value.imag()), std::to_string(p.multiplicity)}) +
               "\n";
    }
    return out;
}

}  // namespace zetagraph
