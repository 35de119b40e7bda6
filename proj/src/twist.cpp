#include "zetagraph/twist.hpp"

#include "zetagraph/errors.hpp"
#include "zetagraph/operators.hpp"

#include <json.hpp>

#include <cmath>

namespace zetagraph {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::pair<std::string, std::string> key_of(const WeightedGraph& g, EdgeId e) {
    const auto& oe = g.oriented_edge(e);
    return {g.vertex_name(oe.origin), g.vertex_name(oe.target)};
}

std::vector<std::string> fibre_labels(const std::vector<std::string>& base, std::size_t dim) {
    std::vector<std::string> out;
    out.reserve(base.size() * dim);
    for (const auto& b : base) {
        for (std::size_t i = 0; i < dim; ++i) out.push_back(b + "#" + std::to_string(i));
    }
    return out;
}

}  // namespace

ValidationReport validate_local_system(const WeightedGraph& g, const LocalSystem& rho) {
    ValidationReport report;
    auto& out = report.problems;
    if (rho.dim == 0) {
        out.push_back("local system dimension must be at least 1");
        return report;
    }
    const auto d = idx(rho.dim);
    const Matrix identity = Matrix::Identity(d, d);

    for (const auto& [key, u] : rho.transfer) {
        const std::string label = key.first + "->" + key.second;
        bool on_edge = false;
        try {
            on_edge = g.adjacent(g.vertex_index(key.first), g.vertex_index(key.second));
        } catch (const PreconditionError&) {
            on_edge = false;
        }
        if (!on_edge) out.push_back("transfer on non-edge " + label);
        if (u.rows() != d || u.cols() != d) {
            out.push_back("transfer " + label + " is not " + std::to_string(rho.dim) + "x" + std::to_string(rho.dim));
            continue;
        }
        if (max_abs_entry(u * u.adjoint() - identity) > unitarity_tolerance) {
            out.push_back("transfer " + label + " is not unitary");
        }
    }

    for (EdgeId e = 0; e < g.oriented_edge_count(); ++e) {
        auto it = rho.transfer.find(key_of(g, e));
        if (it == rho.transfer.end()) {
            out.push_back("missing transfer for " + g.edge_label(e));
            continue;
        }
        if (e > g.reverse(e)) continue;
        auto rev = rho.transfer.find(key_of(g, g.reverse(e)));
        if (rev == rho.transfer.end() || it->second.rows() != d || rev->second.rows() != d ||
            it->second.cols() != d || rev->second.cols() != d) {
            continue;
        }
        if (max_abs_entry(rev->second * it->second - identity) > unitarity_tolerance) {
            out.push_back("transfer of " + g.edge_label(g.reverse(e)) + " is not the inverse of " + g.edge_label(e));
        }
    }
    return report;
}

std::vector<Matrix> transfer_table(const WeightedGraph& g, const LocalSystem& rho) {
    if (auto report = validate_local_system(g, rho); !report.ok()) throw ValidationError(std::move(report.problems));
    std::vector<Matrix> table;
    table.reserve(g.oriented_edge_count());
    for (EdgeId e = 0; e < g.oriented_edge_count(); ++e) table.push_back(rho.transfer.at(key_of(g, e)));
    return table;
}

LocalSystem trivial_system(const WeightedGraph& g, std::size_t dim) {
    LocalSystem rho{dim, {}};
    for (EdgeId e = 0; e < g.oriented_edge_count(); ++e) rho.transfer[key_of(g, e)] = Matrix::Identity(idx(dim), idx(dim));
    return rho;
}

namespace {

Matrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Matrix z(idx(dim), idx(dim));
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
        for (Eigen::Index j = 0; j < z.cols(); ++j) z(i, j) = Complex{normal(rng), normal(rng)};
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const Complex diag = r(j, j);
        if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
    }
    return q;
}

}  // namespace

LocalSystem random_unitary_system(const WeightedGraph& g, std::size_t dim, std::mt19937_64& rng) {
    LocalSystem rho{dim, {}};
    for (EdgeId e = 0; e < g.oriented_edge_count(); ++e) {
        if (e > g.reverse(e)) continue;
        Matrix u = random_unitary(dim, rng);
        rho.transfer[key_of(g, g.reverse(e))] = u.adjoint();
        rho.transfer[key_of(g, e)] = std::move(u);
    }
    return rho;
}

LocalSystem gauge_transform(const WeightedGraph& g, const LocalSystem& rho, const std::vector<Matrix>& per_vertex) {
    if (per_vertex.size() != g.vertex_count()) throw PreconditionError("gauge needs one unitary per vertex");
    LocalSystem out{rho.dim, {}};
    const auto table = transfer_table(g, rho);
    for (EdgeId e = 0; e < g.oriented_edge_count(); ++e) {
        const auto& oe = g.oriented_edge(e);
        out.transfer[key_of(g, e)] = per_vertex[oe.target] * table[e] * per_vertex[oe.origin].adjoint();
    }
    return out;
}

Matrix holonomy(const WeightedGraph& g, const CycleRecord& c, const LocalSystem& rho) {
    const auto d = idx(rho.dim);
    Matrix h = Matrix::Identity(d, d);
    for (EdgeId e : c.edges) h = rho.transfer.at(key_of(g, e)) * h;
    return h;
}

TwistedOperators twisted_operators(const WeightedGraph& g, const LocalSystem& rho) {
    const auto table = transfer_table(g, rho);
    const auto d = idx(rho.dim);
    const auto nv = idx(g.vertex_count());
    const auto ne = idx(g.oriented_edge_count());
    const Matrix identity = Matrix::Identity(d, d);

    Matrix sigma = Matrix::Zero(ne * d, nv * d);
    Matrix tau = Matrix::Zero(nv * d, ne * d);
    Matrix flip = Matrix::Zero(ne * d, ne * d);
    Matrix t = Matrix::Zero(ne * d, ne * d);
    for (EdgeId e = 0; e < g.oriented_edge_count(); ++e) {
        const auto [o, target] = g.oriented_edge(e);
        const EdgeId r = g.reverse(e);
        const auto ei = idx(e) * d;
        sigma.block(ei, idx(o) * d, d, d) = g.weight(e) * identity;
        tau.block(idx(target) * d, ei, d, d) = table[e];
        if (!g.backtrack_allowed(e) && !g.backtrack_allowed(r)) flip.block(idx(r) * d, ei, d, d) = g.weight(r) * table[e];
        for (EdgeId next : g.out_edges(target)) {
            if (next == r && !g.backtrack_allowed(e)) continue;
            t.block(idx(next) * d, ei, d, d) = g.weight(next) * table[e];
        }
    }
    const auto vl = fibre_labels(vertex_labels(g), rho.dim);
    const auto el = fibre_labels(edge_labels(g), rho.dim);
    return {{vl, el, std::move(sigma)}, {el, vl, std::move(tau)}, {el, el, std::move(flip)}, {el, el, std::move(t)}};
}

TruncatedSeries lfunction(const WeightedGraph& g, const LocalSystem& rho, std::size_t order, LRoute route,
                          std::size_t length_cap) {
    require_order(order);
    if (g.has_backtracking()) throw PreconditionError("L-functions are defined here only without backtracking");
    if (auto report = validate_local_system(g, rho); !report.ok()) throw ValidationError(std::move(report.problems));

    switch (route) {
    case LRoute::oracle: {
        TruncatedSeries product = TruncatedSeries::constant(order, 1.0);
        for (const auto& c : prime_cycles(g, order, length_cap)) {
            if (!c.is_prime) continue;
            // det(1 - sH) as a polynomial in s, then s = w(p) u^{l(p)}.
            const TruncatedSeries char_poly = det_from_traces(holonomy(g, c, rho), rho.dim);
            TruncatedSeries factor(order);
            double w_power = 1.0;
            for (std::size_t k = 0; k <= rho.dim && k * c.length <= order; ++k) {
                factor[k * c.length] = char_poly[k] * w_power;
                w_power *= c.weight;
            }
            product *= factor;
        }
        return product;
    }
    case LRoute::determinant: {
        const TwistedOperators ops = twisted_operators(g, rho);
        const auto dim = ops.tau.rows();
        OperatorSeries s(order, dim);
        s[0] = Matrix::Identity(dim, dim);
        Matrix pushed = ops.sigma.matrix;
        for (std::size_t n = 1; n <= order; ++n) {
            if (n > 1) pushed = ops.flip.matrix * pushed;
            s[n] = (n % 2 == 0 ? 1.0 : -1.0) * (ops.tau.matrix * pushed);
        }
        TruncatedSeries edge_factor = TruncatedSeries::constant(order, 1.0);
        for (const auto& [a, b] : g.edges()) {
            TruncatedSeries f = TruncatedSeries::constant(order, 1.0);
            if (order >= 2) f[2] = -g.edge_product_weight(g.find_edge(a, b));
            edge_factor *= f.pow(static_cast<long>(rho.dim));
        }
        return det_operator_series(s) * edge_factor;
    }
    case LRoute::fredholm:
        return det_from_traces(twisted_operators(g, rho).t, order);
    }
    throw PreconditionError("unknown L-function route");
}

std::optional<LocalSystem> parse_local_system(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& ex) {
        throw ParseError(std::string("malformed graph document: ") + ex.what());
    }
    if (!doc.is_object() || !doc.contains("local_system") || doc["local_system"].is_null()) return std::nullopt;
    const json& block = doc["local_system"];

    try {
        LocalSystem rho;
        rho.dim = block.at("dim").get<std::size_t>();
        std::map<std::pair<std::string, std::string>, Matrix> given;
        for (const auto& item : block.at("transfers")) {
            const auto u = item.at("u").get<std::string>();
            const auto v = item.at("v").get<std::string>();
            const auto& rows = item.at("matrix");
            Matrix m(idx(rows.size()), rows.empty() ? 0 : idx(rows.front().size()));
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].size() != static_cast<std::size_t>(m.cols())) throw ParseError("ragged transfer matrix " + u + "->" + v);
                for (std::size_t j = 0; j < rows[i].size(); ++j) {
                    const auto& cell = rows[i][j];
                    if (!cell.is_array() || cell.size() != 2) throw ParseError("matrix entries must be [re, im] pairs");
                    m(idx(i), idx(j)) = Complex{cell[0].get<double>(), cell[1].get<double>()};
                }
            }
            given[{u, v}] = std::move(m);
        }
        rho.transfer = given;
        for (const auto& [key, m] : given) {
            const std::pair reversed{key.second, key.first};
            if (!given.contains(reversed)) rho.transfer[reversed] = m.adjoint();
        }
        return rho;
    } catch (const json::exception& ex) {
        throw ParseError(std::string("bad local_system block: ") + ex.what());
    }
}

}  // namespace zetagraph
