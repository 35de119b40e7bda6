#include "zetagraph/families.hpp"

#include "zetagraph/errors.hpp"
#include "zetagraph/format.hpp"
#include "zetagraph/operators.hpp"
#include "zetagraph/parallel.hpp"
#include "zetagraph/routes.hpp"

#include <cmath>

namespace zetagraph {

GraphSource::GraphSource(Kind kind, double r) : kind_(kind), r_(r) {
    if (!(r > 0.0 && r < 1.0)) throw PreconditionError("family ratio r must lie in (0, 1)");
}

std::string GraphSource::name() const {
    switch (kind_) {
    case Kind::triangle_chain: return "triangle-chain";
    case Kind::ladder: return "ladder";
    case Kind::path: return "path";
    }
    return "unknown";
}

double GraphSource::per_block_weight() const noexcept {
    switch (kind_) {
    case Kind::triangle_chain: return 8.0;
    case Kind::ladder: return 6.0;
    case Kind::path: return 2.0;
    }
    return 0.0;
}

std::size_t GraphSource::max_valency() const noexcept {
    switch (kind_) {
    case Kind::triangle_chain: return 3;
    case Kind::ladder: return 3;
    case Kind::path: return 2;
    }
    return 0;
}

double GraphSource::total_weight() const { return per_block_weight() / (1.0 - r_); }

double GraphSource::tail_weight(std::size_t k) const {
    return per_block_weight() * std::pow(r_, static_cast<double>(k + 1)) / (1.0 - r_);
}

WeightedGraph GraphSource::truncation(std::size_t k) const {
    if (k > max_blocks) throw ResourceCapError("families are capped at " + std::to_string(max_blocks) + " blocks");
    GraphSpec spec;
    auto vertex = [&](char prefix, std::size_t i) { return std::string(1, prefix) + std::to_string(i); };
    auto link = [&](std::string u, std::string v, double w) { spec.edges.push_back({std::move(u), std::move(v), w, w}); };

    for (std::size_t b = 0; b <= k; ++b) {
        const double w = std::pow(r_, static_cast<double>(b));
        switch (kind_) {
        case Kind::triangle_chain:
            for (char c : {'a', 'b', 'c'}) spec.vertices.push_back(vertex(c, b));
            link(vertex('a', b), vertex('b', b), w);
            link(vertex('b', b), vertex('c', b), w);
            link(vertex('c', b), vertex('a', b), w);
            link(vertex('c', b), vertex('a', b + 1), w);
            break;
        case Kind::ladder:
            if (b == 0) {
                spec.vertices.push_back(vertex('l', 0));
                spec.vertices.push_back(vertex('r', 0));
            }
            spec.vertices.push_back(vertex('l', b + 1));
            spec.vertices.push_back(vertex('r', b + 1));
            link(vertex('l', b), vertex('r', b), w);
            link(vertex('l', b), vertex('l', b + 1), w);
            link(vertex('r', b), vertex('r', b + 1), w);
            break;
        case Kind::path:
            if (b == 0) spec.vertices.push_back(vertex('p', 0));
            spec.vertices.push_back(vertex('p', b + 1));
            link(vertex('p', b), vertex('p', b + 1), w);
            break;
        }
    }
    if (kind_ == Kind::triangle_chain) spec.vertices.push_back(vertex('a', k + 1));
    return WeightedGraph::from_spec(spec);
}

GraphSource make_source(const std::string& name, double r) {
    if (name == "triangle-chain") return {GraphSource::Kind::triangle_chain, r};
    if (name == "ladder") return {GraphSource::Kind::ladder, r};
    if (name == "path") return {GraphSource::Kind::path, r};
    throw PreconditionError("unknown family '" + name + "'");
}

Truncation truncate_source(const GraphSource& source, double epsilon) {
    if (!(epsilon > 0.0)) throw PreconditionError("truncation threshold must be positive");
    for (std::size_t k = 0; k <= max_blocks; ++k) {
        const double tail = source.tail_weight(k);
        if (tail <= epsilon) return {source.truncation(k), k, tail};
    }
    throw ResourceCapError("tail weight stays above " + format_real(epsilon) + " within " +
                           std::to_string(max_blocks) + " blocks");
}

std::vector<std::vector<double>> convergence_study(const GraphSource& source, std::size_t k_max, std::size_t order) {
    if (k_max > max_blocks) throw ResourceCapError("convergence study capped at " + std::to_string(max_blocks) + " blocks");
    require_order(order);
    std::vector<TruncatedSeries> series(k_max + 1);
    parallel_for(k_max + 1, [&](std::size_t k) { series[k] = zeta_fredholm(source.truncation(k), order).series; });

    std::vector<std::vector<double>> deltas;
    for (std::size_t k = 0; k < k_max; ++k) {
        std::vector<double> row(order + 1);
        for (std::size_t n = 0; n <= order; ++n) row[n] = std::abs(series[k + 1][n] - series[k][n]);
        deltas.push_back(std::move(row));
    }
    return deltas;
}

double fitted_decay_ratio(const std::vector<std::vector<double>>& deltas, std::size_t n, std::size_t k_from,
                          std::size_t k_to) {
    if (k_to >= deltas.size() || k_from >= k_to) throw PreconditionError("fit range outside the study");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double count = static_cast<double>(k_to - k_from + 1);
    for (std::size_t k = k_from; k <= k_to; ++k) {
        const double delta = deltas[k].at(n);
        if (!(delta > 0.0)) throw PreconditionError("cannot fit a decay rate through zero deltas");
        const double x = static_cast<double>(k);
        const double y = std::log(delta);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    return std::exp(slope);
}

std::string study_csv(const std::vector<std::vector<double>>& deltas) {
    std::string out = "k,n,delta\n";
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        for (std::size_t n = 0; n < deltas[k].size(); ++n) {
            out += csv_row({std::to_string(k), std::to_string(n), format_real(deltas[k][n])}) + "\n";
        }
    }
    return out;
}

}  // namespace zetagraph
