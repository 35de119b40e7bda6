#include "zetagraph/operators.hpp"

#include "zetagraph/errors.hpp"

#include <cmath>
#include <functional>

namespace zetagraph {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void require_nonnegative(long n, const char* what) {
    if (n < 0) throw PreconditionError(std::string(what) + " must be nonnegative");
}

// Walks every admissible vertex path of the given length starting at
// `start`. A step x_{j-1} -> x_j -> x_{j+1} with x_{j+1} = x_{j-1} is allowed
// only when the oriented edge x_{j-1} -> x_j allows backtracking.
void for_each_path(const WeightedGraph& g, VertexId start, std::size_t length,
                   const std::function<void(const std::vector<EdgeId>&, double)>& visit) {
    std::vector<EdgeId> edges;
    edges.reserve(length);
    std::function<void(VertexId, double)> step = [&](VertexId at, double weight) {
        if (edges.size() == length) {
            visit(edges, weight);
            return;
        }
        for (EdgeId next : g.out_edges(at)) {
            if (!edges.empty()) {
                const EdgeId prev = edges.back();
                if (next == g.reverse(prev) && !g.backtrack_allowed(prev)) continue;
            }
            edges.push_back(next);
            step(g.oriented_edge(next).target, weight * g.weight(next));
            edges.pop_back();
        }
    };
    step(start, 1.0);
}

}  // namespace

std::vector<std::string> vertex_labels(const WeightedGraph& g) { return g.vertex_names(); }

std::vector<std::string> edge_labels(const WeightedGraph& g) {
    std::vector<std::string> labels;
    labels.reserve(g.oriented_edge_count());
    for (EdgeId e = 0; e < g.oriented_edge_count(); ++e) labels.push_back(g.edge_label(e));
    return labels;
}

LinearOperator build_T(const WeightedGraph& g) {
    const auto n = g.oriented_edge_count();
    Matrix t = Matrix::Zero(idx(n), idx(n));
    for (EdgeId e = 0; e < n; ++e) {
        for (EdgeId next : g.out_edges(g.oriented_edge(e).target)) {
            if (next == g.reverse(e) && !g.backtrack_allowed(e)) continue;
            t(idx(next), idx(e)) = g.weight(next);
        }
    }
    auto labels = edge_labels(g);
    return {labels, labels, std::move(t)};
}

EdgeMaps build_edge_maps(const WeightedGraph& g) {
    const auto nv = g.vertex_count();
    const auto ne = g.oriented_edge_count();
    Matrix sigma = Matrix::Zero(idx(ne), idx(nv));
    Matrix tau = Matrix::Zero(idx(nv), idx(ne));
    Matrix flip = Matrix::Zero(idx(ne), idx(ne));
    for (EdgeId e = 0; e < ne; ++e) {
        const auto [o, t] = g.oriented_edge(e);
        const EdgeId r = g.reverse(e);
        sigma(idx(e), idx(o)) = g.weight(e);
        tau(idx(t), idx(e)) = 1.0;
        if (!g.backtrack_allowed(e) && !g.backtrack_allowed(r)) flip(idx(r), idx(e)) = g.weight(r);
    }
    const auto vl = vertex_labels(g);
    const auto el = edge_labels(g);
    return {{vl, el, std::move(sigma)}, {el, vl, std::move(tau)}, {el, el, std::move(flip)}};
}

AdjacencyPair build_A1_Q(const WeightedGraph& g) {
    const auto nv = g.vertex_count();
    Matrix a = Matrix::Zero(idx(nv), idx(nv));
    Matrix q = Matrix::Zero(idx(nv), idx(nv));
    for (VertexId x = 0; x < nv; ++x) {
        double free_neighbours = 0.0;
        for (EdgeId e : g.out_edges(x)) {
            a(idx(g.oriented_edge(e).target), idx(x)) = g.weight(e);
            if (!g.backtrack_allowed(e)) free_neighbours += 1.0;
        }
        q(idx(x), idx(x)) = free_neighbours - 1.0;
    }
    const auto vl = vertex_labels(g);
    return {{vl, vl, std::move(a)}, {vl, vl, std::move(q)}};
}

LinearOperator build_B_n(const WeightedGraph& g, long n) {
    require_nonnegative(n, "B_n index");
    const auto nv = g.vertex_count();
    Matrix b = Matrix::Zero(idx(nv), idx(nv));
    const auto vl = vertex_labels(g);
    if (n == 0) return {vl, vl, Matrix::Identity(idx(nv), idx(nv))};

    for (VertexId x = 0; x < nv; ++x) {
        for (EdgeId e : g.out_edges(x)) {
            const VertexId y = g.oriented_edge(e).target;
            const bool forward_free = !g.backtrack_allowed(e);
            const bool both_free = forward_free && !g.backtrack_allowed(g.reverse(e));
            // Order 1 sees every neighbour, order 2 drops x->x' in the set,
            // higher orders need both orientations outside it.
            const bool included = n == 1 || (n == 2 ? forward_free : both_free);
            if (!included) continue;
            const double big_w = g.edge_product_weight(e);
            const double power = std::pow(big_w, static_cast<double>(n / 2));
            if (n % 2 == 0) {
                b(idx(x), idx(x)) += power;
            } else {
                b(idx(y), idx(x)) += power * g.weight(e);
            }
        }
    }
    return {vl, vl, std::move(b)};
}

std::vector<Matrix> build_A_sequence(const WeightedGraph& g, std::size_t m) {
    std::vector<Matrix> bs;
    bs.reserve(m + 1);
    for (std::size_t j = 0; j <= m; ++j) bs.push_back(build_B_n(g, static_cast<long>(j)).matrix);
    std::vector<Matrix> as{bs[0]};
    for (std::size_t k = 1; k <= m; ++k) {
        Matrix acc = Matrix::Zero(bs[0].rows(), bs[0].cols());
        for (std::size_t j = 1; j <= k; ++j) {
            const double sign = j % 2 == 1 ? 1.0 : -1.0;
            acc.noalias() += sign * (as[k - j] * bs[j]);
        }
        as.push_back(std::move(acc));
    }
    return as;
}

LinearOperator build_A_m(const WeightedGraph& g, long m) {
    require_nonnegative(m, "A_m index");
    auto as = build_A_sequence(g, static_cast<std::size_t>(m));
    const auto vl = vertex_labels(g);
    return {vl, vl, std::move(as.back())};
}

LinearOperator enumerate_A_m(const WeightedGraph& g, long m) {
    require_nonnegative(m, "A_m index");
    const auto nv = g.vertex_count();
    Matrix a = Matrix::Zero(idx(nv), idx(nv));
    for (VertexId x = 0; x < nv; ++x) {
        for_each_path(g, x, static_cast<std::size_t>(m), [&](const std::vector<EdgeId>& path, double w) {
            const VertexId end = path.empty() ? x : g.oriented_edge(path.back()).target;
            a(idx(end), idx(x)) += w;
        });
    }
    const auto vl = vertex_labels(g);
    return {vl, vl, std::move(a)};
}

LinearOperator build_C_mn(const WeightedGraph& g, long m, long n) {
    if (m < 1 || n < 1) throw PreconditionError("C_{m,n} needs m >= 1 and n >= 1");
    const auto nv = g.vertex_count();
    Matrix c = Matrix::Zero(idx(nv), idx(nv));
    for (VertexId x = 0; x < nv; ++x) {
        for_each_path(g, x, static_cast<std::size_t>(m), [&](const std::vector<EdgeId>& path, double w) {
            const double first = std::pow(g.edge_product_weight(path.front()), static_cast<double>(n));
            c(idx(g.oriented_edge(path.back()).target), idx(x)) += first * w;
        });
    }
    const auto vl = vertex_labels(g);
    return {vl, vl, std::move(c)};
}

double inversion_residual(const WeightedGraph& g, std::size_t m) {
    Matrix acc = Matrix::Zero(idx(g.vertex_count()), idx(g.vertex_count()));
    for (std::size_t j = 0; j <= m; ++j) {
        const double sign = j % 2 == 0 ? 1.0 : -1.0;
        acc += sign * (enumerate_A_m(g, static_cast<long>(m - j)).matrix * build_B_n(g, static_cast<long>(j)).matrix);
    }
    return max_abs_entry(acc);
}

}  // namespace zetagraph
