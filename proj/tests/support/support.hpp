#pragma once

#include "zetagraph/graph.hpp"
#include "zetagraph/linear_operator.hpp"
#include "zetagraph/series.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace zgtest {

using zetagraph::Complex;
using zetagraph::Matrix;

enum class Backtracking { none, random, symmetric };

struct RandomGraphOptions {
    std::size_t min_vertices = 3;
    std::size_t max_vertices = 7;
    std::size_t max_extra_edges = 3;
    double w_min = 0.1;
    double w_max = 1.0;
    Backtracking backtracking = Backtracking::none;
    double bt_probability = 0.3;
};

// Random spanning tree plus a few chords, so cycle enumeration stays cheap.
inline zetagraph::WeightedGraph random_graph(std::mt19937_64& rng, const RandomGraphOptions& opt = {}) {
    std::uniform_int_distribution<std::size_t> size(opt.min_vertices, opt.max_vertices);
    std::uniform_real_distribution<double> weight(opt.w_min, opt.w_max);
    std::bernoulli_distribution flag(opt.bt_probability);
    const std::size_t n = size(rng);

    zetagraph::GraphSpec spec;
    for (std::size_t i = 0; i < n; ++i) spec.vertices.push_back("v" + std::to_string(i));

    std::set<std::pair<std::size_t, std::size_t>> used;
    auto add = [&](std::size_t a, std::size_t b) {
        zetagraph::EdgeSpec e{spec.vertices[a], spec.vertices[b], weight(rng), weight(rng)};
        switch (opt.backtracking) {
        case Backtracking::none: break;
        case Backtracking::random:
            e.bt_uv = flag(rng);
            e.bt_vu = flag(rng);
            break;
        case Backtracking::symmetric:
            e.bt_uv = e.bt_vu = flag(rng);
            break;
        }
        spec.edges.push_back(e);
        used.insert({std::min(a, b), std::max(a, b)});
    };
    for (std::size_t i = 1; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> parent(0, i - 1);
        add(parent(rng), i);
    }
    std::uniform_int_distribution<std::size_t> extra(0, opt.max_extra_edges);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const std::size_t chords = extra(rng);
    for (std::size_t k = 0, tries = 0; k < chords && tries < 100; ++tries) {
        const std::size_t a = pick(rng), b = pick(rng);
        if (a == b || used.count({std::min(a, b), std::max(a, b)})) continue;
        add(a, b);
        ++k;
    }
    return zetagraph::WeightedGraph::from_spec(spec);
}

// Polynomials in u as coefficient vectors (index = power).
using Poly = std::vector<Complex>;

inline Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, Complex{0.0});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline void poly_add(Poly& a, const Poly& b, double sign) {
    if (a.size() < b.size()) a.resize(b.size(), Complex{0.0});
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += sign * b[i];
}

// Laplace expansion along the first column of a matrix of polynomials.
inline Poly cofactor_det(const std::vector<std::vector<Poly>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return {Complex{1.0}};
    if (n == 1) return m[0][0];
    Poly det{Complex{0.0}};
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<std::vector<Poly>> minor;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r) continue;
            minor.emplace_back(m[i].begin() + 1, m[i].end());
        }
        poly_add(det, poly_mul(m[r][0], cofactor_det(minor)), r % 2 == 0 ? 1.0 : -1.0);
    }
    return det;
}

// Exact characteristic polynomial det(1 - uT).
inline Poly det_one_minus_uT(const Matrix& t) {
    const auto n = static_cast<std::size_t>(t.rows());
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = {Complex{i == j ? 1.0 : 0.0}, -t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))};
    return cofactor_det(m);
}

inline zetagraph::TruncatedSeries to_series(const Poly& p, std::size_t order) {
    return zetagraph::TruncatedSeries(order, std::span<const Complex>(p.data(), std::min(p.size(), order + 1)));
}

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex{d(rng), d(rng)};
    return m;
}

inline bool series_close(const zetagraph::TruncatedSeries& a, const zetagraph::TruncatedSeries& b, double tol = 1e-9) {
    return zetagraph::agree(a, b, zetagraph::Tolerance{tol, tol});
}

inline bool series_is(const zetagraph::TruncatedSeries& s, std::initializer_list<double> expected, double tol = 1e-9) {
    const zetagraph::TruncatedSeries ref(s.order(), expected);
    return series_close(s, ref, tol);
}

inline std::string data_path(const std::string& name) { return std::string(ZG_TEST_DATA_DIR) + "/" + name; }

}  // namespace zgtest
