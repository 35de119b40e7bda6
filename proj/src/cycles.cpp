#include "zetagraph/cycles.hpp"

#include "zetagraph/errors.hpp"
#include "zetagraph/format.hpp"
#include "zetagraph/parallel.hpp"

#include <algorithm>
#include <functional>

namespace zetagraph {

namespace {

void check_caps(std::size_t max_length, std::size_t length_cap) {
    if (length_cap > hard_length_cap) {
        throw ResourceCapError("cycle length cap " + std::to_string(length_cap) + " exceeds the hard cap of " +
                               std::to_string(hard_length_cap));
    }
    if (max_length > length_cap) {
        throw ResourceCapError("cycle length " + std::to_string(max_length) + " exceeds the cap of " +
                               std::to_string(length_cap));
    }
}

bool step_allowed(const WeightedGraph& g, EdgeId from, EdgeId to) {
    return g.oriented_edge(to).origin == g.oriented_edge(from).target &&
           (to != g.reverse(from) || g.backtrack_allowed(from));
}

// Depth-first walk over admissible edge sequences starting with `first`.
// Edges with index below `floor` are never used. `visit` sees every
// sequence that returns to o(first); with `require_seam` the closing step
// back to `first` must also be admissible.
void walk_closed(const WeightedGraph& g, EdgeId first, std::size_t max_length, EdgeId floor, bool require_seam,
                 const std::function<void(const std::vector<EdgeId>&, double)>& visit) {
    const VertexId home = g.oriented_edge(first).origin;
    std::vector<EdgeId> seq{first};
    seq.reserve(max_length);
    std::function<void(double)> extend = [&](double weight) {
        const EdgeId last = seq.back();
        if (g.oriented_edge(last).target == home && (!require_seam || step_allowed(g, last, first))) {
            visit(seq, weight);
        }
        if (seq.size() == max_length) return;
        for (EdgeId next : g.out_edges(g.oriented_edge(last).target)) {
            if (next < floor || !step_allowed(g, last, next)) continue;
            seq.push_back(next);
            extend(weight * g.weight(next));
            seq.pop_back();
        }
    };
    extend(g.weight(first));
}

bool is_minimal_rotation(const std::vector<EdgeId>& seq) {
    const std::size_t n = seq.size();
    for (std::size_t r = 1; r < n; ++r) {
        if (seq[r] != seq[0]) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const EdgeId a = seq[(r + i) % n];
            if (a < seq[i]) return false;
            if (a > seq[i]) break;
        }
    }
    return true;
}

std::size_t primitive_period(const std::vector<EdgeId>& seq) {
    const std::size_t n = seq.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i) periodic = seq[i] == seq[i - p];
        if (periodic) return p;
    }
    return n;
}

}  // namespace

std::vector<std::vector<ClosedSequence>> closed_sequences(const WeightedGraph& g, std::size_t max_length,
                                                          std::size_t length_cap) {
    check_caps(max_length, length_cap);
    std::vector<std::vector<ClosedSequence>> by_length(max_length + 1);
    if (max_length == 0) return by_length;
    for (EdgeId e = 0; e < g.oriented_edge_count(); ++e) {
        walk_closed(g, e, max_length, 0, true, [&](const std::vector<EdgeId>& seq, double w) {
            by_length[seq.size()].push_back({seq, w});
        });
    }
    return by_length;
}

ClosedPathCounts compute_Nm(const WeightedGraph& g, std::size_t max_length, std::size_t length_cap) {
    check_caps(max_length, length_cap);
    const std::size_t ne = g.oriented_edge_count();
    ClosedPathCounts out;
    out.strict.assign(max_length + 1, 0.0);
    if (max_length == 0) return out;

    std::vector<std::vector<double>> strict(ne, std::vector<double>(max_length + 1));
    parallel_for(ne, [&](std::size_t e) {
        walk_closed(g, e, max_length, 0, true,
                    [&](const std::vector<EdgeId>& seq, double w) { strict[e][seq.size()] += w; });
    });
    for (const auto& part : strict) {
        for (std::size_t m = 0; m <= max_length; ++m) out.strict[m] += part[m];
    }

    if (g.has_backtracking()) {
        std::vector<double> literal(max_length + 1, 0.0);
        for (EdgeId e = 0; e < ne; ++e) {
            walk_closed(g, e, max_length, 0, false, [&](const std::vector<EdgeId>& seq, double w) {
                const std::size_t n = seq.size();
                const VertexId x0 = g.oriented_edge(seq.front()).origin;
                const VertexId x1 = g.oriented_edge(seq.front()).target;
                const VertexId x_before_last = g.oriented_edge(seq.back()).origin;
                if (x0 == x_before_last) {
                    const bool allowed = g.adjacent(x1, x0) && g.backtrack_allowed(g.find_edge(x1, x0));
                    if (!allowed) return;
                }
                literal[n] += w;
            });
        }
        out.literal = std::move(literal);
    }
    return out;
}

std::vector<CycleRecord> prime_cycles(const WeightedGraph& g, std::size_t max_length, std::size_t length_cap) {
    check_caps(max_length, length_cap);
    const std::size_t ne = g.oriented_edge_count();
    std::vector<std::vector<CycleRecord>> per_start(ne);
    if (max_length > 0) {
        parallel_for(ne, [&](std::size_t first) {
            // The minimal rotation starts at its smallest edge, so every other
            // edge index is >= first.
            walk_closed(g, first, max_length, first, true, [&](const std::vector<EdgeId>& seq, double w) {
                if (!is_minimal_rotation(seq)) return;
                CycleRecord rec;
                rec.edges = seq;
                rec.length = seq.size();
                rec.weight = w;
                rec.primitive_length = primitive_period(seq);
                rec.is_prime = rec.primitive_length == rec.length;
                per_start[first].push_back(std::move(rec));
            });
        });
    }
    std::vector<CycleRecord> all;
    for (auto& part : per_start) std::move(part.begin(), part.end(), std::back_inserter(all));
    std::sort(all.begin(), all.end(), [](const CycleRecord& a, const CycleRecord& b) {
        return a.length != b.length ? a.length < b.length : a.edges < b.edges;
    });
    return all;
}

TruncatedSeries euler_product(const WeightedGraph& g, std::size_t order, std::size_t length_cap) {
    require_order(order);
    TruncatedSeries product = TruncatedSeries::constant(order, 1.0);
    for (const auto& c : prime_cycles(g, order, length_cap)) {
        if (!c.is_prime) continue;
        TruncatedSeries factor = TruncatedSeries::constant(order, 1.0);
        factor[c.length] = -c.weight;
        product *= factor;
    }
    return product;
}

std::string edge_sequence_label(const WeightedGraph& g, const std::vector<EdgeId>& edges) {
    std::string out;
    for (EdgeId e : edges) {
        if (!out.empty()) out += ';';
        out += g.edge_label(e);
    }
    return out;
}

std::string cycles_csv(const WeightedGraph& g, const std::vector<CycleRecord>& cycles) {
    std::string out = "length,weight,primitive_length,is_prime,edge_sequence\n";
    for (const auto& c : cycles) {
        out += csv_row({std::to_string(c.length), format_real(c.weight), std::to_string(c.primitive_length),
                        c.is_prime ? "true" : "false", edge_sequence_label(g, c.edges)}) +
               "\n";
    }
    return out;
}

}  // namespace zetagraph
