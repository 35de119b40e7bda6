#include "zetagraph/graph.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

namespace zetagraph {

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::runtime_error([&] {
          std::string msg = "invalid graph:";
          for (const auto& p : problems) msg += " [" + p + "]";
          return msg;
      }()),
      problems_(std::move(problems)) {}

namespace {

bool admissible_weight(double w) { return std::isfinite(w) && w > 0.0; }

std::string pair_label(const std::string& a, const std::string& b) { return a + "->" + b; }

}  // namespace

ValidationReport validate(const GraphSpec& spec) {
    ValidationReport report;
    auto& out = report.problems;

    if (spec.vertices.empty()) out.push_back("empty vertex list");

    std::map<std::string, std::size_t> index;
    for (const auto& name : spec.vertices) {
        if (!index.emplace(name, index.size()).second) out.push_back("duplicate vertex '" + name + "'");
    }

    std::set<std::pair<std::string, std::string>> seen;
    std::vector<std::size_t> parent(index.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    for (const auto& e : spec.edges) {
        bool known = true;
        for (const auto* name : {&e.u, &e.v}) {
            if (!index.contains(*name)) {
                out.push_back("unknown vertex '" + *name + "' in edge {" + e.u + "," + e.v + "}");
                known = false;
            }
        }
        if (e.u == e.v) {
            out.push_back("loop at vertex '" + e.u + "'");
            continue;
        }
        auto key = std::minmax(e.u, e.v);
        if (!seen.emplace(key.first, key.second).second) {
            out.push_back("duplicate edge {" + key.first + "," + key.second + "}");
        }
        if (!admissible_weight(e.w_uv)) out.push_back("nonpositive weight on " + pair_label(e.u, e.v));
        if (!admissible_weight(e.w_vu)) out.push_back("nonpositive weight on " + pair_label(e.v, e.u));
        if (known) parent[find(index[e.u])] = find(index[e.v]);
    }

    std::set<std::size_t> roots;
    for (std::size_t x = 0; x < parent.size(); ++x) roots.insert(find(x));
    if (roots.size() > 1) out.push_back("disconnected: " + std::to_string(roots.size()) + " components");
    return report;
}

WeightedGraph WeightedGraph::from_spec(const GraphSpec& spec) {
    if (auto report = validate(spec); !report.ok()) throw ValidationError(std::move(report.problems));

    WeightedGraph g;
    g.vertex_names_ = spec.vertices;
    std::sort(g.vertex_names_.begin(), g.vertex_names_.end());

    struct Entry {
        OrientedEdge edge;
        double weight;
        bool backtrack;
    };
    std::vector<Entry> entries;
    entries.reserve(2 * spec.edges.size());
    for (const auto& e : spec.edges) {
        const VertexId u = g.vertex_index(e.u);
        const VertexId v = g.vertex_index(e.v);
        entries.push_back({{u, v}, e.w_uv, e.bt_uv});
        entries.push_back({{v, u}, e.w_vu, e.bt_vu});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.edge < b.edge; });

    for (const auto& entry : entries) {
        g.oriented_.push_back(entry.edge);
        g.weight_.push_back(entry.weight);
        g.backtrack_.push_back(entry.backtrack);
    }
    g.index_adjacency();
    return g;
}

void WeightedGraph::index_adjacency() {
    const std::size_t n = oriented_.size();
    out_edges_.assign(vertex_names_.size(), {});
    for (EdgeId e = 0; e < n; ++e) out_edges_[oriented_[e].origin].push_back(e);

    reverse_.assign(n, 0);
    undirected_of_.assign(n, 0);
    edges_.clear();
    for (EdgeId e = 0; e < n; ++e) {
        const auto [o, t] = oriented_[e];
        reverse_[e] = find_edge(t, o);
        if (o < t) edges_.push_back({o, t});
    }
    for (EdgeId e = 0; e < n; ++e) {
        const auto [o, t] = oriented_[e];
        const UndirectedEdge key{std::min(o, t), std::max(o, t)};
        undirected_of_[e] = static_cast<std::size_t>(std::lower_bound(edges_.begin(), edges_.end(), key) - edges_.begin());
    }
}

VertexId WeightedGraph::vertex_index(std::string_view name) const {
    auto it = std::lower_bound(vertex_names_.begin(), vertex_names_.end(), name);
    if (it == vertex_names_.end() || *it != name) throw PreconditionError("unknown vertex '" + std::string(name) + "'");
    return static_cast<VertexId>(it - vertex_names_.begin());
}

EdgeId WeightedGraph::find_edge(VertexId x, VertexId y) const {
    const OrientedEdge key{x, y};
    auto it = std::lower_bound(oriented_.begin(), oriented_.end(), key);
    if (it == oriented_.end() || *it != key) {
        throw PreconditionError("no edge " + vertex_name(x) + "->" + vertex_name(y));
    }
    return static_cast<EdgeId>(it - oriented_.begin());
}

bool WeightedGraph::adjacent(VertexId x, VertexId y) const {
    return std::binary_search(oriented_.begin(), oriented_.end(), OrientedEdge{x, y});
}

bool WeightedGraph::has_backtracking() const noexcept {
    return std::find(backtrack_.begin(), backtrack_.end(), true) != backtrack_.end();
}

bool WeightedGraph::backtracking_symmetric() const noexcept {
    for (EdgeId e = 0; e < oriented_.size(); ++e) {
        if (backtrack_[e] != backtrack_[reverse_[e]]) return false;
    }
    return true;
}

std::string WeightedGraph::edge_label(EdgeId e) const {
    const auto& oe = oriented_.at(e);
    return pair_label(vertex_names_[oe.origin], vertex_names_[oe.target]);
}

WeightedGraph WeightedGraph::with_weights(std::span<const double> weights) const {
    if (weights.size() != oriented_.size()) throw PreconditionError("weight vector has wrong length");
    for (double w : weights) {
        if (!admissible_weight(w)) throw ValidationError({"nonpositive weight"});
    }
    WeightedGraph g = *this;
    g.weight_.assign(weights.begin(), weights.end());
    return g;
}

WeightedGraph WeightedGraph::with_backtracking(const std::vector<bool>& flags) const {
    if (flags.size() != oriented_.size()) throw PreconditionError("backtracking flag vector has wrong length");
    WeightedGraph g = *this;
    g.backtrack_ = flags;
    return g;
}

GraphSpec WeightedGraph::to_spec() const {
    GraphSpec spec;
    spec.vertices = vertex_names_;
    for (const auto& [a, b] : edges_) {
        const EdgeId fwd = find_edge(a, b);
        const EdgeId bwd = reverse_[fwd];
        spec.edges.push_back({vertex_names_[a], vertex_names_[b], weight_[fwd], weight_[bwd], backtrack_[fwd],
                              backtrack_[bwd]});
    }
    return spec;
}

namespace {

std::size_t girth(const WeightedGraph& g) {
    const std::size_t n = g.vertex_count();
    std::size_t best = n + 1;
    constexpr std::size_t unseen = std::numeric_limits<std::size_t>::max();
    for (VertexId root = 0; root < n; ++root) {
        std::vector<std::size_t> dist(n, unseen);
        std::vector<VertexId> from(n, n);
        std::queue<VertexId> queue;
        dist[root] = 0;
        queue.push(root);
        while (!queue.empty()) {
            const VertexId x = queue.front();
            queue.pop();
            for (EdgeId e : g.out_edges(x)) {
                const VertexId y = g.oriented_edge(e).target;
                if (dist[y] == unseen) {
                    dist[y] = dist[x] + 1;
                    from[y] = x;
                    queue.push(y);
                } else if (from[x] != y) {
                    best = std::min(best, dist[x] + dist[y] + 1);
                }
            }
        }
    }
    return best;
}

}  // namespace

GraphStats graph_stats(const WeightedGraph& g) {
    GraphStats s;
    s.vertex_count = g.vertex_count();
    s.edge_count = g.edge_count();
    s.euler_number = static_cast<long>(s.vertex_count) - static_cast<long>(s.edge_count);
    for (EdgeId e = 0; e < g.oriented_edge_count(); ++e) s.total_weight += g.weight(e);
    for (VertexId x = 0; x < g.vertex_count(); ++x) s.valency_bound = std::max(s.valency_bound, g.valency(x));
    s.valency_bound = std::max<std::size_t>(s.valency_bound, 1);
    for (const auto& [a, b] : g.edges()) {
        s.W_per_edge[{g.vertex_name(a), g.vertex_name(b)}] = g.edge_product_weight(g.find_edge(a, b));
    }
    s.girth_lower_bound = girth(g);
    return s;
}

CanonicalOrder canonical_order(const WeightedGraph& g) {
    CanonicalOrder order;
    order.vertices = g.vertex_names();
    for (const auto& [o, t] : g.oriented_edges()) order.oriented_edges.emplace_back(g.vertex_name(o), g.vertex_name(t));
    return order;
}

namespace {

using nlohmann::ordered_json;

template <class T>
T require(const ordered_json& obj, const char* key, const char* what) {
    if (!obj.contains(key)) throw ParseError(std::string("missing key '") + key + "' in " + what);
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("bad value for '") + key + "' in " + what + ": " + ex.what());
    }
}

template <class T>
T optional_key(const ordered_json& obj, const char* key, T fallback, const char* what) {
    return obj.contains(key) ? require<T>(obj, key, what) : fallback;
}

}  // namespace

GraphSpec parse_graph_spec(std::string_view text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        throw ParseError(std::string("malformed graph document: ") + ex.what());
    }
    if (!doc.is_object()) throw ParseError("graph document must be an object");

    GraphSpec spec;
    spec.vertices = require<std::vector<std::string>>(doc, "vertices", "document");
    if (!doc.contains("edges") || !doc["edges"].is_array()) throw ParseError("missing array 'edges'");
    for (const auto& item : doc["edges"]) {
        if (!item.is_object()) throw ParseError("edge entries must be objects");
        EdgeSpec e;
        e.u = require<std::string>(item, "u", "edge");
        e.v = require<std::string>(item, "v", "edge");
        e.w_uv = require<double>(item, "wuv", "edge");
        e.w_vu = optional_key<double>(item, "wvu", e.w_uv, "edge");
        e.bt_uv = optional_key<bool>(item, "bt_uv", false, "edge");
        e.bt_vu = optional_key<bool>(item, "bt_vu", false, "edge");
        spec.edges.push_back(std::move(e));
    }
    return spec;
}

WeightedGraph parse_graph(std::string_view text) { return WeightedGraph::from_spec(parse_graph_spec(text)); }

std::string serialize_graph(const WeightedGraph& g) {
    const GraphSpec spec = g.to_spec();
    ordered_json doc;
    doc["vertices"] = spec.vertices;
    doc["edges"] = ordered_json::array();
    for (const auto& e : spec.edges) {
        ordered_json item;
        item["u"] = e.u;
        item["v"] = e.v;
        item["wuv"] = e.w_uv;
        item["wvu"] = e.w_vu;
        item["bt_uv"] = e.bt_uv;
        item["bt_vu"] = e.bt_vu;
        doc["edges"].push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

}  // namespace zetagraph
