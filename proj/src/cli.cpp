#include "zetagraph/cli.hpp"

#include "zetagraph/cycles.hpp"
#include "zetagraph/errors.hpp"
#include "zetagraph/families.hpp"
#include "zetagraph/format.hpp"
#include "zetagraph/graph.hpp"
#include "zetagraph/routes.hpp"
#include "zetagraph/twist.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace zetagraph::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void check_order(std::size_t order) {
    if (order == 0) throw UsageError("--order must be at least 1");
    require_order(order);
}

struct Options {
    std::string file;
    std::size_t order = default_order;
    std::size_t length_cap = default_length_cap;
    std::string route;
    std::string variant;
    double tol = 1e-9;
    bool experimental = false;
    std::size_t max_len = 0;
    std::string family;
    double ratio = 0.0;
    double epsilon = 0.0;
    std::size_t blocks = 0;
    std::string out_path;
    bool study = false;
};

int cmd_coeffs(const Options& o, std::ostream& out) {
    check_order(o.order);
    const WeightedGraph g = parse_graph(read_file(o.file));
    RouteResult r;
    if (o.route == "oracle") {
        r = zeta_oracle(g, o.order, o.length_cap);
    } else if (o.route == "fredholm") {
        r = zeta_fredholm(g, o.order);
    } else if (o.route == "sunada") {
        r = zeta_sunada(g, o.order);
    } else if (o.route == "bass") {
        if (!o.variant.empty() && o.variant != "corrected" && o.variant != "as-printed") {
            throw UsageError("bass variant must be corrected or as-printed");
        }
        r = zeta_bass(g, o.order, o.variant == "as-printed" ? BassVariant::as_printed : BassVariant::corrected);
    } else if (o.route == "partial") {
        if (!o.variant.empty() && o.variant != "W" && o.variant != "w-squared") {
            throw UsageError("partial variant must be W or w-squared");
        }
        r = zeta_partial_formula(g, o.order,
                                 o.variant == "w-squared" ? AlphaVariant::squared_weight : AlphaVariant::product_weight);
    } else if (o.route == "classical") {
        r = zeta_classical(g, o.order);
    } else {
        throw UsageError("unknown route '" + o.route + "'");
    }
    out << series_csv(r.series);
    return success;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
    check_order(o.order);
    const WeightedGraph g = parse_graph(read_file(o.file));
    const auto report = cross_validate(g, o.order, o.experimental, Tolerance{o.tol, o.tol}, o.length_cap);
    out << discrepancy_csv(report);
    if (report.asymmetric_backtracking) err << "note: backtracking set is asymmetric\n";
    return report.all_agree() ? success : route_disagreement;
}

int cmd_primes(const Options& o, std::ostream& out) {
    const WeightedGraph g = parse_graph(read_file(o.file));
    out << cycles_csv(g, prime_cycles(g, o.max_len, o.length_cap));
    return success;
}

int cmd_poles(const Options& o, std::ostream& out) {
    const WeightedGraph g = parse_graph(read_file(o.file));
    out << poles_csv(spectrum_poles(g));
    return success;
}

int cmd_lfun(const Options& o, std::ostream& out) {
    check_order(o.order);
    const std::string text = read_file(o.file);
    const WeightedGraph g = parse_graph(text);
    const LocalSystem rho = parse_local_system(text).value_or(trivial_system(g));
    LRoute route;
    if (o.route == "oracle") {
        route = LRoute::oracle;
    } else if (o.route == "determinant") {
        route = LRoute::determinant;
    } else if (o.route == "fredholm") {
        route = LRoute::fredholm;
    } else {
        throw UsageError("unknown L-function route '" + o.route + "'");
    }
    out << series_csv(lfunction(g, rho, o.order, route, o.length_cap));
    return success;
}

int cmd_family(const Options& o, std::ostream& out, std::ostream& err) {
    const GraphSource source = make_source(o.family, o.ratio);
    std::size_t k = o.blocks;
    double tail = 0.0;
    if (o.epsilon > 0.0) {
        const Truncation t = truncate_source(source, o.epsilon);
        k = t.blocks;
        tail = t.tail_weight;
    } else {
        tail = source.tail_weight(k);
    }
    err << "family " << source.name() << " r=" << format_real(source.ratio()) << " blocks=" << k
        << " tail_weight=" << format_real(tail) << "\n";

    if (o.study) {
        check_order(o.order);
        out << study_csv(convergence_study(source, k, o.order));
    }
    const std::string doc = serialize_graph(source.truncation(k));
    if (!o.out_path.empty()) {
        std::ofstream file(o.out_path, std::ios::binary);
        if (!file || !(file << doc)) throw IoError("cannot write '" + o.out_path + "'");
    } else if (!o.study) {
        out << doc;
    }
    return success;
}

int cmd_stats(const Options& o, std::ostream& out) {
    const WeightedGraph g = parse_graph(read_file(o.file));
    const GraphStats s = graph_stats(g);
    out << "key,value\n";
    out << "vertex_count," << s.vertex_count << "\n";
    out << "edge_count," << s.edge_count << "\n";
    out << "euler_number," << s.euler_number << "\n";
    out << "total_weight," << format_real(s.total_weight) << "\n";
    out << "valency_bound," << s.valency_bound << "\n";
    out << "girth_lower_bound," << s.girth_lower_bound << "\n";
    for (const auto& [edge, w] : s.W_per_edge) out << "W[" << edge.first << "-" << edge.second << "]," << format_real(w) << "\n";
    return success;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ihara zeta functions of weighted graphs", "zetagraph"};
    app.require_subcommand(1);
    Options o;

    auto add_file = [&](CLI::App* sub) { sub->add_option("file", o.file, "graph document")->required(); };
    auto add_order = [&](CLI::App* sub) { sub->add_option("--order", o.order, "series order M (1..64)"); };
    auto add_cap = [&](CLI::App* sub) {
        sub->add_option("--length-cap", o.length_cap, "cycle enumeration length cap (<= 20)");
    };

    auto* coeffs = app.add_subcommand("coeffs", "coefficients of 1/Z(u) by one route");
    add_file(coeffs);
    add_order(coeffs);
    add_cap(coeffs);
    coeffs->add_option("--route", o.route, "oracle|fredholm|sunada|bass|partial|classical")->required();
    coeffs->add_option("--variant", o.variant, "bass: corrected|as-printed; partial: W|w-squared");

    auto* check = app.add_subcommand("check", "cross-validate all applicable routes");
    add_file(check);
    add_order(check);
    add_cap(check);
    check->add_option("--tol", o.tol, "absolute and relative coefficient tolerance");
    check->add_flag("--experimental", o.experimental, "include the partial formula for asymmetric sets");

    auto* primes = app.add_subcommand("primes", "enumerate cycle classes");
    add_file(primes);
    add_cap(primes);
    primes->add_option("--max-len", o.max_len, "maximum cycle length")->required();

    auto* poles = app.add_subcommand("poles", "poles of Z from the spectrum of T");
    add_file(poles);

    auto* lfun = app.add_subcommand("lfun", "coefficients of 1/L(rho, u)");
    add_file(lfun);
    add_order(lfun);
    add_cap(lfun);
    lfun->add_option("--route", o.route, "oracle|determinant|fredholm")->required();

    auto* family = app.add_subcommand("family", "materialise a truncation of an infinite family");
    family->add_option("--name", o.family, "triangle-chain|ladder|path")->required();
    family->add_option("--r", o.ratio, "decay ratio in (0,1)")->required();
    auto* eps = family->add_option("--epsilon", o.epsilon, "tail weight threshold");
    auto* blocks = family->add_option("--blocks", o.blocks, "block count K");
    eps->excludes(blocks);
    family->add_option("--out", o.out_path, "output graph document");
    family->add_flag("--study", o.study, "print convergence deltas k,n,delta for k < K");
    add_order(family);

    auto* stats = app.add_subcommand("stats", "graph statistics");
    add_file(stats);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return success;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return success;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << "\n";
        return io_or_parse_error;
    }

    try {
        if (family->parsed() && eps->count() == 0 && blocks->count() == 0) {
            throw UsageError("family needs --epsilon or --blocks");
        }
        if (coeffs->parsed()) return cmd_coeffs(o, out);
        if (check->parsed()) return cmd_check(o, out, err);
        if (primes->parsed()) return cmd_primes(o, out);
        if (poles->parsed()) return cmd_poles(o, out);
        if (lfun->parsed()) return cmd_lfun(o, out);
        if (family->parsed()) return cmd_family(o, out, err);
        if (stats->parsed()) return cmd_stats(o, out);
    } catch (const ValidationError& ex) {
        err << "validation error: " << ex.what() << "\n";
        return validation_failure;
    } catch (const PreconditionError& ex) {
        err << "error: " << ex.what() << "\n";
        return validation_failure;
    } catch (const ParseError& ex) {
        err << "parse error: " << ex.what() << "\n";
        return io_or_parse_error;
    } catch (const IoError& ex) {
        err << "i/o error: " << ex.what() << "\n";
        return io_or_parse_error;
    } catch (const UsageError& ex) {
        err << "usage error: " << ex.what() << "\n";
        return io_or_parse_error;
    } catch (const ResourceCapError& ex) {
        err << "resource cap: " << ex.what() << "\n";
        return resource_cap;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return validation_failure;
    }
    return io_or_parse_error;
}

}  // namespace zetagraph::cli
