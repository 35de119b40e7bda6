#include "support.hpp"

#include "zetagraph/cli.hpp"
#include "zetagraph/graph.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace zetagraph;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return zgtest::data_path(name); }

std::filesystem::path scratch(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("zetagraph_cli_" + name);
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("check agrees on the triangle") {
    const auto r = run({"check", data("k3.json"), "--order", "12"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("routeA,routeB,max_dev,verdict\n", 0) == 0);
    CHECK(r.out.find("disagree") == std::string::npos);
    CHECK(r.out.find("oracle,classical") != std::string::npos);
}

TEST_CASE("check flags the one-sided backtracking set") {
    const auto r = run({"check", data("bt2.json"), "--order", "6", "--experimental"});
    CHECK(r.code == 2);
    CHECK(r.out.find("partial") != std::string::npos);
    CHECK(r.out.find("disagree(experimental)") != std::string::npos);
    CHECK(r.err.find("asymmetric") != std::string::npos);

    const auto quiet = run({"check", data("bt2.json"), "--order", "6"});
    CHECK(quiet.code == 0);
}

TEST_CASE("coeffs of the weighted triangle") {
    const auto r = run({"coeffs", data("wt3.json"), "--order", "6", "--route", "oracle"});
    CHECK(r.code == 0);
    CHECK(r.out == "n,re,im\n0,1,0\n1,0,0\n2,0,0\n3,-0.0705,0\n4,0,0\n5,0,0\n6,0.0005,0\n");
    for (const char* route : {"fredholm", "sunada", "bass"}) {
        const auto other = run({"coeffs", data("wt3.json"), "--order", "6", "--route", route});
        CHECK(other.code == 0);
        std::istringstream a(r.out), b(other.out);
        std::string la, lb;
        std::getline(a, la);
        std::getline(b, lb);
        while (std::getline(a, la) && std::getline(b, lb)) {
            const double va = std::stod(la.substr(la.find(',') + 1));
            const double vb = std::stod(lb.substr(lb.find(',') + 1));
            CHECK(std::abs(va - vb) <= 1e-9);
        }
    }
}

TEST_CASE("coeffs variants and preconditions") {
    const auto printed = run({"coeffs", data("k3.json"), "--order", "4", "--route", "bass", "--variant", "as-printed"});
    CHECK(printed.code == 0);
    const auto partial = run({"coeffs", data("k3s.json"), "--order", "6", "--route", "partial"});
    CHECK(partial.out == "n,re,im\n0,1,0\n1,0,0\n2,-1,0\n3,-2,0\n4,0,0\n5,0,0\n6,1,0\n");
    CHECK(run({"coeffs", data("wt3.json"), "--route", "classical"}).code == 1);
    CHECK(run({"coeffs", data("k3.json"), "--route", "bogus"}).code == 3);
    CHECK(run({"coeffs", data("k3.json"), "--route", "bass", "--variant", "odd"}).code == 3);
}

TEST_CASE("primes, poles and stats") {
    const auto primes = run({"primes", data("k3.json"), "--max-len", "3"});
    CHECK(primes.code == 0);
    CHECK(primes.out == "length,weight,primitive_length,is_prime,edge_sequence\n"
                        "3,1,3,true,x->y;y->z;z->x\n3,1,3,true,x->z;z->y;y->x\n");

    const auto poles = run({"poles", data("bt1.json")});
    CHECK(poles.code == 0);
    CHECK(poles.out.rfind("re,im,multiplicity\n", 0) == 0);
    CHECK(poles.out.find("0.408248") != std::string::npos);

    const auto stats = run({"stats", data("wt3.json")});
    CHECK(stats.code == 0);
    CHECK(stats.out.find("total_weight,1.95\n") != std::string::npos);
    CHECK(stats.out.find("W[x-y],0.05\n") != std::string::npos);
    CHECK(stats.out.find("euler_number,0\n") != std::string::npos);
}

TEST_CASE("lfun on the sign system") {
    for (const char* route : {"oracle", "determinant", "fredholm"}) {
        const auto r = run({"lfun", data("k3_sign.json"), "--order", "6", "--route", route});
        CHECK(r.code == 0);
        CHECK(r.out == "n,re,im\n0,1,0\n1,0,0\n2,0,0\n3,2,0\n4,0,0\n5,0,0\n6,1,0\n");
    }
    const auto trivial = run({"lfun", data("k3.json"), "--order", "6", "--route", "oracle"});
    CHECK(trivial.out == "n,re,im\n0,1,0\n1,0,0\n2,0,0\n3,-2,0\n4,0,0\n5,0,0\n6,1,0\n");
}

TEST_CASE("family materialises a truncation") {
    const auto out = std::filesystem::temp_directory_path() / "zetagraph_cli_family.json";
    const auto r = run({"family", "--name", "triangle-chain", "--r", "0.5", "--epsilon", "1.0", "--out", out.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(r.err.find("blocks=3") != std::string::npos);
    CHECK(r.err.find("tail_weight=1") != std::string::npos);
    std::ifstream in(out);
    std::ostringstream doc;
    doc << in.rdbuf();
    const auto g = parse_graph(doc.str());
    CHECK(g.edge_count() == 16);

    const auto study = run({"family", "--name", "triangle-chain", "--r", "0.5", "--blocks", "3", "--study", "--order", "4"});
    CHECK(study.code == 0);
    CHECK(study.out.rfind("k,n,delta\n", 0) == 0);

    CHECK(run({"family", "--name", "ladder", "--r", "0.5", "--blocks", "2"}).out.find("\"vertices\"") != std::string::npos);
    CHECK(run({"family", "--name", "triangle-chain", "--r", "0.5"}).code == 3);
    CHECK(run({"family", "--name", "triangle-chain", "--r", "1.5", "--blocks", "2"}).code == 1);
    CHECK(run({"family", "--name", "triangle-chain", "--r", "0.5", "--epsilon", "1e-40"}).code == 4);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == 3);
    CHECK(run({"frobnicate"}).code == 3);
    CHECK(run({"stats", "/nonexistent/graph.json"}).code == 3);
    CHECK(run({"stats", scratch("malformed.json", "{oops").string()}).code == 3);
    CHECK(run({"stats", scratch("loop.json", R"({"vertices":["a"],"edges":[{"u":"a","v":"a","wuv":1}]})").string()})
              .code == 1);
    CHECK(run({"coeffs", data("k3.json"), "--order", "65", "--route", "fredholm"}).code == 4);
    CHECK(run({"coeffs", data("k3.json"), "--order", "0", "--route", "fredholm"}).code == 3);
    CHECK(run({"coeffs", data("k3.json"), "--order", "16", "--route", "oracle"}).code == 4);
    CHECK(run({"primes", data("k3.json"), "--max-len", "30"}).code == 4);
    const auto bad = run({"stats", "/nonexistent/graph.json"});
    CHECK(bad.out.empty());
    CHECK_FALSE(bad.err.empty());
}

TEST_CASE("identical invocations give identical output") {
    const std::vector<std::string> args{"check", data("wt3.json"), "--order", "10"};
    CHECK(run(args).out == run(args).out);
    const std::vector<std::string> primes{"primes", data("k3s.json"), "--max-len", "8"};
    CHECK(run(primes).out == run(primes).out);
}
