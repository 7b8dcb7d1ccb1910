#include "oracles.hpp"

#include <triad/cli.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

using namespace triad;
using oracles::Rng;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("golden outputs for every subcommand") {
    auto check = [](std::vector<std::string> args, const std::string& expect) {
        Run r = run_cli(std::move(args));
        INFO(r.err);
        REQUIRE(r.code == 0);
        REQUIRE(r.out == expect);
    };
    check({"bracket", "x1 d2", "x2 d3", "--rank", "3"}, "x1 d3\n");
    check({"ord", "d1", "--rank", "2"}, "w+1\n");
    check({"act", "x1 d2", "x2^2"}, "2 x1 x2\n");
    check({"exp-ad", "d1", "x1 d2"}, "x1 d2 + d2\n");
    check({"closure", "d1", "x1 d2"},
          "dimension: 3\nclass: 2\nbasis: d2\nbasis: x1 d2\nbasis: d1\n");
    check({"ideal-gen", "x1 d2 + d3", "--rank", "3"}, "I[w^2+2]@u3\n");
    check({"ideal-member", "d3", "I[w^2]@u3"}, "true\n");
    check({"ideal-member", "d1", "I[w^2]@u3"}, "false\n");
    check({"ideal-basis", "I[w+1]@u2", "--limit", "3"},
          "basis: d2, x1 d2, x1^2 d2\ninfinite\n");
    check({"ideal-basis", "I[2]@u2"}, "basis: d2, x1 d2\nfinite, dim 2\n");
    check({"centralizer", "I[w^2]@u3"}, "I[w^2]@u3\n");
    check({"centralizer", "3", "--set"},
          "I[1]@u3\nI[w]@u3\nI[w^2]@u3\nI[w^2+w]@u3\nI[w^2+w+1]@u3\n");
    check({"series", "derived", "3"},
          "I[w^2+w+1]@u3\nI[w^2+w]@u3\nI[w^2]@u3\nI[0]@u3\n");
    check({"series", "lower-central", "3"},
          "I[w^2+w+1]@u3\nI[w^2+w]@u3 (stabilizes at step 1)\n");
    check({"series", "central", "3", "w+1"}, "I[w+1]@u3\n");
    check({"iso", "u3/I[w^2]", "u2/I[0]"},
          "isomorphic: true (signature Residue(s=2, nu=0) vs Residue(s=2, nu=0))\n");
    check({"udim", "u2/I[w+1]"}, "0\n");
    check({"udim", "oo"}, "w^w\n");
    check({"f-map", "x1^2 d2"}, "2 x1 d2\n");
    check({"f-map", "--kernel", "2", "--rank", "3"}, "I[w*2]@u3\n");
    check({"weyl-mul", "d1^2", "x1^2"}, "x1^2 d1^2 + 4 x1 d1 + 2\n");
    check({"weyl-in-image", "x1 d2"}, "in_image: true\nW': 1 * (x1 d2)\n");
    check({"weyl-in-image", "x1 d1"}, "in_image: false\n");
    check({"weyl-kernel-check", "x1 d2", "x2^2 d3"}, "true\n");
    check({"mod-ord", "x3", "--rank", "3"}, "w^2+1\n");
    check({"mod-prime", "P[w*2]@P2"}, "theta: x2^2\nquotient_dim: 1\n");
    check({"mod-prime", "P[w+1]@P2", "--double"},
          "witness: x1 x2\nresult: P[w+2]@P2\n");
    check({"mod-ann", "P[w]@P2"}, "I[w]@u2\n");
    check({"mod-ann", "P[w+1]@P2"}, "Zero (faithful)\n");
    check({"endo", "0,1", "x1 x2", "--rank", "2"}, "x1\n");
    check({"endo", "0,1", "--kernel", "--rank", "2"}, "d: 1\nkernel: P1\n");
    check({"inf-classify", "d2"}, "I[1]@2+U[oo,3]\nopen: true, closed: true\n");
    check({"inf-iso", "U[oo,3]", "U[oo,3]"}, "isomorphic: true\n");
    check({"inf-iso", "I[1]@3+U[oo,4]", "I[2]@3+U[oo,4]"}, "isomorphic: false\n");
    {
        Run r = run_cli({"inf-witness", "d1", "--steps", "2"});
        REQUIRE(r.code == 0);
        REQUIRE(r.out.find("step 1") != std::string::npos);
        REQUIRE(r.out.find("step 2") != std::string::npos);
        REQUIRE(r.out.find("level 2: 1") != std::string::npos);
    }
}

TEST_CASE("JSON mode carries the same data") {
    Run r = run_cli({"bracket", "x1 d2", "x2 d3", "--rank", "3", "--json"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["rank"] == 3);
    REQUIRE(j["terms"].size() == 1);
    REQUIRE(j["terms"][0]["slot"] == 3);
    REQUIRE(j["terms"][0]["coeff"] == "1");
    Run o = run_cli({"ord", "d1", "--rank", "2", "--json"});
    auto jo = json::parse(o.out);
    REQUIRE(jo["ord"].size() == 2);
    Run iso = run_cli({"iso", "u3/I[w^2]", "u2/I[0]", "--json"});
    auto ji = json::parse(iso.out);
    REQUIRE(ji["isomorphic"] == true);
}

TEST_CASE("exit codes: 2 for syntax errors, 1 for domain errors") {
    REQUIRE(run_cli({"ord", "x1 q"}).code == 2);
    REQUIRE(run_cli({"ord", "d1 +"}).code == 2);
    REQUIRE(run_cli({"bogus"}).code == 2);
    REQUIRE(run_cli({"bracket", "d1"}).code == 2);                  // missing operand
    REQUIRE(run_cli({"ord", "x2 d2"}).code == 2);                   // factor index >= slot
    REQUIRE(run_cli({"series", "central", "3", "w^3"}).code == 1);  // lambda out of range
    REQUIRE(run_cli({"centralizer", "I[0]@u3"}).code == 1);         // zero ideal
    REQUIRE(run_cli({"bracket", "x1 d2", "x2 d3", "--rank", "2"}).code == 1);
    REQUIRE(run_cli({"endo", "0,1", "x2^5", "--rank", "2"}).code == 1);  // order too small
    // errors report on stderr, nothing on stdout
    Run r = run_cli({"ord", "x1 q"});
    REQUIRE(r.out.empty());
    REQUIRE_FALSE(r.err.empty());
}

TEST_CASE("round-trip: parse(print(v)) = v on seeded values") {
    Rng g(70);
    for (int t = 0; t < 400; ++t) {
        unsigned n = oracles::uniform(g, 2, 4);
        Element u = oracles::random_element(g, n, 4, 4);
        if (u.is_zero()) continue;
        Element back = parse_element(element_str(u), n);
        REQUIRE(back.with_rank(n) == u);
    }
    for (int t = 0; t < 300; ++t) {
        Ordinal o = oracles::random_ordinal(g, 4, 6);
        REQUIRE(parse_ordinal(o.str()) == o);
    }
    for (int t = 0; t < 300; ++t) {
        unsigned n = oracles::uniform(g, 2, 4);
        Ordinal lam = oracles::random_ordinal(g, n - 1, 3);
        if (lam > Ordinal::stack(n)) continue;
        IdealHandle h(n, lam);
        REQUIRE(parse_ideal(ideal_str(h)) == h);
        REQUIRE(parse_factor(factor_str(h)) == h);
        if (!lam.is_zero() && lam <= Ordinal::omega_pow(n)) {
            SubmoduleHandle sh(n, lam);
            REQUIRE(parse_submodule(submodule_str(sh)) == sh);
        }
    }
    // weyl and polynomial round-trips
    for (int t = 0; t < 200; ++t) {
        WeylElement w = oracles::random_weyl(g, 3, 3);
        if (w.is_zero()) continue;
        REQUIRE(parse_weyl(weyl_str(w), 3) == w);
        Polynomial p = oracles::random_polynomial(g, 3, 3);
        if (p.is_zero()) continue;
        REQUIRE(parse_polynomial(poly_str(p)) == p);
    }
    // inf-ideal handles
    std::vector<InfIdeal> infs = {InfIdeal::whole(), InfIdeal::zero(), InfIdeal::tail(3),
                                  InfIdeal::mixed(3, Ordinal::omega() + Ordinal(2))};
    for (const auto& a : infs) REQUIRE(parse_inf_ideal(inf_ideal_str(a)) == a);
}

TEST_CASE("rank inference and --rank raising") {
    REQUIRE(run_cli({"ord", "d1"}).out == "w+1\n");  // inferred rank clamps to the minimum, 2
    REQUIRE(run_cli({"ord", "d1", "--rank", "3"}).out == "w^2+w+1\n");
    REQUIRE(run_cli({"bracket", "d1", "x1 d2", "--rank", "4"}).out == "d2\n");
}
