#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace triad;
using oracles::Rng;

namespace {

// All monomials of P_n within a degree window that lie in P_{lam,n}.
std::vector<Multidegree> module_window(const SubmoduleHandle& h, unsigned deg) {
    std::vector<Multidegree> out;
    for (const auto& m : oracles::all_monomials(h.rank, deg))
        if (ord_monomial(m, h.rank) <= h.lambda) out.push_back(m);
    return out;
}

Ordinal sample_lambda(Rng& g, unsigned n) {
    while (true) {
        Ordinal lam = oracles::random_ordinal(g, std::min(n, 2u), 3);
        if (!lam.is_zero() && lam <= Ordinal::omega_pow(n)) return lam;
    }
}

} // namespace

TEST_CASE("ord_monomial and monomial_at are mutually inverse") {
    for (unsigned n = 1; n <= 4; ++n)
        for (const auto& m : oracles::all_monomials(n, 4)) {
            Ordinal o = ord_monomial(m, n);
            REQUIRE(o.is_successor());
            REQUIRE(monomial_at(o, n) == m);
        }
    // the shift-by-one convention: x3 in P3 sits at w^2 + 1
    REQUIRE(ord_monomial(Multidegree{0, 0, 1}, 3) == Ordinal::omega_pow(2) + Ordinal(1));
    REQUIRE(ord_monomial(Multidegree{}, 3) == Ordinal(1));
}

TEST_CASE("submodules are u_n-stable and ord drops under the action") {
    Rng g(40);
    for (int t = 0; t < 200; ++t) {
        unsigned n = oracles::uniform(g, 2, 3);
        SubmoduleHandle h(n, sample_lambda(g, n));
        // random p in the submodule from window monomials
        auto window = module_window(h, 4);
        if (window.empty()) continue;
        Polynomial p;
        for (unsigned k = oracles::uniform(g, 1, 3); k-- > 0;)
            p.add_term(window[oracles::uniform(g, 0, window.size() - 1)],
                       oracles::random_coeff(g));
        Element u = oracles::random_element(g, n, 3);
        Polynomial q = act(u, p);
        REQUIRE(submodule_contains(q, h));
        if (!q.is_zero() && !p.is_zero()) {
            // ord(u * p) < ord(p)
            auto mono_ord = [&](const Polynomial& r) {
                Ordinal best;
                for (const auto& [a, c] : r.terms()) best = std::max(best, ord_monomial(a, n));
                return best;
            };
            REQUIRE(mono_ord(q) < mono_ord(p));
        }
    }
}

TEST_CASE("submodule_summands covers exactly the window monomials") {
    Rng g(41);
    for (int t = 0; t < 100; ++t) {
        unsigned n = oracles::uniform(g, 1, 3);
        SubmoduleHandle h(n, sample_lambda(g, n));
        auto dec = submodule_summands(h);
        auto window = oracles::all_monomials(n, 5);
        auto in_band = [&](const Multidegree& m, const SummandBand& b) {
            // m = prefix * x_band^e * (anything in P_{poly_index}), e < count
            for (unsigned v = b.band_var + 1; v <= n; ++v)
                if (md_get(m, v - 1) != md_get(b.prefix, v - 1)) return false;
            return md_get(m, b.band_var - 1) < b.count;
        };
        for (const auto& m : window) {
            bool covered = dec.whole;
            for (const auto& b : dec.bands) covered = covered || in_band(m, b);
            REQUIRE(covered == (ord_monomial(m, n) <= h.lambda));
        }
    }
}

TEST_CASE("P' data: defining property and quotient dimension") {
    Rng g(42);
    for (unsigned n = 2; n <= 3; ++n) {
        int done = 0;
        while (done < 50) {
            Ordinal lam = oracles::random_ordinal(g, n - 1, 3) + Ordinal(oracles::uniform(g, 0, 3));
            if (lam.is_zero() || lam >= Ordinal::omega_pow(n)) continue;
            ++done;
            SubmoduleHandle h(n, lam);
            PPrimeResult r = p_prime(h);
            REQUIRE(r.thetas.size() == r.quotient_dim);
            unsigned j = n - r.quotient_dim + 1;
            REQUIRE(j == lam.structure().co_degree + 1);
            std::set<Multidegree> thetas(r.thetas.begin(), r.thetas.end());
            REQUIRE(thetas.size() == r.thetas.size());  // independent monomials
            for (const auto& th : r.thetas) {
                // every theta lies outside P and all its partials lie in P
                REQUIRE(ord_monomial(th, n) > lam);
                Polynomial pth = Polynomial::monomial(th);
                for (unsigned i = 1; i <= n; ++i)
                    REQUIRE(submodule_contains(pth.diff(i), h));
            }
            // every window monomial outside P u thetas fails the test
            unsigned deg = md_total(cnf_monomial(lam)) + 2;
            for (const auto& m : oracles::all_monomials(n, deg)) {
                if (ord_monomial(m, n) <= lam || thetas.count(m)) continue;
                bool all_in = true;
                Polynomial pm = Polynomial::monomial(m);
                for (unsigned i = 1; i <= n; ++i)
                    all_in = all_in && submodule_contains(pm.diff(i), h);
                REQUIRE_FALSE(all_in);
            }
        }
    }
}

TEST_CASE("P'' adds exactly the CNF witness monomial") {
    Rng g(43);
    for (unsigned n = 2; n <= 3; ++n)
        for (int t = 0; t < 50; ++t) {
            Ordinal lam = oracles::random_ordinal(g, n - 1, 3);
            if (lam.is_zero() || lam >= Ordinal::omega_pow(n)) continue;
            SubmoduleHandle h(n, lam);
            PDoublePrimeResult r = p_doubleprime(h);
            REQUIRE(r.result == SubmoduleHandle(n, lam + Ordinal(1)));
            REQUIRE(ord_monomial(r.witness, n) == lam + Ordinal(1));  // dim(P''/P) = 1
            // defining property: P_{i-1} * d(witness)/dx_i stays in P
            Polynomial w = Polynomial::monomial(r.witness);
            for (unsigned i = 1; i <= n; ++i) {
                Polynomial di = w.diff(i);
                for (const auto& q : oracles::all_monomials(i - 1, 3))
                    REQUIRE(submodule_contains(Polynomial::monomial(q) * di, h));
            }
        }
}

TEST_CASE("annihilator matches the brute-force window annihilator") {
    std::vector<Ordinal> lams = {Ordinal(1),
                                 Ordinal(2),
                                 Ordinal::omega(),
                                 Ordinal::omega() + Ordinal(1),
                                 Ordinal::omega_pow(1, 2),
                                 Ordinal::omega_pow(2),
                                 Ordinal::omega_pow(2) + Ordinal(1)};
    for (unsigned n = 2; n <= 3; ++n) {
        for (const auto& lam : lams) {
            if (lam > Ordinal::omega_pow(n)) continue;
            SubmoduleHandle h(n, lam);
            auto ann = annihilator_submodule(h);
            auto window = module_window(h, 4);
            for (const auto& b : oracles::all_basis_vectors(n, 3)) {
                bool kills = true;
                for (const auto& m : window)
                    if (!act(Element::term(b, 1, n), Polynomial::monomial(m)).is_zero()) {
                        kills = false;
                        break;
                    }
                bool in_ann = ann && ord_basis(b, n) <= ann->lambda;
                REQUIRE(kills == in_ann);
            }
        }
    }
}

TEST_CASE("endo_apply commutes with the u_n-action") {
    Rng g(44);
    int done = 0;
    while (done < 300) {
        unsigned n = oracles::uniform(g, 2, 3);
        std::vector<Rat> cs;
        for (unsigned k = oracles::uniform(g, 1, 5); k-- > 0;)
            cs.push_back(Rat(static_cast<int>(oracles::uniform(g, 0, 6)) - 3));
        SeriesEndo phi(cs, n);
        Polynomial p = oracles::random_polynomial(g, n, 3);
        Element u = oracles::random_element(g, n, 3);
        unsigned xdeg = 0;
        for (const auto& [a, c] : p.terms()) xdeg = std::max(xdeg, md_get(a, n - 1));
        if (phi.order < xdeg) continue;
        // act(u, p) cannot raise the x_n-degree, so both sides are exact
        REQUIRE(endo_apply(phi, act(u, p)) == act(u, endo_apply(phi, p)));
        ++done;
    }
}

TEST_CASE("endo identity, kernel index, and surjectivity") {
    SeriesEndo ident({1}, 2);
    Polynomial p = parse_polynomial("x1^2 + 3 x1");
    REQUIRE(endo_apply(ident, p) == p);
    REQUIRE(endo_kernel(ident).d == 0);

    // kernel: phi with first nonzero coefficient at d kills exactly the
    // monomials of x_n-degree < d within the window
    for (unsigned d = 1; d <= 3; ++d) {
        std::vector<Rat> cs(d + 2, 0);
        cs[d] = Rat(2);
        cs[d + 1] = Rat(1);
        SeriesEndo phi(cs, 2);
        EndoKernel k = endo_kernel(phi);
        REQUIRE(k.d == d);
        for (const auto& m : oracles::all_monomials(2, static_cast<unsigned>(d + 1))) {
            Polynomial q = Polynomial::monomial(m);
            bool killed = endo_apply(phi, q).is_zero();
            REQUIRE(killed == (md_get(m, 1) < d));
        }
    }
    REQUIRE(endo_kernel(SeriesEndo({0, 1}, 3)).description == "P2");
    REQUIRE(endo_kernel(SeriesEndo({0, 0, 1}, 3)).description == "P2 + P2*x3");

    // surjectivity when lambda_0 != 0: solve for preimages of all monomials
    // of degree <= 4 by descending x_n-degree
    SeriesEndo phi({2, 1, -1}, 2);
    for (const auto& m : oracles::all_monomials(2, 4)) {
        if (md_get(m, 1) > phi.order) continue;
        Polynomial target = Polynomial::monomial(m);
        Polynomial sol, rest = target;
        int guard = 0;
        while (!rest.is_zero() && guard++ < 50) {
            // peel the highest x_n-degree term of the residual
            auto it = rest.terms().begin();
            Multidegree lead = it->first;
            Rat c = it->second;
            for (const auto& [a, cc] : rest.terms())
                if (md_get(a, 1) > md_get(lead, 1)) {
                    lead = a;
                    c = cc;
                }
            Polynomial step = (c / phi.coeffs[0]) * Polynomial::monomial(lead);
            sol += step;
            rest -= endo_apply(phi, step);
        }
        REQUIRE(rest.is_zero());
        REQUIRE(endo_apply(phi, sol) == target);
    }
}
