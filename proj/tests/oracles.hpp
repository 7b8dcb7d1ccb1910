// Shared helpers for the test suite: seeded random generators and oracles
// implemented independently of the routines under test.
#pragma once

#include <triad/infinity.hpp>
#include <triad/io.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

namespace oracles {

using namespace triad;

// ---------------------------------------------------------------------------
// Random generators.

using Rng = std::mt19937_64;

inline unsigned uniform(Rng& g, unsigned lo, unsigned hi) {
    return std::uniform_int_distribution<unsigned>(lo, hi)(g);
}

inline Multidegree random_multidegree(Rng& g, unsigned len, unsigned total_deg) {
    Multidegree a(len, 0);
    unsigned budget = uniform(g, 0, total_deg);
    for (unsigned k = 0; k < budget && len > 0; ++k) a[uniform(g, 0, len - 1)] += 1;
    md_normalize(a);
    return a;
}

inline Rat random_coeff(Rng& g) {
    int num = static_cast<int>(uniform(g, 0, 10)) - 5;
    if (num == 0) num = 1;
    unsigned den = uniform(g, 1, 4);
    return Rat(num, den);
}

inline Element random_element(Rng& g, unsigned rank, unsigned deg, unsigned nterms = 3) {
    Element u(rank);
    unsigned k = uniform(g, 1, nterms);
    for (unsigned t = 0; t < k; ++t) {
        unsigned slot = uniform(g, 1, rank);
        u.add_term(BasisVector(random_multidegree(g, slot - 1, deg), slot), random_coeff(g));
    }
    return u;
}

inline Polynomial random_polynomial(Rng& g, unsigned nvars, unsigned deg, unsigned nterms = 3) {
    Polynomial p;
    unsigned k = uniform(g, 1, nterms);
    for (unsigned t = 0; t < k; ++t)
        p.add_term(random_multidegree(g, nvars, deg), random_coeff(g));
    return p;
}

inline WeylElement random_weyl(Rng& g, unsigned rank, unsigned deg, unsigned nterms = 3) {
    WeylElement w(rank);
    unsigned k = uniform(g, 1, nterms);
    for (unsigned t = 0; t < k; ++t)
        w.add_term(random_multidegree(g, rank, deg), random_multidegree(g, rank, deg),
                   random_coeff(g));
    return w;
}

inline Ordinal random_ordinal(Rng& g, unsigned max_exp, unsigned max_coeff) {
    Ordinal o;
    for (unsigned e = max_exp + 1; e-- > 0;) {
        unsigned c = uniform(g, 0, max_coeff);
        if (c) o = o + Ordinal::omega_pow(e, c);
    }
    return o;
}

// ---------------------------------------------------------------------------
// Structure-constant bracket oracle: bilinear extension of
//   [X_{a,i}, X_{b,j}] = b_i X_{a+b-e_i, j}   for i < j,
//   zero for i = j, antisymmetric for i > j.
// Independent of the derivation-formula implementation in the library.

inline Element bracket_oracle(const Element& u, const Element& v) {
    Element r(std::max(u.rank(), v.rank()));
    auto basis_term = [&](const BasisVector& a, const BasisVector& b, const Rat& c) {
        if (a.slot == b.slot) return;
        if (a.slot > b.slot) {
            // antisymmetry: -[X_b, X_a] with i = b.slot < a.slot, coefficient
            // is the i-th entry of a's multidegree.
            unsigned ai = md_get(a.alpha, b.slot - 1);
            if (ai == 0) return;
            Multidegree m = md_add(b.alpha, a.alpha);
            m = md_sub_e(m, b.slot);
            r.add_term(BasisVector(std::move(m), a.slot), -c * ai);
            return;
        }
        unsigned beta_i = md_get(b.alpha, a.slot - 1);
        if (beta_i == 0) return;
        Multidegree m = md_add(a.alpha, b.alpha);
        m = md_sub_e(m, a.slot);
        r.add_term(BasisVector(std::move(m), b.slot), c * beta_i);
    };
    for (const auto& [a, ca] : u.terms())
        for (const auto& [b, cb] : v.terms()) basis_term(a, b, ca * cb);
    return r;
}

// ---------------------------------------------------------------------------
// All canonical basis vectors of u_n with total degree (|alpha|) <= deg.

inline std::vector<BasisVector> all_basis_vectors(unsigned n, unsigned deg) {
    std::vector<BasisVector> out;
    for (unsigned slot = 1; slot <= n; ++slot) {
        std::vector<Multidegree> mds{Multidegree{}};
        for (unsigned var = 0; var + 1 < slot; ++var) {
            std::vector<Multidegree> next;
            for (const auto& m : mds) {
                unsigned used = md_total(m);
                for (unsigned e = 0; used + e <= deg; ++e) {
                    Multidegree x = m;
                    if (e) {
                        x.resize(var + 1, 0);
                        x[var] = e;
                    }
                    next.push_back(std::move(x));
                }
            }
            mds = std::move(next);
        }
        for (auto& m : mds) {
            md_normalize(m);
            out.emplace_back(std::move(m), slot);
        }
    }
    return out;
}

// All monomials in n variables of total degree <= deg.
inline std::vector<Multidegree> all_monomials(unsigned n, unsigned deg) {
    std::vector<Multidegree> mds{Multidegree{}};
    for (unsigned var = 0; var < n; ++var) {
        std::vector<Multidegree> next;
        for (const auto& m : mds) {
            unsigned used = md_total(m);
            for (unsigned e = 0; used + e <= deg; ++e) {
                Multidegree x = m;
                if (e) {
                    x.resize(var + 1, 0);
                    x[var] = e;
                }
                next.push_back(std::move(x));
            }
        }
        mds = std::move(next);
    }
    for (auto& m : mds) md_normalize(m);
    return mds;
}

// ---------------------------------------------------------------------------
// Direct clause check of the factor isomorphism criterion: for equal ranks the
// three cases (a)-(c), for distinct ranks the three displayed clauses of the
// cross-rank corollary. Shares only the Ordinal type with the implementation
// under test.

namespace detail {

// lam = q * w^k + r with r < w^k and q finite? Returns {finite_q_ok, q, r}.
struct SplitFinite {
    bool finite_q;
    unsigned q;
    Ordinal r;
};

inline SplitFinite split_finite(const Ordinal& lam, unsigned k) {
    auto [q, r] = lam.divmod_omega_pow(k);
    if (!q.is_finite()) return {false, 0, r};
    return {true, static_cast<unsigned>(q.finite_value().convert_to<unsigned long>()), r};
}

inline Ordinal prefix_sum(unsigned hi, unsigned lo) {  // w^hi + w^{hi-1} + ... + w^lo
    Ordinal r;
    for (unsigned k = hi + 1; k-- > lo;) r = r + Ordinal::omega_pow(k);
    return r;
}

// Does lam have the exact prefix w^{n-1}+...+w^s with remainder < w^{s-1}?
inline std::optional<Ordinal> strip_prefix(const Ordinal& lam, unsigned n, unsigned s) {
    Ordinal cur = lam;
    for (unsigned k = n; k-- > s;) {
        if (cur < Ordinal::omega_pow(k)) return std::nullopt;
        cur = cur.sub_left(Ordinal::omega_pow(k));
    }
    if (s >= 1 && !(cur < Ordinal::omega_pow(s - 1))) return std::nullopt;
    return cur;
}

} // namespace detail

inline bool iso_direct(unsigned n, Ordinal lam, unsigned m, Ordinal mu) {
    if (n > m) {
        std::swap(n, m);
        std::swap(lam, mu);
    }
    if (n == m) {
        // (a) lam = i w^{n-2} + nu, mu = j w^{n-2} + nu, i,j in N, nu < w^{n-2}
        {
            auto a = detail::split_finite(lam, n - 2);
            auto b = detail::split_finite(mu, n - 2);
            if (a.finite_q && b.finite_q && a.r == b.r) return true;
        }
        // (b) shared exact prefix w^{n-1}+...+w^s, then i w^{s-2} + nu
        for (unsigned s = 2; s + 1 <= n; ++s) {
            auto lp = detail::strip_prefix(lam, n, s);
            auto mp = detail::strip_prefix(mu, n, s);
            if (!lp || !mp) continue;
            auto a = detail::split_finite(*lp, s - 2);
            auto b = detail::split_finite(*mp, s - 2);
            if (a.finite_q && b.finite_q && a.r == b.r) return true;
        }
        // (c) lam = mu = w^{n-1}+...+w+eps
        for (unsigned eps = 0; eps <= 1; ++eps) {
            Ordinal full = detail::prefix_sum(n - 1, 1) + Ordinal(eps);
            if (lam == full && mu == full) return true;
        }
        return false;
    }
    // n < m: clause 1
    {
        auto a = detail::split_finite(lam, n - 2);
        if (a.finite_q && lam < Ordinal::omega_pow(n - 1)) {
            auto mp = detail::strip_prefix(mu, m, n);
            if (mp) {
                auto b = detail::split_finite(*mp, n - 2);
                if (b.finite_q && a.r == b.r) return true;
            }
        }
    }
    // clause 2: s = 2..n-1 with both prefixes down to w^s
    for (unsigned s = 2; s + 1 <= n; ++s) {
        auto lp = detail::strip_prefix(lam, n, s);
        auto mp = detail::strip_prefix(mu, m, s);
        if (!lp || !mp) continue;
        auto a = detail::split_finite(*lp, s - 2);
        auto b = detail::split_finite(*mp, s - 2);
        if (a.finite_q && b.finite_q && a.r == b.r) return true;
    }
    // clause 3: full stacks with matching eps
    for (unsigned eps = 0; eps <= 1; ++eps) {
        if (lam == detail::prefix_sum(n - 1, 1) + Ordinal(eps) &&
            mu == detail::prefix_sum(m - 1, 1) + Ordinal(eps))
            return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Generic exact row reduction over sparse Rat-rows keyed by an ordered key.
// Used by tests that need linear spans outside the Element domain.

template <typename Key, typename Cmp = std::less<Key>>
struct SparseSpan {
    using Row = std::map<Key, Rat, Cmp>;
    std::map<Key, Row, Cmp> rows;  // pivot -> reduced row

    Row reduce(Row v) const {
        while (!v.empty()) {
            auto lead = v.rbegin()->first;
            auto it = rows.find(lead);
            if (it == rows.end()) break;
            Rat c = v.rbegin()->second / it->second.rbegin()->second;
            for (const auto& [k, x] : it->second) {
                auto& slot = v[k];
                slot -= c * x;
                if (slot == 0) v.erase(k);
            }
        }
        return v;
    }

    bool insert(Row v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        rows[v.rbegin()->first] = std::move(v);
        return true;
    }

    bool contains(Row v) const { return reduce(std::move(v)).empty(); }
    size_t dimension() const { return rows.size(); }
};

inline std::map<std::pair<Multidegree, Multidegree>, Rat> weyl_row(const WeylElement& w) {
    std::map<std::pair<Multidegree, Multidegree>, Rat> r;
    for (const auto& [k, c] : w.terms()) r[k] = c;
    return r;
}

} // namespace oracles
