// Normal-ordered Weyl-algebra arithmetic: products via the expansion
//   d^beta x^gamma = sum_k C(beta,k) C(gamma,k) k! x^{gamma-k} d^{beta-k},
// the homomorphism chi (X_{alpha,i} -> x^alpha d_i), the basis predicate for
// its image U'_n (alpha < beta in the max-index order), kernel generators,
// and exact coordinates in the alternative basis W'_n.
//
// All exponent vectors live in N^n with the slot convention of the canonical
// basis; chi's codomain A_{n-1} (x) K[d_n] needs no special casing since a
// vector supported only at index n is just a multidegree of length n.
#pragma once

#include "lie.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace triad {

// Element of the Weyl algebra A_n in normal order: sum of c * x^alpha d^beta.
class WeylElement {
public:
    using Key = std::pair<Multidegree, Multidegree>;  // (alpha, beta)
    using Terms = std::map<Key, Rat>;

    explicit WeylElement(unsigned rank = 1) : rank_(rank) {
        if (rank < 1) throw domain_error("weyl rank must be >= 1");
    }

    static WeylElement term(Multidegree alpha, Multidegree beta, const Rat& c, unsigned rank) {
        WeylElement w(rank);
        w.add_term(std::move(alpha), std::move(beta), c);
        return w;
    }

    void add_term(Multidegree alpha, Multidegree beta, const Rat& c) {
        if (c == 0) return;
        md_normalize(alpha);
        md_normalize(beta);
        if (md_max_index(alpha) > rank_ || md_max_index(beta) > rank_)
            throw domain_error("variable index exceeds weyl rank");
        auto [it, fresh] = terms_.try_emplace({std::move(alpha), std::move(beta)}, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    unsigned rank() const { return rank_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, md_total(k.first) + md_total(k.second));
        return d;
    }

    WeylElement& operator+=(const WeylElement& o) {
        require_same_rank(o);
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
        return *this;
    }
    WeylElement& operator-=(const WeylElement& o) {
        require_same_rank(o);
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
        return *this;
    }
    friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
    friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
    friend WeylElement operator*(const Rat& c, const WeylElement& w) {
        WeylElement r(w.rank_);
        for (const auto& [k, d] : w.terms_) r.add_term(k.first, k.second, c * d);
        return r;
    }
    bool operator==(const WeylElement& o) const { return terms_ == o.terms_; }

    void require_same_rank(const WeylElement& o) const {
        if (rank_ != o.rank_) throw domain_error("weyl rank mismatch");
    }

private:
    unsigned rank_;
    Terms terms_;
};

// Normal-ordered product. Per monomial pair, commute d^beta past x^gamma with
// the standard expansion, then concatenate the outer x^alpha and d^delta.
inline WeylElement weyl_mul(const WeylElement& a, const WeylElement& b) {
    a.require_same_rank(b);
    unsigned n = a.rank();
    WeylElement out(n);
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            const Multidegree &alpha = ka.first, &beta = ka.second;
            const Multidegree &gamma = kb.first, &delta = kb.second;
            // Enumerate k <= min(beta, gamma) coordinatewise.
            size_t dim = std::max(beta.size(), gamma.size());
            Multidegree kvec(dim, 0), kmax(dim, 0);
            for (size_t i = 0; i < dim; ++i) kmax[i] = std::min(md_get(beta, i), md_get(gamma, i));
            bool done = false;
            while (!done) {
                Rat coef = ca * cb;
                Multidegree xpart(dim, 0), dpart(dim, 0);
                for (size_t i = 0; i < dim; ++i) {
                    unsigned k = kvec[i];
                    coef *= binomial(md_get(beta, i), k) * binomial(md_get(gamma, i), k) * factorial(k);
                    xpart[i] = md_get(gamma, i) - k;
                    dpart[i] = md_get(beta, i) - k;
                }
                Multidegree x = md_add(alpha, xpart);
                Multidegree d = md_add(dpart, delta);
                out.add_term(std::move(x), std::move(d), coef);
                // increment kvec odometer
                size_t i = 0;
                for (; i < dim; ++i) {
                    if (kvec[i] < kmax[i]) { ++kvec[i]; break; }
                    kvec[i] = 0;
                }
                done = dim == 0 || i == dim;
            }
        }
    return out;
}

// chi: u_n -> A_n, X_{alpha,i} -> x^alpha d_i (a Lie algebra homomorphism
// into the commutator algebra).
inline WeylElement chi(const Element& u) {
    WeylElement w(u.rank());
    for (const auto& [b, c] : u.terms()) {
        Multidegree d(b.slot, 0);
        d[b.slot - 1] = 1;
        w.add_term(b.alpha, std::move(d), c);
    }
    return w;
}

// alpha < beta in the "max nonzero index" preorder: 0 < anything (including
// 0 < 0), otherwise strictly smaller top index.
inline bool prec(const Multidegree& alpha, const Multidegree& beta) {
    if (md_max_index(alpha) == 0) return true;
    if (md_max_index(beta) == 0) return false;
    return md_max_index(alpha) < md_max_index(beta);
}

// Membership in U'_n = chi(U_n): every normal-ordered term x^alpha d^beta
// must satisfy alpha < beta.
inline bool in_Wn_span(const WeylElement& a) {
    for (const auto& [k, c] : a.terms())
        if (!prec(k.first, k.second)) return false;
    return true;
}

// The kernel of the multiplication U_n -> U'_n is generated by
// X_{alpha,i} X_{beta,j} - X_{0,i} X_{alpha+beta,j}, i <= j: check one.
inline bool kernel_generator_check(const Multidegree& alpha, unsigned i,
                                   const Multidegree& beta, unsigned j, unsigned rank) {
    if (i > j) throw domain_error("kernel generator requires i <= j");
    if (alpha.size() + 1 > i || beta.size() + 1 > j)
        throw domain_error("multidegree too long for slot");
    Multidegree di(i, 0), dj(j, 0);
    di[i - 1] = 1;
    dj[j - 1] = 1;
    WeylElement lhs = weyl_mul(WeylElement::term(alpha, di, 1, rank),
                               WeylElement::term(beta, dj, 1, rank));
    WeylElement rhs = weyl_mul(WeylElement::term({}, di, 1, rank),
                               WeylElement::term(md_add(alpha, beta), dj, 1, rank));
    return lhs == rhs;
}

// A W'_n basis element: either d^alpha, or d^beta x^nu d_t^i with i >= 1,
// beta, nu in N^{t-1}, nu != 0.
struct WPrimeVector {
    Multidegree beta;   // d-prefix (empty for the pure d^alpha family's... see alpha)
    Multidegree nu;     // x-part; empty <=> pure family
    unsigned t = 0;     // 0 for pure d^alpha family
    unsigned i = 0;     // power of d_t
    Multidegree alpha;  // pure family exponent

    bool pure() const { return t == 0; }

    unsigned total_degree() const {
        return pure() ? md_total(alpha) : md_total(beta) + md_total(nu) + i;
    }

    WeylElement normal_form(unsigned rank) const {
        if (pure()) return WeylElement::term({}, alpha, 1, rank);
        WeylElement left = WeylElement::term({}, beta, 1, rank);
        Multidegree dt(t, 0);
        dt[t - 1] = i;
        WeylElement right = WeylElement::term(nu, dt, 1, rank);
        return weyl_mul(left, right);
    }

    auto operator<=>(const WPrimeVector&) const = default;
};

// All W'_n vectors of total degree <= bound (rank n).
inline std::vector<WPrimeVector> wprime_enumerate(unsigned n, unsigned bound) {
    std::vector<WPrimeVector> out;
    // multidegrees in N^len of total degree <= d
    std::function<void(unsigned, unsigned, Multidegree&, const std::function<void(const Multidegree&)>&)>
        rec = [&](unsigned len, unsigned budget, Multidegree& cur,
                  const std::function<void(const Multidegree&)>& emit) {
            if (cur.size() == len) { emit(cur); return; }
            for (unsigned e = 0; e <= budget; ++e) {
                cur.push_back(e);
                rec(len, budget - e, cur, emit);
                cur.pop_back();
            }
        };
    Multidegree scratch;
    rec(n, bound, scratch, [&](const Multidegree& a) {
        WPrimeVector v;
        v.alpha = a;
        md_normalize(v.alpha);
        out.push_back(std::move(v));
    });
    for (unsigned t = 2; t <= n; ++t)
        for (unsigned i = 1; i <= bound; ++i) {
            Multidegree b1;
            rec(t - 1, bound - i, b1, [&](const Multidegree& beta) {
                unsigned used = i + md_total(beta);
                Multidegree b2;
                rec(t - 1, bound - used, b2, [&](const Multidegree& nu) {
                    if (md_total(nu) == 0) return;  // nu != 0
                    WPrimeVector v;
                    v.beta = beta;
                    v.nu = nu;
                    v.t = t;
                    v.i = i;
                    md_normalize(v.beta);
                    md_normalize(v.nu);
                    out.push_back(std::move(v));
                });
            });
        }
    // Deduplicate (normalization may collapse padded copies).
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Exact coordinates of `a` in the W'_n basis, solved by linear algebra over
// the normal-ordered monomials of total degree <= degree_bound. Returns
// nothing when inconsistent within the window (element outside U'_n).
inline std::optional<std::vector<std::pair<WPrimeVector, Rat>>>
express_in_Wprime(const WeylElement& a, unsigned degree_bound = 8) {
    if (a.total_degree() > degree_bound)
        throw domain_error("degree bound smaller than element degree");
    unsigned n = a.rank();
    std::vector<WPrimeVector> basis = wprime_enumerate(n, degree_bound);

    // Columns: W' vectors; rows: normal-ordered monomials. Gaussian
    // elimination on the augmented sparse system.
    std::map<WeylElement::Key, std::map<size_t, Rat>> rows;
    for (size_t j = 0; j < basis.size(); ++j) {
        WeylElement nf = basis[j].normal_form(n);
        for (const auto& [k, c] : nf.terms()) rows[k][j] = c;
    }
    std::map<WeylElement::Key, Rat> rhs;
    for (const auto& [k, c] : a.terms()) rhs[k] = c;

    // Dense-ish elimination over the occurring monomials.
    std::vector<WeylElement::Key> keys;
    for (const auto& [k, r] : rows) keys.push_back(k);
    for (const auto& [k, c] : rhs)
        if (!rows.count(k)) return std::nullopt;  // monomial no W' vector reaches

    size_t m = keys.size(), cols = basis.size();
    std::vector<std::vector<Rat>> M(m, std::vector<Rat>(cols + 1, 0));
    for (size_t r = 0; r < m; ++r) {
        for (const auto& [j, c] : rows[keys[r]]) M[r][j] = c;
        auto it = rhs.find(keys[r]);
        if (it != rhs.end()) M[r][cols] = it->second;
    }
    std::vector<size_t> pivot_col;
    size_t rr = 0;
    for (size_t c = 0; c < cols && rr < m; ++c) {
        size_t p = rr;
        while (p < m && M[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(M[p], M[rr]);
        Rat inv = Rat(1) / M[rr][c];
        for (size_t j = c; j <= cols; ++j) M[rr][j] *= inv;
        for (size_t r2 = 0; r2 < m; ++r2) {
            if (r2 == rr || M[r2][c] == 0) continue;
            Rat f = M[r2][c];
            for (size_t j = c; j <= cols; ++j) M[r2][j] -= f * M[rr][j];
        }
        pivot_col.push_back(c);
        ++rr;
    }
    for (size_t r2 = rr; r2 < m; ++r2)
        if (M[r2][cols] != 0) return std::nullopt;  // inconsistent

    std::vector<std::pair<WPrimeVector, Rat>> out;
    for (size_t r2 = 0; r2 < rr; ++r2)
        if (M[r2][cols] != 0) out.emplace_back(basis[pivot_col[r2]], M[r2][cols]);
    return out;
}

// Action of a normal-ordered Weyl element on a polynomial.
inline Polynomial weyl_act(const WeylElement& w, const Polynomial& p) {
    Polynomial out;
    for (const auto& [k, c] : w.terms()) {
        const Multidegree &alpha = k.first, &beta = k.second;
        for (const auto& [g, d] : p.terms()) {
            // d^beta applied to x^g
            Rat coef = c * d;
            Multidegree res = g;
            bool dead = false;
            for (size_t i = 0; i < beta.size() && !dead; ++i) {
                for (unsigned s = 0; s < beta[i]; ++s) {
                    unsigned e = md_get(res, i);
                    if (e == 0) { dead = true; break; }
                    coef *= e;
                    res = md_sub_e(res, static_cast<unsigned>(i) + 1);
                }
            }
            if (dead) continue;
            out.add_term(md_add(alpha, res), coef);
        }
    }
    return out;
}

} // namespace triad
