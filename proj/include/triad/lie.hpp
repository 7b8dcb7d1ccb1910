// Elements of the Lie algebras u_n of triangular polynomial derivations:
// the canonical basis X_{alpha,i} = x^alpha d_i, the bracket, the Artinian
// well-order and ordinal degree, the action on polynomials, exponentials of
// inner derivations, distinguished embeddings, and finite bracket closure.
#pragma once

#include "ordinal.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace triad {

// Exponent vector with trailing zeros normalized away; the empty vector is
// the zero multidegree. Normalization makes the inclusions u_n <= u_{n+1}
// identity-on-representation.
using Multidegree = std::vector<unsigned>;

inline void md_normalize(Multidegree& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Multidegree md_make(std::initializer_list<unsigned> xs) {
    Multidegree a(xs);
    md_normalize(a);
    return a;
}

inline unsigned md_get(const Multidegree& a, size_t i) {  // 0-based
    return i < a.size() ? a[i] : 0;
}

inline unsigned md_total(const Multidegree& a) {
    unsigned s = 0;
    for (unsigned x : a) s += x;
    return s;
}

// Largest index (1-based) with nonzero exponent; 0 for the zero multidegree.
inline unsigned md_max_index(const Multidegree& a) {
    return static_cast<unsigned>(a.size());
}

inline Multidegree md_add(const Multidegree& a, const Multidegree& b) {
    Multidegree r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = md_get(a, i) + md_get(b, i);
    md_normalize(r);
    return r;
}

// a - e_i (1-based i); requires a_i >= 1.
inline Multidegree md_sub_e(const Multidegree& a, unsigned i) {
    if (md_get(a, i - 1) == 0) throw domain_error("md_sub_e: zero exponent");
    Multidegree r = a;
    r[i - 1] -= 1;
    md_normalize(r);
    return r;
}

// The canonical basis vector X_{alpha,i} = x^alpha d_i. Canonical vectors of
// u_n have alpha in N^{i-1}; alpha of length exactly `slot` is tolerated so
// that the diagonal images x_i d_i of UT_n are representable.
struct BasisVector {
    Multidegree alpha;
    unsigned slot = 1;

    BasisVector() = default;
    BasisVector(Multidegree a, unsigned i) : alpha(std::move(a)), slot(i) {
        md_normalize(alpha);
        if (slot < 1 || alpha.size() > slot)
            throw domain_error("basis vector: alpha has a factor beyond slot " + std::to_string(slot));
    }

    // alpha in N^{slot-1}, i.e. a genuine member of the basis B_n.
    bool canonical() const { return alpha.size() + 1 <= slot; }

    unsigned degree() const { return md_total(alpha); }
    bool operator==(const BasisVector&) const = default;
};

// The Artinian well-order on B_n: X_{alpha,i} > X_{beta,j} iff i < j, or
// i = j and the highest-index differing coordinate is larger in alpha
// (reverse-lexicographic). Rank-independent thanks to normalization.
inline std::strong_ordering basis_compare(const BasisVector& a, const BasisVector& b) {
    if (a.slot != b.slot) return b.slot <=> a.slot;  // smaller slot is greater
    size_t m = std::max(a.alpha.size(), b.alpha.size());
    for (size_t k = m; k-- > 0;) {
        unsigned x = md_get(a.alpha, k), y = md_get(b.alpha, k);
        if (x != y) return x <=> y;
    }
    return std::strong_ordering::equal;
}

struct BasisLess {
    bool operator()(const BasisVector& a, const BasisVector& b) const {
        return basis_compare(a, b) < 0;
    }
};

// Monomial order on multidegrees: reverse-lexicographic (highest variable
// index decides), matching the well-order used for P_n.
struct MonomialLess {
    bool operator()(const Multidegree& a, const Multidegree& b) const {
        size_t m = std::max(a.size(), b.size());
        for (size_t k = m; k-- > 0;) {
            unsigned x = md_get(a, k), y = md_get(b, k);
            if (x != y) return x < y;
        }
        return false;
    }
};

// Sparse polynomial in x_1, x_2, ... over exact rationals.
class Polynomial {
public:
    using Terms = std::map<Multidegree, Rat, MonomialLess>;

    Polynomial() = default;
    explicit Polynomial(const Rat& c) { add_term({}, c); }
    static Polynomial monomial(Multidegree a, const Rat& c = 1) {
        Polynomial p;
        p.add_term(std::move(a), c);
        return p;
    }
    static Polynomial variable(unsigned i) {  // x_i, 1-based
        Multidegree a(i, 0);
        a[i - 1] = 1;
        return monomial(std::move(a));
    }

    void add_term(Multidegree a, const Rat& c) {
        if (c == 0) return;
        md_normalize(a);
        auto [it, fresh] = terms_.try_emplace(std::move(a), c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    unsigned max_variable() const {
        unsigned m = 0;
        for (const auto& [a, c] : terms_) m = std::max(m, md_max_index(a));
        return m;
    }
    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [a, c] : terms_) d = std::max(d, md_total(a));
        return d;
    }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [a, c] : o.terms_) add_term(a, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (const auto& [a, c] : o.terms_) add_term(a, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        for (const auto& [x, c] : a.terms_)
            for (const auto& [y, d] : b.terms_) r.add_term(md_add(x, y), c * d);
        return r;
    }
    friend Polynomial operator*(const Rat& c, const Polynomial& p) {
        Polynomial r;
        for (const auto& [a, d] : p.terms_) r.add_term(a, c * d);
        return r;
    }
    bool operator==(const Polynomial&) const = default;

    // Partial derivative with respect to x_i (1-based).
    Polynomial diff(unsigned i) const {
        Polynomial r;
        for (const auto& [a, c] : terms_) {
            unsigned e = md_get(a, i - 1);
            if (e == 0) continue;
            r.add_term(md_sub_e(a, i), c * e);
        }
        return r;
    }

private:
    Terms terms_;
};

// Element of u_n: finite rational linear combination of basis vectors,
// tagged with the ambient rank n >= 2.
class Element {
public:
    using Terms = std::map<BasisVector, Rat, BasisLess>;

    explicit Element(unsigned rank = 2) : rank_(rank) {
        if (rank < 2) throw domain_error("rank must be >= 2");
    }

    static Element term(BasisVector b, const Rat& c, unsigned rank) {
        Element u(rank);
        u.add_term(std::move(b), c);
        return u;
    }

    void add_term(BasisVector b, const Rat& c) {
        if (b.slot > rank_)
            throw domain_error("slot " + std::to_string(b.slot) + " exceeds rank " + std::to_string(rank_));
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(std::move(b), c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    unsigned rank() const { return rank_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Same element viewed inside u_m, m >= current rank (u_n <= u_m).
    Element with_rank(unsigned m) const {
        if (m < rank_) {
            for (const auto& [b, c] : terms_)
                if (b.slot > m) throw domain_error("cannot lower rank below occupied slot");
        }
        Element u(m);
        u.terms_ = terms_;
        return u;
    }

    // Smallest rank whose u_n contains this element.
    unsigned min_rank() const {
        unsigned m = 2;
        for (const auto& [b, c] : terms_)
            m = std::max(m, std::max(b.slot, static_cast<unsigned>(b.alpha.size()) + 1));
        return m;
    }

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [b, c] : terms_) d = std::max(d, b.degree());
        return d;
    }

    Element& operator+=(const Element& o) {
        require_same_rank(o);
        for (const auto& [b, c] : o.terms_) add_term(b, c);
        return *this;
    }
    Element& operator-=(const Element& o) {
        require_same_rank(o);
        for (const auto& [b, c] : o.terms_) add_term(b, -c);
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Rat& c, const Element& u) {
        Element r(u.rank_);
        for (const auto& [b, d] : u.terms_) r.add_term(b, c * d);
        return r;
    }
    friend Element operator-(const Element& u) { return Rat(-1) * u; }
    bool operator==(const Element& o) const { return terms_ == o.terms_; }

    void require_same_rank(const Element& o) const {
        if (rank_ != o.rank_) throw domain_error("rank mismatch");
    }

private:
    unsigned rank_;
    Terms terms_;
};

// ---------------------------------------------------------------------------
// Bracket. On canonical basis vectors this is the triangular rule
//   [X_{alpha,i}, X_{beta,j}] = beta_i X_{alpha+beta-e_i, j}   (i < j),
//   0 (i = j), antisymmetry (i > j);
// the general two-term derivation formula
//   [p d_i, q d_j] = p (dq/dx_i) d_j - q (dp/dx_j) d_i
// reduces to it and additionally covers the diagonal UT_n images.

inline Element bracket(const Element& u, const Element& v) {
    u.require_same_rank(v);
    Element r(u.rank());
    for (const auto& [a, c] : u.terms())
        for (const auto& [b, d] : v.terms()) {
            Rat cd = c * d;
            unsigned ai = md_get(b.alpha, a.slot - 1);  // exponent of x_i in x^beta
            if (ai > 0)
                r.add_term(BasisVector(md_add(a.alpha, md_sub_e(b.alpha, a.slot)), b.slot), cd * ai);
            unsigned bj = md_get(a.alpha, b.slot - 1);  // exponent of x_j in x^alpha
            if (bj > 0)
                r.add_term(BasisVector(md_add(b.alpha, md_sub_e(a.alpha, b.slot)), a.slot), -cd * bj);
        }
    return r;
}

// ---------------------------------------------------------------------------
// Ordinal degree.

// Position of X_{alpha,i} in the well-ordered basis of u_n:
//   slot n:      alpha_{n-1} w^{n-2} + ... + alpha_2 w + alpha_1 + 1
//   slot i < n:  w^{n-1} + ... + w^i + (alpha_{i-1} w^{i-2} + ... + alpha_1) + 1
inline Ordinal ord_basis(const BasisVector& a, unsigned n) {
    if (a.slot > n) throw domain_error("slot exceeds rank");
    if (a.alpha.size() + 1 > a.slot) throw domain_error("not a canonical basis vector");
    Ordinal r;
    for (unsigned k = n; k-- > a.slot;) r = r + Ordinal::omega_pow(k);
    for (size_t j = a.alpha.size(); j-- > 0;)
        if (a.alpha[j] > 0) r = r + Ordinal::omega_pow(static_cast<unsigned>(j), a.alpha[j]);
    return r + Ordinal(1);
}

// Inverse of ord_basis: the basis vector of u_n at position lam (a successor
// ordinal in [1, stack(n)]).
inline BasisVector basis_at(const Ordinal& lam, unsigned n) {
    if (lam.is_zero() || lam > Ordinal::stack(n))
        throw domain_error("position out of range for rank " + std::to_string(n));
    if (!lam.is_successor()) throw domain_error("no basis vector at a limit position");
    Ordinal r = lam.pred();
    unsigned i = n;
    while (i >= 2 && r >= Ordinal::omega_pow(i - 1)) {
        r = r.sub_left(Ordinal::omega_pow(i - 1));
        i -= 1;
    }
    Multidegree alpha(i >= 1 ? i - 1 : 0, 0);
    for (const auto& t : r.cnf()) {
        if (t.exp + 1 >= i) throw domain_error("position is not a basis position");
        alpha[t.exp] = t.coeff.convert_to<unsigned>();
    }
    return BasisVector(std::move(alpha), i);
}

inline std::pair<BasisVector, Rat> leading_term(const Element& u) {
    if (u.is_zero()) throw domain_error("leading term of zero");
    auto it = u.terms().rbegin();
    return {it->first, it->second};
}

inline Ordinal ord_element(const Element& u) {
    if (u.is_zero()) throw domain_error("ordinal degree of zero");
    return ord_basis(leading_term(u).first, u.rank());
}

// ---------------------------------------------------------------------------
// Action on P_n and inner derivations.

inline Polynomial act(const Element& u, const Polynomial& p) {
    Polynomial r;
    for (const auto& [b, c] : u.terms())
        r += c * (Polynomial::monomial(b.alpha) * p.diff(b.slot));
    return r;
}

// ad(a)^2 = 0 exactly when every term sits in the top band P_{n-1} d_n.
inline bool ad_nilpotency_test(const Element& a) {
    for (const auto& [b, c] : a.terms())
        if (b.slot != a.rank()) return false;
    return true;
}

struct AdPowerResult {
    unsigned degree;                 // smallest s with ad(a)^s(v) = 0
    std::vector<Element> trace;      // ad(a)^i(v) for i = 1..s (last is 0)
};

inline AdPowerResult ad_power_until_zero(const Element& a, const Element& v,
                                         unsigned cap = default_cap) {
    AdPowerResult res{0, {}};
    Element w = v;
    while (!w.is_zero()) {
        if (res.degree >= cap)
            throw theory_violation("ad_power_until_zero exceeded cap " + std::to_string(cap));
        w = bracket(a, w);
        res.trace.push_back(w);
        res.degree += 1;
    }
    if (res.degree == 0) {  // v was already 0
        res.trace.push_back(v);
        res.degree = 1;
    }
    return res;
}

// e^{ad(a)}(v) = sum ad(a)^i(v) / i! — finite by local nilpotence.
inline Element exp_ad(const Element& a, const Element& v, unsigned cap = default_cap) {
    Element sum = v, w = v;
    Int fact = 1;
    for (unsigned i = 1; !w.is_zero(); ++i) {
        if (i > cap) throw theory_violation("exp_ad exceeded cap " + std::to_string(cap));
        w = bracket(a, w);
        fact *= i;
        sum += Rat(1, fact) * w;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Distinguished embeddings.

// UT_n(K) -> u_n, E_{ij} -> x_i d_j (1 <= i <= j <= n).
inline Element embed_ut(unsigned n, unsigned i, unsigned j) {
    if (!(1 <= i && i <= j && j <= n)) throw domain_error("embed_ut requires 1 <= i <= j <= n");
    Multidegree a(i, 0);
    a[i - 1] = 1;
    return Element::term(BasisVector(std::move(a), j), 1, n);
}

// Heisenberg H_{n-1} -> u_n: X_i -> x_i d_n, Y_i -> d_i, Z -> d_n.
enum class Heisenberg { X, Y, Z };

inline Element embed_heisenberg(unsigned n, Heisenberg g, unsigned i = 0) {
    if (g != Heisenberg::Z && !(1 <= i && i <= n - 1))
        throw domain_error("heisenberg index out of range");
    switch (g) {
        case Heisenberg::X: {
            Multidegree a(i, 0);
            a[i - 1] = 1;
            return Element::term(BasisVector(std::move(a), n), 1, n);
        }
        case Heisenberg::Y: return Element::term(BasisVector({}, i), 1, n);
        default: return Element::term(BasisVector({}, n), 1, n);
    }
}

// ---------------------------------------------------------------------------
// Finite bracket closure (Lie subalgebra generated by finitely many elements).

struct FiniteSubalgebra {
    std::vector<Element> basis;      // reduced echelon rows, ascending pivots
    unsigned dimension = 0;
    unsigned nilpotency_class = 0;
    // (i,j) -> coordinates of [basis[i], basis[j]] in the basis.
    std::map<std::pair<unsigned, unsigned>, std::vector<Rat>> structure_constants;
};

namespace detail {

// Reduced row echelon span of Elements, pivoting on the leading (maximal)
// basis vector. Exact over the rationals.
class ElementSpan {
public:
    // Reduce u against the rows; returns the remainder.
    Element reduce(Element u) const {
        while (!u.is_zero()) {
            auto [lead, c] = leading_term(u);
            auto it = rows_.find(lead);
            if (it == rows_.end()) break;
            u -= (c / leading_term(it->second).second) * it->second;
        }
        return u;
    }

    // Insert u if independent; returns true if the span grew.
    bool insert(const Element& u) {
        Element r = reduce(u);
        if (r.is_zero()) return false;
        auto [lead, c] = leading_term(r);
        r = (Rat(1) / c) * r;
        // Back-substitute into existing rows to keep the echelon reduced.
        for (auto& [p, row] : rows_) {
            Rat coef = 0;
            for (const auto& [b, d] : row.terms())
                if (b == lead) { coef = d; break; }
            if (coef != 0) row -= coef * r;
        }
        rows_.emplace(lead, std::move(r));
        return true;
    }

    bool contains(const Element& u) const { return reduce(u).is_zero(); }
    size_t dimension() const { return rows_.size(); }

    std::vector<Element> rows() const {
        std::vector<Element> out;
        for (const auto& [p, row] : rows_) out.push_back(row);
        return out;
    }

    // Coordinates of u in the row basis (requires u in the span).
    std::vector<Rat> coordinates(Element u) const {
        std::vector<Rat> coords(rows_.size(), 0);
        while (!u.is_zero()) {
            auto [lead, c] = leading_term(u);
            auto it = rows_.find(lead);
            if (it == rows_.end()) throw domain_error("element not in span");
            size_t idx = std::distance(rows_.begin(), it);
            coords[idx] = c / leading_term(it->second).second;
            u -= coords[idx] * it->second;
        }
        return coords;
    }

private:
    std::map<BasisVector, Element, BasisLess> rows_;  // pivot -> row
};

} // namespace detail

inline FiniteSubalgebra subalgebra_closure(const std::vector<Element>& generators,
                                           unsigned cap = default_cap) {
    if (generators.empty()) throw domain_error("subalgebra_closure: no generators");
    unsigned rank = generators[0].rank();
    detail::ElementSpan span;
    for (const Element& g : generators) {
        if (g.rank() != rank) throw domain_error("rank mismatch");
        span.insert(g);
    }
    unsigned iterations = 0;
    // rows() is sorted by pivot, so candidates are processed in basis order.
    std::vector<Element> frontier = span.rows();
    while (!frontier.empty()) {
        if (++iterations > cap)
            throw theory_violation("subalgebra_closure exceeded cap " + std::to_string(cap));
        std::vector<Element> fresh;
        std::vector<Element> all = span.rows();
        for (const Element& f : frontier)
            for (const Element& b : all) {
                Element w = bracket(b, f);
                if (span.insert(w)) fresh.push_back(w);
            }
        frontier = std::move(fresh);
    }

    FiniteSubalgebra out;
    out.basis = span.rows();
    out.dimension = static_cast<unsigned>(out.basis.size());

    for (unsigned i = 0; i < out.dimension; ++i)
        for (unsigned j = 0; j < out.dimension; ++j)
            out.structure_constants[{i, j}] = span.coordinates(bracket(out.basis[i], out.basis[j]));

    // Nilpotency class via the lower central series of the finite algebra:
    // L_1 = span; L_{k+1} = [span, L_k]; class = last k with L_k != 0.
    std::vector<Element> layer = out.basis;
    unsigned cls = 0;
    while (!layer.empty()) {
        cls += 1;
        if (cls > cap) throw theory_violation("nilpotency class exceeded cap");
        detail::ElementSpan next;
        std::vector<Element> next_rows;
        for (const Element& b : out.basis)
            for (const Element& l : layer) {
                Element w = bracket(b, l);
                if (next.insert(w)) next_rows.push_back(w);
            }
        layer = next.rows();
    }
    out.nilpotency_class = cls;
    return out;
}

} // namespace triad
