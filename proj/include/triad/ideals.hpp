// The ordinal-parameterized ideal lattice of u_n: every nonzero ideal is
// I_lam = span{ X <= lam } for a unique lam in [1, stack(n)], and the lattice
// is a chain. Centralizers, derived/central series, finite-dimensional ideals.
#pragma once

#include "lie.hpp"

namespace triad {

struct IdealHandle {
    unsigned rank;   // n >= 2
    Ordinal lambda;  // 0 <= lambda <= stack(n); 0 is the zero ideal

    IdealHandle(unsigned n, Ordinal lam) : rank(n), lambda(std::move(lam)) {
        if (n < 2) throw domain_error("ideal rank must be >= 2");
        if (lambda.is_top() || lambda > Ordinal::stack(n))
            throw domain_error("lambda exceeds stack(" + std::to_string(n) + ")");
    }

    bool operator==(const IdealHandle&) const = default;
};

inline bool membership(const Element& u, const IdealHandle& h) {
    if (u.rank() != h.rank) throw domain_error("rank mismatch");
    return u.is_zero() || ord_element(u) <= h.lambda;
}

// (v_1, ..., v_k) = I_{max ord(v_i)} — each principal ideal is I_{ord(v)}.
inline IdealHandle generated_ideal(const std::vector<Element>& gens) {
    if (gens.empty()) throw domain_error("no generators");
    unsigned rank = gens[0].rank();
    Ordinal lam = 0;
    for (const Element& g : gens) {
        if (g.rank() != rank) throw domain_error("rank mismatch");
        if (!g.is_zero()) lam = std::max(lam, ord_element(g));
    }
    return IdealHandle(rank, lam);
}

struct BasisPrefix {
    std::vector<BasisVector> vectors;  // ascending basis order
    bool finite;
    Int dimension;  // meaningful when finite
};

// First min(limit, dim I_lam) basis vectors of I_lam, ascending. The k-th
// smallest basis vector is the one at (finite) position k.
inline BasisPrefix basis_prefix(const IdealHandle& h, unsigned limit) {
    BasisPrefix out;
    out.finite = h.lambda < Ordinal::omega();
    out.dimension = out.finite ? h.lambda.finite_value() : Int(-1);
    Int count = out.finite ? std::min(Int(limit), out.dimension) : Int(limit);
    for (Int k = 1; k <= count; ++k)
        out.vectors.push_back(basis_at(Ordinal(k), h.rank));
    return out;
}

// Cen(I_lam), by the four-case piecewise rule. The centralizer of a nonzero
// ideal is again an ideal of the chain.
inline IdealHandle centralizer(const IdealHandle& h) {
    unsigned n = h.rank;
    const Ordinal& lam = h.lambda;
    if (lam.is_zero()) throw domain_error("centralizer of the zero ideal");
    if (lam == Ordinal::stack(n)) return IdealHandle(n, 1);  // centre K d_n
    if (lam == Ordinal(1)) return IdealHandle(n, Ordinal::stack(n));
    // Bands (w^{n-1}+...+w^{i+1}, w^{n-1}+...+w^i], i = n-2..1 -> I_{w^i}.
    for (unsigned i = 1; i <= n - 2; ++i) {
        Ordinal hi, lo;
        for (unsigned k = n; k-- > i;) hi = hi + Ordinal::omega_pow(k);
        for (unsigned k = n; k-- > i + 1;) lo = lo + Ordinal::omega_pow(k);
        if (lam > lo && lam <= hi) return IdealHandle(n, Ordinal::omega_pow(i));
    }
    // Bands (w^{m-1}, w^m], m = 1..n-1 -> I_{w^{n-1}+...+w^m}.
    for (unsigned m = 1; m <= n - 1; ++m) {
        if (lam > Ordinal::omega_pow(m - 1) && lam <= Ordinal::omega_pow(m)) {
            Ordinal r;
            for (unsigned k = n; k-- > m;) r = r + Ordinal::omega_pow(k);
            return IdealHandle(n, r);
        }
    }
    throw domain_error("centralizer: lambda out of range");
}

// The 2n-1 distinct centralizers, ascending.
inline std::vector<IdealHandle> centralizer_set(unsigned n) {
    if (n < 2) throw domain_error("rank must be >= 2");
    std::vector<IdealHandle> out;
    out.emplace_back(n, 1);
    for (unsigned i = 1; i <= n - 2; ++i) out.emplace_back(n, Ordinal::omega_pow(i));
    for (unsigned m = n - 1; m >= 1; --m) {
        Ordinal r;
        for (unsigned k = n; k-- > m;) r = r + Ordinal::omega_pow(k);
        out.emplace_back(n, r);
    }
    out.emplace_back(n, Ordinal::stack(n));
    return out;
}

// u_{n,i} = P_{i-1} d_i + ... + P_{n-1} d_n = I_{w^{n-1}+...+w^{i-1}}.
inline Ordinal tail_ideal_lambda(unsigned n, unsigned i) {
    Ordinal r;
    for (unsigned k = n; k-- > i - 1;) r = r + Ordinal::omega_pow(k);
    return r;
}

// Derived series u_n = u_{n,1} > u_{n,2} > ... > u_{n,n} > 0 (length n+1).
inline std::vector<IdealHandle> derived_series(unsigned n) {
    std::vector<IdealHandle> out;
    for (unsigned i = 1; i <= n; ++i) out.emplace_back(n, tail_ideal_lambda(n, i));
    out.emplace_back(n, 0);
    return out;
}

// The series G^(i) = [G, G^(i-1)] is constant from the first step on.
struct LowerCentralSeries {
    IdealHandle start;       // u_n itself
    IdealHandle stabilized;  // u_{n,2}, the value of every later term
    unsigned stabilizes_at = 1;
};

inline LowerCentralSeries lower_central_series(unsigned n) {
    return {IdealHandle(n, Ordinal::stack(n)), IdealHandle(n, tail_ideal_lambda(n, 2)), 1};
}

// Z^(lam)(u_n) = I_lam for every lam in [1, stack(n)].
inline IdealHandle central_series_term(unsigned n, const Ordinal& lam) {
    if (lam.is_zero() || lam.is_top() || lam > Ordinal::stack(n))
        throw domain_error("lambda out of range");
    return IdealHandle(n, lam);
}

} // namespace triad
