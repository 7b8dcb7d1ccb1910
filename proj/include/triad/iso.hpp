// Isomorphism decision for factor algebras u_n/I_lam: a normal form
// (FactorSignature) that two factors share exactly when they are isomorphic,
// factor uniserial dimensions, and the epimorphisms f_n with their kernels.
#pragma once

#include "ideals.hpp"

namespace triad {

// Normal form of a factor u_n/I_lam:
//  - FiniteDim(d): the factor is d-dimensional, d in {0, 1} (lam at or one
//    below the full stack);
//  - Residue(s, nu): the factor "looks like" u_s cut below residue nu, where
//    nu < w^{s-2} (so s = 2 forces nu = 0).
struct FactorSignature {
    enum class Kind { FiniteDim, Residue } kind;
    unsigned param = 0;  // d for FiniteDim, s for Residue
    Ordinal nu;          // Residue only

    bool operator==(const FactorSignature&) const = default;

    std::string str() const {
        if (kind == Kind::FiniteDim) return "FiniteDim(" + std::to_string(param) + ")";
        return "Residue(s=" + std::to_string(param) + ", nu=" + nu.str() + ")";
    }
};

// Strip the maximal prefix w^{n-1} + ... + w^s from lam; with remainder
// lam' < w^{s-1}, the signature is Residue(s, lam' mod w^{s-2}) for s >= 2,
// or FiniteDim(1 - eps) when the prefix consumes down to s = 1.
inline FactorSignature canonical_signature(const IdealHandle& h) {
    unsigned s = h.rank;
    Ordinal cur = h.lambda;
    while (s >= 2 && cur >= Ordinal::omega_pow(s - 1)) {
        cur = cur.sub_left(Ordinal::omega_pow(s - 1));
        s -= 1;
    }
    if (s == 1) {
        // cur is 0 or 1 here (lam <= stack(n))
        unsigned eps = cur.is_zero() ? 0 : 1;
        return {FactorSignature::Kind::FiniteDim, 1 - eps, Ordinal()};
    }
    auto [q, r] = cur.divmod_omega_pow(s - 2);
    (void)q;
    return {FactorSignature::Kind::Residue, s, r};
}

inline bool iso_factors(const IdealHandle& a, const IdealHandle& b) {
    return canonical_signature(a) == canonical_signature(b);
}

// udim(u_n/I_lam): stack(s) in the Residue(s, *) case, d in FiniteDim(d).
inline Ordinal udim_factor(const IdealHandle& h) {
    FactorSignature sig = canonical_signature(h);
    if (sig.kind == FactorSignature::Kind::FiniteDim) return Ordinal(sig.param);
    return Ordinal::stack(sig.param);
}

// f_n: u_n -> u_n, identity on u_{n-1}, X_{alpha,n} -> alpha_{n-1} X_{alpha-e_{n-1},n}
// (i.e. [d_{n-1}, -] on the top band). A Lie algebra epimorphism.
inline Element f_map(const Element& u) {
    unsigned n = u.rank();
    Element r(n);
    for (const auto& [b, c] : u.terms()) {
        if (b.slot != n) {
            r.add_term(b, c);
            continue;
        }
        unsigned e = md_get(b.alpha, n - 2);
        if (e == 0) continue;
        r.add_term(BasisVector(md_sub_e(b.alpha, n - 1), n), c * e);
    }
    return r;
}

// ker(f_n^i) = I_{i * w^{n-2}}.
inline IdealHandle f_power_kernel(unsigned n, unsigned i) {
    if (n < 2 || i < 1) throw domain_error("f_power_kernel requires n >= 2, i >= 1");
    return IdealHandle(n, Ordinal::omega_pow(n - 2, i));
}

} // namespace triad
