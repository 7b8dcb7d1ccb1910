// P_n = K[x_1..x_n] as a u_n-module: ordinal degrees of monomials (note the
// index shift against ord on u_n), the submodule chain P_{lam,n}, the
// enlargements P' (closed under the partial-derivative test) and P'', module
// annihilators, and the endomorphism ring K[[d/dx_n]] via truncations.
#pragma once

#include "ideals.hpp"

namespace triad {

struct SubmoduleHandle {
    unsigned rank;   // n >= 1
    Ordinal lambda;  // in [1, w^n]

    SubmoduleHandle(unsigned n, Ordinal lam) : rank(n), lambda(std::move(lam)) {
        if (n < 1) throw domain_error("module rank must be >= 1");
        if (lambda.is_zero() || lambda.is_top() || lambda > Ordinal::omega_pow(n))
            throw domain_error("lambda must lie in [1, w^" + std::to_string(n) + "]");
    }

    bool operator==(const SubmoduleHandle&) const = default;
};

// Position of x^alpha in the well-ordered monomial basis of P_n:
// alpha_n w^{n-1} + ... + alpha_2 w + (alpha_1 + 1) — the indices are
// shifted by one against the u_n convention.
inline Ordinal ord_monomial(const Multidegree& alpha, unsigned n) {
    if (alpha.size() > n) throw domain_error("monomial has variables beyond rank");
    Ordinal r;
    for (size_t j = alpha.size(); j-- > 1;)  // x_{j+1} contributes alpha w^j
        if (alpha[j] > 0) r = r + Ordinal::omega_pow(static_cast<unsigned>(j), alpha[j]);
    return r + Ordinal(md_get(alpha, 0) + 1);
}

// Monomial at position lam (successor ordinal in [1, w^n]): inverse read-off.
inline Multidegree monomial_at(const Ordinal& lam, unsigned n) {
    if (lam.is_zero() || !lam.is_successor() || lam > Ordinal::omega_pow(n))
        throw domain_error("no monomial at this position");
    Ordinal r = lam.pred();
    // coefficient of w^{j-1} in r is the exponent of x_j
    Multidegree alpha(n, 0);
    for (const auto& t : r.cnf()) {
        if (t.exp >= n) throw domain_error("position out of range");
        alpha[t.exp] = t.coeff.convert_to<unsigned>();
    }
    md_normalize(alpha);
    return alpha;
}

inline bool submodule_contains(const Polynomial& p, const SubmoduleHandle& h) {
    for (const auto& [a, c] : p.terms())
        if (ord_monomial(a, h.rank) > h.lambda) return false;
    return true;
}

// One summand x^{prefix} x_band^{0..count-1} P_{poly_index} of the
// decomposition of P_{lam,n}.
struct SummandBand {
    Multidegree prefix;   // fixed monomial factor in the higher variables
    unsigned band_var;    // k: the variable whose exponent ranges
    unsigned count;       // exponents 0..count-1
    unsigned poly_index;  // k-1: the polynomial subalgebra P_{k-1}
};

// P_{lam,n} = sum over the CNF terms alpha_k w^{k-1} of lam of the bands
// x_m^{a_m} ... x_{k+1}^{a_{k+1}} x_k^{0..alpha_k-1} P_{k-1}; for lam = w^n
// the whole module is reported via the empty decomposition + flag.
struct SubmoduleDecomposition {
    bool whole = false;
    std::vector<SummandBand> bands;
};

inline SubmoduleDecomposition submodule_summands(const SubmoduleHandle& h) {
    SubmoduleDecomposition out;
    if (h.lambda == Ordinal::omega_pow(h.rank)) {
        out.whole = true;
        return out;
    }
    // lam = alpha_m w^{m-1} + ... + alpha_j w^{j-1} with the shift-by-1
    // convention: coefficient of w^{k-1} is alpha_k.
    Multidegree prefix;  // accumulates x_m^{alpha_m} x_{m-1}^{alpha_{m-1}} ...
    for (const auto& t : h.lambda.cnf()) {
        unsigned k = t.exp + 1;  // variable index
        unsigned c = t.coeff.convert_to<unsigned>();
        SummandBand band;
        band.prefix = prefix;
        band.band_var = k;
        band.count = c;
        band.poly_index = k - 1;
        out.bands.push_back(band);
        // extend the prefix by x_k^{alpha_k} for the remaining (lower) terms
        Multidegree e(k, 0);
        e[k - 1] = c;
        prefix = md_add(prefix, e);
    }
    return out;
}

// CNF read-off of lam as a monomial: coefficient of w^{k-1} -> exponent of x_k.
inline Multidegree cnf_monomial(const Ordinal& lam) {
    Multidegree alpha;
    for (const auto& t : lam.cnf()) {
        if (alpha.size() < t.exp + 1) alpha.resize(t.exp + 1, 0);
        alpha[t.exp] = t.coeff.convert_to<unsigned>();
    }
    md_normalize(alpha);
    return alpha;
}

// P'_{lam,n} = {p : dp/dx_i in P_{lam,n} for all i} = P_{lam,n} + span(theta_j..theta_n)
// where, writing lam = alpha_m w^{m-1} + ... + alpha_j w^{j-1} (alpha_j != 0):
//   theta_j = x^alpha;  theta_i = x_i * prod_{k=i}^n x_k^{alpha_k}  (j < i <= n).
struct PPrimeResult {
    std::vector<Multidegree> thetas;  // theta_j, theta_{j+1}, ..., theta_n
    unsigned quotient_dim;            // n - j + 1
};

inline PPrimeResult p_prime(const SubmoduleHandle& h) {
    unsigned n = h.rank;
    if (h.lambda >= Ordinal::omega_pow(n)) throw domain_error("lambda must be < w^n");
    Multidegree alpha = cnf_monomial(h.lambda);
    unsigned j = h.lambda.structure().co_degree + 1;
    PPrimeResult out;
    out.thetas.push_back(alpha);  // theta_j = x^alpha
    for (unsigned i = j + 1; i <= n; ++i) {
        Multidegree th(i, 0);
        th[i - 1] = 1;
        for (unsigned k = i; k <= n; ++k) {
            unsigned e = md_get(alpha, k - 1);
            if (e) {
                Multidegree add(k, 0);
                add[k - 1] = e;
                th = md_add(th, add);
            }
        }
        out.thetas.push_back(th);
    }
    out.quotient_dim = n - j + 1;
    return out;
}

// P''_{lam,n} = P_{lam,n} + K x^alpha = P_{lam+1,n}: one new monomial.
struct PDoublePrimeResult {
    Multidegree witness;
    SubmoduleHandle result;
};

inline PDoublePrimeResult p_doubleprime(const SubmoduleHandle& h) {
    if (h.lambda >= Ordinal::omega_pow(h.rank)) throw domain_error("lambda must be < w^n");
    return {cnf_monomial(h.lambda), SubmoduleHandle(h.rank, h.lambda + Ordinal(1))};
}

// ann(P_{lam,n}): zero for lam > w^{n-1} (faithful), the tail ideal
// u_{n,m+1} = I_{w^{n-1}+...+w^m} for lam in (w^{m-1}, w^m] with m <= n-1,
// and all of u_n for lam = 1.
inline std::optional<IdealHandle> annihilator_submodule(const SubmoduleHandle& h) {
    unsigned n = h.rank;
    if (h.lambda > Ordinal::omega_pow(n - 1)) return std::nullopt;  // faithful
    if (h.lambda == Ordinal(1)) return IdealHandle(n, Ordinal::stack(n));
    for (unsigned m = 1; m <= n - 1; ++m)
        if (h.lambda > Ordinal::omega_pow(m - 1) && h.lambda <= Ordinal::omega_pow(m)) {
            Ordinal r;
            for (unsigned k = n; k-- > m;) r = r + Ordinal::omega_pow(k);
            return IdealHandle(n, r);
        }
    throw domain_error("annihilator: lambda out of range");
}

// Truncation of phi' = sum_j coeffs[j] (d/dx_n)^j acting on P_n through the
// isomorphism End_{u_n}(P_n) = K[[d/dx_n]].
struct SeriesEndo {
    std::vector<Rat> coeffs;  // lambda_0 ... , trailing zeros trimmed
    unsigned order;           // declared truncation order D (>= coeffs.size()-1)
    unsigned rank;            // n

    SeriesEndo(std::vector<Rat> cs, unsigned n)
        : coeffs(std::move(cs)),
          order(coeffs.empty() ? 0 : static_cast<unsigned>(coeffs.size()) - 1),
          rank(n) {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
        if (n < 1) throw domain_error("rank must be >= 1");
    }

    bool is_zero() const { return coeffs.empty(); }
};

// phi(x^beta x_n^i) = X_{beta,n} * phi'(x_n^{i+1}/(i+1)); expanding, the
// action is phi' applied to the x_n-part:
//   phi(x^beta x_n^i) = sum_j lambda_j * i!/(i-j)! * x^beta x_n^{i-j}.
// Exactness requires the truncation to cover the x_n-degree of p.
inline Polynomial endo_apply(const SeriesEndo& phi, const Polynomial& p) {
    if (p.max_variable() > phi.rank) throw domain_error("polynomial variables exceed rank");
    unsigned n = phi.rank;
    unsigned xdeg = 0;
    for (const auto& [a, c] : p.terms()) xdeg = std::max(xdeg, md_get(a, n - 1));
    // Coefficients beyond the declared truncation are unknown, not zero;
    // refuse rather than silently truncate.
    if (phi.order < xdeg)
        throw domain_error("series truncation order below x_n-degree of input");
    Polynomial out;
    for (const auto& [a, c] : p.terms()) {
        unsigned i = md_get(a, n - 1);
        for (unsigned j = 0; j < phi.coeffs.size() && j <= i; ++j) {
            if (phi.coeffs[j] == 0) continue;
            Rat fall = 1;  // i!/(i-j)! = i (i-1) ... (i-j+1)
            for (unsigned s = 0; s < j; ++s) fall *= i - s;
            Multidegree res = a;
            if (res.size() >= n) res[n - 1] = i - j;
            md_normalize(res);
            out.add_term(res, c * phi.coeffs[j] * fall);
        }
    }
    return out;
}

// ker(phi) = direct sum of P_{n-1} x_n^i for i < d, d = index of the first
// nonzero series coefficient; d = 0 means phi is bijective.
struct EndoKernel {
    unsigned d;
    std::string description;
};

inline EndoKernel endo_kernel(const SeriesEndo& phi) {
    if (phi.is_zero()) throw domain_error("kernel of the zero endomorphism");
    unsigned d = 0;
    while (phi.coeffs[d] == 0) ++d;
    std::string desc;
    if (d == 0) desc = "0 (bijective)";
    else {
        std::string xn = "x" + std::to_string(phi.rank);
        for (unsigned i = 0; i < d; ++i) {
            if (i) desc += " + ";
            desc += "P" + std::to_string(phi.rank - 1);
            if (i == 1) desc += "*" + xn;
            else if (i > 1) desc += "*" + xn + "^" + std::to_string(i);
        }
    }
    return {d, desc};
}

} // namespace triad
