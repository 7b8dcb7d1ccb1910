// u_oo (union of all u_n) and its completion: the chain of ideals
//   Whole > Mixed(2,*) > Tail(2) > Mixed(3,*) > Tail(3) > ... > Zero
// where Tail(n) = u_{oo,n} and Mixed(n, lam) = I_lam(n) + u_{oo,n+1} with
// lam in [1, w^{n-1}) and n minimal; factor isomorphism by reduction to a
// common finite level; prefix arithmetic for elements of the completion.
#pragma once

#include "iso.hpp"

namespace triad {

class InfIdeal {
public:
    enum class Kind { Whole, Tail, Mixed, Zero };

    static InfIdeal whole() { return InfIdeal(Kind::Whole, 1, Ordinal()); }
    static InfIdeal zero() { return InfIdeal(Kind::Zero, 0, Ordinal()); }
    static InfIdeal tail(unsigned n) {
        if (n < 1) throw domain_error("tail level must be >= 1");
        if (n == 1) return whole();  // u_{oo,1} = u_oo
        return InfIdeal(Kind::Tail, n, Ordinal());
    }
    static InfIdeal mixed(unsigned n, Ordinal lam) {
        if (n < 2) throw domain_error("mixed level must be >= 2");
        if (lam.is_zero() || lam.is_top() || lam >= Ordinal::omega_pow(n - 1))
            throw domain_error("mixed requires 1 <= lambda < w^{n-1}");
        return InfIdeal(Kind::Mixed, n, std::move(lam));
    }

    Kind kind() const { return kind_; }
    unsigned level() const { return n_; }
    const Ordinal& lambda() const { return lam_; }
    bool operator==(const InfIdeal&) const = default;

private:
    InfIdeal(Kind k, unsigned n, Ordinal lam) : kind_(k), n_(n), lam_(std::move(lam)) {}
    Kind kind_;
    unsigned n_;
    Ordinal lam_;
};

// Chain order: Whole greatest, Zero least; between levels, everything at
// level n precedes (is greater than) everything at level n+1; within a level
// Mixed(n, lam) > Tail(n), Mixed ordered by lambda.
inline std::strong_ordering inf_compare(const InfIdeal& a, const InfIdeal& b) {
    auto key = [](const InfIdeal& x) -> int {
        switch (x.kind()) {
            case InfIdeal::Kind::Whole: return 3;
            case InfIdeal::Kind::Mixed: return 2;
            case InfIdeal::Kind::Tail: return 1;
            default: return 0;
        }
    };
    if (a.kind() == InfIdeal::Kind::Whole || b.kind() == InfIdeal::Kind::Whole ||
        a.kind() == InfIdeal::Kind::Zero || b.kind() == InfIdeal::Kind::Zero) {
        return key(a) <=> key(b);
    }
    if (a.level() != b.level()) return b.level() <=> a.level();  // smaller level is bigger
    if (key(a) != key(b)) return key(a) <=> key(b);              // Mixed > Tail
    if (a.kind() == InfIdeal::Kind::Mixed) {
        if (a.lambda() < b.lambda()) return std::strong_ordering::less;
        if (b.lambda() < a.lambda()) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

// Normal form of I_lam(n) + u_{oo,n+1}: strip full top bands level by level
// (I_{w^{n-1}+mu}(n) + u_{oo,n+1} = I_mu(n-1) + u_{oo,n}).
inline InfIdeal inf_normalize(unsigned n, Ordinal lam) {
    if (lam.is_zero()) return InfIdeal::zero();
    while (true) {
        if (n == 1) return InfIdeal::whole();  // lam = 1: K d_1 + u_{oo,2} = u_oo
        Ordinal band = Ordinal::omega_pow(n - 1);
        if (lam < band) return InfIdeal::mixed(n, lam);
        if (lam == band) return InfIdeal::tail(n);
        lam = lam.sub_left(band);
        n -= 1;
    }
}

// The ideal of u_oo generated by a finite element: embed in the minimal u_m,
// where (u) n u_m = I_{ord(u)} and the tail u_{oo,m+1} is always absorbed.
inline InfIdeal classify_generated(const Element& u) {
    if (u.is_zero()) return InfIdeal::zero();
    unsigned m = u.min_rank();
    return inf_normalize(m, ord_element(u.with_rank(m)));
}

// Minimal n' with u_{oo,n'+1} contained in the ideal.
inline unsigned inf_min_level(const InfIdeal& a) {
    switch (a.kind()) {
        case InfIdeal::Kind::Whole: return 1;
        case InfIdeal::Kind::Mixed: return a.level();
        case InfIdeal::Kind::Tail: return a.level() - 1;
        default: throw domain_error("zero ideal has no finite level");
    }
}

// Image of the ideal under the truncation u_oo -> u_n (n >= its level):
// the handle of its intersection with u_n.
inline IdealHandle inf_project(const InfIdeal& a, unsigned n) {
    switch (a.kind()) {
        case InfIdeal::Kind::Whole: return IdealHandle(n, Ordinal::stack(n));
        case InfIdeal::Kind::Zero: return IdealHandle(n, 0);
        case InfIdeal::Kind::Tail: {
            if (a.level() > n + 1) return IdealHandle(n, 0);
            if (a.level() <= 1) return IdealHandle(n, Ordinal::stack(n));
            return IdealHandle(n, tail_ideal_lambda(n, std::min(a.level(), n + 1)));
        }
        default: {
            if (a.level() > n) throw domain_error("projection level too small for Mixed ideal");
            // I_lam(m) + u_{oo,m+1} meets u_n in I_{w^{n-1}+...+w^m + lam}(n).
            Ordinal r;
            for (unsigned k = n; k-- > a.level();) r = r + Ordinal::omega_pow(k);
            return IdealHandle(n, r + a.lambda());
        }
    }
}

// u_oo/I = u_oo/J iff both are zero, or both nonzero and the induced factors
// at the common minimal level agree.
inline bool iso_factors_inf(const InfIdeal& a, const InfIdeal& b) {
    bool az = a.kind() == InfIdeal::Kind::Zero, bz = b.kind() == InfIdeal::Kind::Zero;
    if (az || bz) return az && bz;
    unsigned n = std::max({inf_min_level(a), inf_min_level(b), 2u});
    return iso_factors(inf_project(a, n), inf_project(b, n));
}

inline Ordinal udim_inf() { return Ordinal::top(); }

// All nonzero ideals are open and closed; the zero ideal is closed only.
struct OpenClosed { bool is_open; bool is_closed; };
inline OpenClosed classify_closed_open(const InfIdeal& a) {
    if (a.kind() == InfIdeal::Kind::Zero) return {false, true};
    return {true, true};
}

// ---------------------------------------------------------------------------
// Prefix arithmetic in the completion: an element sum_i a_i d_i known exactly
// for levels i <= known_to, with a flag recording whether the rest is zero.

struct PrefixElement {
    std::map<unsigned, Polynomial> components;  // level -> a_i in P_{i-1}, nonzero
    unsigned known_to = 0;
    bool zero_tail = true;  // true: the element IS the finite sum shown

    void set_component(unsigned level, Polynomial p) {
        if (p.max_variable() >= level)
            throw domain_error("component at level " + std::to_string(level) + " must lie in P_" +
                               std::to_string(level - 1));
        if (p.is_zero()) components.erase(level);
        else components[level] = std::move(p);
        known_to = std::max(known_to, level);
    }

    bool is_known_zero() const { return components.empty() && zero_tail; }

    // Smallest level with a nonzero component among the known ones.
    unsigned min_level() const {
        if (components.empty()) throw domain_error("no visible nonzero component");
        return components.begin()->first;
    }

    static PrefixElement from_element(const Element& u) {
        PrefixElement p;
        p.zero_tail = true;
        for (const auto& [b, c] : u.terms()) {
            auto it = p.components.find(b.slot);
            Polynomial cur = it == p.components.end() ? Polynomial() : it->second;
            cur += c * Polynomial::monomial(b.alpha);
            if (cur.is_zero()) p.components.erase(b.slot);
            else p.components[b.slot] = cur;
        }
        p.known_to = std::max(u.rank(), p.components.empty() ? 1u : p.components.rbegin()->first);
        return p;
    }

    // Truncation to u_n (ZeroTail inputs only).
    Element to_element(unsigned rank) const {
        if (!zero_tail) throw domain_error("element has unknown tail");
        Element u(rank);
        for (const auto& [lvl, poly] : components)
            for (const auto& [a, c] : poly.terms()) u.add_term(BasisVector(a, lvl), c);
        return u;
    }
};

// [a, b] level by level: the d_l component of the bracket is
// sum_{i<l} a_i d(b_l)/dx_i - b_i d(a_l)/dx_i, exact for l <= min(known_to).
inline PrefixElement bracket_prefix(const PrefixElement& a, const PrefixElement& b) {
    PrefixElement r;
    // A zero-tail operand is fully known, so only the other operand's window
    // limits exactness; with two zero tails the result is exact everywhere.
    constexpr unsigned everything = ~0u;
    unsigned aN = a.zero_tail ? everything : a.known_to;
    unsigned bN = b.zero_tail ? everything : b.known_to;
    unsigned N = std::min(aN, bN);
    if (N == everything)
        N = std::max(a.components.empty() ? 0u : a.components.rbegin()->first,
                     b.components.empty() ? 0u : b.components.rbegin()->first);
    r.zero_tail = a.zero_tail && b.zero_tail;
    r.known_to = std::max(N, 1u);
    for (unsigned l = 1; l <= N; ++l) {
        Polynomial comp;
        auto bl = b.components.find(l);
        auto al = a.components.find(l);
        for (unsigned i = 1; i < l; ++i) {
            auto ai = a.components.find(i);
            if (ai != a.components.end() && bl != b.components.end())
                comp += ai->second * bl->second.diff(i);
            auto bi = b.components.find(i);
            if (bi != b.components.end() && al != a.components.end())
                comp -= bi->second * al->second.diff(i);
        }
        if (!comp.is_zero()) r.components[l] = comp;
    }
    return r;
}

// Non-nilpotence witness: for a with minimal visible level n, set
// b = sum_m x_n^m/m! d_{n+m} (truncated to a.known_to) and return
// (ad a)^i(b) for i = 1..steps; each is nonzero to its validity level.
inline std::vector<PrefixElement> non_nilpotence_witness(const PrefixElement& a, unsigned steps) {
    if (a.components.empty())
        throw domain_error("witness requires a nonzero element with visible minimal level");
    unsigned n = a.min_level();
    PrefixElement b;
    b.zero_tail = false;
    // Fully known `a` lets us widen the witness window to keep `steps`
    // iterates visible; an unknown-tail `a` pins us to its window.
    b.known_to = a.zero_tail ? std::max(a.known_to, n + steps + 2) : a.known_to;
    if (b.known_to < n) throw domain_error("minimal level not visible within known_to");
    Int fact = 1;
    for (unsigned m = 0; n + m <= b.known_to; ++m) {
        if (m > 0) fact *= m;
        Multidegree xm;
        if (m > 0) {
            xm.assign(n, 0);
            xm[n - 1] = m;
        }
        b.set_component(n + m, Polynomial::monomial(xm, Rat(1, fact)));
    }
    std::vector<PrefixElement> out;
    PrefixElement cur = b;
    for (unsigned i = 1; i <= steps; ++i) {
        cur = bracket_prefix(a, cur);
        if (cur.components.empty())
            throw theory_violation("witness iterate vanished within its validity window");
        out.push_back(cur);
    }
    return out;
}

} // namespace triad
