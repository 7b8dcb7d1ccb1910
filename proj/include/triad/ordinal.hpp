// Ordinals below w^w in Cantor normal form, plus a distinguished TOP value
// standing for w^w itself. TOP participates in comparison only; arithmetic
// on it is rejected (it only ever appears as a reported uniserial dimension).
#pragma once

#include "base.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace triad {

class Ordinal {
public:
    // CNF term c * w^e; terms are kept with strictly decreasing exponents
    // and coefficients >= 1. The empty term list is 0.
    struct Term {
        unsigned exp;
        Int coeff;
        bool operator==(const Term&) const = default;
    };

    Ordinal() = default;
    Ordinal(const Int& n) { if (n < 0) throw domain_error("negative ordinal"); if (n > 0) terms_.push_back({0, n}); }
    Ordinal(int n) : Ordinal(Int(n)) {}
    Ordinal(unsigned n) : Ordinal(Int(n)) {}

    static Ordinal omega_pow(unsigned e, Int coeff = 1) {
        Ordinal a;
        if (coeff < 0) throw domain_error("negative coefficient");
        if (coeff > 0) a.terms_.push_back({e, std::move(coeff)});
        return a;
    }

    static Ordinal omega() { return omega_pow(1); }

    static Ordinal top() { Ordinal a; a.top_ = true; return a; }

    // stack(n) = w^{n-1} + w^{n-2} + ... + w + 1, the ordinal of the whole
    // rank-n basis (so also the uniserial dimension of u_n).
    static Ordinal stack(unsigned n) {
        if (n < 1) throw domain_error("stack requires n >= 1");
        Ordinal a;
        for (unsigned e = n; e-- > 0;) a.terms_.push_back({e, 1});
        return a;
    }

    bool is_top() const { return top_; }
    bool is_zero() const { return !top_ && terms_.empty(); }
    bool is_finite() const { return !top_ && (terms_.empty() || terms_[0].exp == 0); }

    Int finite_value() const {
        if (!is_finite()) throw domain_error("ordinal is not finite");
        return terms_.empty() ? Int(0) : terms_[0].coeff;
    }

    const std::vector<Term>& cnf() const {
        if (top_) throw domain_error("TOP has no CNF");
        return terms_;
    }

    // Coefficient of w^e in the CNF (0 if absent).
    Int coeff(unsigned e) const {
        for (const Term& t : cnf())
            if (t.exp == e) return t.coeff;
        return 0;
    }

    std::strong_ordering operator<=>(const Ordinal& o) const {
        if (top_ || o.top_) {
            if (top_ && o.top_) return std::strong_ordering::equal;
            return top_ ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        size_t n = std::min(terms_.size(), o.terms_.size());
        for (size_t k = 0; k < n; ++k) {
            if (terms_[k].exp != o.terms_[k].exp)
                return terms_[k].exp <=> o.terms_[k].exp;
            if (terms_[k].coeff != o.terms_[k].coeff)
                return terms_[k].coeff < o.terms_[k].coeff ? std::strong_ordering::less
                                                           : std::strong_ordering::greater;
        }
        return terms_.size() <=> o.terms_.size();
    }
    bool operator==(const Ordinal& o) const { return (*this <=> o) == 0; }

    // Ordinal sum (left-absorbing, non-commutative): terms of a strictly
    // below b's leading exponent are absorbed.
    Ordinal operator+(const Ordinal& b) const {
        const auto& x = cnf();
        const auto& y = b.cnf();
        if (y.empty()) return *this;
        Ordinal r;
        unsigned lead = y[0].exp;
        for (const Term& t : x)
            if (t.exp > lead) r.terms_.push_back(t);
        Term head = y[0];
        for (const Term& t : x)
            if (t.exp == lead) head.coeff += t.coeff;
        r.terms_.push_back(head);
        r.terms_.insert(r.terms_.end(), y.begin() + 1, y.end());
        return r;
    }

    // The unique x with a + x = *this; requires a <= *this.
    Ordinal sub_left(const Ordinal& a) const {
        const auto& x = a.cnf();
        const auto& y = cnf();
        if (a > *this) throw domain_error("sub_left: subtrahend exceeds ordinal");
        size_t k = 0;
        while (k < x.size() && k < y.size() && x[k] == y[k]) ++k;
        Ordinal r;
        if (k == x.size()) {
            // a is a prefix of *this: the rest is the difference.
            r.terms_.assign(y.begin() + k, y.end());
        } else if (x[k].exp == y[k].exp) {
            // First divergence at a shared exponent: a's coefficient is the
            // smaller one (a <= *this), and a's tail is absorbed.
            r.terms_.push_back({y[k].exp, y[k].coeff - x[k].coeff});
            r.terms_.insert(r.terms_.end(), y.begin() + k + 1, y.end());
        } else {
            // Divergence at a smaller exponent in a: everything from the
            // divergent term of a onward is absorbed by y[k].
            r.terms_.assign(y.begin() + k, y.end());
        }
        return r;
    }

    // a = w^k * q + r with r < w^k; q's CNF is the >=k part shifted down.
    std::pair<Ordinal, Ordinal> divmod_omega_pow(unsigned k) const {
        Ordinal q, r;
        for (const Term& t : cnf()) {
            if (t.exp >= k) q.terms_.push_back({t.exp - k, t.coeff});
            else r.terms_.push_back(t);
        }
        return {q, r};
    }

    // (multiplicity, degree, co-multiplicity, co-degree): the leading and
    // trailing CNF terms of a nonzero ordinal.
    struct Structure { Int multiplicity; unsigned degree; Int co_multiplicity; unsigned co_degree; };
    Structure structure() const {
        if (is_zero() || top_) throw domain_error("structure requires 1 <= a < TOP");
        return {terms_.front().coeff, terms_.front().exp,
                terms_.back().coeff, terms_.back().exp};
    }

    // Convention: is_limit(0) = false (0 is neither limit nor successor here).
    bool is_limit() const { return !cnf().empty() && terms_.back().exp > 0; }
    bool is_successor() const { return !cnf().empty() && terms_.back().exp == 0; }

    Ordinal pred() const {
        if (!is_successor()) throw domain_error("pred of a non-successor");
        Ordinal r = *this;
        if (r.terms_.back().coeff == 1) r.terms_.pop_back();
        else r.terms_.back().coeff -= 1;
        return r;
    }

    // Rendering: "w^3*2+w*5+4"; "w^w" for TOP; "0" for zero.
    std::string str() const {
        if (top_) return "w^w";
        if (terms_.empty()) return "0";
        std::string s;
        for (const Term& t : terms_) {
            if (!s.empty()) s += "+";
            if (t.exp == 0) { s += t.coeff.str(); continue; }
            s += t.exp == 1 ? "w" : "w^" + std::to_string(t.exp);
            if (t.coeff != 1) s += "*" + t.coeff.str();
        }
        return s;
    }

private:
    bool top_ = false;
    std::vector<Term> terms_;
};

} // namespace triad
