// Text grammars and JSON rendering shared by the CLI and the tests.
//
//   element:    "3/2 x1^2 x3 d4 - d1"      (terms in descending basis order)
//   polynomial: "x1^2 x2 + 1/2"
//   weyl:       "x1^2 d1^3 d2"
//   ordinal:    "w^3*2 + w*5 + 4", "w^w"
//   ideal:      "I[w^2+3]@u3", factor "u3/I[w^2]"
//   submodule:  "P[w^2*3+1]@P3"
//   inf ideal:  "Whole", "Zero", "U[oo,3]", "I[w+2]@3+U[oo,4]"
#pragma once

#include "infinity.hpp"
#include "poly_module.hpp"
#include "weyl.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>

namespace triad {

// ---------------------------------------------------------------------------
// Printing.

inline std::string rat_str(const Rat& c) {
    std::ostringstream os;
    os << c;
    return os.str();
}

inline std::string monomial_str(const Multidegree& a) {
    std::string s;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        if (!s.empty()) s += " ";
        s += "x" + std::to_string(i + 1);
        if (a[i] > 1) s += "^" + std::to_string(a[i]);
    }
    return s;
}

namespace detail {
// Shared +/- joining for linear combinations. `body` omits the coefficient
// when it is +-1 and the monomial part is nonempty.
inline void append_term(std::string& out, const Rat& c, const std::string& mono) {
    bool neg = c < 0;
    Rat abs = neg ? Rat(-c) : c;
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    if (abs != 1 || mono.empty()) {
        out += rat_str(abs);
        if (!mono.empty()) out += " ";
    }
    out += mono;
}
} // namespace detail

inline std::string element_str(const Element& u) {
    if (u.is_zero()) return "0";
    std::string out;
    for (auto it = u.terms().rbegin(); it != u.terms().rend(); ++it) {
        std::string mono = monomial_str(it->first.alpha);
        if (!mono.empty()) mono += " ";
        mono += "d" + std::to_string(it->first.slot);
        detail::append_term(out, it->second, mono);
    }
    return out;
}

inline std::string poly_str(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
        detail::append_term(out, it->second, monomial_str(it->first));
    return out;
}

inline std::string weyl_str(const WeylElement& w) {
    if (w.is_zero()) return "0";
    std::string out;
    for (auto it = w.terms().rbegin(); it != w.terms().rend(); ++it) {
        const auto& [alpha, beta] = it->first;
        std::string mono = monomial_str(alpha);
        for (size_t i = 0; i < beta.size(); ++i) {
            if (beta[i] == 0) continue;
            if (!mono.empty()) mono += " ";
            mono += "d" + std::to_string(i + 1);
            if (beta[i] > 1) mono += "^" + std::to_string(beta[i]);
        }
        detail::append_term(out, it->second, mono);
    }
    return out;
}

inline std::string ideal_str(const IdealHandle& h) {
    return "I[" + h.lambda.str() + "]@u" + std::to_string(h.rank);
}

inline std::string factor_str(const IdealHandle& h) {
    return "u" + std::to_string(h.rank) + "/I[" + h.lambda.str() + "]";
}

inline std::string submodule_str(const SubmoduleHandle& h) {
    return "P[" + h.lambda.str() + "]@P" + std::to_string(h.rank);
}

inline std::string inf_ideal_str(const InfIdeal& a) {
    switch (a.kind()) {
        case InfIdeal::Kind::Whole: return "Whole";
        case InfIdeal::Kind::Zero: return "Zero";
        case InfIdeal::Kind::Tail: return "U[oo," + std::to_string(a.level()) + "]";
        default:
            return "I[" + a.lambda().str() + "]@" + std::to_string(a.level()) +
                   "+U[oo," + std::to_string(a.level() + 1) + "]";
    }
}

// ---------------------------------------------------------------------------
// Parsing. A single cursor type; helpers throw parse_error with position.

namespace detail {

struct Cursor {
    std::string_view s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw parse_error(std::string("expected '") + c + "'", pos);
    }
    bool accept_word(std::string_view w) {
        skip_ws();
        if (s.substr(pos, w.size()) == w) { pos += w.size(); return true; }
        return false;
    }
    Int integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) throw parse_error("expected a number", pos);
        return Int(std::string(s.substr(start, pos - start)));
    }
    unsigned small_integer() {
        size_t at = pos;
        Int v = integer();
        if (v > 1000000) throw parse_error("index too large", at);
        return v.convert_to<unsigned>();
    }
};

inline Rat parse_rational(Cursor& c) {
    Int num = c.integer();
    if (c.accept('/')) {
        size_t at = c.pos;
        Int den = c.integer();
        if (den == 0) throw parse_error("zero denominator", at);
        return Rat(num, den);
    }
    return Rat(num);
}

// One linear-combination term: optional sign handled by caller; parses
// [rational] (x-factors) (d-factors), returning coeff, alpha, beta.
struct RawTerm {
    Rat coeff = 1;
    Multidegree alpha;
    Multidegree beta;
};

inline RawTerm parse_raw_term(Cursor& c, bool allow_d) {
    RawTerm t;
    bool saw_anything = false;
    if (std::isdigit((unsigned char)c.peek())) {
        t.coeff = parse_rational(c);
        saw_anything = true;
    }
    auto bump = [&](Multidegree& m, unsigned idx, unsigned e) {
        if (m.size() < idx) m.resize(idx, 0);
        m[idx - 1] += e;
    };
    while (true) {
        if (saw_anything) c.accept('*');  // optional separator between factors
        char ch = c.peek();
        if (ch == 'x') {
            if (!t.beta.empty()) throw parse_error("x-factor after d-factor", c.pos);
            ++c.pos;
            size_t at = c.pos;
            unsigned idx = c.small_integer();
            if (idx == 0) throw parse_error("variable index must be >= 1", at);
            unsigned e = 1;
            if (c.accept('^')) e = c.small_integer();
            bump(t.alpha, idx, e);
            saw_anything = true;
        } else if (ch == 'd' && allow_d) {
            ++c.pos;
            size_t at = c.pos;
            unsigned idx = c.small_integer();
            if (idx == 0) throw parse_error("derivative index must be >= 1", at);
            unsigned e = 1;
            if (c.accept('^')) e = c.small_integer();
            bump(t.beta, idx, e);
            saw_anything = true;
        } else break;
    }
    if (!saw_anything) throw parse_error("expected a term", c.pos);
    md_normalize(t.alpha);
    md_normalize(t.beta);
    return t;
}

template <typename EmitTerm>
inline void parse_linear_combination(Cursor& c, bool allow_d, EmitTerm emit) {
    bool neg = false;
    if (c.accept('-')) neg = true;
    else c.accept('+');
    while (true) {
        size_t at = c.pos;
        RawTerm t = parse_raw_term(c, allow_d);
        if (neg) t.coeff = -t.coeff;
        emit(t, at);
        if (c.accept('-')) neg = true;
        else if (c.accept('+')) neg = false;
        else break;
    }
    if (!c.eof()) throw parse_error("trailing input", c.pos);
}

} // namespace detail

inline Element parse_element(std::string_view text, unsigned rank = 0) {
    detail::Cursor c{text};
    // First pass collects raw terms to infer the rank.
    std::vector<std::pair<detail::RawTerm, size_t>> raw;
    unsigned inferred = 2;
    detail::parse_linear_combination(c, true, [&](const detail::RawTerm& t, size_t at) {
        if (md_total(t.beta) != 1)
            throw parse_error("an element term needs exactly one d-factor", at);
        unsigned slot = md_max_index(t.beta);
        inferred = std::max({inferred, slot, md_max_index(t.alpha) + 1});
        raw.emplace_back(t, at);
    });
    // Canonical-basis constraint: factors must stay below the slot. (The
    // diagonal x_i d_i images arise only through embed_ut, not the grammar.)
    for (auto& [t, at] : raw) {
        unsigned slot = md_max_index(t.beta);
        if (md_max_index(t.alpha) >= slot)
            throw parse_error("factor index " + std::to_string(md_max_index(t.alpha)) +
                                  " >= slot " + std::to_string(slot),
                              at);
    }
    if (rank == 0) rank = inferred;
    if (rank < inferred)
        throw parse_error("rank " + std::to_string(rank) + " below inferred rank " +
                              std::to_string(inferred), 0);
    Element u(rank);
    for (auto& [t, at] : raw) u.add_term(BasisVector(t.alpha, md_max_index(t.beta)), t.coeff);
    return u;
}

inline Polynomial parse_polynomial(std::string_view text) {
    detail::Cursor c{text};
    if (c.accept('0') && c.eof()) return Polynomial();
    c.pos = 0;
    Polynomial p;
    detail::parse_linear_combination(c, false, [&](const detail::RawTerm& t, size_t) {
        p.add_term(t.alpha, t.coeff);
    });
    return p;
}

inline WeylElement parse_weyl(std::string_view text, unsigned rank = 0) {
    detail::Cursor c{text};
    std::vector<detail::RawTerm> raw;
    unsigned inferred = 1;
    if (c.accept('0') && c.eof()) return WeylElement(rank ? rank : 1);
    c.pos = 0;
    detail::parse_linear_combination(c, true, [&](const detail::RawTerm& t, size_t) {
        inferred = std::max({inferred, md_max_index(t.alpha), md_max_index(t.beta)});
        raw.push_back(t);
    });
    if (rank == 0) rank = inferred;
    if (rank < inferred) throw parse_error("rank below inferred rank", 0);
    WeylElement w(rank);
    for (auto& t : raw) w.add_term(t.alpha, t.beta, t.coeff);
    return w;
}

inline Ordinal parse_ordinal_at(detail::Cursor& c) {
    if (c.accept_word("w^w")) return Ordinal::top();
    Ordinal total;
    long prev_exp = -1;
    bool first = true;
    while (true) {
        size_t at = c.pos;
        unsigned exp = 0;
        Int coeff;
        if (c.accept('w')) {
            exp = 1;
            if (c.accept('^')) exp = c.small_integer();
            coeff = 1;
            if (c.accept('*')) coeff = c.integer();
            if (coeff == 0) throw parse_error("zero coefficient in CNF", at);
        } else {
            coeff = c.integer();
            if (coeff == 0) {
                if (first && c.peek() != '+') return Ordinal();  // bare "0"
                throw parse_error("zero term in CNF", at);
            }
        }
        if (!first && (long)exp >= prev_exp)
            throw parse_error("CNF terms must have strictly decreasing exponents", at);
        total = total + Ordinal::omega_pow(exp, coeff);
        prev_exp = (long)exp;
        first = false;
        if (!c.accept('+')) break;
    }
    return total;
}

inline Ordinal parse_ordinal(std::string_view text) {
    detail::Cursor c{text};
    Ordinal o = parse_ordinal_at(c);
    if (!c.eof()) throw parse_error("trailing input", c.pos);
    return o;
}

// "I[lam]@u3"
inline IdealHandle parse_ideal(std::string_view text) {
    detail::Cursor c{text};
    c.expect('I');
    c.expect('[');
    Ordinal lam = parse_ordinal_at(c);
    c.expect(']');
    c.expect('@');
    c.expect('u');
    unsigned n = c.small_integer();
    if (!c.eof()) throw parse_error("trailing input", c.pos);
    if (lam.is_top()) throw parse_error("w^w is not a valid ideal index", 2);
    return IdealHandle(n, lam);
}

// "u3/I[w^2]" (also accepts the plain "I[...]@u3" form).
inline IdealHandle parse_factor(std::string_view text) {
    if (!text.empty() && text.front() == 'I') return parse_ideal(text);
    detail::Cursor c{text};
    c.expect('u');
    unsigned n = c.small_integer();
    c.expect('/');
    c.expect('I');
    c.expect('[');
    Ordinal lam = parse_ordinal_at(c);
    c.expect(']');
    if (!c.eof()) throw parse_error("trailing input", c.pos);
    if (lam.is_top()) throw parse_error("w^w is not a valid ideal index", 0);
    return IdealHandle(n, lam);
}

// "P[lam]@P3"
inline SubmoduleHandle parse_submodule(std::string_view text) {
    detail::Cursor c{text};
    c.expect('P');
    c.expect('[');
    Ordinal lam = parse_ordinal_at(c);
    c.expect(']');
    c.expect('@');
    c.expect('P');
    unsigned n = c.small_integer();
    if (!c.eof()) throw parse_error("trailing input", c.pos);
    if (lam.is_top()) throw parse_error("w^w is not a valid submodule index", 2);
    return SubmoduleHandle(n, lam);
}

// "Whole" | "Zero" | "U[oo,3]" | "I[w+2]@3+U[oo,4]"
inline InfIdeal parse_inf_ideal(std::string_view text) {
    detail::Cursor c{text};
    if (c.accept_word("Whole")) {
        if (!c.eof()) throw parse_error("trailing input", c.pos);
        return InfIdeal::whole();
    }
    if (c.accept_word("Zero")) {
        if (!c.eof()) throw parse_error("trailing input", c.pos);
        return InfIdeal::zero();
    }
    if (c.accept_word("U[oo,")) {
        unsigned n = c.small_integer();
        c.expect(']');
        if (!c.eof()) throw parse_error("trailing input", c.pos);
        return InfIdeal::tail(n);
    }
    c.expect('I');
    c.expect('[');
    Ordinal lam = parse_ordinal_at(c);
    c.expect(']');
    c.expect('@');
    unsigned n = c.small_integer();
    c.expect('+');
    if (!c.accept_word("U[oo,")) throw parse_error("expected tail summand U[oo,n+1]", c.pos);
    size_t at = c.pos;
    unsigned m = c.small_integer();
    c.expect(']');
    if (!c.eof()) throw parse_error("trailing input", c.pos);
    if (m != n + 1) throw parse_error("tail level must be one above the ideal level", at);
    if (lam.is_top()) throw parse_error("w^w is not a valid index", 2);
    return InfIdeal::mixed(n, lam);
}

// ---------------------------------------------------------------------------
// JSON rendering (data mirrors the text form).

using json = nlohmann::json;

inline json ordinal_json(const Ordinal& o) {
    if (o.is_top()) return json("w^w");
    json arr = json::array();
    for (const auto& t : o.cnf()) arr.push_back({{"exp", t.exp}, {"coeff", t.coeff.str()}});
    return arr;
}

inline json multidegree_json(const Multidegree& a) {
    json arr = json::array();
    for (unsigned e : a) arr.push_back(e);
    return arr;
}

inline json element_json(const Element& u) {
    json terms = json::array();
    for (auto it = u.terms().rbegin(); it != u.terms().rend(); ++it)
        terms.push_back({{"alpha", multidegree_json(it->first.alpha)},
                         {"slot", it->first.slot},
                         {"coeff", rat_str(it->second)}});
    return {{"rank", u.rank()}, {"terms", terms}};
}

inline json poly_json(const Polynomial& p) {
    json terms = json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
        terms.push_back({{"alpha", multidegree_json(it->first)}, {"coeff", rat_str(it->second)}});
    return {{"terms", terms}};
}

inline json weyl_json(const WeylElement& w) {
    json terms = json::array();
    for (auto it = w.terms().rbegin(); it != w.terms().rend(); ++it)
        terms.push_back({{"alpha", multidegree_json(it->first.first)},
                         {"beta", multidegree_json(it->first.second)},
                         {"coeff", rat_str(it->second)}});
    return {{"rank", w.rank()}, {"terms", terms}};
}

inline json ideal_json(const IdealHandle& h) {
    return {{"rank", h.rank}, {"lambda", ordinal_json(h.lambda)}};
}

inline json submodule_json(const SubmoduleHandle& h) {
    return {{"rank", h.rank}, {"lambda", ordinal_json(h.lambda)}};
}

inline json inf_ideal_json(const InfIdeal& a) {
    switch (a.kind()) {
        case InfIdeal::Kind::Whole: return {{"kind", "Whole"}};
        case InfIdeal::Kind::Zero: return {{"kind", "Zero"}};
        case InfIdeal::Kind::Tail: return {{"kind", "Tail"}, {"level", a.level()}};
        default:
            return {{"kind", "Mixed"}, {"level", a.level()}, {"lambda", ordinal_json(a.lambda())}};
    }
}

inline json prefix_json(const PrefixElement& p) {
    json comps = json::array();
    for (const auto& [lvl, poly] : p.components)
        comps.push_back({{"level", lvl}, {"poly", poly_str(poly)}});
    return {{"components", comps},
            {"known_to", p.known_to},
            {"tail", p.zero_tail ? "zero" : "unknown"}};
}

} // namespace triad
