// Command-line front end: one verb per library operation group, shared
// grammars from io.hpp, text or JSON output.
//
// Exit codes: 0 success, 1 domain error, 2 syntax/usage error.
#pragma once

#include "io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace triad::cli {

struct Options {
    bool json = false;
    unsigned rank = 0;     // 0 = infer from operands
    unsigned window = 8;   // degree window for windowed linear algebra
    unsigned cap = default_cap;
    unsigned long seed = 0;  // accepted for uniformity; used by test drivers
    unsigned limit = 10;   // ideal-basis enumeration limit
    unsigned steps = 3;    // inf-witness iterations
    bool set_mode = false;      // centralizer --set
    unsigned kernel_power = 0;  // f-map --kernel
    bool double_prime = false;  // mod-prime --double
    bool kernel_mode = false;   // endo --kernel
};

namespace detail {

// Parse elements to a common rank: the max of all inferred ranks and the
// explicit --rank (which may only raise).
inline std::vector<Element> parse_elements(const std::vector<std::string>& texts, unsigned rank) {
    std::vector<Element> parsed;
    unsigned common = rank;
    for (const auto& t : texts) {
        Element e = parse_element(t);
        common = std::max(common, e.rank());
        parsed.push_back(std::move(e));
    }
    if (rank != 0 && rank < common)
        throw domain_error("--rank may only raise the inferred rank " + std::to_string(common));
    for (auto& e : parsed) e = e.with_rank(common);
    return parsed;
}

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"triad — exact symbolic computation in the Lie algebras of triangular polynomial derivations"};
    app.require_subcommand(1);

    Options opt;
    std::vector<std::string> pos;  // positional operands, verb-specific
    std::string verb;

    auto add_verb = [&](const std::string& name, const std::string& desc, size_t min_args,
                        size_t max_args) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("operands", pos)->expected(static_cast<int>(min_args), static_cast<int>(max_args));
        sub->add_flag("--json", opt.json, "emit JSON");
        sub->add_option("--rank", opt.rank, "ambient rank (may only raise the inferred one)");
        sub->add_option("--window", opt.window, "degree window for windowed computations");
        sub->add_option("--cap", opt.cap, "iteration cap");
        sub->add_option("--seed", opt.seed, "RNG seed (reserved for test drivers)");
        sub->callback([&, name] { verb = name; });
        return sub;
    };

    add_verb("bracket", "Lie bracket of two elements", 2, 2);
    add_verb("ord", "ordinal degree of an element", 1, 1);
    add_verb("act", "apply an element to a polynomial", 2, 2);
    add_verb("exp-ad", "exponential of an inner derivation applied to an element", 2, 2);
    add_verb("closure", "bracket closure of finitely many generators", 1, -1);
    add_verb("ideal-gen", "ideal generated by elements", 1, -1);
    add_verb("ideal-member", "membership of an element in I[lam]@un", 2, 2);
    {
        CLI::App* s = add_verb("ideal-basis", "leading basis vectors of I[lam]@un", 1, 1);
        s->add_option("--limit", opt.limit, "how many basis vectors to list");
    }
    {
        CLI::App* s = add_verb("centralizer", "centralizer of I[lam]@un (or --set n for all)", 0, 1);
        s->add_flag("--set", opt.set_mode, "list the whole centralizer set of rank n");
    }
    add_verb("series", "derived | lower-central | central series data", 2, 3);
    add_verb("iso", "decide u_n/I ~ u_m/J for two factors", 2, 2);
    add_verb("udim", "uniserial dimension of a factor (or 'oo')", 1, 1);
    {
        CLI::App* s = add_verb("f-map", "apply f_n (or --kernel i for ker f_n^i)", 0, 1);
        s->add_option("--kernel", opt.kernel_power, "power i: report ker(f_n^i) (needs --rank)");
    }
    add_verb("weyl-mul", "normal-ordered Weyl product", 2, 2);
    add_verb("weyl-in-image", "membership in chi(U_n), with W' coordinates", 1, 1);
    add_verb("weyl-kernel-check", "kernel-generator identity for two basis terms", 2, 2);
    add_verb("mod-ord", "ordinal degree of a monomial in P_n", 1, 1);
    {
        CLI::App* s = add_verb("mod-prime", "P' enlargement data (or --double for P'')", 1, 1);
        s->add_flag("--double", opt.double_prime, "report P'' instead");
    }
    add_verb("mod-ann", "annihilator of P[lam]@Pn", 1, 1);
    {
        CLI::App* s = add_verb("endo", "apply a power-series endomorphism (coeffs c0,c1,...)", 1, 2);
        s->add_flag("--kernel", opt.kernel_mode, "report the kernel instead of applying");
    }
    add_verb("inf-classify", "ideal of u_oo generated by an element", 1, 1);
    add_verb("inf-iso", "decide u_oo/I ~ u_oo/J", 2, 2);
    {
        CLI::App* s = add_verb("inf-witness", "non-nilpotence witness iterates", 1, 1);
        s->add_option("--steps", opt.steps, "number of iterates");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    json j;
    std::ostringstream text;
    try {
        if (verb == "bracket") {
            auto es = detail::parse_elements(pos, opt.rank);
            Element r = bracket(es[0], es[1]);
            text << element_str(r) << "\n";
            j = element_json(r);
        } else if (verb == "ord") {
            auto es = detail::parse_elements(pos, opt.rank);
            Ordinal o = ord_element(es[0]);
            text << o.str() << "\n";
            j = {{"ord", ordinal_json(o)}, {"rank", es[0].rank()}};
        } else if (verb == "act") {
            Element e = parse_element(pos[0], opt.rank ? opt.rank : 0);
            Polynomial p = parse_polynomial(pos[1]);
            if (p.max_variable() > e.rank()) e = e.with_rank(p.max_variable());
            Polynomial r = act(e, p);
            text << poly_str(r) << "\n";
            j = poly_json(r);
        } else if (verb == "exp-ad") {
            auto es = detail::parse_elements(pos, opt.rank);
            Element r = exp_ad(es[0], es[1], opt.cap);
            text << element_str(r) << "\n";
            j = element_json(r);
        } else if (verb == "closure") {
            auto es = detail::parse_elements(pos, opt.rank);
            FiniteSubalgebra fs = subalgebra_closure(es, opt.cap);
            text << "dimension: " << fs.dimension << "\n";
            text << "class: " << fs.nilpotency_class << "\n";
            json basis = json::array();
            for (const Element& b : fs.basis) {
                text << "basis: " << element_str(b) << "\n";
                basis.push_back(element_str(b));
            }
            j = {{"dimension", fs.dimension}, {"class", fs.nilpotency_class}, {"basis", basis}};
        } else if (verb == "ideal-gen") {
            auto es = detail::parse_elements(pos, opt.rank);
            IdealHandle h = generated_ideal(es);
            text << ideal_str(h) << "\n";
            j = ideal_json(h);
        } else if (verb == "ideal-member") {
            IdealHandle h = parse_ideal(pos[1]);
            Element e = parse_element(pos[0]);
            if (e.rank() > h.rank) throw domain_error("element rank exceeds ideal rank");
            bool m = membership(e.with_rank(h.rank), h);
            text << detail::bool_str(m) << "\n";
            j = {{"member", m}};
        } else if (verb == "ideal-basis") {
            IdealHandle h = parse_ideal(pos[0]);
            BasisPrefix bp = basis_prefix(h, opt.limit);
            json vecs = json::array();
            std::string line;
            for (const BasisVector& v : bp.vectors) {
                std::string s = element_str(Element::term(v, 1, h.rank));
                if (!line.empty()) line += ", ";
                line += s;
                vecs.push_back(s);
            }
            text << "basis: " << (line.empty() ? "(none)" : line) << "\n";
            if (bp.finite) text << "finite, dim " << bp.dimension.str() << "\n";
            else text << "infinite\n";
            j = {{"basis", vecs}, {"finite", bp.finite}};
            if (bp.finite) j["dim"] = bp.dimension.str();
        } else if (verb == "centralizer") {
            if (opt.set_mode) {
                if (pos.size() != 1) throw domain_error("--set needs the rank as operand");
                unsigned n = static_cast<unsigned>(std::stoul(pos[0]));
                json arr = json::array();
                for (const IdealHandle& h : centralizer_set(n)) {
                    text << ideal_str(h) << "\n";
                    arr.push_back(ideal_json(h));
                }
                j = {{"centralizers", arr}};
            } else {
                if (pos.size() != 1) throw domain_error("centralizer needs an ideal handle");
                IdealHandle h = centralizer(parse_ideal(pos[0]));
                text << ideal_str(h) << "\n";
                j = ideal_json(h);
            }
        } else if (verb == "series") {
            const std::string& kind = pos[0];
            unsigned n = static_cast<unsigned>(std::stoul(pos[1]));
            if (kind == "derived") {
                json arr = json::array();
                for (const IdealHandle& h : derived_series(n)) {
                    text << ideal_str(h) << "\n";
                    arr.push_back(ideal_json(h));
                }
                j = {{"series", arr}};
            } else if (kind == "lower-central") {
                LowerCentralSeries s = lower_central_series(n);
                text << ideal_str(s.start) << "\n";
                text << ideal_str(s.stabilized) << " (stabilizes at step " << s.stabilizes_at
                     << ")\n";
                j = {{"start", ideal_json(s.start)},
                     {"stabilized", ideal_json(s.stabilized)},
                     {"stabilizes_at", s.stabilizes_at}};
            } else if (kind == "central") {
                if (pos.size() != 3) throw domain_error("central series needs an ordinal");
                IdealHandle h = central_series_term(n, parse_ordinal(pos[2]));
                text << ideal_str(h) << "\n";
                j = ideal_json(h);
            } else {
                throw domain_error("series kind must be derived | lower-central | central");
            }
        } else if (verb == "iso") {
            IdealHandle a = parse_factor(pos[0]), b = parse_factor(pos[1]);
            bool same = iso_factors(a, b);
            text << "isomorphic: " << detail::bool_str(same) << " (signature "
                 << canonical_signature(a).str() << " vs " << canonical_signature(b).str()
                 << ")\n";
            j = {{"isomorphic", same},
                 {"signature_left", canonical_signature(a).str()},
                 {"signature_right", canonical_signature(b).str()}};
        } else if (verb == "udim") {
            Ordinal o = pos[0] == "oo" ? udim_inf() : udim_factor(parse_factor(pos[0]));
            text << o.str() << "\n";
            j = {{"udim", ordinal_json(o)}};
        } else if (verb == "f-map") {
            if (opt.kernel_power > 0) {
                if (opt.rank == 0) throw domain_error("--kernel needs --rank");
                IdealHandle h = f_power_kernel(opt.rank, opt.kernel_power);
                text << ideal_str(h) << "\n";
                j = ideal_json(h);
            } else {
                if (pos.size() != 1) throw domain_error("f-map needs an element");
                auto es = detail::parse_elements(pos, opt.rank);
                Element r = f_map(es[0]);
                text << element_str(r) << "\n";
                j = element_json(r);
            }
        } else if (verb == "weyl-mul") {
            WeylElement a = parse_weyl(pos[0]), b = parse_weyl(pos[1]);
            unsigned n = std::max({a.rank(), b.rank(), opt.rank});
            // re-parse at the common rank
            a = parse_weyl(pos[0], n);
            b = parse_weyl(pos[1], n);
            WeylElement r = weyl_mul(a, b);
            text << weyl_str(r) << "\n";
            j = weyl_json(r);
        } else if (verb == "weyl-in-image") {
            WeylElement a = parse_weyl(pos[0], opt.rank);
            bool in = in_Wn_span(a);
            text << "in_image: " << detail::bool_str(in) << "\n";
            j = {{"in_image", in}};
            if (in) {
                auto coords = express_in_Wprime(a, std::max(opt.window, a.total_degree()));
                if (coords) {
                    json arr = json::array();
                    for (const auto& [v, c] : *coords) {
                        std::string nf = weyl_str(v.normal_form(a.rank()));
                        text << "W': " << rat_str(c) << " * (" << nf << ")\n";
                        arr.push_back({{"coeff", rat_str(c)}, {"vector", nf}});
                    }
                    j["wprime"] = arr;
                }
            }
        } else if (verb == "weyl-kernel-check") {
            Element a = parse_element(pos[0]), b = parse_element(pos[1]);
            if (a.terms().size() != 1 || b.terms().size() != 1)
                throw domain_error("kernel check takes single basis terms");
            auto [ta, ca] = leading_term(a);
            auto [tb, cb] = leading_term(b);
            unsigned rank = std::max({a.rank(), b.rank(), opt.rank});
            bool ok = kernel_generator_check(ta.alpha, ta.slot, tb.alpha, tb.slot, rank);
            text << detail::bool_str(ok) << "\n";
            j = {{"holds", ok}};
        } else if (verb == "mod-ord") {
            Polynomial p = parse_polynomial(pos[0]);
            if (p.terms().size() != 1) throw domain_error("mod-ord takes a single monomial");
            unsigned n = std::max(opt.rank, p.max_variable());
            if (n == 0) n = 1;
            Ordinal o = ord_monomial(p.terms().begin()->first, n);
            text << o.str() << "\n";
            j = {{"ord", ordinal_json(o)}, {"rank", n}};
        } else if (verb == "mod-prime") {
            SubmoduleHandle h = parse_submodule(pos[0]);
            if (opt.double_prime) {
                PDoublePrimeResult r = p_doubleprime(h);
                std::string w = monomial_str(r.witness);
                text << "witness: " << (w.empty() ? "1" : w) << "\n";
                text << "result: " << submodule_str(r.result) << "\n";
                j = {{"witness", w.empty() ? "1" : w}, {"result", submodule_json(r.result)}};
            } else {
                PPrimeResult r = p_prime(h);
                json arr = json::array();
                for (const Multidegree& th : r.thetas) {
                    std::string s = monomial_str(th);
                    if (s.empty()) s = "1";
                    text << "theta: " << s << "\n";
                    arr.push_back(s);
                }
                text << "quotient_dim: " << r.quotient_dim << "\n";
                j = {{"thetas", arr}, {"quotient_dim", r.quotient_dim}};
            }
        } else if (verb == "mod-ann") {
            SubmoduleHandle h = parse_submodule(pos[0]);
            auto ann = annihilator_submodule(h);
            if (ann) {
                text << ideal_str(*ann) << "\n";
                j = ideal_json(*ann);
            } else {
                text << "Zero (faithful)\n";
                j = {{"annihilator", "Zero"}};
            }
        } else if (verb == "endo") {
            // coeffs "c0,c1,..." then optionally a polynomial
            std::vector<Rat> cs;
            {
                std::stringstream ss(pos[0]);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    triad::detail::Cursor c{tok};
                    bool neg = c.accept('-');
                    Rat v = triad::detail::parse_rational(c);
                    if (!c.eof()) throw parse_error("bad coefficient", c.pos);
                    cs.push_back(neg ? -v : v);
                }
            }
            unsigned n = opt.rank;
            if (opt.kernel_mode) {
                if (n == 0) throw domain_error("endo --kernel needs --rank");
                EndoKernel k = endo_kernel(SeriesEndo(cs, n));
                text << "d: " << k.d << "\n";
                text << "kernel: " << k.description << "\n";
                j = {{"d", k.d}, {"kernel", k.description}};
            } else {
                if (pos.size() != 2) throw domain_error("endo needs coefficients and a polynomial");
                Polynomial p = parse_polynomial(pos[1]);
                if (n == 0) n = std::max(p.max_variable(), 1u);
                Polynomial r = endo_apply(SeriesEndo(cs, n), p);
                text << poly_str(r) << "\n";
                j = poly_json(r);
            }
        } else if (verb == "inf-classify") {
            Element e = parse_element(pos[0], opt.rank);
            InfIdeal a = classify_generated(e);
            auto oc = classify_closed_open(a);
            text << inf_ideal_str(a) << "\n";
            text << "open: " << detail::bool_str(oc.is_open)
                 << ", closed: " << detail::bool_str(oc.is_closed) << "\n";
            j = inf_ideal_json(a);
            j["open"] = oc.is_open;
            j["closed"] = oc.is_closed;
        } else if (verb == "inf-iso") {
            InfIdeal a = parse_inf_ideal(pos[0]), b = parse_inf_ideal(pos[1]);
            bool same = iso_factors_inf(a, b);
            text << "isomorphic: " << detail::bool_str(same) << "\n";
            j = {{"isomorphic", same}};
        } else if (verb == "inf-witness") {
            Element e = parse_element(pos[0], opt.rank);
            if (e.is_zero()) throw domain_error("witness requires a nonzero element");
            auto iters = non_nilpotence_witness(PrefixElement::from_element(e), opt.steps);
            json arr = json::array();
            for (size_t i = 0; i < iters.size(); ++i) {
                text << "step " << (i + 1) << " (known to level " << iters[i].known_to << "):\n";
                for (const auto& [lvl, poly] : iters[i].components)
                    text << "  level " << lvl << ": " << poly_str(poly) << "\n";
                arr.push_back(prefix_json(iters[i]));
            }
            j = {{"iterates", arr}};
        } else {
            err << "unknown verb\n";
            return 2;
        }
    } catch (const parse_error& e) {
        err << "syntax error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const theory_violation& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "syntax error: " << e.what() << "\n";
        return 2;
    }

    if (opt.json) out << j.dump(2) << "\n";
    else out << text.str();
    return 0;
}

} // namespace triad::cli
