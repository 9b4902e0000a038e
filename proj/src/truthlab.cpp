#include "godel/truthlab.hpp"

#include <stdexcept>

#include "godel/errors.hpp"
#include "godel/staged.hpp"

namespace godel {

const char* theory_name(Theory t) {
    switch (t) {
        case Theory::S: return "S";
        case Theory::Sstar: return "Sstar";
        case Theory::T: return "T";
        case Theory::Tstar: return "Tstar";
    }
    return "?";
}

Theory theory_from_name(const std::string& name) {
    if (name == "S" || name == "s") return Theory::S;
    if (name == "Sstar" || name == "sstar") return Theory::Sstar;
    if (name == "T" || name == "t") return Theory::T;
    if (name == "Tstar" || name == "tstar") return Theory::Tstar;
    throw UnsupportedPair("unknown theory " + name);
}

const char* justification_name(Justification j) {
    switch (j) {
        case Justification::Eq: return "Eq";
        case Justification::Not: return "Not";
        case Justification::Disq: return "Disq";
        case Justification::DisqStar: return "DisqStar";
        case Justification::NDisq: return "NDisq";
        case Justification::NDisqStar: return "NDisqStar";
    }
    return "?";
}

bool theory_allows(Theory t, Justification j) {
    if (j == Justification::Eq) return true;
    switch (t) {
        case Theory::S: return j == Justification::Not || j == Justification::Disq;
        case Theory::Sstar: return j == Justification::Not || j == Justification::DisqStar;
        case Theory::T: return j == Justification::NDisq;
        case Theory::Tstar: return j == Justification::NDisqStar;
    }
    return false;
}

std::string FormalisationChoice::name() const {
    return std::string("<") + language.name() + ", " + numbering.name + ", " + numeral_kind_name(numerals) + ">";
}

FormalisationChoice make_choice(const std::string& numbering, NumeralKind nu, unsigned long stage_cap) {
    FormalisationChoice c;
    c.numerals = nu;
    if (numbering == "gn0" || numbering == "gn2") {
        c.stage_cap = stage_cap ? stage_cap : (numbering == "gn0" ? 64 : 1024);
        c.numbering = numbering_by_name(numbering, c.stage_cap);
        c.language = c.numbering.lang;
        return c;
    }
    Language lang = Language::l0(numbering == "lf-infix" ? Notation::Infix : Notation::Polish);
    lang.truth = true;
    if (numbering == "lf-polish" || numbering == "lf" || numbering == "lf-infix") {
        c.numbering = lf_numbering(lang);
    } else if (numbering == "collapsed") {
        c.numbering = collapsed_numbering(lang);
    } else {
        throw UnsupportedPair(numbering + " does not number the T-extended language");
    }
    c.language = lang;
    return c;
}

// ---------------------------------------------------------------------------

namespace meta {

MetaPtr lit(Expr t) { return std::make_shared<Meta>(Meta{Meta::Kind::Lit, t, nullptr}); }
MetaPtr quote(MetaPtr a) { return std::make_shared<Meta>(Meta{Meta::Kind::Quote, nullptr, std::move(a)}); }
MetaPtr truth(MetaPtr name) { return std::make_shared<Meta>(Meta{Meta::Kind::Truth, nullptr, std::move(name)}); }
MetaPtr neg(MetaPtr a) { return std::make_shared<Meta>(Meta{Meta::Kind::Neg, nullptr, std::move(a)}); }

bool same(const MetaPtr& a, const MetaPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    if (a->kind == Meta::Kind::Lit) return a->term == b->term;
    return same(a->arg, b->arg);
}

}  // namespace meta

namespace {

Expr numeral_for(NumeralKind nu, const CodeValue& n) {
    if (nu == NumeralKind::Efficient) return efficient_numeral(n);
    return numeral(nu, n.materialize());
}

const char* nu_label(NumeralKind nu) {
    if (nu == NumeralKind::Efficient) return "bar";
    if (nu == NumeralKind::Standard) return "under";
    return numeral_kind_name(nu);
}

std::string value_text(const Nat& v) {
    if (bit_length(v) > 64 && is_power_of_two(v)) return "2^" + std::to_string(bit_length(v) - 1);
    return nat_str(v);
}

std::string term_text(Expr t) {
    if (t->kind == Kind::Zero) return "0";
    if (auto v = efficient_value(t)) return "bar(" + value_text(*v) + ")";
    if (is_numeral(t)) return "under(" + value_text(numeral_value(t)) + ")";
    if (t->kind == Kind::Mul) return "(" + term_text(t->a) + "×" + term_text(t->b) + ")";
    return render_text(t, Notation::Infix);
}

}  // namespace

Expr realize(const MetaPtr& m, const FormalisationChoice& choice) {
    switch (m->kind) {
        case Meta::Kind::Lit: return m->term;
        case Meta::Kind::Quote: return numeral_for(choice.numerals, choice.numbering.encode(realize(m->arg, choice)));
        case Meta::Kind::Truth: return mk::truth(realize(m->arg, choice));
        case Meta::Kind::Neg: return mk::neg(realize(m->arg, choice));
    }
    throw std::logic_error("bad meta node");
}

std::string meta_text(const MetaPtr& m, const FormalisationChoice& choice) {
    switch (m->kind) {
        case Meta::Kind::Lit: return term_text(m->term);
        case Meta::Kind::Quote:
            return std::string(nu_label(choice.numerals)) + "(" + choice.numbering.name + "(" +
                   meta_text(m->arg, choice) + "))";
        case Meta::Kind::Truth: return "T(" + meta_text(m->arg, choice) + ")";
        case Meta::Kind::Neg: return "¬" + meta_text(m->arg, choice);
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Verification

namespace {

using K = Meta::Kind;

bool is(const MetaPtr& m, K k) { return m && m->kind == k; }

// T(ν(ξ(X))) → X.
MetaPtr quoted_in_truth(const MetaPtr& m) {
    if (!is(m, K::Truth) || !is(m->arg, K::Quote)) return nullptr;
    return m->arg->arg;
}

bool scheme_match(Justification j, const MetaPtr& x, const MetaPtr& y) {
    MetaPtr inner = quoted_in_truth(x);
    if (!inner) return false;
    switch (j) {
        case Justification::Not:
            // T(ν(ξ(¬B))) ↔ ¬T(ν(ξ(B)))
            return is(inner, K::Neg) && is(y, K::Neg) && quoted_in_truth(y->arg) &&
                   meta::same(quoted_in_truth(y->arg), inner->arg);
        case Justification::Disq:
            // T(ν(ξ(T(t)))) ↔ T(t)
            return is(inner, K::Truth) && is(y, K::Truth) && meta::same(inner->arg, y->arg);
        case Justification::DisqStar:
            // T(ν(ξ(T(ν(ξ(B)))))) ↔ T(ν(ξ(B)))
            return is(inner, K::Truth) && is(inner->arg, K::Quote) && is(y, K::Truth) &&
                   meta::same(inner->arg, y->arg);
        case Justification::NDisq:
            // T(ν(ξ(¬T(t)))) ↔ ¬T(t)
            return is(inner, K::Neg) && is(inner->arg, K::Truth) && meta::same(inner, y);
        case Justification::NDisqStar:
            // T(ν(ξ(¬T(ν(ξ(B)))))) ↔ ¬T(ν(ξ(B)))
            return is(inner, K::Neg) && is(inner->arg, K::Truth) && is(inner->arg->arg, K::Quote) &&
                   meta::same(inner, y);
        case Justification::Eq: return false;
    }
    return false;
}

// An instance may sit under any number of shared negations.
bool scheme_step_ok(Justification j, MetaPtr x, MetaPtr y) {
    for (;;) {
        if (scheme_match(j, x, y) || scheme_match(j, y, x)) return true;
        if (!is(x, K::Neg) || !is(y, K::Neg)) return false;
        x = x->arg;
        y = y->arg;
    }
}

struct EqWalk {
    const ClosedEquality& eq;
    const FormalisationChoice& choice;
    size_t replaced = 0;
    std::string error;

    bool pair(const MetaPtr& l, const MetaPtr& r) const {
        return (meta::same(l, eq.lhs) && meta::same(r, eq.rhs)) || (meta::same(l, eq.rhs) && meta::same(r, eq.lhs));
    }

    bool walk(const MetaPtr& l, const MetaPtr& r, bool under_quote) {
        if (meta::same(l, r)) return true;
        if (l->is_name() && r->is_name() && pair(l, r)) {
            // Inside a quotation only the very same term may be exchanged.
            if (under_quote && realize(l, choice) != realize(r, choice)) {
                error = "Eq rewrites under a quotation with distinct terms";
                return false;
            }
            ++replaced;
            return true;
        }
        if (l->kind != r->kind || l->kind == K::Lit) {
            error = "sides differ outside the equality";
            return false;
        }
        return walk(l->arg, r->arg, under_quote || l->kind == K::Quote);
    }
};

std::optional<std::string> check_sentence(const MetaPtr& m, const FormalisationChoice& choice) {
    Expr e = realize(m, choice);
    if (!e->is_formula() || !e->closed || e->has_c || !in_language(e, choice.language))
        return "step side " + meta_text(m, choice) + " is not a sentence of " + choice.language.name();
    return std::nullopt;
}

}  // namespace

std::optional<std::string> verify_error(const LiarCertificate& cert) {
    const FormalisationChoice& ch = cert.choice;
    try {
        if (!cert.anchor || !cert.anchor->is_term() || !cert.anchor->closed || cert.anchor->has_c)
            return "anchor is not a closed term";
        for (size_t i = 0; i < cert.equalities.size(); ++i) {
            const ClosedEquality& q = cert.equalities[i];
            if (!q.lhs->is_name() || !q.rhs->is_name()) return "equality " + std::to_string(i) + " is not between terms";
            if (ev(realize(q.lhs, ch)) != ev(realize(q.rhs, ch)))
                return "equality " + std::to_string(i) + " is false: " + meta_text(q.lhs, ch) + " = " + meta_text(q.rhs, ch);
        }
        if (cert.steps.empty()) return "empty chain";
        MetaPtr a = meta::truth(meta::lit(cert.anchor));
        if (!meta::same(cert.steps.front().lhs, a)) return "chain does not start at T(a)";
        if (!meta::same(cert.steps.back().rhs, meta::neg(a))) return "chain does not end at ¬T(a)";
        for (size_t i = 0; i < cert.steps.size(); ++i) {
            const LiarStep& s = cert.steps[i];
            std::string at = "step " + std::to_string(i + 1) + ": ";
            if (i > 0 && !meta::same(cert.steps[i - 1].rhs, s.lhs)) return at + "not linked to the previous step";
            if (!theory_allows(cert.theory, s.why))
                return at + justification_name(s.why) + " is not available in " + theory_name(cert.theory);
            for (const MetaPtr& side : {s.lhs, s.rhs})
                if (auto err = check_sentence(side, ch)) return at + *err;
            if (s.why == Justification::Eq) {
                if (s.equality >= cert.equalities.size()) return at + "missing equality";
                EqWalk w{cert.equalities[s.equality], ch, 0, {}};
                if (!w.walk(s.lhs, s.rhs, false)) return at + w.error;
                if (w.replaced == 0) return at + "Eq step rewrites nothing";
            } else if (!scheme_step_ok(s.why, s.lhs, s.rhs)) {
                return at + "not an instance of " + justification_name(s.why);
            }
        }
    } catch (const Error& ex) {
        return std::string("evaluation failed: ") + ex.what();
    }
    // T(a) ↔ ¬T(a) gives ⊥ propositionally.
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Construction

LiarCertificate build_liar(Theory theory, const FormalisationChoice& choice) {
    bool star = theory == Theory::Sstar || theory == Theory::Tstar;
    const std::string& name = choice.numbering.name;
    Expr liar_c = mk::neg(mk::truth(mk::c()));
    Expr liar_x = mk::neg(mk::truth(mk::var(0)));

    LiarCertificate cert{theory, choice, nullptr, {}, {}, {}};
    if (name == "gn0" && choice.numerals == NumeralKind::Efficient) {
        StagedNumbering g(gn0_params(), choice.stage_cap);
        FixedPoint fp = fixed_point(g, liar_c);
        cert.anchor = fp.fp->a->a;
        cert.anchor_origin = "fixed point n = gn0(¬T(bar(n))), n = " + fp.n.str() + ", base index " + nat_str(fp.k);
    } else if (name == "gn2" && !star) {
        StagedNumbering g(gn2_params(), choice.stage_cap);
        Diagonal d = strong_diagonal(g, liar_x, 0);
        cert.anchor = d.term;
        cert.anchor_origin = "strong diagonal ev(t) = gn2(¬T(t)), ev(t) = " + value_text(d.value);
    } else {
        SrResult r = sr_search(choice.numbering, choice.numerals, liar_x, 0, choice.search_bound);
        if (!r.found)
            throw NoFixedPointFound("no n <= " + nat_str(choice.search_bound) + " with n = " + name + "(¬T(" +
                                    nu_label(choice.numerals) + "(n)))");
        cert.anchor = numeral_for(choice.numerals, CodeValue(r.witness));
        cert.anchor_origin = "numeral search n = " + nat_str(r.witness);
    }

    MetaPtr lit = meta::lit(cert.anchor);
    MetaPtr liar = meta::neg(meta::truth(lit));  // ¬T(a)
    MetaPtr named = meta::quote(liar);           // ν(ξ(¬T(a)))
    cert.equalities.push_back({lit, named});
    auto T = [](MetaPtr x) { return meta::truth(std::move(x)); };
    auto N = [](MetaPtr x) { return meta::neg(std::move(x)); };
    auto Q = [](MetaPtr x) { return meta::quote(std::move(x)); };
    auto step = [&](MetaPtr l, MetaPtr r, Justification j) { cert.steps.push_back({std::move(l), std::move(r), j, 0}); };

    switch (theory) {
        case Theory::S:
            step(T(lit), T(named), Justification::Eq);
            step(T(named), N(T(Q(T(lit)))), Justification::Not);
            step(N(T(Q(T(lit)))), N(T(lit)), Justification::Disq);
            break;
        case Theory::Sstar:
            step(T(lit), T(named), Justification::Eq);
            step(T(named), N(T(Q(T(lit)))), Justification::Not);
            step(N(T(Q(T(lit)))), N(T(Q(T(named)))), Justification::Eq);
            step(N(T(Q(T(named)))), N(T(named)), Justification::DisqStar);
            step(N(T(named)), N(T(lit)), Justification::Eq);
            break;
        case Theory::T:
            step(T(lit), T(named), Justification::Eq);
            step(T(named), N(T(lit)), Justification::NDisq);
            break;
        case Theory::Tstar:
            step(T(lit), T(named), Justification::Eq);
            step(T(named), T(Q(N(T(named)))), Justification::Eq);
            step(T(Q(N(T(named)))), N(T(named)), Justification::NDisqStar);
            step(N(T(named)), N(T(lit)), Justification::Eq);
            break;
    }
    if (auto err = verify_error(cert)) throw NoFixedPointFound("anchor does not support the chain: " + *err);
    return cert;
}

const std::vector<TheoremItem>& theorem_items() {
    static const std::vector<TheoremItem> items{
        {1, Theory::S, "gn2", true, "S(L0_T, nu, gn2) derives ⊥"},
        {2, Theory::Sstar, "gn0", true, "S*(L+_T, bar, gn0) derives ⊥"},
        {3, Theory::S, "gamma", false, "S(L0_T, nu, gamma) is consistent"},
        {4, Theory::Sstar, "gamma", false, "S*(L+_T, nu, gamma) is consistent"},
        {5, Theory::T, "gn2", true, "T(L0_T, nu, gn2) derives ⊥"},
        {6, Theory::Tstar, "gn0", true, "T*(L+_T, bar, gn0) derives ⊥"},
        {7, Theory::T, "gamma", false, "T(L0_T, nu, gamma) is consistent"},
        {8, Theory::Tstar, "gamma", false, "T*(L+_T, nu, gamma) is consistent"},
    };
    return items;
}

std::string out_of_scope_message(int item) {
    for (const TheoremItem& t : theorem_items())
        if (t.item == item && !t.inconsistent)
            return "item " + std::to_string(item) + " (" + t.statement +
                   " for every E-adequate, strongly monotonic, L0-regular gamma) is a consistency claim; "
                   "it rests on a model construction and cannot be certified by computation";
    throw UnsupportedPair("no consistency item " + std::to_string(item));
}

LiarCertificate build_item(int item, NumeralKind nu) {
    const TheoremItem* found = nullptr;
    for (const TheoremItem& t : theorem_items())
        if (t.item == item) found = &t;
    if (!found) throw UnsupportedPair("no theorem item " + std::to_string(item));
    if (!found->inconsistent) throw UnsupportedPair(out_of_scope_message(item));
    if (found->numbering == "gn0" && nu != NumeralKind::Efficient)
        throw UnsupportedPair("item " + std::to_string(item) + " is stated for efficient numerals");
    if (nu != NumeralKind::Efficient && nu != NumeralKind::Standard)
        throw UnsupportedPair("items 1 and 5 take standard or efficient numerals");
    return build_liar(found->theory, make_choice(found->numbering, nu));
}

std::vector<TableRow> truth_table(const Nat& bound) {
    std::vector<TableRow> rows;
    const char* strong = "E-adequate & strongly monotonic";
    const char* plain = "E-adequate & monotonic";
    struct Row {
        const char* constraints;
        int item;
    };
    for (Row s : {Row{strong, 1}, Row{strong, 5}, Row{plain, 2}, Row{plain, 6}}) {
        const TheoremItem& it = theorem_items()[s.item - 1];
        TableRow row;
        row.constraints = s.constraints;
        row.theory = it.theory;

        FormalisationChoice gamma = make_choice("lf-polish");
        gamma.search_bound = bound;
        row.consistent_choice = gamma.name();
        try {
            build_liar(it.theory, gamma);
            row.consistent_status = "liar anchor found";
        } catch (const NoFixedPointFound&) {
            row.consistent_pass = true;
            row.consistent_status = "no inconsistency found within n <= " + nat_str(bound);
        }

        try {
            LiarCertificate cert = build_item(s.item);
            row.inconsistent_choice = cert.choice.name();
            row.inconsistent_pass = verify(cert);
            row.inconsistent_status = row.inconsistent_pass
                                          ? "⊥ certified in " + std::to_string(cert.steps.size()) + " steps"
                                          : "certificate rejected";
        } catch (const Error& ex) {
            row.inconsistent_choice = it.numbering;
            row.inconsistent_status = ex.what();
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace godel
