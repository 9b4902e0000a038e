#include "godel/adequacy.hpp"

#include <unordered_map>

#include "godel/appendix.hpp"
#include "godel/codes.hpp"
#include "godel/errors.hpp"
#include "godel/sharing.hpp"
#include "godel/staged.hpp"

namespace godel {

NumberingHandle lf_numbering(const Language& lang) {
    auto codec = std::make_shared<LengthFirstCodec>(lf_for(lang));
    NumberingHandle h;
    h.name = std::string("lf-") + (lang.notation == Notation::Infix ? "infix" : "polish");
    h.lang = lang;
    h.encode = [codec, lang](Expr e) { return CodeValue(codec->encode(render(e, lang.notation))); };
    h.decode = [codec, lang](const CodeValue& n) {
        try {
            return parse(codec->decode(n.materialize()), lang);
        } catch (const NotWellFormed& ex) {
            throw NotACode(std::string("not a well-formed expression: ") + ex.what());
        }
    };
    return h;
}

NumberingHandle collapsed_numbering(const Language& lang) {
    auto codec = std::make_shared<ExprCodec>(lang);
    NumberingHandle h;
    h.name = "collapsed";
    h.lang = lang;
    h.encode = [codec](Expr e) { return CodeValue(codec->encode(e)); };
    h.decode = [codec](const CodeValue& n) { return codec->decode(n.materialize()); };
    return h;
}

namespace {

NumberingHandle staged_handle(const std::string& name, StageParams p, unsigned long cap) {
    auto g = std::make_shared<StagedNumbering>(p, cap);
    NumberingHandle h;
    h.name = name;
    h.lang = Language::l0(Notation::Polish);
    h.lang.truth = p.domain == StageDomain::Expressions;
    if (p.domain == StageDomain::Strings) {
        h.encode = [g](Expr e) { return CodeValue(g->encode_word(render(e, Notation::Polish))); };
        h.decode = [g](const CodeValue& n) { return g->decode(n.materialize()); };
    } else {
        h.encode = [g](Expr e) { return CodeValue(g->encode(e)); };
        h.decode = [g](const CodeValue& n) { return g->decode(n.materialize()); };
    }
    h.cap_bound = CodeValue(p.schedule(static_cast<long>(cap)));
    return h;
}

}  // namespace

NumberingHandle gn0_numbering(unsigned long stage_cap) { return staged_handle("gn0", gn0_params(), stage_cap); }
NumberingHandle gn1_numbering(unsigned long stage_cap) { return staged_handle("gn1", gn1_params(), stage_cap); }
NumberingHandle gn2_numbering(unsigned long stage_cap) { return staged_handle("gn2", gn2_params(), stage_cap); }

NumberingHandle gn3_numbering() {
    NumberingHandle h;
    h.name = "gn3";
    h.lang = Language::l0(Notation::Polish);
    h.encode = [](Expr e) { return CodeValue(gn3().encode(e)); };
    h.decode = [](const CodeValue& n) { return gn3().decode(n.materialize()); };
    return h;
}

NumberingHandle gn6_numbering() {
    NumberingHandle h;
    h.name = "gn6";
    h.lang = Language::l0(Notation::Infix);
    h.encode = [](Expr e) { return gn6(e); };
    return h;
}

NumberingHandle shifted(NumberingHandle xi, long delta) {
    NumberingHandle h = xi;
    h.name = xi.name + (delta >= 0 ? "+" : "") + std::to_string(delta);
    auto enc = xi.encode;
    h.encode = [enc, delta](Expr e) {
        CodeValue c = enc(e);
        return delta >= 0 ? c + CodeValue(Nat(delta)) : CodeValue(c.materialize() + delta);
    };
    h.decode = nullptr;
    h.cap_bound.reset();
    return h;
}

NumberingHandle transposed(NumberingHandle xi, Expr a, Expr b) {
    NumberingHandle h = xi;
    h.name = xi.name + "-transposed";
    auto enc = xi.encode;
    CodeValue ca = enc(a), cb = enc(b);
    h.encode = [enc, a, b, ca, cb](Expr e) {
        if (e == a) return cb;
        if (e == b) return ca;
        return enc(e);
    };
    h.decode = nullptr;
    return h;
}

std::vector<std::string> numbering_names() {
    return {"lf-infix", "lf-polish", "collapsed", "gn0", "gn1", "gn2", "gn3", "gn6"};
}

NumberingHandle numbering_by_name(const std::string& name, unsigned long stage_cap) {
    if (name == "lf-infix") return lf_numbering(Language::l0(Notation::Infix));
    if (name == "lf-polish" || name == "lf") return lf_numbering(Language::l0(Notation::Polish));
    if (name == "collapsed") return collapsed_numbering(Language::l0(Notation::Polish));
    if (name == "gn0") return gn0_numbering(stage_cap ? stage_cap : 24);
    if (name == "gn1") return gn1_numbering(stage_cap ? stage_cap : 6);
    if (name == "gn2") return gn2_numbering(stage_cap ? stage_cap : 24);
    if (name == "gn3") return gn3_numbering();
    if (name == "gn6") return gn6_numbering();
    throw UnsupportedPair("unknown numbering " + name);
}

// ---------------------------------------------------------------------------

namespace {

class CodeCache {
public:
    explicit CodeCache(const NumberingHandle& xi) : xi_(xi) {}
    const CodeValue& operator()(Expr e) {
        auto it = memo_.find(e);
        if (it != memo_.end()) return it->second;
        return memo_.emplace(e, xi_.encode(e)).first->second;
    }

private:
    const NumberingHandle& xi_;
    std::unordered_map<Expr, CodeValue, ExprHash> memo_;
};

Violation violation(std::string pred, std::vector<Expr> w, std::vector<CodeValue> c, std::string ineq) {
    return Violation{std::move(pred), std::move(w), std::move(c), std::move(ineq)};
}

}  // namespace

CheckReport check_monotone(const NumberingHandle& xi, const std::vector<Expr>& sample) {
    CheckReport r{"m1m2m3", xi.name, std::to_string(sample.size()) + " expressions, all proper sub-expressions", 0, std::nullopt};
    CodeCache code(xi);
    for (Expr t : sample) {
        CodeValue ct = code(t);
        for (Expr s : sub_expressions(t)) {
            if (s == t) continue;
            ++r.checked;
            if (!(code(s) < ct)) {
                r.violation = violation(r.predicate, {s, t}, {code(s), ct}, "code(sub) < code(expr)");
                return r;
            }
        }
    }
    return r;
}

CheckReport check_monotone_strings(const std::string& name,
                                   const std::function<CodeValue(const Word&)>& code,
                                   const std::vector<Word>& sample) {
    CheckReport r{"substring", name, std::to_string(sample.size()) + " strings, immediate sub-strings", 0, std::nullopt};
    for (const Word& w : sample) {
        if (w.empty()) continue;
        CodeValue cw = code(w);
        for (const Word& s : {w.substr(1), w.substr(0, w.size() - 1)}) {
            ++r.checked;
            CodeValue cs = code(s);
            if (!(cs < cw)) {
                Violation v;
                v.predicate = r.predicate;
                v.codes = {cs, cw};
                v.inequality = "code(" + to_text(s, Notation::Polish) + ") < code(" +
                               to_text(w, Notation::Polish) + ")";
                r.violation = v;
                return r;
            }
        }
    }
    return r;
}

namespace {

// ξ(e), or nullopt when e lies past a staged numbering's cap; in that case
// the code is at least cap_bound.
std::optional<CodeValue> try_code(const NumberingHandle& xi, Expr e) {
    try {
        return xi.encode(e);
    } catch (const StageCapExceeded&) {
        if (!xi.cap_bound) throw;
        return std::nullopt;
    }
}

Expr numeral_of(NumeralKind nu, const CodeValue& n) {
    if (nu == NumeralKind::Efficient) return efficient_numeral(n);
    return numeral(nu, n.materialize());
}

}  // namespace

CheckReport check_M4(const NumberingHandle& xi, NumeralKind nu, bool strict,
                     const std::vector<Expr>& sample) {
    CheckReport r{strict ? "m4" : "m4star", xi.name,
                  std::to_string(sample.size()) + " expressions, " + numeral_kind_name(nu) + " numerals", 0, std::nullopt};
    for (Expr a : sample) {
        CodeValue n = xi.encode(a);
        Expr num = numeral_of(nu, n);
        auto m = try_code(xi, num);
        ++r.checked;
        if (!m && !(n < *xi.cap_bound)) throw StageCapExceeded("numeral lies past the stage cap");
        bool ok = !m || (strict ? n < *m : n <= *m);
        if (!ok) {
            r.violation = violation(r.predicate, {a, num}, {n, *m},
                                    strict ? "code(A) < code(num(code(A)))" : "code(A) <= code(num(code(A)))");
            return r;
        }
    }
    return r;
}

CheckReport check_M4_numerals(const NumberingHandle& xi, NumeralKind nu, bool strict,
                              const std::vector<Nat>& sample) {
    CheckReport r{strict ? "m4" : "m4star", xi.name,
                  std::to_string(sample.size()) + " values, " + numeral_kind_name(nu) + " numerals", 0, std::nullopt};
    for (const Nat& m : sample) {
        Expr num = numeral_of(nu, CodeValue(m));
        auto c = try_code(xi, num);
        ++r.checked;
        CodeValue mv(m);
        if (!c && !(mv < *xi.cap_bound)) throw StageCapExceeded("numeral lies past the stage cap");
        bool ok = !c || (strict ? mv < *c : mv <= *c);
        if (!ok) {
            r.violation = violation(r.predicate, {num}, {mv, *c}, strict ? "m < code(num(m))" : "m <= code(num(m))");
            return r;
        }
    }
    return r;
}

CheckReport check_M5(const NumberingHandle& xi, const std::vector<Expr>& sample) {
    CheckReport r{"m5", xi.name, std::to_string(sample.size()) + " closed terms", 0, std::nullopt};
    for (Expr t : sample) {
        ++r.checked;
        CodeValue v(ev(t));
        CodeValue c = xi.encode(t);
        if (!(v <= c)) {
            r.violation = violation(r.predicate, {t}, {v, c}, "ev(t) <= code(t)");
            return r;
        }
    }
    return r;
}

namespace {

// f^ℕ applied to the codes of the direct sub-terms; nullopt for atoms.
std::optional<CodeValue> apply_on_codes(Expr u, CodeCache& code) {
    switch (u->kind) {
        case Kind::Numeral: case Kind::Tilde: case Kind::Succ:
            return code(children(u)[0]) + CodeValue(1);
        case Kind::Add: return code(lhs(u)) + code(rhs(u));
        case Kind::Mul: return code(lhs(u)) * code(rhs(u));
        case Kind::Square: return code(u->a) * code(u->a);
        case Kind::Smash: return CodeValue::pow2(code(lhs(u)).bits() * code(rhs(u)).bits());
        case Kind::Exp: return CodeValue::pow2(code(u->a));
        default: return std::nullopt;
    }
}

}  // namespace

CheckReport check_regular(const NumberingHandle& xi, const std::vector<Expr>& sample) {
    CheckReport r{"regular", xi.name, std::to_string(sample.size()) + " terms, every compound sub-term", 0, std::nullopt};
    CodeCache code(xi);
    for (Expr t : sample) {
        for (Expr u : sub_expressions(t)) {
            if (!u->is_term()) continue;
            ++r.checked;
            auto f = apply_on_codes(u, code);
            if (!f) continue;  // constants: ξ(0) >= 0 holds trivially
            if (!(*f < code(u))) {
                r.violation = violation(r.predicate, {u}, {*f, code(u)}, "f(codes of arguments) < code(f(args))");
                return r;
            }
        }
    }
    return r;
}

bool is_m_self_referential(const NumberingHandle& xi, Expr sentence, Expr t) {
    auto c = try_code(xi, sentence);
    CodeValue v(ev(t));
    if (!c) {
        if (v < *xi.cap_bound) return false;
        throw StageCapExceeded("sentence lies past the stage cap");
    }
    return *c == v;
}

std::string SrResult::text() const {
    if (found) return "Found(" + nat_str(witness) + ")";
    return "NotFoundWithin(" + nat_str(bound) + ")";
}

SrResult sr_search(const NumberingHandle& xi, NumeralKind nu, Expr a, const Nat& x, const Nat& bound) {
    if (!occurs_free(a, x)) throw NoFreeVariable("variable " + nat_str(x) + " is not free");
    SrResult r;
    r.bound = bound;
    for (Nat n = 0; n <= bound; ++n) {
        Expr s = substitute_var(a, x, numeral_of(nu, CodeValue(n)));
        auto c = try_code(xi, s);
        // Past the cap the code is at least cap_bound.
        if (!c) {
            if (CodeValue(n) >= *xi.cap_bound) throw StageCapExceeded("search bound reaches the stage cap");
            continue;
        }
        if (*c == CodeValue(n)) {
            r.found = true;
            r.witness = n;
            return r;
        }
    }
    return r;
}

SyntaxOp syntax_op_from_name(const std::string& name) {
    static const std::vector<std::pair<std::string, SyntaxOp>> names{
        {"and", SyntaxOp::And}, {"or", SyntaxOp::Or}, {"imp", SyntaxOp::Imp}, {"neg", SyntaxOp::Neg},
        {"forall", SyntaxOp::Forall}, {"exists", SyntaxOp::Exists}, {"eq", SyntaxOp::Eq},
        {"succ", SyntaxOp::Succ}, {"add", SyntaxOp::Add}, {"mul", SyntaxOp::Mul}, {"sub", SyntaxOp::Sub},
        {"num", SyntaxOp::Numeral}};
    for (auto& [n, op] : names)
        if (n == name) return op;
    throw UnsupportedPair("unknown syntactic operation " + name);
}

CodeValue tracking(const NumberingHandle& xi, SyntaxOp op, const std::vector<CodeValue>& args,
                   NumeralKind nu) {
    if (op == SyntaxOp::Numeral) {
        if (args.size() != 1) throw NotACode("num takes one argument");
        return xi.encode(numeral_of(nu, args[0]));
    }
    if (!xi.decode) throw UnsupportedPair(xi.name + " offers no decoder");
    std::vector<Expr> e;
    for (const CodeValue& c : args) e.push_back(xi.decode(c));
    auto need = [&](size_t k) {
        if (e.size() != k) throw NotACode("wrong number of arguments");
    };
    auto sort_is = [](Expr x, bool term) {
        if (x->is_term() != term) throw NotACode("argument of the wrong sort");
    };
    Expr out = nullptr;
    switch (op) {
        case SyntaxOp::And: case SyntaxOp::Or: case SyntaxOp::Imp:
            need(2);
            sort_is(e[0], false);
            sort_is(e[1], false);
            out = op == SyntaxOp::And ? mk::and_(e[0], e[1]) : op == SyntaxOp::Or ? mk::or_(e[0], e[1]) : mk::imp(e[0], e[1]);
            break;
        case SyntaxOp::Neg:
            need(1);
            sort_is(e[0], false);
            out = mk::neg(e[0]);
            break;
        case SyntaxOp::Forall: case SyntaxOp::Exists:
            need(2);
            if (e[0]->kind != Kind::Var) throw NotACode("first argument must code a variable");
            sort_is(e[1], false);
            out = op == SyntaxOp::Forall ? mk::forall(e[0], e[1]) : mk::exists(e[0], e[1]);
            break;
        case SyntaxOp::Eq:
            need(2);
            sort_is(e[0], true);
            sort_is(e[1], true);
            out = mk::eq(e[0], e[1]);
            break;
        case SyntaxOp::Succ:
            need(1);
            sort_is(e[0], true);
            out = mk::succ(e[0]);
            break;
        case SyntaxOp::Add: case SyntaxOp::Mul:
            need(2);
            sort_is(e[0], true);
            sort_is(e[1], true);
            out = op == SyntaxOp::Add ? mk::add(e[0], e[1]) : mk::mul(e[0], e[1]);
            break;
        case SyntaxOp::Sub:
            need(3);
            if (e[1]->kind != Kind::Var) throw NotACode("second argument must code a variable");
            sort_is(e[2], true);
            if (!e[2]->closed) throw NotClosed("substituted term must be closed");
            out = substitute_var(e[0], e[1]->n, e[2]);
            break;
        case SyntaxOp::Numeral: break;
    }
    return xi.encode(out);
}

}  // namespace godel
