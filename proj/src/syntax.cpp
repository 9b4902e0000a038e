#include "godel/syntax.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "godel/errors.hpp"

namespace godel {

// ---------------------------------------------------------------------------
// Symbols and alphabets

std::string glyph(Sym s, Notation nt) {
    switch (s) {
        case Sym::V: return "v";
        case Sym::Prime: return "'";
        case Sym::Zero: return "0";
        case Sym::S: return "S";
        case Sym::Add: return nt == Notation::Infix ? "+" : "A";
        case Sym::Mul: return nt == Notation::Infix ? "×" : "M";
        case Sym::LPar: return "(";
        case Sym::RPar: return ")";
        case Sym::Eq: return "=";
        case Sym::Bot: return "⊥";
        case Sym::Top: return "⊤";
        case Sym::Neg: return "¬";
        case Sym::And: return "∧";
        case Sym::Or: return "∨";
        case Sym::Imp: return "→";
        case Sym::Forall: return "∀";
        case Sym::Exists: return "∃";
        case Sym::C: return "c";
        case Sym::T: return "T";
        case Sym::Q: return "Q";
        case Sym::Smash: return "#";
        case Sym::Exp: return "exp";
        case Sym::DeltaT: return "δ";
        case Sym::DeltaF: return "Δ";
        case Sym::Semi: return ";";
    }
    return "?";
}

std::string to_text(const Word& w, Notation nt) {
    std::string out;
    out.reserve(w.size());
    for (char ch : w) out += glyph(static_cast<Sym>(ch), nt);
    return out;
}

Word from_text(const std::string& text, Notation nt) {
    // Longest tokens first so "exp" wins over "E" and "->" over "-".
    static const std::vector<std::pair<std::string, Sym>> common = {
        {"exp", Sym::Exp}, {"->", Sym::Imp},  {"×", Sym::Mul},  {"⊥", Sym::Bot},
        {"⊤", Sym::Top},   {"¬", Sym::Neg},   {"∧", Sym::And},  {"∨", Sym::Or},
        {"→", Sym::Imp},   {"∀", Sym::Forall}, {"∃", Sym::Exists}, {"δ", Sym::DeltaT},
        {"Δ", Sym::DeltaF}, {"’", Sym::Prime}, {"·", Sym::Mul},
        {"v", Sym::V},     {"'", Sym::Prime}, {"0", Sym::Zero}, {"S", Sym::S},
        {"+", Sym::Add},   {"*", Sym::Mul},   {"(", Sym::LPar}, {")", Sym::RPar},
        {"=", Sym::Eq},    {"F", Sym::Bot},   {"V", Sym::Top},  {"!", Sym::Neg},
        {"~", Sym::Neg},   {"&", Sym::And},   {"|", Sym::Or},   {">", Sym::Imp},
        {"@", Sym::Forall}, {"E", Sym::Exists}, {"c", Sym::C},  {"T", Sym::T},
        {"Q", Sym::Q},     {"#", Sym::Smash}, {"d", Sym::DeltaT}, {"D", Sym::DeltaF},
        {";", Sym::Semi},
    };
    Word out;
    size_t i = 0;
    while (i < text.size()) {
        unsigned char ch = static_cast<unsigned char>(text[i]);
        if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
            ++i;
            continue;
        }
        // "A" is ∀ in infix but the addition symbol in Polish; "M" only exists in Polish.
        if (ch == 'A') {
            out.push_back(static_cast<char>(nt == Notation::Infix ? Sym::Forall : Sym::Add));
            ++i;
            continue;
        }
        if (ch == 'M' && nt == Notation::Polish) {
            out.push_back(static_cast<char>(Sym::Mul));
            ++i;
            continue;
        }
        bool hit = false;
        for (const auto& [tok, s] : common) {
            if (text.compare(i, tok.size(), tok) == 0) {
                out.push_back(static_cast<char>(s));
                i += tok.size();
                hit = true;
                break;
            }
        }
        if (!hit) throw AlienSymbol("unknown symbol at byte " + std::to_string(i) + " in '" + text + "'");
    }
    return out;
}

const std::vector<Sym>& infix_l0_alphabet() {
    static const std::vector<Sym> a = {Sym::V,   Sym::Prime, Sym::Zero, Sym::S,   Sym::Add,
                                       Sym::Mul, Sym::LPar,  Sym::RPar, Sym::Eq,  Sym::Bot,
                                       Sym::Top, Sym::Neg,   Sym::And,  Sym::Or,  Sym::Imp,
                                       Sym::Forall, Sym::Exists};
    return a;
}

const std::vector<Sym>& polish_l0_alphabet() {
    static const std::vector<Sym> a = {Sym::V,   Sym::Prime, Sym::Zero, Sym::S,  Sym::Add,
                                       Sym::Mul, Sym::Eq,    Sym::Bot,  Sym::Top, Sym::Neg,
                                       Sym::And, Sym::Or,    Sym::Imp,  Sym::Forall, Sym::Exists};
    return a;
}

std::vector<Sym> Language::alphabet() const {
    std::vector<Sym> a = notation == Notation::Infix ? infix_l0_alphabet() : polish_l0_alphabet();
    if (const_c) a.push_back(Sym::C);
    if (truth) a.push_back(Sym::T);
    if (square) a.push_back(Sym::Q);
    if (smash) a.push_back(Sym::Smash);
    if (exp) a.push_back(Sym::Exp);
    if (star) {
        a.push_back(Sym::DeltaT);
        a.push_back(Sym::DeltaF);
    }
    return a;
}

bool Language::allows(Sym s) const {
    for (Sym t : alphabet())
        if (t == s) return true;
    return false;
}

std::string Language::name() const {
    std::string n = star ? "Lstar" : "L0";
    if (const_c) n += "+c";
    if (truth) n += "+T";
    if (square) n += "+Q";
    if (smash) n += "+#";
    if (exp) n += "+exp";
    n += notation == Notation::Infix ? " (infix)" : " (polish)";
    return n;
}

// ---------------------------------------------------------------------------
// Interning

namespace {

struct Key {
    Kind kind;
    Expr a;
    Expr b;
    Nat n;
    bool operator==(const Key& o) const {
        return kind == o.kind && a == o.a && b == o.b && n == o.n;
    }
};

size_t nat_hash(const Nat& n) {
    size_t h = mpz_size(n.get_mpz_t());
    if (h > 0) h = h * 1000003u ^ mpz_getlimbn(n.get_mpz_t(), 0);
    return h;
}

size_t mix(size_t h, size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

struct KeyHash {
    size_t operator()(const Key& k) const {
        size_t h = static_cast<size_t>(k.kind);
        h = mix(h, k.a ? k.a->hash : 17);
        h = mix(h, k.b ? k.b->hash : 29);
        return mix(h, nat_hash(k.n));
    }
};

struct Table {
    std::mutex mu;
    std::unordered_map<Key, std::unique_ptr<Node>, KeyHash> map;
    uint64_t next_id = 0;
};

Table& table() {
    static Table* t = new Table();
    return *t;
}

Sort sort_of(Kind k) {
    switch (k) {
        case Kind::Var: case Kind::Zero: case Kind::Succ: case Kind::Add: case Kind::Mul:
        case Kind::ConstC: case Kind::Square: case Kind::Smash: case Kind::Exp:
        case Kind::Tilde: case Kind::Numeral:
            return Sort::Term;
        case Kind::DeltaTerm: return Sort::SharedTerm;
        case Kind::DeltaFml: return Sort::SharedFormula;
        default: return Sort::Formula;
    }
}

Expr intern(Kind kind, Expr a, Expr b, const Nat& n = Nat(0)) {
    Key key{kind, a, b, n};
    Table& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    auto it = t.map.find(key);
    if (it != t.map.end()) return it->second.get();

    auto node = std::make_unique<Node>();
    node->kind = kind;
    node->sort = sort_of(kind);
    node->a = a;
    node->b = b;
    node->n = n;
    node->has_c = kind == Kind::ConstC || (a && a->has_c) || (b && b->has_c);
    node->closed = kind != Kind::Var && (!a || a->closed) && (!b || b->closed);
    bool shared = is_binary(kind) && b == nullptr;
    Nat la = a ? a->len_infix : Nat(0), lb = b ? b->len_infix : Nat(0);
    Nat pa = a ? a->len_polish : Nat(0), pb = b ? b->len_polish : Nat(0);
    switch (kind) {
        case Kind::Var:
            node->len_infix = n + 1;
            node->len_polish = n + 1;
            break;
        case Kind::Zero: case Kind::ConstC: case Kind::Bot: case Kind::Top:
            node->len_infix = node->len_polish = 1;
            break;
        case Kind::Numeral:
            node->len_infix = node->len_polish = n + 1;
            break;
        case Kind::Tilde:
            node->len_infix = 7 * n + 1;
            node->len_polish = 5 * n + 1;
            break;
        case Kind::Succ: case Kind::Neg:
            node->len_infix = la + 1;
            node->len_polish = pa + 1;
            break;
        case Kind::Square: case Kind::Exp: case Kind::Truth:
            node->len_infix = la + 3;
            node->len_polish = pa + 1;
            break;
        case Kind::DeltaTerm: case Kind::DeltaFml:
            node->len_infix = la;
            node->len_polish = pa + 1;
            break;
        case Kind::Eq:
            if (shared) {
                node->len_infix = 2 * a->a->len_infix + 1;
                node->len_polish = pa + 1;
            } else {
                node->len_infix = la + lb + 1;
                node->len_polish = pa + pb + 1;
            }
            break;
        case Kind::Forall: case Kind::Exists:
            node->len_infix = la + lb + 1;
            node->len_polish = pa + pb + 1;
            break;
        default:  // bracketed binaries
            if (shared) {
                node->len_infix = 2 * a->a->len_infix + 3;
                node->len_polish = pa + 1;
            } else {
                node->len_infix = la + lb + 3;
                node->len_polish = pa + pb + 1;
            }
            break;
    }
    node->hash = KeyHash{}(key);
    node->id = t.next_id++;
    Expr out = node.get();
    t.map.emplace(std::move(key), std::move(node));
    return out;
}

void need_term(Expr t) {
    if (!t->is_term()) throw NotWellFormed(0, "term expected");
}
void need_formula(Expr a) {
    if (!a->is_formula()) throw NotWellFormed(0, "formula expected");
}

}  // namespace

size_t interned_count() {
    std::lock_guard<std::mutex> lock(table().mu);
    return table().map.size();
}

bool is_binary(Kind k) {
    switch (k) {
        case Kind::Add: case Kind::Mul: case Kind::Smash: case Kind::Eq:
        case Kind::And: case Kind::Or: case Kind::Imp:
            return true;
        default:
            return false;
    }
}

bool is_shared(Expr e) { return is_binary(e->kind) && e->b == nullptr; }

namespace mk {

Expr var(const Nat& m) { return intern(Kind::Var, nullptr, nullptr, m); }
Expr zero() { return intern(Kind::Zero, nullptr, nullptr); }
Expr c() { return intern(Kind::ConstC, nullptr, nullptr); }
Expr bot() { return intern(Kind::Bot, nullptr, nullptr); }
Expr top() { return intern(Kind::Top, nullptr, nullptr); }

Expr numeral(const Nat& n) {
    if (n == 0) return zero();
    return intern(Kind::Numeral, nullptr, nullptr, n);
}

Expr tilde(const Nat& n) {
    if (n == 0) return zero();
    return intern(Kind::Tilde, nullptr, nullptr, n);
}

Expr succ(Expr t) {
    need_term(t);
    if (t->kind == Kind::Zero) return numeral(1);
    if (t->kind == Kind::Numeral) return numeral(t->n + 1);
    // S(SS0 × ñ(n)) is ñ(n+1).
    if (t->kind == Kind::Mul && t->b && t->a->kind == Kind::Numeral && t->a->n == 2 &&
        is_tilde(t->b))
        return tilde(tilde_index(t->b) + 1);
    return intern(Kind::Succ, t, nullptr);
}

Expr binary(Kind k, Expr l, Expr r) {
    switch (k) {
        case Kind::Add: case Kind::Mul: case Kind::Smash: case Kind::Eq:
            need_term(l);
            need_term(r);
            break;
        case Kind::And: case Kind::Or: case Kind::Imp:
            need_formula(l);
            need_formula(r);
            break;
        case Kind::Forall: case Kind::Exists:
            if (l->kind != Kind::Var) throw NotWellFormed(0, "variable expected");
            need_formula(r);
            break;
        default:
            throw NotWellFormed(0, "not a binary constructor");
    }
    return intern(k, l, r);
}

Expr unary(Kind k, Expr x) {
    switch (k) {
        case Kind::Succ: return succ(x);
        case Kind::Square: case Kind::Exp: case Kind::Truth:
            need_term(x);
            return intern(k, x, nullptr);
        case Kind::Neg:
            need_formula(x);
            return intern(k, x, nullptr);
        default:
            throw NotWellFormed(0, "not a unary constructor");
    }
}

Expr add(Expr t, Expr u) { return binary(Kind::Add, t, u); }
Expr mul(Expr t, Expr u) { return binary(Kind::Mul, t, u); }
Expr smash(Expr t, Expr u) { return binary(Kind::Smash, t, u); }
Expr square(Expr t) { return unary(Kind::Square, t); }
Expr exp(Expr t) { return unary(Kind::Exp, t); }
Expr eq(Expr t, Expr u) { return binary(Kind::Eq, t, u); }
Expr truth(Expr t) { return unary(Kind::Truth, t); }
Expr neg(Expr a) { return unary(Kind::Neg, a); }
Expr and_(Expr a, Expr b) { return binary(Kind::And, a, b); }
Expr or_(Expr a, Expr b) { return binary(Kind::Or, a, b); }
Expr imp(Expr a, Expr b) { return binary(Kind::Imp, a, b); }
Expr forall(Expr x, Expr a) { return binary(Kind::Forall, x, a); }
Expr exists(Expr x, Expr a) { return binary(Kind::Exists, x, a); }

Expr shared(Kind k, Expr child) {
    switch (k) {
        case Kind::Add: case Kind::Mul: case Kind::Eq:
            need_term(child);
            return intern(k, intern(Kind::DeltaTerm, child, nullptr), nullptr);
        case Kind::And: case Kind::Or: case Kind::Imp:
            need_formula(child);
            return intern(k, intern(Kind::DeltaFml, child, nullptr), nullptr);
        default:
            throw NotWellFormed(0, "no sharing form for this constructor");
    }
}

}  // namespace mk

bool is_tilde(Expr e) { return e->kind == Kind::Tilde || e->kind == Kind::Zero; }
Nat tilde_index(Expr e) { return e->kind == Kind::Zero ? Nat(0) : e->n; }
bool is_numeral(Expr e) { return e->kind == Kind::Numeral || e->kind == Kind::Zero; }
Nat numeral_value(Expr e) { return e->kind == Kind::Zero ? Nat(0) : e->n; }
bool is_hat(Expr e) { return e->kind == Kind::Var; }

std::vector<Expr> children(Expr e) {
    switch (e->kind) {
        case Kind::Var:
            if (e->n > 0) return {mk::var(e->n - 1)};
            return {};
        case Kind::Numeral: return {mk::numeral(e->n - 1)};
        case Kind::Tilde: return {mk::mul(mk::numeral(2), mk::tilde(e->n - 1))};
        case Kind::Zero: case Kind::ConstC: case Kind::Bot: case Kind::Top: return {};
        case Kind::Succ: case Kind::Square: case Kind::Exp: case Kind::Truth: case Kind::Neg:
        case Kind::DeltaTerm: case Kind::DeltaFml:
            return {e->a};
        case Kind::Forall: case Kind::Exists: return {e->a, e->b};
        default:
            if (is_shared(e)) return {e->a->a};
            return {e->a, e->b};
    }
}

Expr lhs(Expr e) { return is_shared(e) ? e->a->a : e->a; }
Expr rhs(Expr e) { return is_shared(e) ? e->a->a : e->b; }

// ---------------------------------------------------------------------------
// Rendering

namespace {

void put(Word& w, Sym s) { w.push_back(static_cast<char>(s)); }

Sym op_sym(Kind k) {
    switch (k) {
        case Kind::Add: return Sym::Add;
        case Kind::Mul: return Sym::Mul;
        case Kind::Smash: return Sym::Smash;
        case Kind::Eq: return Sym::Eq;
        case Kind::And: return Sym::And;
        case Kind::Or: return Sym::Or;
        case Kind::Imp: return Sym::Imp;
        case Kind::Forall: return Sym::Forall;
        case Kind::Exists: return Sym::Exists;
        case Kind::Succ: return Sym::S;
        case Kind::Square: return Sym::Q;
        case Kind::Exp: return Sym::Exp;
        case Kind::Truth: return Sym::T;
        case Kind::Neg: return Sym::Neg;
        default: return Sym::Zero;
    }
}

void render_infix(Expr e, Word& w) {
    switch (e->kind) {
        case Kind::Var: {
            put(w, Sym::V);
            w.append(e->n.get_ui(), static_cast<char>(Sym::Prime));
            return;
        }
        case Kind::Zero: put(w, Sym::Zero); return;
        case Kind::ConstC: put(w, Sym::C); return;
        case Kind::Bot: put(w, Sym::Bot); return;
        case Kind::Top: put(w, Sym::Top); return;
        case Kind::Numeral:
            w.append(e->n.get_ui(), static_cast<char>(Sym::S));
            put(w, Sym::Zero);
            return;
        case Kind::Tilde: {
            static const Word head = word_of({Sym::S, Sym::LPar, Sym::S, Sym::S, Sym::Zero, Sym::Mul});
            unsigned long n = e->n.get_ui();
            for (unsigned long i = 0; i < n; ++i) w += head;
            put(w, Sym::Zero);
            w.append(n, static_cast<char>(Sym::RPar));
            return;
        }
        case Kind::Succ: case Kind::Neg:
            put(w, op_sym(e->kind));
            render_infix(e->a, w);
            return;
        case Kind::Square: case Kind::Exp: case Kind::Truth:
            put(w, op_sym(e->kind));
            put(w, Sym::LPar);
            render_infix(e->a, w);
            put(w, Sym::RPar);
            return;
        case Kind::DeltaTerm: case Kind::DeltaFml:
            render_infix(e->a, w);
            return;
        case Kind::Forall: case Kind::Exists:
            put(w, op_sym(e->kind));
            render_infix(e->a, w);
            render_infix(e->b, w);
            return;
        case Kind::Eq:
            render_infix(lhs(e), w);
            put(w, Sym::Eq);
            render_infix(rhs(e), w);
            return;
        default:
            put(w, Sym::LPar);
            render_infix(lhs(e), w);
            put(w, op_sym(e->kind));
            render_infix(rhs(e), w);
            put(w, Sym::RPar);
            return;
    }
}

void render_polish(Expr e, Word& w) {
    switch (e->kind) {
        case Kind::Var:
            put(w, Sym::V);
            w.append(e->n.get_ui(), static_cast<char>(Sym::Prime));
            return;
        case Kind::Zero: put(w, Sym::Zero); return;
        case Kind::ConstC: put(w, Sym::C); return;
        case Kind::Bot: put(w, Sym::Bot); return;
        case Kind::Top: put(w, Sym::Top); return;
        case Kind::Numeral:
            w.append(e->n.get_ui(), static_cast<char>(Sym::S));
            put(w, Sym::Zero);
            return;
        case Kind::Tilde: {
            static const Word head = word_of({Sym::S, Sym::Mul, Sym::S, Sym::S, Sym::Zero});
            unsigned long n = e->n.get_ui();
            for (unsigned long i = 0; i < n; ++i) w += head;
            put(w, Sym::Zero);
            return;
        }
        case Kind::DeltaTerm:
            put(w, Sym::DeltaT);
            render_polish(e->a, w);
            return;
        case Kind::DeltaFml:
            put(w, Sym::DeltaF);
            render_polish(e->a, w);
            return;
        default:
            put(w, op_sym(e->kind));
            if (e->a) render_polish(e->a, w);
            if (e->b) render_polish(e->b, w);
            return;
    }
}

}  // namespace

Word render(Expr e, Notation nt, uint64_t size_cap) {
    const Nat& len = e->length(nt);
    if (len > size_cap)
        throw RenderTooLarge("rendered length " + nat_str(len) + " exceeds cap " +
                             std::to_string(size_cap));
    Word w;
    w.reserve(len.get_ui());
    if (nt == Notation::Infix)
        render_infix(e, w);
    else
        render_polish(e, w);
    return w;
}

std::string render_text(Expr e, Notation nt, uint64_t size_cap) {
    return to_text(render(e, nt, size_cap), nt);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
public:
    Parser(const Word& w, const Language& lang) : w_(w), lang_(lang) {
        for (size_t i = 0; i < w.size(); ++i)
            if (!lang.allows(sym_at(w, i)))
                throw NotWellFormed(i, "symbol '" + glyph(sym_at(w, i), lang.notation) +
                                           "' is not in the alphabet of " + lang.name());
    }

    Expr run() {
        Expr e = lang_.notation == Notation::Polish ? polish() : infix_eq();
        if (pos_ != w_.size()) fail("trailing symbols");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw NotWellFormed(pos_, msg); }

    bool at_end() const { return pos_ >= w_.size(); }
    Sym peek() const {
        if (at_end()) fail("unexpected end of input");
        return sym_at(w_, pos_);
    }
    Sym next() {
        Sym s = peek();
        ++pos_;
        return s;
    }
    void expect(Sym s) {
        if (at_end() || peek() != s) fail("expected '" + glyph(s, lang_.notation) + "'");
        ++pos_;
    }

    Expr variable() {
        expect(Sym::V);
        unsigned long m = 0;
        while (!at_end() && peek() == Sym::Prime) {
            ++m;
            ++pos_;
        }
        return mk::var(m);
    }

    Expr term(Expr e) {
        if (!e->is_term()) fail("term expected");
        return e;
    }
    Expr formula(Expr e) {
        if (!e->is_formula()) fail("formula expected");
        return e;
    }

    Expr polish() {
        size_t start = pos_;
        Sym s = peek();
        switch (s) {
            case Sym::V: return variable();
            case Sym::Zero: ++pos_; return mk::zero();
            case Sym::C: ++pos_; return mk::c();
            case Sym::Bot: ++pos_; return mk::bot();
            case Sym::Top: ++pos_; return mk::top();
            case Sym::S: ++pos_; return mk::succ(term(polish()));
            case Sym::Q: ++pos_; return mk::square(term(polish()));
            case Sym::Exp: ++pos_; return mk::exp(term(polish()));
            case Sym::T: ++pos_; return mk::truth(term(polish()));
            case Sym::Neg: ++pos_; return mk::neg(formula(polish()));
            case Sym::Add: case Sym::Mul: case Sym::Eq: {
                ++pos_;
                Kind k = s == Sym::Add ? Kind::Add : s == Sym::Mul ? Kind::Mul : Kind::Eq;
                if (!at_end() && peek() == Sym::DeltaT) {
                    ++pos_;
                    return mk::shared(k, term(polish()));
                }
                Expr l = term(polish());
                Expr r = term(polish());
                return mk::binary(k, l, r);
            }
            case Sym::Smash: {
                ++pos_;
                Expr l = term(polish());
                Expr r = term(polish());
                return mk::smash(l, r);
            }
            case Sym::And: case Sym::Or: case Sym::Imp: {
                ++pos_;
                Kind k = s == Sym::And ? Kind::And : s == Sym::Or ? Kind::Or : Kind::Imp;
                if (!at_end() && peek() == Sym::DeltaF) {
                    ++pos_;
                    return mk::shared(k, formula(polish()));
                }
                Expr l = formula(polish());
                Expr r = formula(polish());
                return mk::binary(k, l, r);
            }
            case Sym::Forall: case Sym::Exists: {
                ++pos_;
                Expr x = variable();
                Expr body = formula(polish());
                return mk::binary(s == Sym::Forall ? Kind::Forall : Kind::Exists, x, body);
            }
            default:
                pos_ = start;
                fail("no production starts with '" + glyph(s, lang_.notation) + "'");
        }
    }

    // unit ('=' unit)?
    Expr infix_eq() {
        Expr l = infix_unit();
        if (l->is_term() && !at_end() && peek() == Sym::Eq) {
            ++pos_;
            Expr r = term(infix_unit());
            return mk::eq(l, r);
        }
        return l;
    }

    Expr infix_unit() {
        Sym s = peek();
        switch (s) {
            case Sym::V: return variable();
            case Sym::Zero: ++pos_; return mk::zero();
            case Sym::C: ++pos_; return mk::c();
            case Sym::Bot: ++pos_; return mk::bot();
            case Sym::Top: ++pos_; return mk::top();
            case Sym::S: ++pos_; return mk::succ(term(infix_unit()));
            case Sym::Q: case Sym::Exp: case Sym::T: {
                ++pos_;
                expect(Sym::LPar);
                Expr t = term(infix_eq());
                expect(Sym::RPar);
                Kind k = s == Sym::Q ? Kind::Square : s == Sym::Exp ? Kind::Exp : Kind::Truth;
                return mk::unary(k, t);
            }
            case Sym::Neg: ++pos_; return mk::neg(formula(infix_eq()));
            case Sym::Forall: case Sym::Exists: {
                ++pos_;
                Expr x = variable();
                Expr body = formula(infix_eq());
                return mk::binary(s == Sym::Forall ? Kind::Forall : Kind::Exists, x, body);
            }
            case Sym::LPar: {
                ++pos_;
                Expr l = infix_eq();
                Sym op = next();
                Kind k;
                switch (op) {
                    case Sym::Add: k = Kind::Add; break;
                    case Sym::Mul: k = Kind::Mul; break;
                    case Sym::Smash: k = Kind::Smash; break;
                    case Sym::And: k = Kind::And; break;
                    case Sym::Or: k = Kind::Or; break;
                    case Sym::Imp: k = Kind::Imp; break;
                    default: --pos_; fail("binary operator expected");
                }
                Expr r = infix_eq();
                expect(Sym::RPar);
                bool terms = k == Kind::Add || k == Kind::Mul || k == Kind::Smash;
                if (terms) {
                    term(l);
                    term(r);
                } else {
                    formula(l);
                    formula(r);
                }
                return mk::binary(k, l, r);
            }
            default:
                fail("no production starts with '" + glyph(s, lang_.notation) + "'");
        }
    }

    const Word& w_;
    const Language& lang_;
    size_t pos_ = 0;
};

}  // namespace

Expr parse(const Word& w, const Language& lang) {
    if (lang.star && lang.notation != Notation::Polish)
        throw NotWellFormed(0, "sharing forms require Polish notation");
    if (w.empty()) throw NotWellFormed(0, "empty input");
    return Parser(w, lang).run();
}

Expr parse_text(const std::string& text, const Language& lang) {
    return parse(from_text(text, lang.notation), lang);
}

bool in_language(Expr e, const Language& lang) {
    switch (e->kind) {
        case Kind::ConstC: return lang.const_c;
        case Kind::Truth: if (!lang.truth) return false; break;
        case Kind::Square: if (!lang.square) return false; break;
        case Kind::Smash: if (!lang.smash) return false; break;
        case Kind::Exp: if (!lang.exp) return false; break;
        case Kind::DeltaTerm: case Kind::DeltaFml: if (!lang.star) return false; break;
        default: break;
    }
    if (e->a && !in_language(e->a, lang)) return false;
    if (e->b && !in_language(e->b, lang)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Sub-structures

ExprSet sub_expressions(Expr e) {
    ExprSet seen;
    std::vector<Expr> stack{e};
    while (!stack.empty()) {
        Expr x = stack.back();
        stack.pop_back();
        if (!seen.insert(x).second) continue;
        for (Expr c : children(x)) stack.push_back(c);
    }
    return seen;
}

Nat nu(Expr e) { return Nat(sub_expressions(e).size()); }

std::unordered_set<Word> sub_strings(const Word& w) {
    std::unordered_set<Word> out;
    out.insert(Word());
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t len = 1; i + len <= w.size(); ++len) out.insert(w.substr(i, len));
    return out;
}

size_t nu_s(const Word& w) { return sub_strings(w).size(); }

// ---------------------------------------------------------------------------
// Substitution and sharing

namespace {

Expr rebuild(Expr e, Expr a, Expr b) {
    if (a == e->a && b == e->b) return e;
    switch (e->kind) {
        case Kind::DeltaTerm: case Kind::DeltaFml: return intern(e->kind, a, nullptr);
        default: break;
    }
    if (is_shared(e)) return intern(e->kind, a, nullptr);
    if (b == nullptr) return mk::unary(e->kind, a);
    return mk::binary(e->kind, a, b);
}

template <class F>
Expr map_tree(Expr e, F&& leaf, std::unordered_map<Expr, Expr>& memo) {
    if (Expr r = leaf(e)) return r;
    auto it = memo.find(e);
    if (it != memo.end()) return it->second;
    Expr a = e->a ? map_tree(e->a, leaf, memo) : nullptr;
    Expr b = e->b ? map_tree(e->b, leaf, memo) : nullptr;
    Expr out = rebuild(e, a, b);
    memo.emplace(e, out);
    return out;
}

Expr subst_var(Expr e, const Nat& m, Expr t) {
    if (e->closed) return e;
    if (e->kind == Kind::Var) return e->n == m ? t : e;
    if ((e->kind == Kind::Forall || e->kind == Kind::Exists) && e->a->n == m) return e;
    Expr a = e->a ? subst_var(e->a, m, t) : nullptr;
    Expr b = e->b ? subst_var(e->b, m, t) : nullptr;
    return rebuild(e, a, b);
}

}  // namespace

Expr substitute_c(Expr e, Expr t) {
    if (!t->is_term() || !t->closed) throw NotClosed("substitute_c needs a closed term");
    std::unordered_map<Expr, Expr> memo;
    return map_tree(
        e,
        [&](Expr x) -> Expr {
            if (!x->has_c) return x;
            if (x->kind == Kind::ConstC) return t;
            return nullptr;
        },
        memo);
}

Expr substitute_var(Expr e, const Nat& m, Expr t) {
    if (!t->is_term() || !t->closed) throw NotClosed("substitution needs a closed term");
    return subst_var(e, m, t);
}

Expr var_to_c(Expr e, const Nat& m) { return subst_var(e, m, mk::c()); }

bool occurs_free(Expr e, const Nat& m) {
    if (e->closed) return false;
    if (e->kind == Kind::Var) return e->n == m;
    if ((e->kind == Kind::Forall || e->kind == Kind::Exists) && e->a->n == m) return false;
    return (e->a && occurs_free(e->a, m)) || (e->b && occurs_free(e->b, m));
}

Expr contract(Expr e) {
    std::unordered_map<Expr, Expr> memo;
    std::function<Expr(Expr)> go = [&](Expr x) -> Expr {
        if (x->kind == Kind::Var || x->kind == Kind::Zero || x->kind == Kind::Tilde ||
            x->kind == Kind::Numeral || !x->a)
            return x;
        auto it = memo.find(x);
        if (it != memo.end()) return it->second;
        Expr out;
        bool shareable = x->kind == Kind::Add || x->kind == Kind::Mul || x->kind == Kind::Eq ||
                         x->kind == Kind::And || x->kind == Kind::Or || x->kind == Kind::Imp;
        if (is_shared(x)) {
            throw NotWellFormed(0, "contract expects a plain L0 expression");
        } else if (shareable && x->a == x->b) {
            out = mk::shared(x->kind, go(x->a));
        } else {
            out = rebuild(x, go(x->a), x->b ? go(x->b) : nullptr);
        }
        memo.emplace(x, out);
        return out;
    };
    return go(e);
}

Expr expand(Expr e) {
    std::unordered_map<Expr, Expr> memo;
    std::function<Expr(Expr)> go = [&](Expr x) -> Expr {
        if (!x->a) return x;
        auto it = memo.find(x);
        if (it != memo.end()) return it->second;
        Expr out;
        if (is_shared(x)) {
            Expr inner = go(x->a->a);
            out = mk::binary(x->kind, inner, inner);
        } else {
            out = rebuild(x, go(x->a), x->b ? go(x->b) : nullptr);
        }
        memo.emplace(x, out);
        return out;
    };
    return go(e);
}

// ---------------------------------------------------------------------------
// Compressed strings

namespace {
const Word& tilde_head() {
    static const Word h = word_of({Sym::S, Sym::LPar, Sym::S, Sym::S, Sym::Zero, Sym::Mul});
    return h;
}
}  // namespace

Str::Str(const Word& w) { push_word(w); }

void Str::push(Sym s) {
    if (segs_.empty() || segs_.back().run) segs_.push_back(Seg{});
    segs_.back().lit.push_back(static_cast<char>(s));
    if (s == Sym::RPar) absorb();
}

void Str::push_word(const Word& w) {
    for (char ch : w) push(static_cast<Sym>(ch));
}

void Str::push_tilde(const Nat& n) {
    if (n == 0) {
        push(Sym::Zero);
        return;
    }
    Seg s;
    s.run = true;
    s.n = n;
    segs_.push_back(std::move(s));
}

void Str::append(const Str& o) {
    for (const Seg& s : o.segs_) {
        if (s.run)
            push_tilde(s.n);
        else
            push_word(s.lit);
    }
}

// Called right after a ')' was appended: folds "S(SS0×" X ")" into a run
// when X is "0" or a run.
void Str::absorb() {
    const Word& head = tilde_head();
    Seg& last = segs_.back();
    if (last.run) return;
    // Case X = "0" inside a single literal.
    Word probe = head;
    probe.push_back(static_cast<char>(Sym::Zero));
    probe.push_back(static_cast<char>(Sym::RPar));
    if (last.lit.size() >= probe.size() &&
        last.lit.compare(last.lit.size() - probe.size(), probe.size(), probe) == 0) {
        last.lit.resize(last.lit.size() - probe.size());
        if (last.lit.empty()) segs_.pop_back();
        push_tilde(1);
        return;
    }
    // Case X = run: segments [... lit ending in head][run n][")"].
    if (last.lit.size() != 1 || segs_.size() < 3) return;
    Seg& run = segs_[segs_.size() - 2];
    Seg& before = segs_[segs_.size() - 3];
    if (!run.run || before.run || before.lit.size() < head.size() ||
        before.lit.compare(before.lit.size() - head.size(), head.size(), head) != 0)
        return;
    Nat n = run.n + 1;
    before.lit.resize(before.lit.size() - head.size());
    segs_.pop_back();
    segs_.pop_back();
    if (before.lit.empty()) segs_.pop_back();
    push_tilde(n);
}

Str Str::of_expr(Expr e) {
    Str out;
    std::function<void(Expr)> go = [&](Expr x) {
        switch (x->kind) {
            case Kind::Tilde: out.push_tilde(x->n); return;
            case Kind::Var: case Kind::Zero: case Kind::ConstC: case Kind::Bot: case Kind::Top:
            case Kind::Numeral:
                out.push_word(render(x, Notation::Infix));
                return;
            case Kind::Succ: case Kind::Neg:
                out.push(op_sym(x->kind));
                go(x->a);
                return;
            case Kind::Square: case Kind::Exp: case Kind::Truth:
                out.push(op_sym(x->kind));
                out.push(Sym::LPar);
                go(x->a);
                out.push(Sym::RPar);
                return;
            case Kind::DeltaTerm: case Kind::DeltaFml: go(x->a); return;
            case Kind::Forall: case Kind::Exists:
                out.push(op_sym(x->kind));
                go(x->a);
                go(x->b);
                return;
            case Kind::Eq:
                go(lhs(x));
                out.push(Sym::Eq);
                go(rhs(x));
                return;
            default:
                out.push(Sym::LPar);
                go(lhs(x));
                out.push(op_sym(x->kind));
                go(rhs(x));
                out.push(Sym::RPar);
                return;
        }
    };
    go(e);
    return out;
}

Nat Str::length() const {
    Nat n = 0;
    for (const Seg& s : segs_) n += s.run ? Nat(7 * s.n + 1) : Nat(s.lit.size());
    return n;
}

bool Str::is_flat_within(uint64_t cap) const { return length() <= cap; }

Word Str::flatten(uint64_t size_cap) const {
    Nat len = length();
    if (len > size_cap)
        throw RenderTooLarge("string of length " + nat_str(len) + " exceeds cap " +
                             std::to_string(size_cap));
    Word w;
    w.reserve(len.get_ui());
    for (const Seg& s : segs_) {
        if (!s.run) {
            w += s.lit;
            continue;
        }
        unsigned long n = s.n.get_ui();
        for (unsigned long i = 0; i < n; ++i) w += tilde_head();
        w.push_back(static_cast<char>(Sym::Zero));
        w.append(n, static_cast<char>(Sym::RPar));
    }
    return w;
}

bool Str::operator==(const Str& o) const {
    if (segs_.size() != o.segs_.size()) return false;
    for (size_t i = 0; i < segs_.size(); ++i) {
        const Seg &x = segs_[i], &y = o.segs_[i];
        if (x.run != y.run) return false;
        if (x.run ? x.n != y.n : x.lit != y.lit) return false;
    }
    return true;
}

size_t Str::hash() const {
    size_t h = 7;
    for (const Seg& s : segs_)
        h = mix(h, s.run ? nat_hash(s.n) * 31 + 1 : std::hash<Word>{}(s.lit));
    return h;
}

std::string Str::text(uint64_t size_cap) const {
    if (length() <= size_cap) return to_text(flatten(size_cap), Notation::Infix);
    std::string out;
    for (const Seg& s : segs_) {
        if (s.run)
            out += "ñ(" + nat_str(s.n) + ")";
        else
            out += to_text(s.lit, Notation::Infix);
    }
    return out;
}

}  // namespace godel
