#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

#include "godel/code_value.hpp"

namespace godel {

// Alphabet symbols. Add and Mul print as "+"/"×" in infix and "A"/"M" in
// Polish; everything else prints the same in both notations.
enum class Sym : uint8_t {
    V, Prime, Zero, S, Add, Mul, LPar, RPar, Eq, Bot, Top, Neg, And, Or, Imp,
    Forall, Exists, C, T, Q, Smash, Exp, DeltaT, DeltaF, Semi,
};
constexpr int kSymCount = 25;

enum class Notation : uint8_t { Infix, Polish };

// A flat symbol sequence, one byte per Sym.
using Word = std::string;

inline Word word_of(std::initializer_list<Sym> syms) {
    Word w;
    for (Sym s : syms) w.push_back(static_cast<char>(s));
    return w;
}
inline Sym sym_at(const Word& w, size_t i) { return static_cast<Sym>(w[i]); }

std::string glyph(Sym s, Notation nt);
std::string to_text(const Word& w, Notation nt);
// Tokenizes UTF-8 text (with ASCII fallbacks) into symbols; whitespace is skipped.
Word from_text(const std::string& text, Notation nt);

struct Language {
    Notation notation = Notation::Infix;
    bool const_c = false;
    bool truth = false;
    bool square = false;
    bool smash = false;
    bool exp = false;
    bool star = false;  // δ/Δ sharing forms; Polish only

    // Ordered alphabet: the base L0 letters, then c, T, Q, #, exp, δ, Δ as enabled.
    std::vector<Sym> alphabet() const;
    bool allows(Sym s) const;
    std::string name() const;

    static Language l0(Notation nt) { return Language{nt}; }
    static Language lstar() {
        Language l{Notation::Polish};
        l.star = true;
        return l;
    }
    bool operator==(const Language&) const = default;
};

// Documented alphabet constants.
const std::vector<Sym>& infix_l0_alphabet();   // v ' 0 S + × ( ) = ⊥ ⊤ ¬ ∧ ∨ → ∀ ∃
const std::vector<Sym>& polish_l0_alphabet();  // v ' 0 S A M = ⊥ ⊤ ¬ ∧ ∨ → ∀ ∃

enum class Kind : uint8_t {
    Var, Zero, Succ, Add, Mul, Bot, Top, Eq, Neg, And, Or, Imp, Forall, Exists,
    ConstC, Truth, Square, Smash, Exp, DeltaTerm, DeltaFml,
    Tilde,    // ñ(n), n >= 1
    Numeral,  // S^n 0, n >= 1
};

enum class Sort : uint8_t { Term, Formula, SharedTerm, SharedFormula };

struct Node;
using Expr = const Node*;

// Interned expression node. Structurally equal expressions are the same
// pointer; Tilde and Numeral runs are the canonical form of their expansions.
struct Node {
    Kind kind;
    Sort sort;
    bool has_c;
    bool closed;  // no variables at all
    Expr a = nullptr;
    Expr b = nullptr;
    Nat n;  // variable index, Tilde depth or Numeral count
    Nat len_infix;
    Nat len_polish;
    size_t hash;
    uint64_t id;

    bool is_term() const { return sort == Sort::Term; }
    bool is_formula() const { return sort == Sort::Formula; }
    const Nat& length(Notation nt) const { return nt == Notation::Infix ? len_infix : len_polish; }
};

namespace mk {
Expr var(const Nat& m);
Expr zero();
Expr c();
Expr bot();
Expr top();
Expr succ(Expr t);
Expr add(Expr t, Expr u);
Expr mul(Expr t, Expr u);
Expr smash(Expr t, Expr u);
Expr square(Expr t);
Expr exp(Expr t);
Expr eq(Expr t, Expr u);
Expr truth(Expr t);
Expr neg(Expr a);
Expr and_(Expr a, Expr b);
Expr or_(Expr a, Expr b);
Expr imp(Expr a, Expr b);
Expr forall(Expr x, Expr a);
Expr exists(Expr x, Expr a);
// Sharing forms of L★: A δ t, M δ t, = δ t and ∧/∨/→ Δ A.
Expr shared(Kind binary, Expr child);
Expr tilde(const Nat& n);    // ñ(n); ñ(0) = 0
Expr numeral(const Nat& n);  // S^n 0
Expr binary(Kind k, Expr l, Expr r);
Expr unary(Kind k, Expr x);
}  // namespace mk

// Number of interned nodes (diagnostics).
size_t interned_count();

bool is_binary(Kind k);
bool is_shared(Expr e);  // binary node in δ/Δ form
bool is_tilde(Expr e);   // ñ(n) for some n, including 0
Nat tilde_index(Expr e); // requires is_tilde
bool is_numeral(Expr e); // S^n 0, including 0
Nat numeral_value(Expr e);
bool is_hat(Expr e);     // a variable v'^m

// Direct sub-expressions qua type. Runs unfold one level: ñ(n) has child
// (SS0×ñ(n−1)), S^n0 has child S^{n−1}0 and v'^m has child v'^{m−1}.
std::vector<Expr> children(Expr e);

// Left/right operands of a binary node with sharing unfolded.
Expr lhs(Expr e);
Expr rhs(Expr e);

Expr parse(const Word& w, const Language& lang);
Expr parse_text(const std::string& text, const Language& lang);

constexpr uint64_t kDefaultRenderCap = 1u << 24;
Word render(Expr e, Notation nt, uint64_t size_cap = kDefaultRenderCap);
std::string render_text(Expr e, Notation nt, uint64_t size_cap = kDefaultRenderCap);

// Does e belong to lang (every construct it uses is allowed)?
bool in_language(Expr e, const Language& lang);

struct ExprHash {
    size_t operator()(Expr e) const { return e->hash; }
};
using ExprSet = std::unordered_set<Expr, ExprHash>;

ExprSet sub_expressions(Expr e);
Nat nu(Expr e);

// Sub-strings qua type (ε included) of a flat word; νs is the set size.
std::unordered_set<Word> sub_strings(const Word& w);
size_t nu_s(const Word& w);

Expr substitute_c(Expr e, Expr t);
// Replaces the free occurrences of variable v'^m by the closed term t.
Expr substitute_var(Expr e, const Nat& m, Expr t);
// Replaces free occurrences of v'^m by c.
Expr var_to_c(Expr e, const Nat& m);
bool occurs_free(Expr e, const Nat& m);

// Sharing translations between plain Polish L0 and L★.
Expr contract(Expr e);
Expr expand(Expr e);

// Infix string with compressed ñ runs. Each maximal ñ(n) occurrence with
// n >= 1 is kept as a run; flatten() reproduces the exact symbols.
class Str {
public:
    struct Seg {
        bool run = false;
        Word lit;  // when !run
        Nat n;     // when run: ñ(n)
    };

    Str() = default;
    explicit Str(const Word& w);
    static Str of_expr(Expr e);  // infix rendering, runs kept compressed

    void push(Sym s);
    void push_word(const Word& w);
    void push_tilde(const Nat& n);
    void append(const Str& o);

    const std::vector<Seg>& segments() const { return segs_; }
    Nat length() const;
    bool empty() const { return segs_.empty(); }
    bool is_flat_within(uint64_t cap) const;
    Word flatten(uint64_t size_cap = kDefaultRenderCap) const;

    bool operator==(const Str& o) const;
    size_t hash() const;
    std::string text(uint64_t size_cap = kDefaultRenderCap) const;

private:
    void absorb();
    std::vector<Seg> segs_;
};

struct StrHash {
    size_t operator()(const Str& s) const { return s.hash(); }
};

}  // namespace godel
