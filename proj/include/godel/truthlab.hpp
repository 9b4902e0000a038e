#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "godel/adequacy.hpp"
#include "godel/numerals.hpp"
#include "godel/syntax.hpp"

namespace godel {

enum class Theory { S, Sstar, T, Tstar };
const char* theory_name(Theory t);
Theory theory_from_name(const std::string& name);

enum class Justification { Eq, Not, Disq, DisqStar, NDisq, NDisqStar };
const char* justification_name(Justification j);

// The schemes a theory adds to the syntax theory, besides Eq.
bool theory_allows(Theory t, Justification j);

// ⟨L_T, ξ, ν⟩.
struct FormalisationChoice {
    Language language;  // with T
    NumberingHandle numbering;
    NumeralKind numerals = NumeralKind::Efficient;
    unsigned long stage_cap = 0;
    Nat search_bound = 10000;  // numeral search when no construction applies

    std::string name() const;
};

// numbering ∈ {gn0, gn2, lf-polish, lf-infix, collapsed}; the language is the
// T-extension of the numbering's domain. Defaults: gn0 cap 64, gn2 cap 1024.
FormalisationChoice make_choice(const std::string& numbering, NumeralKind nu = NumeralKind::Efficient,
                                unsigned long stage_cap = 0);

// Sentences of the chains, with names kept apart: T(name), ¬A, and the two
// kinds of closed term, a literal term or ν(ξ(A)).
struct Meta;
using MetaPtr = std::shared_ptr<const Meta>;
struct Meta {
    enum class Kind { Lit, Quote, Truth, Neg } kind;
    Expr term = nullptr;  // Lit
    MetaPtr arg;          // Quote, Truth, Neg
    bool is_name() const { return kind == Kind::Lit || kind == Kind::Quote; }
};

namespace meta {
MetaPtr lit(Expr t);
MetaPtr quote(MetaPtr a);
MetaPtr truth(MetaPtr name);
MetaPtr neg(MetaPtr a);
bool same(const MetaPtr& a, const MetaPtr& b);
}  // namespace meta

// Object-level realization under the choice: ν(ξ(A)) becomes a numeral.
Expr realize(const MetaPtr& m, const FormalisationChoice& choice);
std::string meta_text(const MetaPtr& m, const FormalisationChoice& choice);

struct ClosedEquality {
    MetaPtr lhs, rhs;  // names
};

struct LiarStep {
    MetaPtr lhs, rhs;  // lhs ↔ rhs
    Justification why;
    size_t equality = 0;  // index into equalities for Eq steps
};

struct LiarCertificate {
    Theory theory;
    FormalisationChoice choice;
    Expr anchor = nullptr;  // a with ev(a) = ξ(¬T(a))
    std::string anchor_origin;
    std::vector<ClosedEquality> equalities;
    std::vector<LiarStep> steps;
};

// Empty when the certificate checks out, otherwise the first problem found.
std::optional<std::string> verify_error(const LiarCertificate& cert);
inline bool verify(const LiarCertificate& cert) { return !verify_error(cert); }

// Anchors: gn₀ with efficient numerals uses the fixed point of ¬T(c), gn₂
// the strong diagonal of ¬T(x). Otherwise ν-numerals up to the search bound
// are tried, and NoFixedPointFound reports failure. Starred theories need a
// ν-numeral anchor.
LiarCertificate build_liar(Theory theory, const FormalisationChoice& choice);

// The eight items of the truth-theory theorem. Items 1, 2, 5, 6 build the
// certificate for their choice; the consistency items 3, 4, 7, 8 throw
// UnsupportedPair.
struct TheoremItem {
    int item;
    Theory theory;
    std::string numbering;
    bool inconsistent;
    std::string statement;
};
const std::vector<TheoremItem>& theorem_items();
LiarCertificate build_item(int item, NumeralKind nu = NumeralKind::Efficient);
std::string out_of_scope_message(int item);

// Consistent/inconsistent grid: the inconsistent column is a verified
// certificate, the consistent column is downgraded to "no liar anchor found
// within the bound" for lf-polish.
struct TableRow {
    std::string constraints;
    Theory theory;
    std::string consistent_choice;
    std::string consistent_status;
    bool consistent_pass = false;
    std::string inconsistent_choice;
    std::string inconsistent_status;
    bool inconsistent_pass = false;
};
std::vector<TableRow> truth_table(const Nat& bound = 10000);

}  // namespace godel
