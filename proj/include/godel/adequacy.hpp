#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "godel/code_value.hpp"
#include "godel/numerals.hpp"
#include "godel/syntax.hpp"

namespace godel {

// A numbering of expressions seen through encode/decode.
struct NumberingHandle {
    std::string name;
    Language lang;  // domain language
    std::function<CodeValue(Expr)> encode;
    std::function<Expr(const CodeValue&)> decode;  // empty when not offered
    // Staged numberings throw StageCapExceeded past their cap; every such
    // expression then has code >= cap_bound.
    std::optional<CodeValue> cap_bound;
};

NumberingHandle lf_numbering(const Language& lang);  // 𝔤 over the rendered string
NumberingHandle collapsed_numbering(const Language& lang);
NumberingHandle gn0_numbering(unsigned long stage_cap = 24);
NumberingHandle gn1_numbering(unsigned long stage_cap = 6);
NumberingHandle gn2_numbering(unsigned long stage_cap = 24);
NumberingHandle gn3_numbering();
NumberingHandle gn6_numbering();
// ξ + delta; used to exhibit negative cases.
NumberingHandle shifted(NumberingHandle xi, long delta);
// ξ with the codes of a and b exchanged.
NumberingHandle transposed(NumberingHandle xi, Expr a, Expr b);

// lf-infix, lf-polish, collapsed, gn0, gn1, gn2, gn3, gn6.
NumberingHandle numbering_by_name(const std::string& name, unsigned long stage_cap = 0);
std::vector<std::string> numbering_names();

struct Violation {
    std::string predicate;
    std::vector<Expr> witnesses;
    std::vector<CodeValue> codes;
    std::string inequality;  // the relation that failed, in words
};

struct CheckReport {
    std::string predicate;
    std::string numbering;
    std::string sample;  // description of what was checked
    size_t checked = 0;
    std::optional<Violation> violation;
    bool pass() const { return !violation.has_value(); }
};

// M1–M3: ξ(s) < ξ(t) for every proper sub-expression s of each sampled t.
CheckReport check_monotone(const NumberingHandle& xi, const std::vector<Expr>& sample);
// Sub-string variant: codes of the two immediate sub-strings (first or last
// symbol dropped) are smaller; transitivity covers the rest.
CheckReport check_monotone_strings(const std::string& name,
                                   const std::function<CodeValue(const Word&)>& code,
                                   const std::vector<Word>& sample);

// M4(ν): ξ(A) < ξ(ν(ξ(A))); M4★ with ≤ when strict is false.
CheckReport check_M4(const NumberingHandle& xi, NumeralKind nu, bool strict,
                     const std::vector<Expr>& sample);
// M4 stated on numerals: m < ξ(ν(m)) for each m.
CheckReport check_M4_numerals(const NumberingHandle& xi, NumeralKind nu, bool strict,
                              const std::vector<Nat>& sample);

// M5: ev(t) ≤ ξ(t) for closed terms.
CheckReport check_M5(const NumberingHandle& xi, const std::vector<Expr>& sample);

// ξ(f(t₁,…,t_k)) > f^ℕ(ξ(t₁),…,ξ(t_k)) on every compound closed sub-term, and
// ξ(0) >= 0.
CheckReport check_regular(const NumberingHandle& xi, const std::vector<Expr>& sample);

bool is_m_self_referential(const NumberingHandle& xi, Expr sentence, Expr t);

struct SrResult {
    bool found = false;
    Nat witness;  // n = ξ(A(ν(n)))
    Nat bound;    // searched n ≤ bound
    std::string text() const;
};
// Exhaustive over n ≤ bound for A with free variable v'^x.
SrResult sr_search(const NumberingHandle& xi, NumeralKind nu, Expr a, const Nat& x, const Nat& bound);

enum class SyntaxOp { And, Or, Imp, Neg, Forall, Exists, Eq, Succ, Add, Mul, Sub, Numeral };
SyntaxOp syntax_op_from_name(const std::string& name);

// ξ(f(ξ⁻¹(m₁),…)). Sub takes codes of A, of the variable and of t; Numeral
// takes a plain number n and returns ξ(ν(n)) with ν = nu.
CodeValue tracking(const NumberingHandle& xi, SyntaxOp op, const std::vector<CodeValue>& args,
                   NumeralKind nu = NumeralKind::Efficient);

}  // namespace godel
