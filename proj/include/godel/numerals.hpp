#pragma once

#include <utility>

#include "godel/code_value.hpp"
#include "godel/syntax.hpp"

namespace godel {

enum class NumeralKind {
    Standard,   // S^n 0
    Efficient,  // dyadic: 0 | S(SS0×α) | SS(SS0×α)
    Pd,         // prime decomposition with standard numerals for primes
    PdBar,      // pd with efficient numerals for primes
    PdStar,     // pd with ×tt in place of Qt
    PdCirc,     // contract ∘ pd★ (L★ term)
    PFrak,      // 𝔭: primes as successors of their predecessor's numeral
};

const char* numeral_kind_name(NumeralKind k);
NumeralKind numeral_kind_from_name(const std::string& name);

// The numeral for n. Trees stay compressed; nothing is rendered here.
// Prime-decomposition systems need the odd part of n below 2^64 and throw
// DomainTooLarge otherwise.
Expr numeral(NumeralKind kind, const Nat& n);
inline Expr standard_numeral(const Nat& n) { return mk::numeral(n); }
Expr efficient_numeral(const Nat& n);
// Efficient numeral of a code value; 2^e is S ñ(e) and never materialized.
Expr efficient_numeral(const CodeValue& v);

// Dyadic digits a_i ∈ {1,2}, least significant first.
std::vector<int> dyadic_digits(Nat n);

// Value in the standard model. Throws NotClosed for variables or c and
// MaterializationTooLarge past the bit budget.
Nat ev(Expr t);

// n − st(ν(n)), where st counts proper sub-terms of the numeral.
Nat numeral_gap(NumeralKind kind, const Nat& n);

struct CodeBounds {
    Nat lower;  // (N^{n+1} − 1)/(N − 1) ≤ 𝔤(n̲)
    Nat upper;  // 𝔤(n̄) ≤ max(64, ⌈N²/(N−1)⌉)·(n+1)^{8m}, 2^m ≥ N
};
CodeBounds efficient_code_bounds(unsigned N, const Nat& n);

// Smash towers ĥat(1) = (SS0#SS0), ĥat(n+1) = (SS0#ĥat(n)), and exp towers
// ⁀0 = SS0, ⁀(n+1) = exp(⁀n).
Expr smash_tower(unsigned n);
Expr exp_tower(unsigned n);

}  // namespace godel
