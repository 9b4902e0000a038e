#pragma once

#include <optional>
#include <unordered_map>

#include "godel/code_value.hpp"
#include "godel/codes.hpp"
#include "godel/syntax.hpp"

namespace godel {

// 𝒜⁺: the 17 infix L0 letters, then c, then the separator ';'.
const LengthFirstCodec& gn4_codec();
Nat gn4(const Word& w);
Nat gn4(const Str& s, uint64_t cap = kDefaultRenderCap);

// γ;δ with ;-free γ, δ and γ a sub-string of δ.
struct Acceptable {
    Word gamma;
    Word delta;
};
std::optional<Acceptable> split_acceptable(const Word& alpha);

// β_n = γ[c := Sñ(gn4(δ;δ))] for acceptable α_n = γ;δ, ε otherwise.
Str beta(const Nat& n);

// Largest k with Sñ(k) a sub-string of s, if any.
std::optional<Nat> largest_self_numeral(const Str& s);
// s with every occurrence of Sñ(n) replaced by c.
Str replace_self_numeral(const Str& s, const Nat& n);

struct Gn5Trace {
    Nat value;
    bool essential = false;  // the γ;δ branch with c in γ
    std::optional<Nat> k;    // largest Sñ(k) found
    Word gamma, delta;
};
// The boxed decision procedure. Flattening is needed only for the pieces that
// go into gn4; runs of the substituted numeral stay compressed.
Gn5Trace gn5_trace(const Str& z, uint64_t cap = kDefaultRenderCap);
inline Nat gn5(const Str& z, uint64_t cap = kDefaultRenderCap) { return gn5_trace(z, cap).value; }

enum class WClass { W0, W1 };
WClass w_class(Expr e);

// 2 for SS0, 4n+1 for ñ(n), 4n+3 for (SS0×ñ(n)), 2^{gn5(e)} on 𝒲₁.
CodeValue gn6(Expr e, uint64_t cap = kDefaultRenderCap);

struct SelfReference {
    Nat n;             // gn4(A(c);A(c))
    CodeValue k;       // 2^n
    Expr sentence;     // A[x := Sñ(n)]
    CodeValue code;    // gn6(sentence)
    Nat numeral_length;  // |Sñ(n)| = 7n+2
    bool holds() const { return code == k; }
};
// A(c) is A with the free occurrences of v'^x replaced by c.
SelfReference self_ref_fixed_point(Expr a, const Nat& x);

}  // namespace godel
