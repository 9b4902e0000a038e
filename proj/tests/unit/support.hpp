#pragma once

#include <random>
#include <vector>

#include "godel/codes.hpp"

namespace godel::test {

// Uniform random rank below bound.
inline Nat random_below(const Nat& bound, std::mt19937_64& rng) {
    Nat r = 0;
    for (size_t bits = 0; bits < bit_length(bound) + 64; bits += 32) r = (r << 32) + Nat(static_cast<unsigned long>(rng() & 0xffffffffu));
    return Nat(r % bound);
}

// Random well-formed Polish expressions of length at most max_len, drawn
// uniformly from the collapsed enumeration.
inline std::vector<Expr> random_exprs(const Language& lang, unsigned long max_len, size_t count,
                                      std::mt19937_64& rng, Subset subset = Subset::All) {
    ExprCodec codec(lang, subset);
    Nat total = codec.counts().cumulative(max_len);
    std::vector<Expr> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) out.push_back(codec.decode(random_below(total, rng)));
    return out;
}

}  // namespace godel::test
