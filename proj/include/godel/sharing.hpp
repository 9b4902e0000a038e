#pragma once

#include <vector>

#include "godel/code_value.hpp"
#include "godel/codes.hpp"
#include "godel/numerals.hpp"
#include "godel/syntax.hpp"

namespace godel {

// gn₃ = 𝔤 ∘ 𝔠: length-first code of the contracted L★ form of a Polish
// L0 expression. The L★ alphabet is the Polish L0 alphabet followed by δ, Δ.
class SharingNumbering {
public:
    SharingNumbering();

    const LengthFirstCodec& codec() const { return codec_; }

    Nat encode(Expr e) const;  // e in Polish L0 (L★ forms are expanded first)
    Expr decode(const Nat& n) const;  // throws NotInImage

private:
    LengthFirstCodec codec_;
};

const SharingNumbering& gn3();

// gn₃(n̲)·gn₃(n̲) > gn₃(M n̲ n̲), the multiplication clause violated.
bool non_regularity_witness(const Nat& n);

struct RegularityRow {
    Nat n;
    Nat code_n;        // gn₃(n̲)
    Nat code_product;  // gn₃(M n̲ n̲)
    bool witness;
};
std::vector<RegularityRow> regularity_scan(unsigned long from, unsigned long to);

}  // namespace godel
