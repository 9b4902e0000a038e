#include "godel/sharing.hpp"

#include "godel/errors.hpp"

namespace godel {

SharingNumbering::SharingNumbering() : codec_(Language::lstar().alphabet()) {}

Nat SharingNumbering::encode(Expr e) const {
    Expr plain = expand(e);
    if (!in_language(plain, Language::l0(Notation::Polish)))
        throw NotInSubset("gn3 numbers plain L0 expressions");
    return codec_.encode(render(contract(plain), Notation::Polish));
}

Expr SharingNumbering::decode(const Nat& n) const {
    Word w = codec_.decode(n);
    Expr star;
    try {
        star = parse(w, Language::lstar());
    } catch (const NotWellFormed& ex) {
        throw NotInImage(std::string("not an L★ expression (") + ex.what() + ")");
    }
    Expr plain = expand(star);
    // Only the contracted shape has a preimage: "A0 0" is fine, "∧⊥⊥" is not.
    if (contract(plain) != star) throw NotInImage("string is not in contracted form");
    return plain;
}

const SharingNumbering& gn3() {
    static const SharingNumbering g;
    return g;
}

bool non_regularity_witness(const Nat& n) {
    Expr num = mk::numeral(n);
    Nat a = gn3().encode(num);
    return a * a > gn3().encode(mk::mul(num, num));
}

std::vector<RegularityRow> regularity_scan(unsigned long from, unsigned long to) {
    std::vector<RegularityRow> out;
    for (unsigned long n = from; n <= to; ++n) {
        Expr num = mk::numeral(Nat(n));
        RegularityRow r;
        r.n = n;
        r.code_n = gn3().encode(num);
        r.code_product = gn3().encode(mk::mul(num, num));
        r.witness = r.code_n * r.code_n > r.code_product;
        out.push_back(r);
    }
    return out;
}

}  // namespace godel
