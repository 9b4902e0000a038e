#include "doctest.h"

#include <random>

#include "godel/adequacy.hpp"
#include "godel/codes.hpp"
#include "godel/errors.hpp"
#include "godel/numerals.hpp"
#include "godel/sharing.hpp"
#include "support.hpp"

using namespace godel;

namespace {

Expr P(const std::string& s) { return parse_text(s, Language::l0(Notation::Polish)); }

// gn₃ computed by hand: contract, render, then the length-first code over the
// Polish L0 letters followed by δ, Δ.
Nat gn3_oracle(Expr e) {
    std::vector<Sym> letters = Language::l0(Notation::Polish).alphabet();
    letters.push_back(Sym::DeltaT);
    letters.push_back(Sym::DeltaF);
    return LengthFirstCodec(letters).encode(render(contract(e), Notation::Polish));
}

}  // namespace

TEST_CASE("gn3 on small formulas") {
    const SharingNumbering& g = gn3();
    CHECK(g.codec().size() == 17);
    CHECK(g.encode(P("⊥")) == gn3_oracle(P("⊥")));
    CHECK(g.encode(P("⊥")) == g.codec().encode(word_of({Sym::Bot})));
    Nat shared = g.codec().encode(render(parse_text("∧Δ⊥", Language::lstar()), Notation::Polish));
    CHECK(g.encode(P("∧⊥⊥")) == shared);
    // equal length, and Δ comes last, so sharing ⊥ does not shorten the code
    CHECK(shared > g.codec().encode(render(P("∧⊥⊥"), Notation::Polish)));
    // a longer shared operand does
    Expr eq = P("∧=00=00");
    CHECK(render_text(contract(eq), Notation::Polish) == "∧Δ=δ0");
    CHECK(g.encode(eq) < g.codec().encode(render(eq, Notation::Polish)));
    CHECK(g.encode(P("∧⊥⊤")) == g.codec().encode(render(P("∧⊥⊤"), Notation::Polish)));
    // L★ input is expanded first
    CHECK(g.encode(parse_text("∧Δ⊥", Language::lstar())) == shared);
}

TEST_CASE("gn3 agrees with the hand-built codec") {
    std::mt19937_64 rng(23);
    for (Expr e : test::random_exprs(Language::l0(Notation::Polish), 14, 500, rng))
        CHECK(gn3().encode(e) == gn3_oracle(e));
}

TEST_CASE("gn3 round trip on short formulas") {
    ExprCodec formulas(Language::l0(Notation::Polish), Subset::Formulas);
    Nat total = formulas.counts().cumulative(7);
    for (Nat r = 0; r < total; ++r) {
        Expr a = formulas.decode(r);
        REQUIRE(gn3().decode(gn3().encode(a)) == a);
    }
}

TEST_CASE("gn3 decode rejects strings outside the image") {
    const LengthFirstCodec& c = gn3().codec();
    // well formed in L★ but not contracted
    CHECK_THROWS_AS(gn3().decode(c.encode(render(P("∧⊥⊥"), Notation::Polish))), NotInImage);
    // not well formed at all
    CHECK_THROWS_AS(gn3().decode(c.encode(word_of({Sym::Eq}))), NotInImage);
    CHECK_THROWS_AS(gn3().decode(0), NotInImage);
    CHECK(gn3().decode(c.encode(word_of({Sym::Zero}))) == mk::zero());
}

TEST_CASE("contraction keeps direct sub-expressions") {
    std::mt19937_64 rng(29);
    for (Expr e : test::random_exprs(Language::l0(Notation::Polish), 14, 300, rng))
        for (Expr s : sub_expressions(e)) {
            if (s == e) continue;
            CHECK(gn3().encode(s) < gn3().encode(e));
        }
}

TEST_CASE("gn3 is monotonic and strongly monotonic for the usual numerals") {
    ExprCodec all(Language::l0(Notation::Polish));
    Nat total = all.counts().cumulative(6);
    std::vector<Expr> sample;
    for (Nat r = 0; r < total; ++r) sample.push_back(all.decode(r));
    NumberingHandle h = gn3_numbering();
    CHECK(check_monotone(h, sample).pass());
    std::vector<Nat> ns;
    for (unsigned n = 0; n <= 60; ++n) ns.push_back(n);
    CHECK(check_M4_numerals(h, NumeralKind::Standard, true, ns).pass());
    CHECK(check_M4_numerals(h, NumeralKind::Efficient, true, ns).pass());
}

TEST_CASE("gn3 is not regular") {
    for (unsigned n = 5; n <= 30; ++n) CHECK(non_regularity_witness(n));
    // the witness needs n > 4
    CHECK_FALSE(non_regularity_witness(1));
    std::vector<RegularityRow> rows = regularity_scan(5, 30);
    REQUIRE(rows.size() == 26);
    for (const RegularityRow& r : rows) {
        CHECK(r.witness);
        CHECK(r.code_n == gn3_oracle(mk::numeral(r.n)));
        CHECK(r.code_n * r.code_n > r.code_product);
    }
    std::vector<Expr> sample{mk::mul(mk::numeral(5), mk::numeral(5))};
    CheckReport rep = check_regular(gn3_numbering(), sample);
    REQUIRE(rep.violation);
}

TEST_CASE("shared pd numerals grow slowly") {
    // gn₃ of pd°(2^{2^m}) stays single exponential in m
    Nat prev = 0;
    for (unsigned m = 0; m <= 8; ++m) {
        Nat value = Nat(1) << (1u << m);
        Expr e = numeral(NumeralKind::PdCirc, value);
        Nat code = gn3().encode(e);
        CHECK(code > prev);
        CHECK(e->len_polish == 2 * m + 3);
        CHECK(code < nat_pow(Nat(17), 2 * m + 4));
        if (m >= 7) CHECK(code < value);  // strong monotonicity fails
        prev = code;
    }
}
