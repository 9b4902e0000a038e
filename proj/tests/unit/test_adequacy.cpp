#include "doctest.h"

#include <random>

#include "godel/adequacy.hpp"
#include "godel/codes.hpp"
#include "godel/errors.hpp"
#include "godel/numerals.hpp"
#include "godel/sharing.hpp"
#include "godel/staged.hpp"
#include "support.hpp"

using namespace godel;

namespace {

Language polish() { return Language::l0(Notation::Polish); }
Expr P(const std::string& s) { return parse_text(s, polish()); }

std::vector<Expr> first_exprs(const Language& lang, unsigned max_len) {
    ExprCodec all(lang);
    std::vector<Expr> out;
    for (Nat r = 0; r < all.counts().cumulative(max_len); ++r) out.push_back(all.decode(r));
    return out;
}

}  // namespace

TEST_CASE("monotonicity checks") {
    std::vector<Expr> sample = first_exprs(polish(), 6);
    NumberingHandle lf = lf_numbering(polish());
    CheckReport ok = check_monotone(lf, sample);
    CHECK(ok.pass());
    CHECK(ok.checked > 1000);

    // exchanging the codes of 0 and S0 breaks M1 at S0
    Expr zero = mk::zero(), one = mk::numeral(1);
    CheckReport bad = check_monotone(transposed(lf, zero, one), sample);
    REQUIRE(bad.violation);
    CHECK(bad.violation->witnesses == std::vector<Expr>{zero, one});
    CHECK(bad.violation->codes[0] >= bad.violation->codes[1]);

    // sub-string variant for the lf codec
    LengthFirstCodec g = lf_for(polish());
    std::vector<Word> words;
    for (Nat n = 0; n < 5000; ++n) words.push_back(g.decode(n));
    CHECK(check_monotone_strings("lf", [&](const Word& w) { return CodeValue(g.encode(w)); }, words).pass());

    StagedNumbering g0(gn0_params(), 10);
    std::vector<Expr> listed;
    for (const StageEntry& e : g0.materialize(6))
        if (!e.filler) listed.push_back(e.expr);
    CHECK(check_monotone(gn0_numbering(24), listed).pass());
}

TEST_CASE("M4 with standard and efficient numerals") {
    std::vector<Expr> sample = first_exprs(polish(), 4);
    // M1 gives M4 for standard numerals
    for (const char* name : {"lf-polish", "collapsed", "gn3"})
        CHECK(check_M4(numbering_by_name(name), NumeralKind::Standard, true, sample).pass());

    // gn0 is not strongly monotonic: its fixed point of c is its own numeral
    StagedNumbering g(gn0_params(), 24);
    FixedPoint fp = fixed_point(g, mk::c());
    CheckReport r = check_M4(gn0_numbering(24), NumeralKind::Efficient, true, {fp.fp});
    REQUIRE(r.violation);
    CHECK(r.violation->codes[0] == r.violation->codes[1]);
    CHECK(check_M4(gn0_numbering(24), NumeralKind::Efficient, false, {fp.fp}).pass());

    // gn2: m < gn2(m̄)
    std::vector<Nat> ms;
    for (unsigned m = 0; m <= 3000; ++m) ms.push_back(m);
    CHECK(check_M4_numerals(gn2_numbering(24), NumeralKind::Efficient, true, ms).pass());
}

TEST_CASE("domination and regularity") {
    std::mt19937_64 rng(31);
    std::vector<Expr> closed = test::random_exprs(polish(), 14, 400, rng, Subset::ClosedTerms);
    NumberingHandle lf = lf_numbering(polish());
    CHECK(check_regular(lf, closed).pass());
    CHECK(check_M5(lf, closed).pass());
    CHECK(check_regular(lf, {mk::zero()}).pass());

    std::vector<Expr> five{mk::mul(mk::numeral(5), mk::numeral(5))};
    CheckReport g3 = check_regular(gn3_numbering(), five);
    REQUIRE(g3.violation);
    CHECK(g3.violation->witnesses.front() == five.front());
}

TEST_CASE("smash and exp defeat polynomially bounded codes") {
    Language hash = Language::l0(Notation::Polish);
    hash.smash = true;
    std::vector<Expr> towers;
    for (unsigned n = 1; n <= 10; ++n) towers.push_back(smash_tower(n));
    CheckReport r = check_M5(lf_numbering(hash), towers);
    REQUIRE(r.violation);
    CHECK(r.violation->codes[0] > r.violation->codes[1]);

    Language ex = Language::l0(Notation::Polish);
    ex.exp = true;
    std::vector<Expr> exps;
    for (unsigned n = 0; n <= 4; ++n) exps.push_back(exp_tower(n));
    CHECK(check_M5(lf_numbering(ex), exps).violation.has_value());
    // the lf codes stay below 2^{5|t|+5}
    LengthFirstCodec g = lf_for(ex);
    for (Expr t : exps) CHECK(g.encode(render(t, Notation::Polish)) < Nat(1) << (5 * t->len_polish.get_ui() + 5));
}

TEST_CASE("domination implies weak strong monotonicity") {
    std::vector<Expr> sample = first_exprs(polish(), 3);
    for (const char* name : {"lf-polish", "collapsed", "gn3"}) {
        NumberingHandle xi = numbering_by_name(name);
        for (NumeralKind nu : {NumeralKind::Standard, NumeralKind::Efficient}) {
            std::vector<Expr> nums;
            for (Expr a : sample) nums.push_back(numeral(nu, xi.encode(a).materialize()));
            if (check_M5(xi, nums).pass()) CHECK(check_M4(xi, nu, false, sample).pass());
        }
    }
}

TEST_CASE("self-reference under a shifted numbering") {
    StagedNumbering g(gn2_params(), 4096);
    Language l = Language::l0(Notation::Infix);
    l.truth = true;
    Diagonal d = strong_diagonal(g, parse_text("T(v)", l), 0);
    NumberingHandle xi = gn2_numbering(4096);
    CHECK(is_m_self_referential(xi, d.sentence, d.term));
    CHECK_FALSE(is_m_self_referential(shifted(xi, 1), d.sentence, d.term));

    StagedNumbering g0(gn0_params(), 24);
    FixedPoint fp = fixed_point(g0, parse_text("Tc", base_language()));
    Expr num = efficient_numeral(fp.n);
    CHECK(is_m_self_referential(gn0_numbering(24), fp.fp, num));
}

TEST_CASE("sr search") {
    Language lt = base_language();
    // gn0 with efficient numerals: A = v has its c-analogue at base index 4
    SrResult hit = sr_search(gn0_numbering(24), NumeralKind::Efficient, mk::var(0), 0, 256);
    REQUIRE(hit.found);
    CHECK(hit.witness <= 256);
    CHECK(gn0_numbering(24).encode(efficient_numeral(hit.witness)) == CodeValue(hit.witness));

    SrResult miss = sr_search(lf_numbering(polish()), NumeralKind::Standard, P("=vv"), 0, 2000);
    CHECK_FALSE(miss.found);
    CHECK(miss.text() == "NotFoundWithin(2000)");
    CHECK_THROWS_AS(sr_search(lf_numbering(polish()), NumeralKind::Standard, P("=00"), 0, 10), NoFreeVariable);
}

TEST_CASE("closed terms never denote the code of a sentence containing them") {
    LengthFirstCodec g = lf_for(polish());
    NumberingHandle lf = lf_numbering(polish());
    std::vector<Expr> forms{P("=vv"), P("¬=v0"), P("=Avv0"), P("∃v'=v'v")};
    size_t terms = 0;
    for (Nat n = 0; n <= 100000; ++n) {
        Expr t;
        try {
            t = parse(g.decode(n), polish());
        } catch (const NotWellFormed&) {
            continue;
        }
        if (!t->is_term() || !t->closed) continue;
        ++terms;
        for (Expr a : forms) CHECK_FALSE(is_m_self_referential(lf, substitute_var(a, 0, t), t));
    }
    CHECK(terms >= 10);
}

TEST_CASE("tracking functions") {
    NumberingHandle lf = lf_numbering(polish());
    auto code = [&](const char* s) { return lf.encode(P(s)); };
    CHECK(tracking(lf, SyntaxOp::And, {code("⊥"), code("⊤")}) == code("∧⊥⊤"));
    CHECK(tracking(lf, SyntaxOp::Neg, {code("⊥")}) == code("¬⊥"));
    CHECK(tracking(lf, SyntaxOp::Forall, {code("v"), code("=v0")}) == code("∀v=v0"));
    CHECK(tracking(lf, SyntaxOp::Mul, {code("v"), code("S0")}) == code("MvS0"));
    CHECK(tracking(lf, SyntaxOp::Numeral, {CodeValue(0)}) == code("0"));
    CHECK(tracking(lf, SyntaxOp::Numeral, {CodeValue(3)}, NumeralKind::Standard) == code("SSS0"));
    CHECK_THROWS_AS(tracking(lf, SyntaxOp::And, {code("v"), code("⊤")}), NotACode);
    CHECK_THROWS_AS(tracking(lf, SyntaxOp::Neg, {CodeValue(1000000)}), NotACode);

    // Sub against direct substitution
    std::mt19937_64 rng(37);
    std::vector<Expr> fs = test::random_exprs(polish(), 10, 20, rng, Subset::Formulas);
    std::vector<Expr> ts = test::random_exprs(polish(), 6, 20, rng, Subset::ClosedTerms);
    for (size_t i = 0; i < fs.size(); ++i) {
        Nat x = rng() % 2;
        CodeValue got = tracking(lf, SyntaxOp::Sub, {lf.encode(fs[i]), lf.encode(mk::var(x)), lf.encode(ts[i])});
        CHECK(got == lf.encode(substitute_var(fs[i], x, ts[i])));
    }
}
