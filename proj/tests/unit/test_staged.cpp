#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_map>

#include "godel/adequacy.hpp"
#include "godel/errors.hpp"
#include "godel/numerals.hpp"
#include "godel/staged.hpp"

using namespace godel;

namespace {

// Literal Λ-list construction: stage k appends the fillers and then the new
// sub-expressions of A_k★ in base order, A_k★ = A_k[c := Sñ(k+Δ)].
std::vector<Expr> literal_list(const StageParams& p, unsigned long K) {
    const ExprCodec& base = base_codec();
    auto filler = [&](Expr e) { return p.filler == FillerKind::HatVar ? is_hat(e) : is_numeral(e); };
    auto make_filler = [&](const Nat& m) { return p.filler == FillerKind::HatVar ? mk::var(m) : mk::numeral(m); };
    std::vector<Expr> list;
    std::set<Expr> placed;
    Nat fillers = 0;
    for (unsigned long k = 0; k <= K; ++k) {
        Expr astar = substitute_c(base.decode(Nat(k)), mk::succ(mk::tilde(Nat(k + p.delta))));
        std::vector<std::pair<Nat, Expr>> fresh;
        for (Expr e : sub_expressions(astar))
            if (!filler(e) && !placed.count(e)) fresh.emplace_back(base.encode(e), e);
        std::sort(fresh.begin(), fresh.end());
        Nat block = p.schedule(static_cast<long>(k)) - p.schedule(static_cast<long>(k) - 1);
        for (Nat i = 0; i < block - Nat(fresh.size()); ++i) list.push_back(make_filler(fillers++));
        for (auto& [idx, e] : fresh) {
            list.push_back(e);
            placed.insert(e);
        }
    }
    return list;
}

Expr entry_expr(StagedNumbering& g, const StageEntry& e) { return e.filler ? g.filler_expr(e.m) : e.expr; }

Language lt_infix() {
    Language l = Language::l0(Notation::Infix);
    l.truth = true;
    return l;
}

}  // namespace

TEST_CASE("schedules") {
    CHECK(gn0_params().schedule(-1) == 0);
    CHECK(gn0_params().schedule(0) == 17);
    CHECK(gn1_params().schedule(0) == 32769);
    CHECK(gn2_params().schedule(0) == 17);
    CHECK(gn2_params().schedule(3) == 1025);
    for (const StageParams& p : {gn0_params(), gn1_params(), gn2_params()})
        for (long k = -1; k < 20; ++k) CHECK(p.schedule(k) < p.schedule(k + 1));
}

TEST_CASE("stage zero") {
    StagedNumbering g0(gn0_params());
    const StageReport& r = g0.stage(0);
    CHECK(r.ell <= 12);
    CHECK(r.filler_count == 17 - r.ell);
    CHECK(r.begin == 0);
    CHECK(r.end == 17);

    StagedNumbering g2(gn2_params());
    CHECK(g2.stage(0).end == 17);
    CHECK(g2.materialize(0).size() == 17);

    // α₀ = ε. Counted as the filler ⊥⁰ it adds nothing; as a regular string it
    // is the one addition of stage 0.
    StagedNumbering g1(gn1_params());
    CHECK(gn1_base_codec().decode(0).empty());
    CHECK(g1.stage(0).ell == 0);
    StagedNumbering lit(gn1_literal_params());
    CHECK(lit.stage(0).ell == 1);
    CHECK(lit.stage(0).new_words == std::vector<Word>{Word()});
    // The literal reading puts ε behind the filler ⊥, which contains it.
    Word bot = word_of({Sym::Bot});
    CHECK(lit.encode_word(Word()) > lit.encode_word(bot));
    CHECK(g1.encode_word(Word()) < g1.encode_word(bot));
}

TEST_CASE("gn0 agrees with the literal list construction") {
    StagedNumbering g(gn0_params(), 10);
    std::vector<Expr> oracle = literal_list(gn0_params(), 10);
    std::vector<StageEntry> got = g.materialize(10);
    REQUIRE(got.size() == oracle.size());
    CHECK(Nat(oracle.size()) == gn0_params().schedule(10));
    std::set<Expr> distinct(oracle.begin(), oracle.end());
    CHECK(distinct.size() == oracle.size());
    for (size_t n = 0; n < oracle.size(); ++n) {
        REQUIRE(entry_expr(g, got[n]) == oracle[n]);
        CHECK(g.encode(oracle[n]) == n);
        CHECK(g.decode(Nat(n)) == oracle[n]);
    }
    // observed ℓ per stage
    std::vector<unsigned long> ell;
    for (unsigned long k = 0; k <= 10; ++k) ell.push_back(g.stage(k).ell);
    CHECK(ell == std::vector<unsigned long>{1, 0, 1, 1, 17, 1, 1, 0, 10, 1, 1});
}

TEST_CASE("gn2 agrees with the literal list construction") {
    StagedNumbering g(gn2_params(), 5);
    std::vector<Expr> oracle = literal_list(gn2_params(), 5);
    std::vector<StageEntry> got = g.materialize(5);
    REQUIRE(got.size() == oracle.size());
    std::set<Expr> distinct(oracle.begin(), oracle.end());
    CHECK(distinct.size() == oracle.size());
    for (size_t n = 0; n < oracle.size(); ++n) {
        REQUIRE(entry_expr(g, got[n]) == oracle[n]);
        CHECK(g.encode(oracle[n]) == n);
    }
}

TEST_CASE("stage reports") {
    StagedNumbering g(gn0_params(), 24);
    const ExprCodec& base = base_codec();
    for (unsigned long k = 0; k <= 24; ++k) {
        const StageReport& r = g.stage(k);
        CHECK(r.ell <= 3 * k + 12);
        CHECK(Nat(r.ell) <= r.end - r.begin);
        CHECK(r.filler_count == r.end - r.begin - r.ell);
        CHECK(r.filler_start == r.begin - g.ell_sum(k));
        std::vector<Nat> idx = g.stage_indices(k);
        CHECK(std::is_sorted(idx.begin(), idx.end()));
        CHECK(std::adjacent_find(idx.begin(), idx.end()) == idx.end());
        for (size_t j = 0; j < r.new_exprs.size(); ++j) {
            CHECK(base.encode(r.new_exprs[j]) == idx[j]);
            CHECK(g.encode(r.new_exprs[j]) == r.end - r.ell + j);
        }
        CHECK(r.astar == substitute_c(base.decode(Nat(k)), mk::succ(mk::tilde(Nat(k + 4)))));
    }
    CHECK_THROWS_AS(g.stage(25), StageCapExceeded);

    StagedNumbering g1(gn1_params(), 6);
    for (unsigned long k = 0; k <= 6; ++k) {
        unsigned long bound = (k + 1) * (7 * (k + 15) + 2) * (7 * (k + 15) + 2) + 1;
        CHECK(g1.stage(k).ell <= bound);
    }
}

TEST_CASE("sub-expressions come first and numerals stay small") {
    StagedNumbering g(gn0_params(), 10);
    std::vector<Expr> sample;
    Nat last_filler = 0;
    bool any_filler = false;
    for (unsigned long k = 0; k <= 10; ++k) {
        const StageReport& r = g.stage(k);
        for (Nat n = r.begin; n < r.end; ++n) {
            StageEntry e = g.entry(n);
            if (e.filler) {
                // fillers are the numerals m̄ in increasing order
                if (any_filler) CHECK(e.m == last_filler + 1);
                last_filler = e.m;
                any_filler = true;
                if (e.m < 40) sample.push_back(g.filler_expr(e.m));
                continue;
            }
            sample.push_back(e.expr);
            for (Expr s : sub_expressions(e.expr)) {
                CHECK(g.encode(s) <= n);
                // Sñ(m) ⪯ B_n in Λ_k gives m ≤ k+4
                if (s->kind == Kind::Succ && is_tilde(s->a) && s->a != mk::zero())
                    CHECK(tilde_index(s->a) <= k + 4);
            }
        }
    }
    CHECK(check_monotone(gn0_numbering(24), sample).pass());
}

TEST_CASE("gn1 sub-strings") {
    StagedNumbering g(gn1_params(), 3);
    Nat seen = 0;
    g.for_each(2, [&](const Nat& n, const StageEntry& e) {
        ++seen;
        if (e.filler) return;
        for (const Word& s : sub_strings(e.word)) CHECK(g.encode_word(s) <= n);
        CHECK(g.decode_word(n) == e.word);
    });
    CHECK(seen == gn1_params().schedule(2));
    CHECK(g.filler_word(3) == word_of({Sym::Bot, Sym::Bot, Sym::Bot}));
    CHECK_THROWS_AS(g.filler_word(Nat(1) << 40), RenderTooLarge);
}

TEST_CASE("fixed points of gn0 and gn1") {
    StagedNumbering g(gn0_params(), 64);
    Language lt = base_language();
    // the smallest expression with c is c itself, at base index 4
    FixedPoint c = fixed_point(g, mk::c());
    CHECK(c.k == 4);
    CHECK(c.n == CodeValue(256));
    CHECK(c.fp == mk::succ(mk::tilde(8)));
    CHECK(ev(c.fp) == 256);
    CHECK(c.code == 256);

    for (const char* s : {"Sc", "=cc", "¬Tc", "Tc"}) {
        Expr a = parse_text(s, lt);
        FixedPoint fp = fixed_point(g, a);
        Nat n = Nat(1) << (fp.k.get_ui() + 4);
        CHECK(fp.n == CodeValue(n));
        CHECK(fp.code == n);
        CHECK(fp.fp == substitute_c(a, efficient_numeral(n)));
    }
    CHECK(fixed_point(g, parse_text("=cc", lt)).code == Nat(1) << 49);
    CHECK_THROWS_AS(fixed_point(g, parse_text("=00", lt)), NoConstC);
    StagedNumbering small(gn0_params(), 10);
    CHECK_THROWS_AS(fixed_point(small, parse_text("=cc", lt)), StageCapExceeded);

    StagedNumbering g1(gn1_params(), 6);
    FixedPoint w = fixed_point_word(g1, word_of({Sym::C}));
    CHECK(w.k == 1);
    CHECK(w.n == CodeValue(Nat(1) << 16));
    CHECK(w.code == Nat(1) << 16);
}

TEST_CASE("gn2 fixed points are squares") {
    StagedNumbering g(gn2_params(), 64);
    Language lt = base_language();
    for (const char* s : {"c", "Sc", "=cc", "Tc", "¬Tc"}) {
        FixedPoint fp = fixed_point_square(g, parse_text(s, lt));
        unsigned long k = fp.k.get_ui();
        Nat n = Nat(1) << (k + 2);
        CHECK(fp.n == CodeValue(n));
        CHECK(fp.code == n * n);
        CHECK(fp.code == gn2_params().schedule(static_cast<long>(k)) - 1);
        CHECK(fp.code != n);
    }
}

TEST_CASE("strong diagonal") {
    StagedNumbering g(gn2_params(), 4096);
    Language l = lt_infix();
    Diagonal t = strong_diagonal(g, parse_text("T(v)", l), 0);
    Nat n = Nat(1) << (297 + 2);
    CHECK(t.term == mk::mul(efficient_numeral(n), efficient_numeral(n)));
    CHECK(t.value == n * n);
    for (const char* s : {"T(v)", "!T(v)", "v=0", "T(Sv)", "Sv=0"}) {
        Diagonal d = strong_diagonal(g, parse_text(s, l), 0);
        CHECK(ev(d.term) == d.value);
        CHECK(d.code == d.value);
        CHECK(g.encode(d.sentence) == d.value);
        CHECK(is_m_self_referential(gn2_numbering(4096), d.sentence, d.term));
    }
    CHECK_THROWS_AS(strong_diagonal(g, parse_text("T(v')", l), 0), NoFreeVariable);
}

TEST_CASE("gn2 codes exceed the values of their efficient numerals") {
    StagedNumbering g(gn2_params(), 24);
    int numerals = 0;
    g.for_each(8, [&](const Nat& n, const StageEntry& e) {
        if (e.filler) return;
        if (auto m = efficient_value(e.expr)) {
            CHECK(*m < n);
            ++numerals;
        }
    });
    CHECK(numerals > 5);
    CHECK(efficient_value(efficient_numeral(Nat(77))) == Nat(77));
    CHECK_FALSE(efficient_value(mk::numeral(3)));
}

TEST_CASE("efficient numerals after substitution") {
    std::mt19937_64 rng(12);
    const ExprCodec& base = base_codec();
    int tested = 0;
    for (unsigned long k = 0; k <= 12; ++k) {
        Expr a = base.decode(Nat(k));
        for (int i = 0; i < 50; ++i) {
            Nat r = Nat(static_cast<unsigned long>(rng() >> (rng() % 60)));
            Expr s = substitute_c(a, efficient_numeral(r));
            for (Expr sub : sub_expressions(s))
                if (auto p = efficient_value(sub)) CHECK(*p < (Nat(1) << k) * (r + 2));
            ++tested;
        }
    }
    CHECK(tested == 13 * 50);
}

TEST_CASE("translations") {
    const ExprCodec& base = base_codec();
    StagedNumbering g0(gn0_params(), 24), g2(gn2_params(), 24);
    for (NumberingId id : {NumberingId::Base, NumberingId::Gn0, NumberingId::Gn2})
        CHECK(translate(id, id, Nat(12345)) == 12345);
    for (Nat n = 0; n < gn2_params().schedule(3); ++n) {
        Nat r = translate(NumberingId::Base, NumberingId::Gn2, n);
        REQUIRE(r == base.encode(g2.decode(n)));
        CHECK(translate(NumberingId::Gn2, NumberingId::Base, r) == n);
    }
    for (Nat n = 0; n < gn0_params().schedule(6); ++n) {
        Nat r = translate(NumberingId::Base, NumberingId::Gn0, n);
        REQUIRE(r == base.encode(g0.decode(n)));
    }
    StageTranslator tr(gn0_params());
    for (unsigned long k = 0; k <= 10; ++k) CHECK(tr.sigma(k) == g0.stage_indices(k));
    CHECK(numbering_id_from_name("gn2") == NumberingId::Gn2);
}
