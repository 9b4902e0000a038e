#include "doctest.h"

#include <random>
#include <set>

#include "godel/codes.hpp"
#include "godel/errors.hpp"
#include "godel/syntax.hpp"
#include "support.hpp"

using namespace godel;

namespace {

Expr P(const std::string& s) { return parse_text(s, Language::l0(Notation::Polish)); }
Expr I(const std::string& s) { return parse_text(s, Language::l0(Notation::Infix)); }

// Oracle for ν on Polish words: at each non-prime position take the
// maximal-munch well-formed sub-word, then add the shorter variables v'^j
// that a variable v'^m contains as sub-expressions.
size_t nu_by_substrings(Expr e, const Language& lang) {
    Word w = render(e, Notation::Polish);
    std::set<Word> found;
    auto prime = [&](size_t j) { return j < w.size() && sym_at(w, j) == Sym::Prime; };
    for (size_t i = 0; i < w.size(); ++i) {
        if (prime(i)) continue;
        for (size_t j = i + 1; j <= w.size(); ++j) {
            if (prime(j)) continue;
            try {
                parse(w.substr(i, j - i), lang);
            } catch (const NotWellFormed&) {
                continue;
            }
            found.insert(w.substr(i, j - i));
            if (sym_at(w, i) == Sym::V)
                for (size_t k = i + 1; k < j; ++k) found.insert(w.substr(i, k - i));
            break;
        }
    }
    return found.size();
}

}  // namespace

TEST_CASE("parse and render agree in both notations") {
    for (const char* s : {"v=v", "@v(v+0)=S0", "!(v'=0&V)", "((v*v')+SS0)=0", "E v''(v''=v''|F)"}) {
        Expr e = I(s);
        Word infix = render(e, Notation::Infix), polish = render(e, Notation::Polish);
        CHECK(parse(infix, Language::l0(Notation::Infix)) == e);
        CHECK(parse(polish, Language::l0(Notation::Polish)) == e);
        CHECK(Nat(infix.size()) == e->len_infix);
        CHECK(Nat(polish.size()) == e->len_polish);
    }
    CHECK(render_text(I("(v+0)=S0"), Notation::Polish) == "=Av0S0");
    CHECK(render_text(P("=Mv0S0"), Notation::Infix) == "(v×0)=S0");
}

TEST_CASE("malformed input reports its position") {
    try {
        parse_text("=v", Language::l0(Notation::Polish));
        FAIL("accepted");
    } catch (const NotWellFormed& e) {
        CHECK(e.position() == 2);
    }
    CHECK_THROWS(parse_text("Tv", Language::l0(Notation::Polish)));
    CHECK_THROWS_AS(parse_text("v=v v", Language::l0(Notation::Infix)), NotWellFormed);
}

TEST_CASE("interning gives one node per expression") {
    CHECK(I("S(SS0×0)") == mk::tilde(1));
    CHECK(I("SSS0") == mk::numeral(3));
    CHECK(mk::succ(mk::numeral(2)) == mk::numeral(3));
    CHECK(I("v''") == mk::var(2));
}

TEST_CASE("dyadic runs") {
    Expr t2 = mk::tilde(2);
    CHECK(render_text(t2, Notation::Infix) == "S(SS0×S(SS0×0))");
    CHECK(t2->len_infix == 15);
    for (unsigned n = 0; n <= 40; ++n) CHECK(mk::tilde(n)->len_infix == 7 * n + 1);
    // ν(ñ(1)) = |{0, S0, SS0, (SS0×0), S(SS0×0)}|
    CHECK(nu(mk::tilde(1)) == 5);
    CHECK(nu_by_substrings(mk::tilde(1), Language::l0(Notation::Polish)) == 5);
    for (unsigned n = 0; n <= 50; ++n) CHECK(nu(mk::tilde(n)) <= 2 * n + 3);
}

TEST_CASE("sub-expression counts match the sub-word oracle") {
    Language lang = Language::l0(Notation::Polish);
    std::mt19937_64 rng(11);
    for (const Expr e : test::random_exprs(lang, 9, 300, rng)) CHECK(nu(e) == nu_by_substrings(e, lang));
}

TEST_CASE("sub-strings qua type") {
    auto aaa = word_of({Sym::Zero, Sym::Zero, Sym::Zero});
    CHECK(nu_s(aaa) == 4);  // ε, a, aa, aaa
    Word four = word_of({Sym::V, Sym::Prime, Sym::Zero, Sym::S});
    size_t occurrences = 0;
    for (size_t i = 0; i < four.size(); ++i)
        for (size_t j = i + 1; j <= four.size(); ++j) ++occurrences;
    CHECK(occurrences == 4 * 5 / 2);
    CHECK(nu_s(four) == 11);

    // νs(α) ≤ |α|²+1 over a 3-letter alphabet, all |α| ≤ 8.
    const Sym abc[] = {Sym::V, Sym::Zero, Sym::S};
    for (unsigned len = 0; len <= 8; ++len) {
        unsigned total = 1;
        for (unsigned i = 0; i < len; ++i) total *= 3;
        for (unsigned code = 0; code < total; ++code) {
            Word w;
            for (unsigned c = code, i = 0; i < len; ++i, c /= 3) w.push_back(static_cast<char>(abc[c % 3]));
            std::set<Word> brute;
            for (size_t i = 0; i <= w.size(); ++i)
                for (size_t j = i; j <= w.size(); ++j) brute.insert(w.substr(i, j - i));
            REQUIRE(nu_s(w) == brute.size());
            CHECK(nu_s(w) <= len * len + 1);
        }
    }
}

TEST_CASE("sharing contraction") {
    Language star = Language::lstar();
    Expr shared = parse_text("∧Δ⊥", star);
    CHECK(is_shared(shared));
    CHECK(shared->kind == Kind::And);
    CHECK(render_text(expand(shared), Notation::Polish) == "∧⊥⊥");
    CHECK(render_text(contract(P("∧⊥⊥")), Notation::Polish) == "∧Δ⊥");
    CHECK(render_text(contract(P("MS0S0")), Notation::Polish) == "MδS0");
    CHECK(render_text(expand(parse_text("=δ0", star)), Notation::Polish) == "=00");
    CHECK(render_text(contract(P("∧⊥⊤")), Notation::Polish) == "∧⊥⊤");
}

TEST_CASE("expand after contract is the identity on short formulas") {
    ExprCodec formulas(Language::l0(Notation::Polish), Subset::Formulas);
    Nat total = formulas.counts().cumulative(7);
    CHECK(total > 1000);
    for (Nat r = 0; r < total; ++r) {
        Expr a = formulas.decode(r);
        Expr c = contract(a);
        REQUIRE(expand(c) == a);
        CHECK(c->len_polish <= a->len_polish);
    }
}

TEST_CASE("substitution") {
    Expr a = I("v=v'");
    CHECK(substitute_var(a, 0, mk::numeral(2)) == I("SS0=v'"));
    CHECK(substitute_var(I("@v v=0"), 0, mk::zero()) == I("@v v=0"));
    CHECK(occurs_free(I("E v v=v'"), 1));
    CHECK_FALSE(occurs_free(I("E v v=v'"), 0));
    Expr ac = var_to_c(a, 1);
    CHECK(ac->has_c);
    CHECK(substitute_c(ac, mk::zero()) == I("v=0"));
}

TEST_CASE("substituting a numeral for c shares its sub-expressions") {
    Language lang = base_language();
    std::mt19937_64 rng(5);
    int tested = 0;
    for (Expr a : test::random_exprs(lang, 10, 2000, rng)) {
        if (!a->has_c) continue;
        for (unsigned k : {3u, 7u, 12u}) {
            Expr num = mk::succ(mk::tilde(k));
            CHECK(nu(substitute_c(a, num)) <= nu(a) + nu(num) - 1);
        }
        if (++tested == 100) break;
    }
    CHECK(tested == 100);
}

TEST_CASE("compressed strings") {
    Str s = Str::of_expr(I("S(SS0×S(SS0×0))=0"));
    REQUIRE(s.segments().size() >= 1);
    CHECK(s.segments().front().run);
    CHECK(s.length() == 17);
    CHECK(s.flatten() == render(I("S(SS0×S(SS0×0))=0"), Notation::Infix));
    Str big;
    big.push(Sym::S);
    big.push_tilde(Nat(1) << 40);
    CHECK(big.length() == 7 * (Nat(1) << 40) + 2);
    CHECK_THROWS_AS(big.flatten(1000), RenderTooLarge);
    // Runs stay canonical when written out literally.
    CHECK(Str(s.flatten()) == s);
}

TEST_CASE("sub-strings of Sñ(n)") {
    for (unsigned n = 1; n <= 30; ++n) {
        Expr e = mk::succ(mk::tilde(n));
        Word polish = render(e, Notation::Polish), infix = render(e, Notation::Infix);
        CHECK(nu_s(polish) == 35 * n - 11);
        CHECK(nu_s(infix) <= (7 * n + 2) * (7 * n + 2) + 1);
        if (n <= 8) {
            std::set<Word> brute;
            for (size_t i = 0; i <= polish.size(); ++i)
                for (size_t j = i; j <= polish.size(); ++j) brute.insert(polish.substr(i, j - i));
            CHECK(brute.size() == 35 * n - 11);
        }
    }
}

TEST_CASE("L★ strings read uniquely") {
    Language star = Language::lstar();
    LengthFirstCodec g(star.alphabet());
    std::set<Expr> seen;
    size_t parsed = 0;
    for (Nat r = 0; r < g.first_of_length(5); ++r) {
        Word w = g.decode(r);
        Expr e;
        try {
            e = parse(w, star);
        } catch (const NotWellFormed&) {
            continue;
        }
        ++parsed;
        REQUIRE(render(e, Notation::Polish) == w);
        CHECK(seen.insert(e).second);
    }
    CHECK(parsed > 100);
}
