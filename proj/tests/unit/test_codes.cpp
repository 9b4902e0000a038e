#include "doctest.h"

#include <map>
#include <random>
#include <vector>

#include "godel/adequacy.hpp"
#include "godel/codes.hpp"
#include "godel/errors.hpp"
#include "support.hpp"

using namespace godel;

namespace {

// Counts of Polish L_T(c) expressions by exact length, straight from the
// grammar: t ::= v'^k | 0 | c | St | Att | Mtt and
// A ::= =tt | ⊥ | ⊤ | ¬A | ∧AA | ∨AA | →AA | ∀xA | ∃xA | Tt.
struct LtcCounts {
    std::vector<Nat> t, f;
    explicit LtcCounts(unsigned long max) : t(max + 1), f(max + 1) {
        for (unsigned long n = 1; n <= max; ++n) {
            Nat tt = 0, ff = 0;
            for (unsigned long a = 1; a + 1 < n; ++a) {
                tt += t[a] * t[n - 1 - a];
                ff += f[a] * f[n - 1 - a];
            }
            Nat vars_then_f = 0;
            for (unsigned long a = 1; a + 1 < n; ++a) vars_then_f += f[n - 1 - a];
            t[n] = 1 + (n == 1 ? 2 : 0) + t[n - 1] + 2 * tt;
            f[n] = tt + (n == 1 ? 2 : 0) + f[n - 1] + t[n - 1] + 3 * ff + 2 * vars_then_f;
        }
    }
};

// Recurrence residual at n: Σ_i (Σ_j c[i][j] n^j) a(n+i).
Nat residual(const Recurrence& rec, const std::vector<Nat>& a, unsigned long n) {
    Nat sum = 0;
    for (size_t i = 0; i < rec.coeffs.size(); ++i) {
        Nat poly = 0, pw = 1;
        for (long c : rec.coeffs[i]) {
            poly += Nat(c) * pw;
            pw *= n;
        }
        sum += poly * a[n + i];
    }
    return sum;
}

}  // namespace

TEST_CASE("length-first codes over two letters") {
    LengthFirstCodec ab({Sym::V, Sym::Zero});  // a < b
    const Sym a = Sym::V, b = Sym::Zero;
    std::vector<Word> expected = {Word(),           word_of({a}),       word_of({b}),
                                  word_of({a, a}), word_of({a, b}),    word_of({b, a}),
                                  word_of({b, b}), word_of({a, a, a})};
    for (size_t i = 0; i < expected.size(); ++i) {
        CHECK(ab.encode(expected[i]) == i);
        CHECK(ab.decode(Nat(i)) == expected[i]);
    }
    CHECK(ab.decode(4) == word_of({a, b}));
    CHECK_THROWS_AS(ab.encode(word_of({Sym::S})), AlienSymbol);
}

TEST_CASE("length-first bounds and order, exhaustive") {
    const std::vector<Sym> letters = {Sym::V, Sym::Prime, Sym::Zero, Sym::S};
    for (unsigned N = 2; N <= 4; ++N) {
        LengthFirstCodec codec(std::vector<Sym>(letters.begin(), letters.begin() + N));
        std::vector<Word> level{Word()};
        Nat rank = 0;
        for (unsigned len = 0; len <= 6; ++len) {
            for (const Word& w : level) {
                Nat code = codec.encode(w);
                CHECK(code == rank++);
                CHECK((nat_pow(Nat(N), len) - 1) / (N - 1) <= code);
                CHECK(code < (nat_pow(Nat(N), len + 1) - 1) / (N - 1));
                CHECK(Nat(len) <= code);
                CHECK(codec.decode(code) == w);
            }
            std::vector<Word> next;
            for (const Word& w : level)
                for (unsigned i = 0; i < N; ++i) next.push_back(w + static_cast<char>(letters[i]));
            level.swap(next);
        }
        CHECK(codec.first_of_length(3) == (nat_pow(Nat(N), 3) - 1) / (N - 1));
    }
}

TEST_CASE("the 17-letter infix codec") {
    LengthFirstCodec g = lf17_infix();
    CHECK(g.size() == 17);
    CHECK(g.alphabet() == infix_l0_alphabet());
    Expr e = parse_text("v=v", Language::l0(Notation::Infix));
    // v=v: digits 1, 9, 1 in bijective base 17
    CHECK(g.encode(e, Notation::Infix) == 1 * 17 * 17 + 9 * 17 + 1);
    CHECK(g.encode(e, Notation::Infix) == 443);
}

TEST_CASE("products of codes stay below compound codes") {
    LengthFirstCodec g = lf_for(Language::l0(Notation::Polish));
    std::mt19937_64 rng(17);
    for (int i = 0; i < 500; ++i) {
        Word x, y;
        for (size_t n = rng() % 9; n > 0; --n) x.push_back(static_cast<char>(g.alphabet()[rng() % g.size()]));
        for (size_t n = rng() % 9; n > 0; --n) y.push_back(static_cast<char>(g.alphabet()[rng() % g.size()]));
        Nat prod = g.encode(x) * g.encode(y);
        CHECK(g.encode(word_of({Sym::Mul}) + x + y) > prod);
        CHECK(g.encode(word_of({Sym::Add}) + x + y) > prod);
    }
    std::vector<Expr> terms =
        test::random_exprs(Language::l0(Notation::Polish), 12, 300, rng, Subset::Terms);
    CHECK(check_regular(lf_numbering(Language::l0(Notation::Polish)), terms).pass());
}

TEST_CASE("the collapsed closed-term codec") {
    auto codec = std::make_shared<ExprCodec>(Language::l0(Notation::Polish), Subset::ClosedTerms);
    CHECK(codec->decode(0) == mk::zero());
    std::mt19937_64 rng(3);
    std::vector<Expr> sample =
        test::random_exprs(Language::l0(Notation::Polish), 14, 200, rng, Subset::ClosedTerms);
    // codes of A and M terms exceed the product of the argument codes
    size_t checked = 0;
    for (Expr t : sample)
        for (Expr u : sub_expressions(t)) {
            if (u->kind != Kind::Add && u->kind != Kind::Mul) continue;
            CHECK(codec->encode(u) > codec->encode(lhs(u)) * codec->encode(rhs(u)));
            ++checked;
        }
    CHECK(checked > 200);

    // The successor clause is not covered by that bound and fails at once:
    // h(S0) = 1 = h(0) + 1.
    NumberingHandle h;
    h.name = "collapsed-closed";
    h.lang = Language::l0(Notation::Polish);
    h.encode = [codec](Expr e) { return CodeValue(codec->encode(e)); };
    CHECK(codec->encode(mk::numeral(1)) == 1);
    CheckReport rep = check_regular(h, sample);
    REQUIRE(rep.violation);
    CHECK(rep.violation->witnesses.front() == mk::numeral(1));
}

TEST_CASE("collapsed ranks agree with enumerate-and-parse") {
    Language lang = Language::l0(Notation::Polish);
    LengthFirstCodec g = lf_for(lang);
    ExprCodec all(lang), formulas(lang, Subset::Formulas);
    Nat rank = 0, frank = 0;
    Nat total = g.first_of_length(6);  // every string of length ≤ 5
    for (Nat r = 0; r < total; ++r) {
        Word w = g.decode(r);
        Expr e;
        try {
            e = parse(w, lang);
        } catch (const NotWellFormed&) {
            continue;
        }
        REQUIRE(all.encode(e) == rank);
        CHECK(all.rank_word(w) == rank);
        CHECK(all.decode(rank) == e);
        CHECK(all.encode(e) <= r);  // collapse never increases a code
        ++rank;
        if (e->is_formula()) CHECK(formulas.encode(e) == frank++);
    }
    CHECK(all.counts().cumulative(5) == rank);
    CHECK_THROWS_AS(formulas.encode(mk::zero()), NotInSubset);
}

TEST_CASE("collapsed codec round-trips on the first expressions") {
    ExprCodec all(Language::l0(Notation::Polish));
    Nat prev_len = 0;
    for (Nat n = 0; n < 10000; ++n) {
        Expr e = all.decode(n);
        REQUIRE(all.encode(e) == n);
        CHECK(e->len_polish >= prev_len);
        prev_len = e->len_polish;
    }
}

TEST_CASE("L_T(c) counts match the grammar, past the quadratic table") {
    const unsigned long kMax = GrammarCounts::kTableLimit + 100;
    const Recurrence& rt = lt_c_term_recurrence();
    const Recurrence& rf = lt_c_formula_recurrence();
    LtcCounts oracle(kMax + std::max(rt.coeffs.size(), rf.coeffs.size()));
    GrammarCounts terms(base_language(), Subset::Terms), fml(base_language(), Subset::Formulas),
        all(base_language(), Subset::All);
    for (unsigned long n = 1; n <= 40; ++n) {
        REQUIRE(terms.count(n) == oracle.t[n]);
        REQUIRE(fml.count(n) == oracle.f[n]);
    }
    for (unsigned long n = 1; n <= kMax; n += (n < 1150 ? 37 : 1)) CHECK(all.count(n) == oracle.t[n] + oracle.f[n]);

    for (unsigned long n = rt.start; n <= kMax; ++n) CHECK(residual(rt, oracle.t, n) == 0);
    for (unsigned long n = rf.start; n <= kMax; ++n) CHECK(residual(rf, oracle.f, n) == 0);
}

TEST_CASE("base codec indices of small expressions") {
    const ExprCodec& base = base_codec();
    Language lt = base_language();
    CHECK(base.encode(mk::c()) == 4);
    CHECK(base.encode(parse_text("Tc", lt)) == 13);
    CHECK(base.encode(parse_text("=cc", lt)) == 45);
    CHECK(base.encode(parse_text("¬Tv", lt)) == 48);
    CHECK(base.encode(parse_text("¬Tc", lt)) == 50);
    CHECK(base.encode(parse_text("¬TMcc", lt)) == 987);
}

TEST_CASE("predicate collapse by enumeration") {
    LengthFirstCodec g = lf_for(Language::l0(Notation::Polish));
    Language lang = Language::l0(Notation::Polish);
    // closed Polish terms over 0, S, A, M by counting open argument slots
    PredicateCollapsedCodec closed(g, [](const Word& w) {
        long open = 1;
        for (char ch : w) {
            if (open == 0) return false;
            switch (static_cast<Sym>(ch)) {
                case Sym::Zero: --open; break;
                case Sym::S: break;
                case Sym::Add:
                case Sym::Mul: ++open; break;
                default: return false;
            }
        }
        return open == 0;
    });
    ExprCodec direct(lang, Subset::ClosedTerms);
    for (Nat n = 0; n < 12; ++n) {
        Word w = closed.decode(n);
        CHECK(closed.encode(w) == n);
        CHECK(direct.decode(n) == parse(w, lang));
    }
    PredicateCollapsedCodec tight(g, [](const Word&) { return false; }, 1000);
    CHECK_THROWS_AS(tight.decode(0), SearchBudgetExceeded);
}

TEST_CASE("code values") {
    CodeValue five(5), eight = CodeValue::pow2(CodeValue(3));
    CHECK(code_cmp(five, eight) == std::strong_ordering::less);
    CHECK(code_cmp(eight, CodeValue(8)) == std::strong_ordering::equal);
    CodeValue a = CodeValue::pow2(CodeValue(Nat(10000))), b = CodeValue::pow2(CodeValue(Nat(5000)));
    CHECK(!a.is_exact());
    CHECK(a * b == CodeValue::pow2(CodeValue(Nat(15000))));
    CHECK(CodeValue::pow2(CodeValue(10)) * CodeValue::pow2(CodeValue(5)) == CodeValue::pow2(CodeValue(15)));
    CHECK(a > b);
    CHECK(a > CodeValue((Nat(1) << 9999) * 3 / 2));
    CHECK(a < CodeValue::pow2(CodeValue::pow2(CodeValue(14))));
    CHECK(CodeValue::parse(a.str()) == a);
    CHECK(a.str() == "2^10000");
    CHECK_THROWS_AS(CodeValue::pow2(CodeValue::pow2(CodeValue(Nat(100)))).materialize(), MaterializationTooLarge);
    CHECK(a.bits() == CodeValue(Nat(10001)));
}
