#include "godel/appendix.hpp"

#include <algorithm>

#include "godel/errors.hpp"

namespace godel {

const LengthFirstCodec& gn4_codec() {
    static const LengthFirstCodec* c = [] {
        std::vector<Sym> a = infix_l0_alphabet();
        a.push_back(Sym::C);
        a.push_back(Sym::Semi);
        return new LengthFirstCodec(a);
    }();
    return *c;
}

Nat gn4(const Word& w) { return gn4_codec().encode(w); }
Nat gn4(const Str& s, uint64_t cap) { return gn4(s.flatten(cap)); }

namespace {

const char kSemi = static_cast<char>(Sym::Semi);
const char kC = static_cast<char>(Sym::C);
const char kS = static_cast<char>(Sym::S);

Word joined(const Word& a, const Word& b) {
    Word w = a;
    w.push_back(kSemi);
    w += b;
    return w;
}

bool has_s0(const Word& w) {
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == kS && static_cast<Sym>(w[i + 1]) == Sym::Zero) return true;
    return false;
}

}  // namespace

std::optional<Acceptable> split_acceptable(const Word& alpha) {
    size_t pos = alpha.find(kSemi);
    if (pos == Word::npos || alpha.find(kSemi, pos + 1) != Word::npos) return std::nullopt;
    Acceptable a{alpha.substr(0, pos), alpha.substr(pos + 1)};
    if (a.delta.find(a.gamma) == Word::npos) return std::nullopt;
    return a;
}

Str beta(const Nat& n) {
    auto acc = split_acceptable(gn4_codec().decode(n));
    if (!acc) return Str();
    Nat m = gn4(joined(acc->delta, acc->delta));
    Str out;
    for (char ch : acc->gamma) {
        if (ch == kC) {
            out.push(Sym::S);
            out.push_tilde(m);
        } else {
            out.push(static_cast<Sym>(ch));
        }
    }
    return out;
}

std::optional<Nat> largest_self_numeral(const Str& s) {
    // Canonical Str keeps every ñ(j), j >= 1, as a run, so Sñ(j) is a run right
    // after a literal S. Sñ(0) = S0 sits in a literal or inside any run (…SS0…).
    std::optional<Nat> best;
    bool s0 = false;
    const auto& segs = s.segments();
    for (size_t i = 0; i < segs.size(); ++i) {
        const Str::Seg& g = segs[i];
        if (!g.run) {
            s0 = s0 || has_s0(g.lit);
            continue;
        }
        s0 = true;
        if (i > 0 && !segs[i - 1].run && !segs[i - 1].lit.empty() && segs[i - 1].lit.back() == kS)
            if (!best || g.n > *best) best = g.n;
    }
    if (!best && s0) best = Nat(0);
    return best;
}

Str replace_self_numeral(const Str& s, const Nat& n) {
    if (n == 0) {
        Word w = s.flatten();
        Word out;
        for (size_t i = 0; i < w.size(); ++i) {
            if (w[i] == kS && i + 1 < w.size() && static_cast<Sym>(w[i + 1]) == Sym::Zero) {
                out.push_back(kC);
                ++i;
            } else {
                out.push_back(w[i]);
            }
        }
        return Str(out);
    }
    Str out;
    Word pending;
    for (const Str::Seg& g : s.segments()) {
        if (!g.run) {
            pending += g.lit;
            continue;
        }
        if (g.n == n && !pending.empty() && pending.back() == kS) {
            pending.back() = kC;
            continue;
        }
        out.push_word(pending);
        pending.clear();
        out.push_tilde(g.n);
    }
    out.push_word(pending);
    return out;
}

Gn5Trace gn5_trace(const Str& z, uint64_t cap) {
    Gn5Trace t;
    if (z.empty()) {
        t.value = 0;
        return t;
    }
    auto plain = [&] {
        Word w = z.flatten(cap);
        return gn4(joined(w, w));
    };
    t.k = largest_self_numeral(z);
    // α_0 = ε is never of the form δ;δ, so k = 0 always falls through.
    if (!t.k || *t.k == 0) {
        t.value = plain();
        return t;
    }
    const Nat& n = *t.k;
    if (bit_length(n) > 8 * cap) throw RenderTooLarge("α_n is too long to decode");
    Word alpha = gn4_codec().decode(n);
    size_t pos = alpha.find(kSemi);
    bool square = pos != Word::npos && alpha.size() == 2 * pos + 1 &&
                  alpha.compare(0, pos, alpha, pos + 1, pos) == 0 && alpha.find(kSemi, pos + 1) == Word::npos;
    if (!square) {
        t.value = plain();
        return t;
    }
    Word delta = alpha.substr(0, pos);
    Word gamma = replace_self_numeral(z, n).flatten(cap);
    if (delta.find(gamma) == Word::npos) {
        t.value = plain();
        return t;
    }
    t.essential = gamma.find(kC) != Word::npos;
    t.gamma = gamma;
    t.delta = delta;
    t.value = gn4(joined(gamma, delta));
    return t;
}

WClass w_class(Expr e) {
    if (e->kind == Kind::Numeral && e->n == 2) return WClass::W0;
    if (is_tilde(e)) return WClass::W0;
    if (e->kind == Kind::Mul && e->a->kind == Kind::Numeral && e->a->n == 2 && is_tilde(e->b))
        return WClass::W0;
    return WClass::W1;
}

CodeValue gn6(Expr e, uint64_t cap) {
    if (w_class(e) == WClass::W0) {
        if (e->kind == Kind::Numeral) return CodeValue(2);
        if (is_tilde(e)) return CodeValue(Nat(4 * tilde_index(e) + 1));
        return CodeValue(Nat(4 * tilde_index(e->b) + 3));
    }
    return CodeValue::pow2(CodeValue(gn5(Str::of_expr(e), cap)));
}

SelfReference self_ref_fixed_point(Expr a, const Nat& x) {
    if (!occurs_free(a, x)) throw NoFreeVariable("variable " + nat_str(x) + " is not free");
    Expr ac = var_to_c(a, x);
    Word w = render(ac, Notation::Infix);
    SelfReference r;
    r.n = gn4(joined(w, w));
    r.k = CodeValue::pow2(CodeValue(r.n));
    r.sentence = substitute_c(ac, mk::succ(mk::tilde(r.n)));
    r.code = gn6(r.sentence);
    r.numeral_length = 7 * r.n + 2;
    return r;
}

}  // namespace godel
