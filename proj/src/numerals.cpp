#include "godel/numerals.hpp"

#include <functional>
#include <unordered_map>

#include "godel/errors.hpp"

namespace godel {

const char* numeral_kind_name(NumeralKind k) {
    switch (k) {
        case NumeralKind::Standard: return "standard";
        case NumeralKind::Efficient: return "efficient";
        case NumeralKind::Pd: return "pd";
        case NumeralKind::PdBar: return "pdbar";
        case NumeralKind::PdStar: return "pdstar";
        case NumeralKind::PdCirc: return "pdcirc";
        case NumeralKind::PFrak: return "pfrak";
    }
    return "?";
}

NumeralKind numeral_kind_from_name(const std::string& name) {
    for (auto k : {NumeralKind::Standard, NumeralKind::Efficient, NumeralKind::Pd,
                   NumeralKind::PdBar, NumeralKind::PdStar, NumeralKind::PdCirc,
                   NumeralKind::PFrak})
        if (name == numeral_kind_name(k)) return k;
    throw Error("UnknownNumeralSystem", name);
}

std::vector<int> dyadic_digits(Nat n) {
    std::vector<int> digits;
    while (n > 0) {
        int a = mpz_even_p(n.get_mpz_t()) ? 2 : 1;
        digits.push_back(a);
        n = (n - a) / 2;
    }
    return digits;
}

Expr efficient_numeral(const Nat& n) {
    std::vector<int> digits = dyadic_digits(n);
    Expr two = mk::numeral(2);
    Expr e = mk::zero();
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        e = mk::succ(mk::mul(two, e));
        if (*it == 2) e = mk::succ(e);
    }
    return e;
}

Expr efficient_numeral(const CodeValue& v) {
    if (v.is_exact()) return efficient_numeral(v.exact());
    if (!v.exponent().is_exact())
        throw MaterializationTooLarge("exponent of " + v.str() + " is itself symbolic");
    // 2^e = 2 + 2(2^{e-1} − 1), i.e. SS(SS0×ñ(e−1)) = Sñ(e).
    return mk::succ(mk::tilde(v.exponent().exact()));
}

namespace {

using Factor = std::pair<uint64_t, unsigned>;

// Smallest prime factor p of n and its multiplicity.
Factor smallest_prime_power(uint64_t n) {
    for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        unsigned i = 0;
        while (n % p == 0) {
            n /= p;
            ++i;
        }
        return {p, i};
    }
    return {n, 1};
}

uint64_t ipow(uint64_t p, unsigned k) {
    uint64_t r = 1;
    while (k--) r *= p;
    return r;
}

struct PdClauses {
    std::function<Expr(uint64_t)> prime;
    bool square_by_product;  // ×xx instead of Qx
};

Expr pd_general(const PdClauses& cl, uint64_t n) {
    if (n == 0) return mk::zero();
    if (n == 1) return mk::numeral(1);
    auto [p, i] = smallest_prime_power(n);
    uint64_t pi = ipow(p, i);
    if (pi != n) return mk::mul(pd_general(cl, pi), pd_general(cl, n / pi));
    if (i == 1) return cl.prime(p);
    Expr half = pd_general(cl, ipow(p, i / 2));
    Expr sq = cl.square_by_product ? mk::mul(half, half) : mk::square(half);
    if (i % 2 == 0) return sq;
    return mk::mul(cl.prime(p), sq);
}

uint64_t small(const Nat& n) {
    if (bit_length(n) > 64) throw DomainTooLarge("prime decomposition numerals need an odd part below 2^64");
    return CodeValue(n).to_u64();
}

Expr pd_pow2(const PdClauses& cl, unsigned long e) {
    if (e == 1) return cl.prime(2);
    Expr half = pd_pow2(cl, e / 2);
    Expr sq = cl.square_by_product ? mk::mul(half, half) : mk::square(half);
    if (e % 2 == 0) return sq;
    return mk::mul(cl.prime(2), sq);
}

// Values past 2^64 are accepted when the odd part is small; the power of two
// splits off exactly as the smallest prime power would.
Expr pd_nat(const PdClauses& cl, const Nat& n) {
    if (bit_length(n) <= 64) return pd_general(cl, small(n));
    unsigned long e = mpz_scan1(n.get_mpz_t(), 0);
    Nat odd = n;
    mpz_fdiv_q_2exp(odd.get_mpz_t(), odd.get_mpz_t(), e);
    if (odd == 1) return pd_pow2(cl, e);
    return mk::mul(pd_pow2(cl, e), pd_general(cl, small(odd)));
}

}  // namespace

Expr numeral(NumeralKind kind, const Nat& n) {
    if (n < 0) throw NotACode("negative numeral");
    switch (kind) {
        case NumeralKind::Standard: return mk::numeral(n);
        case NumeralKind::Efficient: return efficient_numeral(n);
        case NumeralKind::Pd:
            return pd_nat({[](uint64_t p) { return mk::numeral(p); }, false}, n);
        case NumeralKind::PdBar:
            return pd_nat({[](uint64_t p) { return efficient_numeral(Nat(p)); }, false}, n);
        case NumeralKind::PdStar:
            return pd_nat({[](uint64_t p) { return mk::numeral(p); }, true}, n);
        case NumeralKind::PdCirc: return contract(numeral(NumeralKind::PdStar, n));
        case NumeralKind::PFrak: {
            PdClauses cl;
            cl.square_by_product = false;
            cl.prime = [&cl](uint64_t p) { return mk::succ(pd_general(cl, p - 1)); };
            return pd_nat(cl, n);
        }
    }
    throw NotACode("unknown numeral kind");
}

namespace {

void check_bits(size_t bits) {
    if (bits > CodeValue::bit_budget())
        throw MaterializationTooLarge("value needs " + std::to_string(bits) + " bits");
}

Nat pow2_nat(const Nat& e) {
    if (e > CodeValue::bit_budget()) throw MaterializationTooLarge("2^" + nat_str(e));
    Nat r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e.get_ui());
    return r;
}

}  // namespace

Nat ev(Expr t) {
    if (!t->is_term() || !t->closed || t->has_c) throw NotClosed("ev needs a closed L-term");
    std::unordered_map<Expr, Nat> memo;
    std::function<Nat(Expr)> go = [&](Expr x) -> Nat {
        switch (x->kind) {
            case Kind::Zero: return 0;
            case Kind::Numeral: return x->n;
            case Kind::Tilde: return pow2_nat(x->n) - 1;
            default: break;
        }
        auto it = memo.find(x);
        if (it != memo.end()) return it->second;
        Nat v;
        switch (x->kind) {
            case Kind::Succ: v = go(x->a) + 1; break;
            case Kind::Square: {
                Nat a = go(x->a);
                check_bits(2 * bit_length(a));
                v = a * a;
                break;
            }
            case Kind::Exp: v = pow2_nat(go(x->a)); break;
            case Kind::Smash: {
                Nat a = go(x->a), b = go(x->b);
                v = pow2_nat(Nat(bit_length(a)) * Nat(bit_length(b)));
                break;
            }
            case Kind::Add: v = go(lhs(x)) + go(rhs(x)); break;
            case Kind::Mul: {
                Nat a = go(lhs(x)), b = go(rhs(x));
                check_bits(bit_length(a) + bit_length(b));
                v = a * b;
                break;
            }
            default: throw NotClosed("not a closed term");
        }
        memo.emplace(x, v);
        return v;
    };
    return go(t);
}

Nat numeral_gap(NumeralKind kind, const Nat& n) {
    Expr e = numeral(kind, n);
    return n - (nu(e) - 1);
}

CodeBounds efficient_code_bounds(unsigned N, const Nat& n) {
    if (N < 2) throw Error("BadAlphabet", "N must be at least 2");
    CodeBounds b;
    b.lower = (nat_pow(Nat(N), n.get_ui() + 1) - 1) / (N - 1);
    unsigned m = 0;
    while ((1u << m) < N) ++m;
    Nat lead = (Nat(N) * N + (N - 2)) / (N - 1);
    if (lead < 64) lead = 64;
    b.upper = lead * nat_pow(n + 1, 8 * m);
    return b;
}

Expr smash_tower(unsigned n) {
    Expr two = mk::numeral(2);
    Expr e = mk::smash(two, two);
    for (unsigned i = 1; i < n; ++i) e = mk::smash(two, e);
    return e;
}

Expr exp_tower(unsigned n) {
    Expr e = mk::numeral(2);
    for (unsigned i = 0; i < n; ++i) e = mk::exp(e);
    return e;
}

}  // namespace godel
