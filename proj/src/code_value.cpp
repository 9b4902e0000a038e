#include "godel/code_value.hpp"

#include <atomic>

#include "godel/errors.hpp"

namespace godel {

namespace {
std::atomic<unsigned long> g_budget{1UL << 21};
}

size_t bit_length(const Nat& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

bool is_power_of_two(const Nat& n) {
    return n > 0 && mpz_popcount(n.get_mpz_t()) == 1;
}

Nat nat_pow(const Nat& base, unsigned long e) {
    Nat r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

std::string nat_str(const Nat& n) { return n.get_str(10); }

Nat nat_parse(const std::string& s) {
    Nat r;
    if (s.empty() || r.set_str(s, 10) != 0 || r < 0) throw NotACode("not a natural: " + s);
    return r;
}

unsigned long CodeValue::bit_budget() { return g_budget.load(); }
void CodeValue::set_bit_budget(unsigned long bits) { g_budget.store(bits); }

CodeValue::CodeValue(const Nat& v) {
    if (v < 0) throw NotACode("negative value");
    size_t b = bit_length(v);
    if (b > kExactBits + 1 && is_power_of_two(v)) {
        exp_ = std::make_shared<const CodeValue>(Nat(b - 1));
    } else {
        exact_ = v;
    }
}

CodeValue CodeValue::pow2(const CodeValue& e) {
    if (e.is_exact() && e.exact() <= kExactBits) {
        Nat v;
        mpz_ui_pow_ui(v.get_mpz_t(), 2, e.exact().get_ui());
        return CodeValue(v);
    }
    CodeValue r;
    r.exp_ = std::make_shared<const CodeValue>(e);
    return r;
}

CodeValue CodeValue::bits() const {
    if (is_exact()) return CodeValue(Nat(bit_length(exact_)));
    return exponent().succ();
}

Nat CodeValue::materialize() const {
    if (is_exact()) return exact_;
    const CodeValue& e = exponent();
    if (!e.is_exact() || e.exact() >= bit_budget())
        throw MaterializationTooLarge("2^" + e.str() + " exceeds the bit budget");
    Nat v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, e.exact().get_ui());
    return v;
}

bool CodeValue::fits_u64() const { return is_exact() && bit_length(exact_) <= 64; }

uint64_t CodeValue::to_u64() const {
    if (!fits_u64()) throw MaterializationTooLarge("value does not fit 64 bits: " + str());
    uint64_t lo = 0;
    mpz_export(&lo, nullptr, -1, sizeof lo, 0, 0, exact_.get_mpz_t());
    return lo;
}

std::strong_ordering code_cmp(const CodeValue& a, const CodeValue& b) { return a <=> b; }

std::strong_ordering CodeValue::operator<=>(const CodeValue& o) const {
    if (is_exact() && o.is_exact()) {
        int c = cmp(exact_, o.exact_);
        return c < 0 ? std::strong_ordering::less
                     : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    if (!is_exact() && !o.is_exact()) return exponent() <=> o.exponent();
    if (!is_exact()) return 0 <=> (o <=> *this);
    // a exact, o = 2^e. a < 2^e iff bitlen(a) <= e.
    Nat b(bit_length(exact_));
    auto c = CodeValue(b) <=> o.exponent();
    if (c <= 0) return std::strong_ordering::less;
    if (is_power_of_two(exact_) && CodeValue(Nat(b - 1)) == o.exponent())
        return std::strong_ordering::equal;
    return std::strong_ordering::greater;
}

CodeValue CodeValue::operator+(const CodeValue& o) const {
    if (is_exact() && o.is_exact()) {
        Nat s = exact_ + o.exact_;
        if (bit_length(s) > bit_budget() && !is_power_of_two(s))
            throw MaterializationTooLarge("sum exceeds the bit budget");
        return CodeValue(s);
    }
    if (!is_exact() && !o.is_exact() && exponent() == o.exponent())
        return pow2(exponent().succ());
    return CodeValue(materialize() + o.materialize());
}

CodeValue CodeValue::operator*(const CodeValue& o) const {
    if (is_exact() && o.is_exact()) {
        if (exact_ == 0 || o.exact_ == 0) return CodeValue(0);
        if (is_power_of_two(exact_) && is_power_of_two(o.exact_))
            return pow2(CodeValue(Nat(bit_length(exact_) - 1 + bit_length(o.exact_) - 1)));
        if (bit_length(exact_) + bit_length(o.exact_) > bit_budget() + 1)
            throw MaterializationTooLarge("product exceeds the bit budget");
        return CodeValue(exact_ * o.exact_);
    }
    if (!is_exact() && !o.is_exact()) return pow2(exponent() + o.exponent());
    const CodeValue& ex = is_exact() ? *this : o;
    const CodeValue& sym = is_exact() ? o : *this;
    if (ex.exact_ == 0) return CodeValue(0);
    if (is_power_of_two(ex.exact_))
        return pow2(sym.exponent() + CodeValue(Nat(bit_length(ex.exact_) - 1)));
    return CodeValue(ex.exact_ * sym.materialize());
}

std::string CodeValue::str() const {
    if (is_exact()) return nat_str(exact_);
    return "2^" + exponent().str();
}

CodeValue CodeValue::parse(const std::string& s) {
    if (s.rfind("2^", 0) == 0) return pow2(parse(s.substr(2)));
    return CodeValue(nat_parse(s));
}

}  // namespace godel
