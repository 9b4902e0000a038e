#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <string>

namespace godel {

using Nat = mpz_class;

// Number of bits of n (0 for n = 0).
size_t bit_length(const Nat& n);
bool is_power_of_two(const Nat& n);
Nat nat_pow(const Nat& base, unsigned long e);
std::string nat_str(const Nat& n);
Nat nat_parse(const std::string& s);

// A natural number that is either held exactly or as 2^e for a (possibly
// symbolic) exponent e. Exact powers of two wider than kExactBits are
// always stored as Pow2, and Pow2 with a small exponent is always Exact,
// so each value has one representation.
class CodeValue {
public:
    static constexpr unsigned long kExactBits = 4096;

    CodeValue() : exact_(0) {}
    CodeValue(const Nat& v);  // NOLINT(google-explicit-constructor)
    CodeValue(unsigned long v) : CodeValue(Nat(v)) {}  // NOLINT
    CodeValue(int v) : CodeValue(Nat(v)) {}            // NOLINT

    static CodeValue pow2(const CodeValue& e);

    bool is_exact() const { return !exp_; }
    const Nat& exact() const { return exact_; }
    const CodeValue& exponent() const { return *exp_; }

    // Bit width of the denoted value.
    CodeValue bits() const;

    // The denoted natural. Throws MaterializationTooLarge past the bit budget.
    Nat materialize() const;
    // Narrowing for values known to be small; throws otherwise.
    uint64_t to_u64() const;
    bool fits_u64() const;

    CodeValue operator+(const CodeValue& o) const;
    CodeValue operator*(const CodeValue& o) const;
    CodeValue succ() const { return *this + CodeValue(1); }

    std::strong_ordering operator<=>(const CodeValue& o) const;
    bool operator==(const CodeValue& o) const { return (*this <=> o) == 0; }

    // Decimal, or "2^<exponent>" for symbolic powers.
    std::string str() const;
    static CodeValue parse(const std::string& s);

    // Largest value width (in bits) that operations may materialize.
    static unsigned long bit_budget();
    static void set_bit_budget(unsigned long bits);

private:
    Nat exact_;
    std::shared_ptr<const CodeValue> exp_;
};

std::strong_ordering code_cmp(const CodeValue& a, const CodeValue& b);
inline CodeValue code_add(const CodeValue& a, const CodeValue& b) { return a + b; }
inline CodeValue code_mul(const CodeValue& a, const CodeValue& b) { return a * b; }
inline CodeValue code_succ(const CodeValue& a) { return a.succ(); }

}  // namespace godel
