#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "godel/code_value.hpp"
#include "godel/syntax.hpp"

namespace godel {

// Length-first (shortlex) numbering of all strings over an ordered alphabet:
// the bijective base-N reading of the string.
class LengthFirstCodec {
public:
    explicit LengthFirstCodec(std::vector<Sym> alphabet);

    const std::vector<Sym>& alphabet() const { return alphabet_; }
    unsigned size() const { return static_cast<unsigned>(alphabet_.size()); }
    bool contains(Sym s) const { return digit_[static_cast<int>(s)] >= 0; }
    int digit(Sym s) const { return digit_[static_cast<int>(s)]; }

    Nat encode(const Word& w) const;  // throws AlienSymbol
    Word decode(const Nat& n) const;
    // Code of an expression rendered in the given notation.
    Nat encode(Expr e, Notation nt) const { return encode(render(e, nt)); }

    // (N^len − 1)/(N − 1): the code of the first string of length len.
    Nat first_of_length(unsigned long len) const;

private:
    std::vector<Sym> alphabet_;
    std::array<int, kSymCount> digit_;
};

LengthFirstCodec lf17_infix();  // 𝔤 over infix L0
LengthFirstCodec lf_for(const Language& lang);

// Which well-formed Polish expressions a collapsed codec ranks.
enum class Subset { All, Terms, Formulas, ClosedTerms };

// Exact P-recursive sequence: sum_i (c[i][0] + c[i][1] n + ...) a(n+i) = 0.
struct Recurrence {
    std::vector<std::vector<long>> coeffs;  // coeffs[i][j]: order i, power j
    unsigned start = 1;                     // holds for n >= start
};

// Counts of well-formed Polish expressions by length, and the number of
// completions of a partial parse, for one language and subset.
class GrammarCounts {
public:
    enum SortIx { kTerm, kFml, kVar, kTail, kBinT, kBinF, kAny, kSortCount };
    using Stack = std::vector<uint8_t>;

    GrammarCounts(const Language& lang, Subset subset);

    const Language& language() const { return lang_; }
    Subset subset() const { return subset_; }
    bool vars_allowed() const { return subset_ != Subset::ClosedTerms; }
    uint8_t top_sort() const;

    // Number of subset members of length exactly len / at most len.
    Nat count(unsigned long len);
    Nat cumulative(unsigned long len);
    // Smallest len with cumulative(len) > r.
    unsigned long length_of_rank(const Nat& r);

    // Parse-stack transition; nullopt when sym cannot continue the prefix.
    std::optional<Stack> step(const Stack& st, Sym sym) const;
    // Number of ways to finish the pending stack with exactly m symbols.
    Nat completions(const Stack& st, unsigned long m);

    // Longest length handled by the quadratic table.
    static constexpr unsigned long kTableLimit = 1200;

private:
    void extend(unsigned long len);
    Nat sort_count(uint8_t sort, unsigned long len);
    Nat huge_cumulative(unsigned long len);

    Language lang_;
    Subset subset_;
    std::vector<Sym> alphabet_;
    std::vector<Nat> t_, f_, bt_, bf_, tt_, ff_, cum_;
    std::map<std::pair<std::vector<uint16_t>, unsigned long>, Nat> memo_;

    // Long-range counting through exact recurrences (L_T(c), all expressions).
    struct Huge;
    std::shared_ptr<Huge> huge_;
    std::recursive_mutex mu_;
};

// coll_X ∘ 𝔤 for X the well-formed Polish expressions of a language
// (or one of its sort fragments): the order-preserving bijection onto ℕ.
class ExprCodec {
public:
    ExprCodec(const Language& lang, Subset subset = Subset::All);

    const Language& language() const { return counts_->language(); }
    Subset subset() const { return counts_->subset(); }
    bool in_subset(Expr e) const;

    Nat encode(Expr e) const;  // throws NotInSubset
    Expr decode(const Nat& n) const;
    Nat rank_word(const Word& w) const;
    Word unrank_word(const Nat& n) const;

    GrammarCounts& counts() const { return *counts_; }

private:
    std::shared_ptr<GrammarCounts> counts_;
    LengthFirstCodec lf_;
};

// The base numbering gn∗ used by the staged constructions: collapsed over
// well-formed L_T(c) expressions in Polish notation.
const ExprCodec& base_codec();
Language base_language();

// Collapsed codec over an arbitrary decidable subset of strings, by
// enumeration with a budget.
class PredicateCollapsedCodec {
public:
    PredicateCollapsedCodec(LengthFirstCodec base, std::function<bool(const Word&)> member,
                            uint64_t budget = 1u << 22);

    Nat encode(const Word& w) const;  // throws NotInSubset, SearchBudgetExceeded
    Word decode(const Nat& n) const;  // throws SearchBudgetExceeded

private:
    LengthFirstCodec base_;
    std::function<bool(const Word&)> member_;
    uint64_t budget_;
};

// Built-in recurrences for the L_T(c) Polish counts (terms, formulas).
const Recurrence& lt_c_term_recurrence();
const Recurrence& lt_c_formula_recurrence();

}  // namespace godel
