#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "godel/code_value.hpp"
#include "godel/codes.hpp"
#include "godel/syntax.hpp"

namespace godel {

enum class FillerKind { StandardNumeral, HatVar, BotRun };
enum class StageDomain { Expressions, Strings };

struct StageParams {
    std::string name;
    unsigned schedule_mult = 1;  // ñ(k) = 2^{mult·k + add} + 1
    unsigned schedule_add = 4;
    unsigned delta = 4;          // A★ = A[c := Sñ(k+Δ)]
    FillerKind filler = FillerKind::StandardNumeral;
    StageDomain domain = StageDomain::Expressions;
    bool epsilon_filler = true;  // strings only: ε counts as ⊥^0
    unsigned long default_cap = 24;

    Nat schedule(long k) const;  // ñ(−1) = 0
};

StageParams gn0_params();
StageParams gn1_params();
// gn₁ with ε treated as a regular element (ℓ = 1 at stage 0).
StageParams gn1_literal_params();
StageParams gn2_params();

// Alphabet of gn₁: c first, then the Polish L0 letters.
const LengthFirstCodec& gn1_base_codec();

struct StageReport {
    unsigned long k = 0;
    Expr astar = nullptr;          // expression domain
    Word astar_word;               // string domain
    std::vector<Expr> new_exprs;  // in base order
    std::vector<Word> new_words;
    unsigned long ell = 0;
    Nat begin;         // ñ(k−1)
    Nat end;           // ñ(k)
    Nat filler_start;  // s
    Nat filler_count;  // ñ(k) − ñ(k−1) − ℓ
};

// One position of the list Λ. Fillers stay symbolic (index m only).
struct StageEntry {
    bool filler = false;
    Nat m;
    Expr expr = nullptr;
    Word word;
};

class StagedNumbering {
public:
    explicit StagedNumbering(StageParams params);
    StagedNumbering(StageParams params, unsigned long stage_cap);

    const StageParams& params() const { return params_; }
    unsigned long stage_cap() const { return cap_; }
    void set_stage_cap(unsigned long cap) { cap_ = cap; }
    bool strings() const { return params_.domain == StageDomain::Strings; }

    const StageReport& stage(unsigned long k);  // throws StageCapExceeded
    // Base indices i_0 < ... < i_{ℓ−1} of the new elements of stage k.
    std::vector<Nat> stage_indices(unsigned long k);

    bool is_filler(Expr e) const;
    bool is_filler(const Word& w) const;
    Expr filler_expr(const Nat& m) const;
    Word filler_word(const Nat& m, uint64_t cap = kDefaultRenderCap) const;

    Nat encode(Expr e);
    Nat encode_word(const Word& w);
    // Code if e is placed within the stage cap, nullopt otherwise.
    std::optional<Nat> try_encode(Expr e);
    std::optional<Nat> try_encode_word(const Word& w);

    StageEntry entry(const Nat& n);  // throws NotYetEnumerated
    Expr decode(const Nat& n);
    Word decode_word(const Nat& n, uint64_t cap = kDefaultRenderCap);

    // Calls fn(n, entry) for every n < ñ(k).
    void for_each(unsigned long k, const std::function<void(const Nat&, const StageEntry&)>& fn);
    std::vector<StageEntry> materialize(unsigned long k);

    // Cumulative ℓ-sum over stages < k.
    Nat ell_sum(unsigned long k);

private:
    void ensure(unsigned long k);
    void build(unsigned long k);
    [[noreturn]] void cap_error(const std::string& what) const;
    Nat filler_code(const Nat& m);

    StageParams params_;
    unsigned long cap_;
    std::vector<StageReport> stages_;
    std::vector<Nat> ell_sums_;  // ell_sums_[k] = Σ_{i<k} ℓ_i
    std::unordered_map<Expr, Nat, ExprHash> expr_code_;
    std::unordered_map<Word, Nat> word_code_;
    std::recursive_mutex mu_;
};

struct FixedPoint {
    Nat k;         // base index of A
    CodeValue n;   // the numeral value
    Expr fp = nullptr;
    Word fp_word;  // string domain
    Nat code;      // encode(fp)
};

// gn₀ / gn₁: encode(A[c := n̄]) = n with n = ñ(k) − 1.
FixedPoint fixed_point(StagedNumbering& g, Expr a);
FixedPoint fixed_point_word(StagedNumbering& g, const Word& a);
// gn₂: encode(A[c := n̄]) = n² with n = 2^{k+2}.
FixedPoint fixed_point_square(StagedNumbering& g, Expr a);

struct Diagonal {
    Expr term;      // n̄ × n̄
    Expr sentence;  // C[x := t]
    Nat value;      // ev(t)
    Nat code;       // gn₂(sentence)
};
// Strong diagonalization over gn₂ for C with free variable v'^x.
Diagonal strong_diagonal(StagedNumbering& g, Expr c, const Nat& x);

// Course-of-values computation of tr between gn₀/gn₂ and the base numbering,
// working on base indices only.
class StageTranslator {
public:
    explicit StageTranslator(StageParams params);

    const std::vector<Nat>& sigma(unsigned long k);  // base indices added at stage k
    Nat to_base(const Nat& n);                       // base index of the element coded n
    Nat from_base(StagedNumbering& g, const Nat& r); // code of the base element r

private:
    Nat filler_base_index(const Nat& m) const;
    StageParams params_;
    std::vector<std::vector<Nat>> sigma_;
    std::vector<Nat> ell_sums_;
    std::set<Nat> seen_;  // base indices placed so far
    std::mutex mu_;
};

enum class NumberingId { Base, Gn0, Gn1, Gn2 };
NumberingId numbering_id_from_name(const std::string& name);
const char* numbering_id_name(NumberingId id);

// tr_{i,j} = gn_i ∘ gn_j⁻¹. Pairs involving the base numbering and gn₀/gn₂
// go through StageTranslator; the rest compose through the base numbering.
Nat translate(NumberingId to, NumberingId from, const Nat& n, unsigned long stage_cap = 0);

// Value of an efficient numeral, nullopt for other expressions.
std::optional<Nat> efficient_value(Expr e);

}  // namespace godel
