#include "godel/codes.hpp"

#include <algorithm>

#include "godel/errors.hpp"

namespace godel {

// ---------------------------------------------------------------------------
// Length-first codec

LengthFirstCodec::LengthFirstCodec(std::vector<Sym> alphabet) : alphabet_(std::move(alphabet)) {
    if (alphabet_.size() < 2) throw Error("BadAlphabet", "need at least two letters");
    digit_.fill(-1);
    for (size_t i = 0; i < alphabet_.size(); ++i) {
        int& d = digit_[static_cast<int>(alphabet_[i])];
        if (d >= 0) throw Error("BadAlphabet", "repeated letter");
        d = static_cast<int>(i);
    }
}

Nat LengthFirstCodec::encode(const Word& w) const {
    Nat code = 0;
    const unsigned long n = size();
    for (size_t i = 0; i < w.size(); ++i) {
        int d = digit_[static_cast<unsigned char>(w[i])];
        if (d < 0)
            throw AlienSymbol("symbol '" + glyph(sym_at(w, i), Notation::Polish) +
                              "' is not in the codec alphabet");
        code = code * n + (d + 1);
    }
    return code;
}

Word LengthFirstCodec::decode(const Nat& n) const {
    if (n < 0) throw NotACode("negative code");
    Word out;
    Nat x = n;
    const unsigned long base = size();
    while (x > 0) {
        x -= 1;
        unsigned long d = mpz_fdiv_q_ui(x.get_mpz_t(), x.get_mpz_t(), base);
        out.push_back(static_cast<char>(alphabet_[d]));
    }
    std::reverse(out.begin(), out.end());
    return out;
}

Nat LengthFirstCodec::first_of_length(unsigned long len) const {
    return (nat_pow(Nat(size()), len) - 1) / (size() - 1);
}

LengthFirstCodec lf17_infix() { return LengthFirstCodec(infix_l0_alphabet()); }
LengthFirstCodec lf_for(const Language& lang) { return LengthFirstCodec(lang.alphabet()); }

// ---------------------------------------------------------------------------
// Exact recurrences for the L_T(c) counts.
//
// With x marking length, V = x/(1−x) the variables, the term and formula
// generating functions of L_T(c) satisfy
//   T = V + 2x + xT + 2xT²,
//   F = 2x + xT² + xT + xF + 3xF² + 2xVF.
// Both sequences are P-recursive. The term recurrence was guessed from the
// first 700 coefficients; the formula one comes from the order-3 linear ODE
// of the quartic equation for F. Both are re-checked against the quadratic
// table in the tests.

const Recurrence& lt_c_term_recurrence() {
    static const Recurrence r{{{0, -15}, {39, 36}, {-33, -18}, {-15, -4}, {5, 1}}, 1};
    return r;
}

const Recurrence& lt_c_formula_recurrence() {
    static const Recurrence r{{
        {0, 312000120, 468000180, 156000060},
        {-16458298902, -30199104261, -16496633313, -2755827954},
        {499106467872, 545043015720, 190622825064, 21438967086},
        {-5526004053708, -4397163297993, -1143791242119, -97339325814},
        {31821827279868, 20074178216556, 4175393792886, 286346669058},
        {-108567912247128, -56950230048390, -9892766713662, -568880251560},
        {228455590597524, 102890265305454, 15384144749202, 763271248572},
        {-283133109082368, -112538134257198, -14880378570702, -654084838776},
        {145969660413876, 54663315780306, 6818124574386, 282804733200},
        {114948653565282, 28520556332185, 2120174200437, 41508307214},
        {-266136288330804, -64554405156542, -4974875449122, -118316113870},
        {231505084727484, 48462635603757, 3118639591167, 57046227402},
        {-157683873095088, -29884914159150, -1731522224136, -28053441810},
        {128194088016960, 26251653430532, 1777817746164, 39784853536},
        {-93781039576440, -20509014226284, -1492267863516, -36142018632},
        {48419503675464, 10605079683132, 762354165516, 18046494240},
        {-28506502556208, -5500835228252, -350694167832, -7395272404},
        {20904580562238, 3484619208381, 192614012265, 3529086186},
        {-5474015596008, -798500580444, -38207177868, -596911950},
        {-5110988886252, -818622949903, -43610170473, -772796930},
        {3827009370468, 568214697288, 28095823638, 462651582},
        {-298303161912, -40195017734, -1797408942, -26664280},
        {-421160527164, -58191841810, -2678104758, -41050916},
        {108578230872, 14195520018, 618497250, 8979864},
        {6497146140, 904793234, 41413650, 624712},
        {-5458867722, -673799601, -27679581, -378438},
        {1023226044, 115066290, 4314342, 53934},
        {-65662116, -6439541, -207663, -2194},
        {-30026832, -3236102, -116196, -1390},
        {7120080, 733416, 25176, 288},
        {-431520, -43184, -1440, -16}}, 0};
    return r;
}

// ---------------------------------------------------------------------------
// Grammar counts

namespace {

bool term_start(Sym s) {
    switch (s) {
        case Sym::V: case Sym::Zero: case Sym::C: case Sym::S: case Sym::Add: case Sym::Mul:
        case Sym::Q: case Sym::Exp: case Sym::Smash:
            return true;
        default:
            return false;
    }
}

bool formula_start(Sym s) {
    switch (s) {
        case Sym::Bot: case Sym::Top: case Sym::Eq: case Sym::T: case Sym::Neg: case Sym::And:
        case Sym::Or: case Sym::Imp: case Sym::Forall: case Sym::Exists:
            return true;
        default:
            return false;
    }
}

Nat eval_poly(const std::vector<long>& c, unsigned long n) {
    Nat v = 0, p = 1;
    for (long k : c) {
        v += p * k;
        p *= n;
    }
    return v;
}

}  // namespace

struct GrammarCounts::Huge {
    struct State {
        unsigned long n = 0;
        std::vector<Nat> t, f;  // last r values, oldest first; t.back() = T(n)
        Nat c;       // cumulative count up to n
        Nat c_prev;  // cumulative count up to n − 1
    };
    static constexpr unsigned long kStride = 512;

    const Recurrence* rt;
    const Recurrence* rf;
    std::map<unsigned long, State> checkpoints;
    State cur;

    static Nat next(const Recurrence& rec, const std::vector<Nat>& window, unsigned long N) {
        const size_t r = rec.coeffs.size() - 1;
        unsigned long m = N - r;
        Nat acc = 0;
        for (size_t i = 0; i < r; ++i) acc += eval_poly(rec.coeffs[i], m) * window[window.size() - r + i];
        Nat lead = eval_poly(rec.coeffs[r], m);
        Nat out = -acc;
        mpz_divexact(out.get_mpz_t(), out.get_mpz_t(), lead.get_mpz_t());
        return out;
    }

    void step(State& s) const {
        unsigned long N = s.n + 1;
        Nat tn = next(*rt, s.t, N);
        Nat fn = next(*rf, s.f, N);
        s.t.erase(s.t.begin());
        s.t.push_back(tn);
        s.f.erase(s.f.begin());
        s.f.push_back(fn);
        s.c_prev = s.c;
        s.c += tn + fn;
        s.n = N;
    }

    void advance() {
        step(cur);
        if (cur.n % kStride == 0) checkpoints.emplace(cur.n, cur);
    }

    const Nat& at(unsigned long L) {
        if (L + 1 == cur.n) return cur.c_prev;
        if (L < cur.n || L - cur.n > kStride) {
            auto it = checkpoints.upper_bound(L);
            --it;
            if (L < cur.n || it->first > cur.n) cur = it->second;
        }
        while (cur.n < L) advance();
        return cur.c;
    }

    // Smallest L with cum(L) > r, given cum(first checkpoint) <= r.
    unsigned long length_of_rank(const Nat& r) {
        auto best = checkpoints.begin();
        for (auto it = checkpoints.begin(); it != checkpoints.end() && it->second.c <= r; ++it) best = it;
        if (!(cur.n >= best->first && cur.c <= r)) {
            if (cur.c_prev <= r && cur.c > r && cur.n >= best->first) return cur.n;
            cur = best->second;
        }
        while (cur.c <= r) advance();
        return cur.n;
    }
};

GrammarCounts::GrammarCounts(const Language& lang, Subset subset)
    : lang_(lang), subset_(subset), alphabet_(lang.alphabet()) {
    if (lang.notation != Notation::Polish)
        throw Error("BadLanguage", "collapsed codecs rank Polish expressions");
    for (auto* v : {&t_, &f_, &bt_, &bf_, &tt_, &ff_, &cum_}) v->assign(1, Nat(0));
    Language ltc = base_language();
    if (lang == ltc && subset == Subset::All) {
        huge_ = std::make_shared<Huge>();
        huge_->rt = &lt_c_term_recurrence();
        huge_->rf = &lt_c_formula_recurrence();
    }
}

uint8_t GrammarCounts::top_sort() const {
    switch (subset_) {
        case Subset::All: return kAny;
        case Subset::Formulas: return kFml;
        default: return kTerm;
    }
}

void GrammarCounts::extend(unsigned long len) {
    const bool vars = vars_allowed();
    const unsigned long unary_terms = 1 + (lang_.square ? 1 : 0) + (lang_.exp ? 1 : 0);
    const unsigned long constants = 1 + (lang_.const_c ? 1 : 0);
    while (t_.size() <= len) {
        const unsigned long l = t_.size();
        Nat t = 0, f = 0;
        if (vars) t += 1;
        if (l == 1) t += constants;
        t += t_[l - 1] * unary_terms + 2 * bt_[l - 1];
        if (lang_.smash) t += tt_[l - 1];
        if (l == 1) f += 2;
        f += bt_[l - 1] + f_[l - 1] + 3 * bf_[l - 1];
        if (lang_.truth) f += t_[l - 1];
        if (vars)
            for (unsigned long j = 1; j + 2 <= l; ++j) f += 2 * f_[j];
        if (!vars) f = 0;
        t_.push_back(t);
        f_.push_back(f);
        Nat tt = 0, ff = 0;
        for (unsigned long i = 1; i < l; ++i) {
            tt += t_[i] * t_[l - i];
            ff += f_[i] * f_[l - i];
        }
        tt_.push_back(tt);
        ff_.push_back(ff);
        bt_.push_back(tt + (lang_.star ? t_[l - 1] : Nat(0)));
        bf_.push_back(ff + (lang_.star ? f_[l - 1] : Nat(0)));
        Nat top = subset_ == Subset::All ? t + f : subset_ == Subset::Formulas ? f : t;
        cum_.push_back(cum_.back() + top);
    }
}

Nat GrammarCounts::sort_count(uint8_t sort, unsigned long len) {
    if (sort == kTail) return 1;
    if (len == 0) return 0;
    if (sort == kVar) return vars_allowed() ? 1 : 0;
    extend(len);
    switch (sort) {
        case kTerm: return t_[len];
        case kFml: return f_[len];
        case kBinT: return bt_[len];
        case kBinF: return bf_[len];
        default: return subset_ == Subset::All ? t_[len] + f_[len]
                        : subset_ == Subset::Formulas ? f_[len] : t_[len];
    }
}

Nat GrammarCounts::count(unsigned long len) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (len == 0) return 0;
    return cumulative(len) - cumulative(len - 1);
}

Nat GrammarCounts::huge_cumulative(unsigned long len) {
    if (!huge_)
        throw SearchBudgetExceeded("counting expressions of length " + std::to_string(len) +
                                   " needs a recurrence for " + lang_.name());
    if (huge_->checkpoints.empty()) {
        // Seed from the table.
        extend(kTableLimit);
        Huge::State s;
        s.n = kTableLimit;
        size_t rt = huge_->rt->coeffs.size() - 1, rf = huge_->rf->coeffs.size() - 1;
        for (size_t i = 0; i < rt; ++i) s.t.push_back(t_[kTableLimit - rt + 1 + i]);
        for (size_t i = 0; i < rf; ++i) s.f.push_back(f_[kTableLimit - rf + 1 + i]);
        s.c = cum_[kTableLimit];
        s.c_prev = cum_[kTableLimit - 1];
        huge_->checkpoints.emplace(s.n, s);
        huge_->cur = s;
    }
    return huge_->at(len);
}

Nat GrammarCounts::cumulative(unsigned long len) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (len <= kTableLimit) {
        extend(len);
        return cum_[len];
    }
    return huge_cumulative(len);
}

unsigned long GrammarCounts::length_of_rank(const Nat& r) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (cumulative(kTableLimit) > r) {
        unsigned long lo = 0, hi = kTableLimit;  // cum(hi) > r
        while (lo < hi) {
            unsigned long mid = lo + (hi - lo) / 2;
            if (cum_[mid] > r) hi = mid;
            else lo = mid + 1;
        }
        return hi;
    }
    if (!huge_) throw SearchBudgetExceeded("rank " + nat_str(r) + " is beyond the counting table");
    if (huge_->checkpoints.empty()) huge_cumulative(kTableLimit);
    return huge_->length_of_rank(r);
}

std::optional<GrammarCounts::Stack> GrammarCounts::step(const Stack& in, Sym s) const {
    Stack st = in;
    const bool vars = vars_allowed();
    while (true) {
        if (st.empty()) return std::nullopt;
        uint8_t top = st.back();
        switch (top) {
            case kTail:
                if (s == Sym::Prime) return st;
                st.pop_back();
                continue;
            case kVar:
                if (s != Sym::V) return std::nullopt;
                st.back() = kTail;
                return st;
            case kAny:
                if (term_start(s))
                    st.back() = kTerm;
                else if (formula_start(s))
                    st.back() = kFml;
                else
                    return std::nullopt;
                continue;
            case kBinT:
                if (s == Sym::DeltaT) {
                    st.back() = kTerm;
                    return st;
                }
                st.back() = kTerm;
                st.push_back(kTerm);
                continue;
            case kBinF:
                if (s == Sym::DeltaF) {
                    st.back() = kFml;
                    return st;
                }
                st.back() = kFml;
                st.push_back(kFml);
                continue;
            case kTerm:
                switch (s) {
                    case Sym::V:
                        if (!vars) return std::nullopt;
                        st.back() = kTail;
                        return st;
                    case Sym::Zero: st.pop_back(); return st;
                    case Sym::C:
                        if (!lang_.const_c) return std::nullopt;
                        st.pop_back();
                        return st;
                    case Sym::S: return st;
                    case Sym::Q:
                        if (!lang_.square) return std::nullopt;
                        return st;
                    case Sym::Exp:
                        if (!lang_.exp) return std::nullopt;
                        return st;
                    case Sym::Add: case Sym::Mul:
                        if (lang_.star) {
                            st.back() = kBinT;
                        } else {
                            st.push_back(kTerm);
                        }
                        return st;
                    case Sym::Smash:
                        if (!lang_.smash) return std::nullopt;
                        st.push_back(kTerm);
                        return st;
                    default: return std::nullopt;
                }
            case kFml:
                switch (s) {
                    case Sym::Bot: case Sym::Top: st.pop_back(); return st;
                    case Sym::Eq:
                        if (lang_.star)
                            st.back() = kBinT;
                        else {
                            st.back() = kTerm;
                            st.push_back(kTerm);
                        }
                        return st;
                    case Sym::T:
                        if (!lang_.truth) return std::nullopt;
                        st.back() = kTerm;
                        return st;
                    case Sym::Neg: return st;
                    case Sym::And: case Sym::Or: case Sym::Imp:
                        if (lang_.star)
                            st.back() = kBinF;
                        else
                            st.push_back(kFml);
                        return st;
                    case Sym::Forall: case Sym::Exists:
                        if (!vars) return std::nullopt;
                        st.push_back(kVar);
                        return st;
                    default: return std::nullopt;
                }
            default:
                return std::nullopt;
        }
    }
}

Nat GrammarCounts::completions(const Stack& st, unsigned long m) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    std::vector<uint16_t> counts(kSortCount, 0);
    for (uint8_t s : st) ++counts[s];
    std::function<Nat(std::vector<uint16_t>&, unsigned long)> go =
        [&](std::vector<uint16_t>& cnt, unsigned long rem) -> Nat {
        int first = -1;
        unsigned long pending = 0;
        for (int i = 0; i < kSortCount; ++i) {
            if (cnt[i] && first < 0) first = i;
            if (i != kTail) pending += cnt[i];
        }
        if (first < 0) return rem == 0 ? 1 : 0;
        if (pending > rem) return 0;
        auto key = std::make_pair(cnt, rem);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Nat total = 0;
        --cnt[first];
        unsigned long rest_min = pending - (first == kTail ? 0 : 1);
        unsigned long lo = first == kTail ? 0 : 1;
        for (unsigned long j = lo; j + rest_min <= rem; ++j) {
            Nat g = sort_count(static_cast<uint8_t>(first), j);
            if (g == 0) continue;
            Nat sub = go(cnt, rem - j);
            if (sub != 0) total += g * sub;
        }
        ++cnt[first];
        memo_.emplace(std::move(key), total);
        return total;
    };
    return go(counts, m);
}

// ---------------------------------------------------------------------------
// Collapsed codec over expressions

ExprCodec::ExprCodec(const Language& lang, Subset subset)
    : counts_(std::make_shared<GrammarCounts>(lang, subset)), lf_(lang.alphabet()) {}

bool ExprCodec::in_subset(Expr e) const {
    if (!in_language(e, language())) return false;
    switch (subset()) {
        case Subset::All: return e->is_term() || e->is_formula();
        case Subset::Terms: return e->is_term();
        case Subset::Formulas: return e->is_formula();
        case Subset::ClosedTerms: return e->is_term() && e->closed;
    }
    return false;
}

Nat ExprCodec::rank_word(const Word& w) const {
    GrammarCounts& gc = *counts_;
    if (w.empty()) throw NotInSubset("the empty string is not an expression");
    const unsigned long L = w.size();
    Nat r = gc.cumulative(L - 1);
    GrammarCounts::Stack st{gc.top_sort()};
    for (unsigned long i = 0; i < L; ++i) {
        Sym s = sym_at(w, i);
        if (!lf_.contains(s)) throw NotInSubset("symbol outside the alphabet");
        int d = lf_.digit(s);
        for (int k = 0; k < d; ++k) {
            auto ns = gc.step(st, lf_.alphabet()[k]);
            if (ns) r += gc.completions(*ns, L - i - 1);
        }
        auto ns = gc.step(st, s);
        if (!ns) throw NotInSubset("not a well-formed member at position " + std::to_string(i));
        st = std::move(*ns);
    }
    while (!st.empty() && st.back() == GrammarCounts::kTail) st.pop_back();
    if (!st.empty()) throw NotInSubset("incomplete expression");
    return r;
}

Word ExprCodec::unrank_word(const Nat& n) const {
    GrammarCounts& gc = *counts_;
    const unsigned long L = gc.length_of_rank(n);
    if (L > GrammarCounts::kTableLimit)
        throw SearchBudgetExceeded("unranking at length " + std::to_string(L));
    Nat r = n - gc.cumulative(L - 1);
    GrammarCounts::Stack st{gc.top_sort()};
    Word w;
    for (unsigned long i = 0; i < L; ++i) {
        bool placed = false;
        for (Sym s : lf_.alphabet()) {
            auto ns = gc.step(st, s);
            if (!ns) continue;
            Nat c = gc.completions(*ns, L - i - 1);
            if (r < c) {
                w.push_back(static_cast<char>(s));
                st = std::move(*ns);
                placed = true;
                break;
            }
            r -= c;
        }
        if (!placed) throw NotACode("rank " + nat_str(n) + " has no member");
    }
    return w;
}

Nat ExprCodec::encode(Expr e) const {
    if (!in_subset(e)) throw NotInSubset("expression is not in " + language().name());
    // v'^m is the first member of length m+1 when v leads the alphabet.
    if (e->kind == Kind::Var && lf_.alphabet()[0] == Sym::V)
        return counts_->cumulative(e->n.get_ui());
    return rank_word(render(e, Notation::Polish));
}

Expr ExprCodec::decode(const Nat& n) const {
    if (n < 0) throw NotACode("negative code");
    GrammarCounts& gc = *counts_;
    if (gc.vars_allowed() && lf_.alphabet()[0] == Sym::V && subset() != Subset::Formulas) {
        unsigned long L = gc.length_of_rank(n);
        if (gc.cumulative(L - 1) == n) return mk::var(L - 1);
    }
    return parse(unrank_word(n), language());
}

Language base_language() {
    Language l{Notation::Polish};
    l.const_c = true;
    l.truth = true;
    return l;
}

const ExprCodec& base_codec() {
    static const ExprCodec* c = new ExprCodec(base_language(), Subset::All);
    return *c;
}

// ---------------------------------------------------------------------------
// Collapsed codec by enumeration

PredicateCollapsedCodec::PredicateCollapsedCodec(LengthFirstCodec base,
                                                 std::function<bool(const Word&)> member,
                                                 uint64_t budget)
    : base_(std::move(base)), member_(std::move(member)), budget_(budget) {}

Nat PredicateCollapsedCodec::encode(const Word& w) const {
    if (!member_(w)) throw NotInSubset("string is not in the subset");
    Nat raw = base_.encode(w);
    if (raw > budget_) throw SearchBudgetExceeded("raw code " + nat_str(raw) + " over budget");
    uint64_t end = raw.get_ui();
    Nat count = 0;
    for (uint64_t i = 0; i < end; ++i)
        if (member_(base_.decode(Nat(i)))) count += 1;
    return count;
}

Word PredicateCollapsedCodec::decode(const Nat& n) const {
    Nat seen = 0;
    for (uint64_t i = 0; i <= budget_; ++i) {
        Word w = base_.decode(Nat(i));
        if (!member_(w)) continue;
        if (seen == n) return w;
        seen += 1;
    }
    throw SearchBudgetExceeded("no member with index " + nat_str(n) + " within budget");
}

}  // namespace godel
