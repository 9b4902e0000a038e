#include "godel/staged.hpp"

#include <algorithm>

#include "godel/errors.hpp"
#include "godel/numerals.hpp"

namespace godel {

Nat StageParams::schedule(long k) const {
    if (k < 0) return 0;
    Nat r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), schedule_mult * static_cast<unsigned long>(k) + schedule_add);
    return r + 1;
}

StageParams gn0_params() {
    StageParams p;
    p.name = "gn0";
    p.schedule_mult = 1;
    p.schedule_add = 4;
    p.delta = 4;
    p.filler = FillerKind::StandardNumeral;
    p.default_cap = 24;
    return p;
}

StageParams gn1_params() {
    StageParams p;
    p.name = "gn1";
    p.schedule_mult = 1;
    p.schedule_add = 15;
    p.delta = 15;
    p.filler = FillerKind::BotRun;
    p.domain = StageDomain::Strings;
    p.default_cap = 6;
    return p;
}

StageParams gn1_literal_params() {
    StageParams p = gn1_params();
    p.name = "gn1-literal";
    p.epsilon_filler = false;
    return p;
}

StageParams gn2_params() {
    StageParams p;
    p.name = "gn2";
    p.schedule_mult = 2;
    p.schedule_add = 4;
    p.delta = 2;
    p.filler = FillerKind::HatVar;
    p.default_cap = 24;
    return p;
}

const LengthFirstCodec& gn1_base_codec() {
    static const LengthFirstCodec* c = [] {
        std::vector<Sym> a{Sym::C};
        for (Sym s : polish_l0_alphabet()) a.push_back(s);
        return new LengthFirstCodec(a);
    }();
    return *c;
}

namespace {

Expr self_numeral(unsigned long j) { return mk::succ(mk::tilde(Nat(j))); }

Word replace_c(const Word& w, const Word& by) {
    Word out;
    for (char ch : w) {
        if (static_cast<Sym>(ch) == Sym::C) out += by;
        else out.push_back(ch);
    }
    return out;
}

bool all_bot(const Word& w) {
    return std::all_of(w.begin(), w.end(), [](char ch) { return static_cast<Sym>(ch) == Sym::Bot; });
}

// Collapsed codecs keep the order of 𝔤, so base indices compare as the
// words do in shortlex order; no ranking needed.
bool shortlex_less(const LengthFirstCodec& lf, const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        int da = lf.digit(sym_at(a, i)), db = lf.digit(sym_at(b, i));
        if (da != db) return da < db;
    }
    return false;
}

const LengthFirstCodec& base_lf() {
    static const LengthFirstCodec lf = lf_for(base_language());
    return lf;
}

// Expressions longer than this are placed by stage search alone; ranking them
// would need counting tables of that length.
constexpr unsigned long kRankLength = 512;

Language gn1_language() {
    Language l{Notation::Polish};
    l.const_c = true;
    return l;
}

}  // namespace

// ---------------------------------------------------------------------------

StagedNumbering::StagedNumbering(StageParams params)
    : params_(std::move(params)), cap_(params_.default_cap) {}

StagedNumbering::StagedNumbering(StageParams params, unsigned long stage_cap)
    : params_(std::move(params)), cap_(stage_cap) {}

void StagedNumbering::cap_error(const std::string& what) const {
    throw StageCapExceeded(what + " lies beyond stage " + std::to_string(cap_) + " (code >= " +
                           nat_str(params_.schedule(static_cast<long>(cap_))) + ")");
}

bool StagedNumbering::is_filler(Expr e) const {
    switch (params_.filler) {
        case FillerKind::StandardNumeral: return is_numeral(e);
        case FillerKind::HatVar: return is_hat(e);
        case FillerKind::BotRun: return false;
    }
    return false;
}

bool StagedNumbering::is_filler(const Word& w) const {
    if (w.empty()) return params_.epsilon_filler;
    return all_bot(w);
}

Expr StagedNumbering::filler_expr(const Nat& m) const {
    switch (params_.filler) {
        case FillerKind::StandardNumeral: return mk::numeral(m);
        case FillerKind::HatVar: return mk::var(m);
        case FillerKind::BotRun: break;
    }
    throw NotInSubset("string fillers have no expression form");
}

Word StagedNumbering::filler_word(const Nat& m, uint64_t cap) const {
    Nat len = params_.epsilon_filler ? m : m + 1;
    if (len > cap) throw RenderTooLarge("⊥^" + nat_str(len) + " exceeds the render cap");
    return Word(len.get_ui(), static_cast<char>(Sym::Bot));
}

void StagedNumbering::ensure(unsigned long k) {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    if (k > cap_) cap_error("stage " + std::to_string(k));
    while (stages_.size() <= k) build(stages_.size());
}

const StageReport& StagedNumbering::stage(unsigned long k) {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    ensure(k);
    return stages_[k];
}

Nat StagedNumbering::ell_sum(unsigned long k) {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    if (k == 0) return 0;
    ensure(k - 1);
    return ell_sums_[k];
}

void StagedNumbering::build(unsigned long k) {
    StageReport r;
    r.k = k;
    r.begin = params_.schedule(static_cast<long>(k) - 1);
    r.end = params_.schedule(static_cast<long>(k));
    if (ell_sums_.empty()) ell_sums_.push_back(0);
    Expr num = self_numeral(k + params_.delta);

    if (strings()) {
        const LengthFirstCodec& base = gn1_base_codec();
        Word alpha = base.decode(Nat(k));
        r.astar_word = replace_c(alpha, render(num, Notation::Polish));
        for (const Word& w : sub_strings(r.astar_word))
            if (!is_filler(w) && !word_code_.count(w)) r.new_words.push_back(w);
        std::sort(r.new_words.begin(), r.new_words.end(),
                  [&](const Word& x, const Word& y) { return shortlex_less(base, x, y); });
        r.ell = r.new_words.size();
    } else {
        Expr a = base_codec().decode(Nat(k));
        r.astar = substitute_c(a, num);
        std::vector<std::pair<Word, Expr>> fresh;
        for (Expr e : sub_expressions(r.astar))
            if (!is_filler(e) && !expr_code_.count(e)) fresh.emplace_back(render(e, Notation::Polish), e);
        std::sort(fresh.begin(), fresh.end(),
                  [](const auto& x, const auto& y) { return shortlex_less(base_lf(), x.first, y.first); });
        for (auto& f : fresh) r.new_exprs.push_back(f.second);
        r.ell = r.new_exprs.size();
    }
    if (Nat(r.ell) > r.end - r.begin) throw std::logic_error("stage overflows its block");
    r.filler_start = r.begin - ell_sums_[k];
    r.filler_count = r.end - r.begin - r.ell;
    Nat pos = r.end - r.ell;
    for (unsigned long j = 0; j < r.ell; ++j, ++pos) {
        if (strings()) word_code_.emplace(r.new_words[j], pos);
        else expr_code_.emplace(r.new_exprs[j], pos);
    }
    ell_sums_.push_back(ell_sums_[k] + r.ell);
    stages_.push_back(std::move(r));
}

std::vector<Nat> StagedNumbering::stage_indices(unsigned long k) {
    const StageReport& r = stage(k);
    std::vector<Nat> out;
    if (strings())
        for (const Word& w : r.new_words) out.push_back(gn1_base_codec().encode(w));
    else
        for (Expr e : r.new_exprs) out.push_back(base_codec().encode(e));
    return out;
}

Nat StagedNumbering::filler_code(const Nat& m) {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    for (unsigned long k = 0;; ++k) {
        if (k > cap_) cap_error("filler " + nat_str(m));
        const StageReport& r = stage(k);
        if (m < r.filler_start + r.filler_count) return r.begin + (m - r.filler_start);
    }
}

std::optional<Nat> StagedNumbering::try_encode(Expr e) {
    try {
        return encode(e);
    } catch (const StageCapExceeded&) {
        return std::nullopt;
    }
}

std::optional<Nat> StagedNumbering::try_encode_word(const Word& w) {
    try {
        return encode_word(w);
    } catch (const StageCapExceeded&) {
        return std::nullopt;
    }
}

Nat StagedNumbering::encode(Expr e) {
    if (strings()) return encode_word(render(e, Notation::Polish));
    if (e->has_c) throw NotInSubset("c does not belong to the numbered language");
    if (is_filler(e)) return filler_code(is_hat(e) ? e->n : numeral_value(e));
    std::lock_guard<std::recursive_mutex> lk(mu_);
    if (auto it = expr_code_.find(e); it != expr_code_.end()) return it->second;
    // A_j = e for j its base index, so e is placed by stage j at the latest.
    // Long expressions have j far past any cap; search up to the cap instead.
    Nat j = e->len_polish <= kRankLength ? base_codec().encode(e) : Nat(cap_);
    for (unsigned long k = stages_.size(); Nat(k) <= j; ++k) {
        if (k > cap_) cap_error("expression with base index " + nat_str(j));
        ensure(k);
        if (auto it = expr_code_.find(e); it != expr_code_.end()) return it->second;
    }
    if (e->len_polish > kRankLength) cap_error("long expression not placed by any stage");
    throw std::logic_error("expression missing from its own stage");
}

Nat StagedNumbering::encode_word(const Word& w) {
    if (!strings()) return encode(parse(w, base_language()));
    const LengthFirstCodec& base = gn1_base_codec();
    for (char ch : w) {
        Sym s = static_cast<Sym>(ch);
        if (s == Sym::C || !base.contains(s)) throw AlienSymbol("symbol outside the numbered alphabet");
    }
    if (is_filler(w)) return filler_code(params_.epsilon_filler ? Nat(w.size()) : Nat(w.size() - 1));
    std::lock_guard<std::recursive_mutex> lk(mu_);
    if (auto it = word_code_.find(w); it != word_code_.end()) return it->second;
    Nat j = w.size() <= kRankLength ? base.encode(w) : Nat(cap_);
    for (unsigned long k = stages_.size(); Nat(k) <= j; ++k) {
        if (k > cap_) cap_error("string with base index " + nat_str(j));
        ensure(k);
        if (auto it = word_code_.find(w); it != word_code_.end()) return it->second;
    }
    if (w.size() > kRankLength) cap_error("long string not placed by any stage");
    throw std::logic_error("string missing from its own stage");
}

StageEntry StagedNumbering::entry(const Nat& n) {
    if (n < 0) throw NotACode("negative code");
    std::lock_guard<std::recursive_mutex> lk(mu_);
    unsigned long k = 0;
    while (n >= params_.schedule(static_cast<long>(k))) {
        ++k;
        if (k > cap_) throw NotYetEnumerated("code " + nat_str(n) + " lies beyond stage " + std::to_string(cap_));
    }
    const StageReport& r = stage(k);
    StageEntry out;
    Nat reg = r.end - r.ell;
    if (n < reg) {
        out.filler = true;
        out.m = r.filler_start + (n - r.begin);
        return out;
    }
    unsigned long j = Nat(n - reg).get_ui();
    if (strings()) out.word = r.new_words[j];
    else out.expr = r.new_exprs[j];
    return out;
}

Expr StagedNumbering::decode(const Nat& n) {
    if (strings()) return parse(decode_word(n), gn1_language());
    StageEntry e = entry(n);
    return e.filler ? filler_expr(e.m) : e.expr;
}

Word StagedNumbering::decode_word(const Nat& n, uint64_t cap) {
    if (!strings()) return render(decode(n), Notation::Polish, cap);
    StageEntry e = entry(n);
    return e.filler ? filler_word(e.m, cap) : e.word;
}

void StagedNumbering::for_each(unsigned long k,
                               const std::function<void(const Nat&, const StageEntry&)>& fn) {
    for (unsigned long i = 0; i <= k; ++i) {
        StageReport r = stage(i);
        Nat n = r.begin;
        StageEntry fe;
        fe.filler = true;
        for (Nat m = r.filler_start; m < r.filler_start + r.filler_count; ++m, ++n) {
            fe.m = m;
            fn(n, fe);
        }
        for (unsigned long j = 0; j < r.ell; ++j, ++n) {
            StageEntry e;
            if (strings()) e.word = r.new_words[j];
            else e.expr = r.new_exprs[j];
            fn(n, e);
        }
    }
}

std::vector<StageEntry> StagedNumbering::materialize(unsigned long k) {
    std::vector<StageEntry> out;
    for_each(k, [&](const Nat&, const StageEntry& e) { out.push_back(e); });
    return out;
}

// ---------------------------------------------------------------------------
// Fixed points

FixedPoint fixed_point(StagedNumbering& g, Expr a) {
    if (g.strings()) return fixed_point_word(g, render(a, Notation::Polish));
    if (!a->has_c) throw NoConstC("the expression has no occurrence of c");
    FixedPoint out;
    out.k = base_codec().encode(a);
    if (out.k > g.stage_cap())
        throw StageCapExceeded("base index " + nat_str(out.k) + " exceeds the stage cap");
    unsigned long k = out.k.get_ui();
    const StageParams& p = g.params();
    out.n = CodeValue(g.params().schedule(static_cast<long>(k)) - 1);
    out.fp = substitute_c(a, self_numeral(k + p.delta));
    out.code = g.encode(out.fp);
    return out;
}

FixedPoint fixed_point_word(StagedNumbering& g, const Word& a) {
    if (a.find(static_cast<char>(Sym::C)) == Word::npos)
        throw NoConstC("the string has no occurrence of c");
    FixedPoint out;
    out.k = gn1_base_codec().encode(a);
    if (out.k > g.stage_cap())
        throw StageCapExceeded("base index " + nat_str(out.k) + " exceeds the stage cap");
    unsigned long k = out.k.get_ui();
    out.n = CodeValue(g.params().schedule(static_cast<long>(k)) - 1);
    out.fp_word = replace_c(a, render(self_numeral(k + g.params().delta), Notation::Polish));
    out.code = g.encode_word(out.fp_word);
    return out;
}

FixedPoint fixed_point_square(StagedNumbering& g, Expr a) {
    if (!a->has_c) throw NoConstC("the expression has no occurrence of c");
    FixedPoint out;
    out.k = base_codec().encode(a);
    if (out.k > g.stage_cap())
        throw StageCapExceeded("base index " + nat_str(out.k) + " exceeds the stage cap");
    unsigned long k = out.k.get_ui();
    out.n = CodeValue::pow2(CodeValue(Nat(k + g.params().delta)));
    out.fp = substitute_c(a, self_numeral(k + g.params().delta));
    out.code = g.encode(out.fp);
    return out;
}

Diagonal strong_diagonal(StagedNumbering& g, Expr c, const Nat& x) {
    if (!occurs_free(c, x)) throw NoFreeVariable("variable " + nat_str(x) + " is not free");
    Expr a = substitute_var(c, x, mk::mul(mk::c(), mk::c()));
    FixedPoint fp = fixed_point_square(g, a);
    Expr num = self_numeral(fp.k.get_ui() + g.params().delta);
    Diagonal d;
    d.term = mk::mul(num, num);
    d.sentence = substitute_var(c, x, d.term);
    d.value = ev(d.term);
    d.code = g.encode(d.sentence);
    return d;
}

// ---------------------------------------------------------------------------
// Translations

StageTranslator::StageTranslator(StageParams params) : params_(std::move(params)) {
    if (params_.domain != StageDomain::Expressions)
        throw UnsupportedPair("the translator covers the expression numberings");
    ell_sums_.push_back(0);
}

const std::vector<Nat>& StageTranslator::sigma(unsigned long k) {
    std::lock_guard<std::mutex> lk(mu_);
    const ExprCodec& base = base_codec();
    while (sigma_.size() <= k) {
        unsigned long i = sigma_.size();
        Expr astar = substitute_c(base.decode(Nat(i)), self_numeral(i + params_.delta));
        std::vector<Nat> idx;
        for (Expr e : sub_expressions(astar)) {
            bool filler = params_.filler == FillerKind::HatVar ? is_hat(e) : is_numeral(e);
            if (filler) continue;
            Nat r = base.encode(e);
            if (!seen_.count(r)) idx.push_back(r);
        }
        std::sort(idx.begin(), idx.end());
        for (const Nat& r : idx) seen_.insert(r);
        ell_sums_.push_back(ell_sums_.back() + idx.size());
        sigma_.push_back(std::move(idx));
    }
    return sigma_[k];
}

Nat StageTranslator::filler_base_index(const Nat& m) const {
    Expr f = params_.filler == FillerKind::HatVar ? mk::var(m) : mk::numeral(m);
    return base_codec().encode(f);
}

Nat StageTranslator::to_base(const Nat& n) {
    if (n < 0) throw NotACode("negative code");
    unsigned long k = 0;
    while (n > params_.schedule(static_cast<long>(k)) - 1) ++k;
    const std::vector<Nat>& s = sigma(k);
    Nat p = params_.schedule(static_cast<long>(k)) - 1 - n;
    if (p < s.size()) return s[s.size() - 1 - p.get_ui()];
    Nat m;
    {
        std::lock_guard<std::mutex> lk(mu_);
        m = n - ell_sums_[k];
    }
    return filler_base_index(m);
}

Nat StageTranslator::from_base(StagedNumbering& g, const Nat& r) {
    Expr e = base_codec().decode(r);
    if (e->has_c) throw NotInImage("base index " + nat_str(r) + " names an expression with c");
    return g.encode(e);
}

NumberingId numbering_id_from_name(const std::string& name) {
    if (name == "base" || name == "*" || name == "star") return NumberingId::Base;
    if (name == "gn0") return NumberingId::Gn0;
    if (name == "gn1") return NumberingId::Gn1;
    if (name == "gn2") return NumberingId::Gn2;
    throw UnsupportedPair("unknown numbering " + name);
}

const char* numbering_id_name(NumberingId id) {
    switch (id) {
        case NumberingId::Base: return "base";
        case NumberingId::Gn0: return "gn0";
        case NumberingId::Gn1: return "gn1";
        case NumberingId::Gn2: return "gn2";
    }
    return "?";
}

namespace {

StagedNumbering& shared_numbering(NumberingId id) {
    static StagedNumbering g0(gn0_params()), g1(gn1_params()), g2(gn2_params());
    switch (id) {
        case NumberingId::Gn0: return g0;
        case NumberingId::Gn1: return g1;
        default: return g2;
    }
}

StageTranslator& shared_translator(NumberingId id) {
    static StageTranslator t0(gn0_params()), t2(gn2_params());
    return id == NumberingId::Gn0 ? t0 : t2;
}

}  // namespace

Nat translate(NumberingId to, NumberingId from, const Nat& n, unsigned long stage_cap) {
    if (to == from) return n;
    // Step 1: base index of the element with code n under `from`.
    Nat r;
    switch (from) {
        case NumberingId::Base: r = n; break;
        case NumberingId::Gn1: {
            StagedNumbering& g = shared_numbering(from);
            if (stage_cap) g.set_stage_cap(stage_cap);
            Expr e = parse(g.decode_word(n), gn1_language());
            r = base_codec().encode(e);
            break;
        }
        default: {
            StagedNumbering& g = shared_numbering(from);
            if (stage_cap) g.set_stage_cap(stage_cap);
            if (n >= g.params().schedule(static_cast<long>(g.stage_cap())))
                throw StageCapExceeded("code " + nat_str(n) + " lies beyond the stage cap");
            r = shared_translator(from).to_base(n);
        }
    }
    if (to == NumberingId::Base) return r;
    StagedNumbering& g = shared_numbering(to);
    if (stage_cap) g.set_stage_cap(stage_cap);
    Expr e = base_codec().decode(r);
    if (e->has_c) throw NotInImage("the base element contains c");
    if (to == NumberingId::Gn1) return g.encode_word(render(e, Notation::Polish));
    return g.encode(e);
}

std::optional<Nat> efficient_value(Expr e) {
    switch (e->kind) {
        case Kind::Zero: return Nat(0);
        case Kind::Tilde: {
            Nat v = 1;
            mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), e->n.get_ui());
            return Nat(v - 1);
        }
        case Kind::Succ: break;
        default: return std::nullopt;
    }
    auto twice = [](Expr m) -> std::optional<Nat> {
        if (m->kind != Kind::Mul || m->a->kind != Kind::Numeral || m->a->n != 2) return std::nullopt;
        auto v = efficient_value(m->b);
        if (!v) return std::nullopt;
        return Nat(2 * *v);
    };
    Expr x = e->a;
    if (auto v = twice(x)) return Nat(*v + 1);
    if (x->kind == Kind::Tilde) {
        Nat v = 1;
        mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), x->n.get_ui());
        return v;
    }
    if (x->kind == Kind::Succ)
        if (auto v = twice(x->a)) return Nat(*v + 2);
    return std::nullopt;
}

}  // namespace godel
