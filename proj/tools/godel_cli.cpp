// godel: command-line front end for the numbering library.
#include <CLI11.hpp>
#include <json.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "godel/adequacy.hpp"
#include "godel/appendix.hpp"
#include "godel/codes.hpp"
#include "godel/errors.hpp"
#include "godel/numerals.hpp"
#include "godel/sharing.hpp"
#include "godel/staged.hpp"
#include "godel/syntax.hpp"
#include "godel/truthlab.hpp"

using namespace godel;
using json = nlohmann::ordered_json;

namespace {

struct Config {
    uint64_t seed = 0;
    bool json = false;
    unsigned long stage_cap = 0;
    uint64_t render_cap = kDefaultRenderCap;
    unsigned long bit_budget = 0;
    std::string notation = "infix";
    bool with_c = false;
    bool with_t = false;
};

Config cfg;

// Usage errors that CLI11 cannot see (bad names, missing modes).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A check ran and found a violation.
struct CheckFailed {};

Notation notation() {
    if (cfg.notation == "infix") return Notation::Infix;
    if (cfg.notation == "polish") return Notation::Polish;
    throw UsageError("notation must be infix or polish");
}

Language language() {
    Language l = Language::l0(notation());
    l.const_c = cfg.with_c;
    l.truth = cfg.with_t;
    return l;
}

std::string text_of(Expr e, Notation nt = Notation::Infix) {
    try {
        return render_text(e, nt, cfg.render_cap);
    } catch (const RenderTooLarge&) {
        return "<" + nat_str(e->length(nt)) + " symbols>";
    }
}

std::string word_text(const Word& w, Notation nt) { return to_text(w, nt); }

void emit(const json& j, const std::vector<std::string>& lines) {
    if (cfg.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        for (const std::string& l : lines) std::cout << l << "\n";
    }
}

std::string kv(const json& j) {
    std::string out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!out.empty()) out += "\n";
        out += it.key() + ": " + (it->is_string() ? it->get<std::string>() : it->dump());
    }
    return out;
}

void emit(const json& j) { emit(j, {kv(j)}); }

NumeralKind numeral_kind(const std::string& name) {
    try {
        return numeral_kind_from_name(name);
    } catch (const Error&) {
        throw UsageError("unknown numeral system " + name);
    }
}

// Random sample via ranks of a collapsed codec; reproducible per seed.
class Sampler {
public:
    Sampler() : rng_(gmp_randinit_default) { rng_.seed(cfg.seed); }
    Nat below(const Nat& n) { return n > 0 ? Nat(rng_.get_z_range(n)) : Nat(0); }

private:
    gmp_randclass rng_;
};

// ---------------------------------------------------------------------------

int cmd_parse(const std::string& text) {
    Expr e = parse_text(text, language());
    json j;
    j["infix"] = text_of(e, Notation::Infix);
    j["polish"] = text_of(e, Notation::Polish);
    j["sort"] = e->is_term() ? "term" : "formula";
    j["closed"] = e->closed && !e->has_c;
    j["length_infix"] = nat_str(e->len_infix);
    j["length_polish"] = nat_str(e->len_polish);
    j["subexpressions"] = nat_str(nu(e));
    emit(j);
    return 0;
}

int cmd_ev(const std::string& text) {
    Expr e = parse_text(text, language());
    Nat v = ev(e);
    json j;
    j["term"] = text_of(e, notation());
    j["value"] = CodeValue(v).str();
    emit(j);
    return 0;
}

int cmd_numeral(const std::string& system, const std::string& n_text, bool render_it) {
    NumeralKind k = numeral_kind(system);
    CodeValue n = CodeValue::parse(n_text);
    Expr num = k == NumeralKind::Efficient ? efficient_numeral(n) : numeral(k, n.materialize());
    json j;
    j["system"] = numeral_kind_name(k);
    j["n"] = n.str();
    j["length_infix"] = nat_str(num->len_infix);
    j["subterms"] = nat_str(nu(num) - 1);
    j["ev_matches"] = CodeValue(ev(num)) == n;
    if (render_it) j["numeral"] = text_of(num, notation());
    emit(j);
    return 0;
}

int cmd_code(const std::string& codec, const std::optional<std::string>& enc, const std::optional<std::string>& dec) {
    json j;
    j["codec"] = codec;
    if (codec == "lf17" || codec == "lf-polish") {
        Notation nt = codec == "lf17" ? Notation::Infix : Notation::Polish;
        LengthFirstCodec lf = codec == "lf17" ? lf17_infix() : lf_for(Language::l0(Notation::Polish));
        if (enc) {
            Word w = from_text(*enc, nt);
            j["string"] = word_text(w, nt);
            j["code"] = CodeValue(lf.encode(w)).str();
        } else {
            Word w = lf.decode(CodeValue::parse(*dec).materialize());
            j["code"] = *dec;
            j["string"] = word_text(w, nt);
        }
    } else if (codec == "collapsed" || codec == "base") {
        std::optional<ExprCodec> own;
        if (codec == "collapsed") own.emplace(Language::l0(Notation::Polish));
        const ExprCodec& c = own ? *own : base_codec();
        if (enc) {
            Expr e = parse_text(*enc, c.language());
            j["expr"] = text_of(e, Notation::Polish);
            j["code"] = CodeValue(c.encode(e)).str();
        } else {
            j["code"] = *dec;
            j["expr"] = text_of(c.decode(CodeValue::parse(*dec).materialize()), Notation::Polish);
        }
    } else {
        throw UsageError("unknown codec " + codec + " (lf17, lf-polish, collapsed, base)");
    }
    emit(j);
    return 0;
}

StageParams staged_params(const std::string& name) {
    if (name == "gn0") return gn0_params();
    if (name == "gn1") return gn1_params();
    if (name == "gn2") return gn2_params();
    throw UsageError("unknown staged numbering " + name + " (gn0, gn1, gn2)");
}

bool strings_domain(const StageParams& p) { return p.domain == StageDomain::Strings; }

json stage_json(StagedNumbering& g, unsigned long k) {
    const StageReport& r = g.stage(k);
    json j;
    j["k"] = r.k;
    j["astar"] = g.strings() ? word_text(r.astar_word, Notation::Polish) : text_of(r.astar, Notation::Polish);
    j["ell"] = r.ell;
    j["begin"] = nat_str(r.begin);
    j["end"] = nat_str(r.end);
    j["filler_start"] = nat_str(r.filler_start);
    j["filler_count"] = nat_str(r.filler_count);
    json fresh = json::array();
    if (g.strings())
        for (const Word& w : r.new_words) fresh.push_back(word_text(w, Notation::Polish));
    else
        for (Expr e : r.new_exprs) fresh.push_back(text_of(e, Notation::Polish));
    j["new"] = fresh;
    return j;
}

int cmd_staged(const std::string& name, const std::optional<std::string>& enc, const std::optional<std::string>& dec,
               const std::optional<std::string>& fp, const std::optional<unsigned long>& stage,
               const std::optional<std::string>& diag, unsigned long var) {
    StageParams p = staged_params(name);
    unsigned long cap = cfg.stage_cap ? cfg.stage_cap : p.default_cap;
    // Without an explicit cap a fixed point may build up to its own stage.
    if (fp && !cfg.stage_cap && !strings_domain(p)) {
        Nat k = base_codec().encode(parse_text(*fp, base_language()));
        if (k.fits_ulong_p() && k.get_ui() > cap && k.get_ui() <= 4096) cap = k.get_ui();
    }
    StagedNumbering g(p, cap);
    Language lang = g.strings() ? Language::l0(Notation::Polish) : base_language();
    json j;
    j["numbering"] = name;
    if (enc) {
        if (g.strings()) {
            Word w = from_text(*enc, Notation::Polish);
            j["string"] = word_text(w, Notation::Polish);
            j["code"] = nat_str(g.encode_word(w));
        } else {
            Expr e = parse_text(*enc, lang);
            j["expr"] = text_of(e, Notation::Polish);
            j["code"] = nat_str(g.encode(e));
        }
    } else if (dec) {
        Nat n = CodeValue::parse(*dec).materialize();
        StageEntry en = g.entry(n);
        j["code"] = nat_str(n);
        j["filler"] = en.filler;
        if (g.strings()) j["string"] = word_text(g.decode_word(n, cfg.render_cap), Notation::Polish);
        else j["expr"] = text_of(g.decode(n), Notation::Polish);
    } else if (fp) {
        FixedPoint f;
        if (g.strings()) {
            f = fixed_point_word(g, from_text(*fp, Notation::Polish));
            j["sentence"] = word_text(f.fp_word, Notation::Polish);
        } else {
            Expr a = parse_text(*fp, lang);
            f = name == "gn2" ? fixed_point_square(g, a) : fixed_point(g, a);
            j["sentence"] = text_of(f.fp, Notation::Polish);
        }
        j["base_index"] = nat_str(f.k);
        j["n"] = f.n.str();
        j["code"] = nat_str(f.code);
        j["holds"] = name == "gn2" ? CodeValue(f.code) == f.n * f.n : CodeValue(f.code) == f.n;
    } else if (stage) {
        j = stage_json(g, *stage);
    } else if (diag) {
        if (name != "gn2") throw UsageError("--diagonal needs gn2");
        Language l = base_language();
        Diagonal d = strong_diagonal(g, parse_text(*diag, l), var);
        j["term"] = text_of(d.term, Notation::Polish);
        j["value"] = CodeValue(d.value).str();
        j["code"] = CodeValue(d.code).str();
        j["holds"] = d.value == d.code;
    } else {
        throw UsageError("staged needs one of --encode, --decode, --fixed-point, --stage, --diagonal");
    }
    emit(j);
    return 0;
}

int cmd_gn3(const std::optional<std::string>& enc, const std::optional<std::string>& dec,
            const std::optional<std::string>& scan) {
    json j;
    if (enc) {
        Expr e = parse_text(*enc, Language::lstar());
        j["expr"] = text_of(expand(e), Notation::Polish);
        j["contracted"] = text_of(contract(expand(e)), Notation::Polish);
        j["code"] = nat_str(gn3().encode(e));
        emit(j);
        return 0;
    }
    if (dec) {
        Nat n = CodeValue::parse(*dec).materialize();
        Expr e = gn3().decode(n);
        j["code"] = nat_str(n);
        j["expr"] = text_of(e, Notation::Polish);
        j["contracted"] = text_of(contract(e), Notation::Polish);
        emit(j);
        return 0;
    }
    if (!scan) throw UsageError("gn3 needs one of --encode, --decode, --regularity-scan");
    size_t dots = scan->find("..");
    if (dots == std::string::npos) throw UsageError("--regularity-scan takes FROM..TO");
    unsigned long from = std::stoul(scan->substr(0, dots)), to = std::stoul(scan->substr(dots + 2));
    json rows = json::array();
    std::vector<std::string> lines{"n  gn3(n)^2 > gn3(Mnn)"};
    for (const RegularityRow& r : regularity_scan(from, to)) {
        rows.push_back({{"n", nat_str(r.n)}, {"code_n", nat_str(r.code_n)},
                        {"code_product", nat_str(r.code_product)}, {"witness", r.witness}});
        lines.push_back(nat_str(r.n) + "  " + (r.witness ? "yes" : "no"));
    }
    emit(rows, lines);
    return 0;
}

int cmd_appendix(const std::optional<std::string>& g5, const std::optional<std::string>& g6,
                 const std::optional<std::string>& fp, unsigned long var, const std::optional<std::string>& beta_n) {
    json j;
    if (g5) {
        Word w = from_text(*g5, Notation::Infix);
        Gn5Trace t = gn5_trace(Str(w), cfg.render_cap);
        j["string"] = word_text(w, Notation::Infix);
        j["gn5"] = nat_str(t.value);
        j["essential"] = t.essential;
        if (t.k) j["self_numeral"] = nat_str(*t.k);
    } else if (g6) {
        Expr e = parse_text(*g6, Language::l0(Notation::Infix));
        j["expr"] = text_of(e);
        j["class"] = w_class(e) == WClass::W0 ? "W0" : "W1";
        j["gn6"] = gn6(e, cfg.render_cap).str();
    } else if (fp) {
        SelfReference r = self_ref_fixed_point(parse_text(*fp, Language::l0(Notation::Infix)), var);
        j["n"] = nat_str(r.n);
        j["k"] = r.k.str();
        j["code"] = r.code.str();
        j["numeral_length"] = nat_str(r.numeral_length);
        j["holds"] = r.holds();
    } else if (beta_n) {
        Nat n = CodeValue::parse(*beta_n).materialize();
        Str b = beta(n);
        j["n"] = nat_str(n);
        j["beta"] = b.text(cfg.render_cap);
    } else {
        throw UsageError("appendix needs one of --gn5, --gn6, --fixed-point, --beta");
    }
    emit(j);
    return 0;
}

json report_json(const CheckReport& r) {
    json j;
    j["predicate"] = r.predicate;
    j["numbering"] = r.numbering;
    j["sample"] = r.sample;
    j["checked"] = r.checked;
    j["pass"] = r.pass();
    if (r.violation) {
        json v;
        json w = json::array(), c = json::array();
        for (Expr e : r.violation->witnesses) w.push_back(text_of(e, Notation::Polish));
        for (const CodeValue& x : r.violation->codes) c.push_back(x.str());
        v["witnesses"] = w;
        v["codes"] = c;
        v["failed"] = r.violation->inequality;
        j["violation"] = v;
    }
    return j;
}

std::vector<Expr> sample_exprs(const NumberingHandle& xi, size_t count, unsigned long max_len, bool closed_terms) {
    Sampler rng;
    std::vector<Expr> out;
    bool staged = xi.name == "gn0" || xi.name == "gn2";
    if (staged) {
        StageParams p = staged_params(xi.name);
        Nat top = p.schedule(std::min<long>(8, cfg.stage_cap ? cfg.stage_cap : p.default_cap));
        for (size_t guard = 0; out.size() < count && guard < 200 * count; ++guard) {
            Expr e = xi.decode(CodeValue(rng.below(top)));
            if (!closed_terms || (e->is_term() && e->closed)) out.push_back(e);
        }
        return out;
    }
    Language lang = xi.lang;
    lang.notation = Notation::Polish;
    ExprCodec codec(lang, closed_terms ? Subset::ClosedTerms : Subset::All);
    Nat top = codec.counts().cumulative(max_len);
    for (size_t i = 0; i < count; ++i) out.push_back(codec.decode(rng.below(top)));
    return out;
}

int cmd_adequacy(const std::string& name, const std::string& check, size_t sample_size, unsigned long max_len,
                 const std::string& nu_name, const std::string& formula, unsigned long var, const std::string& bound) {
    std::vector<std::string> names = numbering_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) throw UsageError("unknown numbering " + name);
    NumberingHandle xi = numbering_by_name(name, cfg.stage_cap);
    NumeralKind nu = numeral_kind(nu_name);
    CheckReport r;
    if (check == "sr") {
        Expr a = parse_text(formula, Language::l0(Notation::Infix));
        SrResult s = sr_search(xi, nu, a, var, CodeValue::parse(bound).materialize());
        json j{{"predicate", "sr"}, {"numbering", name}, {"numerals", numeral_kind_name(nu)},
               {"found", s.found}, {"result", s.text()}};
        if (s.found) j["witness"] = nat_str(s.witness);
        emit(j);
        return 0;
    }
    if (name == "gn1") {
        if (check != "m1m2m3") throw UsageError("gn1 numbers strings; only m1m2m3 applies");
        StagedNumbering g(gn1_params(), cfg.stage_cap ? cfg.stage_cap : 2);
        Sampler rng;
        std::vector<Word> words;
        Nat top = gn1_params().schedule(std::min<long>(2, cfg.stage_cap ? cfg.stage_cap : 2));
        for (size_t i = 0; i < sample_size; ++i) words.push_back(g.decode_word(rng.below(top), cfg.render_cap));
        r = check_monotone_strings("gn1", [&](const Word& w) { return CodeValue(g.encode_word(w)); }, words);
    } else if (check == "m1m2m3") {
        r = check_monotone(xi, sample_exprs(xi, sample_size, max_len, false));
    } else if (check == "m4" || check == "m4star") {
        r = check_M4(xi, nu, check == "m4", sample_exprs(xi, sample_size, max_len, false));
    } else if (check == "m5") {
        r = check_M5(xi, sample_exprs(xi, sample_size, max_len, true));
    } else if (check == "regular") {
        r = check_regular(xi, sample_exprs(xi, sample_size, max_len, true));
    } else {
        throw UsageError("unknown check " + check + " (m1m2m3, m4, m4star, m5, regular, sr)");
    }
    json j = report_json(r);
    std::string line = r.predicate + " on " + r.numbering + " (" + r.sample + "): " + (r.pass() ? "holds" : "violated");
    if (r.violation) line += " [" + r.violation->inequality + "]";
    emit(j, {line});
    if (!r.pass()) throw CheckFailed{};
    return 0;
}

json certificate_json(const LiarCertificate& c) {
    json j;
    j["theory"] = theory_name(c.theory);
    j["choice"] = c.choice.name();
    j["anchor"] = text_of(c.anchor, Notation::Polish);
    j["anchor_origin"] = c.anchor_origin;
    json eqs = json::array();
    for (const ClosedEquality& q : c.equalities)
        eqs.push_back({{"lhs", meta_text(q.lhs, c.choice)}, {"rhs", meta_text(q.rhs, c.choice)},
                       {"value", CodeValue(ev(realize(q.lhs, c.choice))).str()}});
    j["equalities"] = eqs;
    json steps = json::array();
    for (const LiarStep& s : c.steps) {
        json st{{"lhs", meta_text(s.lhs, c.choice)}, {"rhs", meta_text(s.rhs, c.choice)},
                {"justification", justification_name(s.why)}};
        if (s.why == Justification::Eq) st["equality"] = s.equality;
        steps.push_back(st);
    }
    j["steps"] = steps;
    bool ok = verify(c);
    j["verified"] = ok;
    j["conclusion"] = ok ? "T(a) <-> ¬T(a), hence ⊥" : "not verified";
    return j;
}

std::vector<std::string> certificate_lines(const LiarCertificate& c) {
    std::vector<std::string> out{std::string(theory_name(c.theory)) + " under " + c.choice.name(),
                                 "anchor: " + c.anchor_origin};
    for (size_t i = 0; i < c.steps.size(); ++i) {
        const LiarStep& s = c.steps[i];
        out.push_back("  " + std::to_string(i + 1) + ". " + meta_text(s.lhs, c.choice) + " <-> " +
                      meta_text(s.rhs, c.choice) + "   [" + justification_name(s.why) + "]");
    }
    auto err = verify_error(c);
    out.push_back(err ? "rejected: " + *err : "verified: T(a) <-> ¬T(a), hence ⊥");
    return out;
}

int cmd_liar(const std::optional<int>& item, const std::string& theory, const std::string& numbering,
             const std::string& nu_name, const std::string& bound) {
    NumeralKind nu = numeral_kind(nu_name);
    LiarCertificate c = [&] {
        if (item) {
            if (*item < 1 || *item > 8) throw UsageError("--item takes 1..8");
            return build_item(*item, nu);
        }
        Theory t;
        try {
            t = theory_from_name(theory);
        } catch (const Error&) {
            throw UsageError("unknown theory " + theory + " (s, sstar, t, tstar)");
        }
        FormalisationChoice ch = make_choice(numbering, nu, cfg.stage_cap);
        ch.search_bound = CodeValue::parse(bound).materialize();
        return build_liar(t, ch);
    }();
    emit(certificate_json(c), certificate_lines(c));
    if (!verify(c)) throw CheckFailed{};
    return 0;
}

int cmd_table(const std::string& section, const std::string& bound) {
    if (section == "truth" || section == "9") {
        json rows = json::array();
        std::vector<std::string> lines{"constraints | theory | consistent | inconsistent"};
        bool all = true;
        for (const TableRow& r : truth_table(CodeValue::parse(bound).materialize())) {
            rows.push_back({{"constraints", r.constraints},
                            {"theory", theory_name(r.theory)},
                            {"consistent_choice", r.consistent_choice},
                            {"consistent_status", r.consistent_status},
                            {"consistent_pass", r.consistent_pass},
                            {"inconsistent_choice", r.inconsistent_choice},
                            {"inconsistent_status", r.inconsistent_status},
                            {"inconsistent_pass", r.inconsistent_pass}});
            lines.push_back(r.constraints + " | " + theory_name(r.theory) + " | " + r.consistent_choice + ": " +
                            (r.consistent_pass ? "PASS " : "FAIL ") + r.consistent_status + " | " +
                            r.inconsistent_choice + ": " + (r.inconsistent_pass ? "PASS " : "FAIL ") +
                            r.inconsistent_status);
            all = all && r.consistent_pass && r.inconsistent_pass;
        }
        emit(rows, lines);
        if (!all) throw CheckFailed{};
        return 0;
    }
    if (section == "stages") {
        StagedNumbering g(gn0_params(), cfg.stage_cap ? cfg.stage_cap : 24);
        json rows = json::array();
        std::vector<std::string> lines{"k  ell  block"};
        for (unsigned long k = 0; k <= 10; ++k) {
            const StageReport& r = g.stage(k);
            rows.push_back({{"k", k}, {"ell", r.ell}, {"begin", nat_str(r.begin)}, {"end", nat_str(r.end)}});
            lines.push_back(std::to_string(k) + "  " + std::to_string(r.ell) + "  [" + nat_str(r.begin) + ", " +
                            nat_str(r.end) + ")");
        }
        emit(rows, lines);
        return 0;
    }
    throw UsageError("unknown section " + section + " (truth, stages)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Goedel numberings: codes, staged numberings, fixed points, adequacy and liar certificates"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", cfg.seed, "Seed for sampled checks");
    app.add_flag("--json", cfg.json, "JSON output");
    app.add_option("--stage-cap", cfg.stage_cap, "Largest stage a staged numbering may build")->check(CLI::PositiveNumber);
    app.add_option("--render-cap", cfg.render_cap, "Largest string rendered flat")->check(CLI::PositiveNumber);
    app.add_option("--bit-budget", cfg.bit_budget, "Largest integer width materialized")->check(CLI::PositiveNumber);
    app.add_option("--notation", cfg.notation, "infix or polish")->check(CLI::IsMember({"infix", "polish"}));
    app.add_flag("--with-c", cfg.with_c, "Allow the constant c");
    app.add_flag("--with-t", cfg.with_t, "Allow the truth predicate T");

    std::string expr, system = "efficient", n_text, codec = "lf17", numbering = "gn0", check = "m1m2m3";
    std::string theory = "sstar", nu_name = "efficient", formula = "v=v", bound = "10000", section = "truth";
    std::optional<std::string> enc, dec, fp, diag, scan, g5, g6, beta_n;
    std::optional<unsigned long> stage;
    std::optional<int> item;
    unsigned long var = 0, max_len = 8;
    size_t sample_size = 200;
    bool render_it = false;

    auto* parse = app.add_subcommand("parse", "Parse and re-render an expression");
    parse->add_option("--expr", expr)->required();
    auto* evc = app.add_subcommand("ev", "Value of a closed term");
    evc->add_option("--expr", expr)->required();
    auto* num = app.add_subcommand("numeral", "Numeral of n in a numeral system");
    num->add_option("--system", system);
    num->add_option("--n", n_text)->required();
    num->add_flag("--render", render_it);
    auto* code = app.add_subcommand("code", "Length-first and collapsed codecs");
    code->add_option("--codec", codec);
    auto* code_modes = code->add_option_group("mode")->require_option(1);
    code_modes->add_option("--encode", enc);
    code_modes->add_option("--decode", dec);
    auto* staged = app.add_subcommand("staged", "Staged numberings gn0, gn1, gn2");
    staged->add_option("--numbering", numbering);
    staged->add_option("--var", var, "Diagonal variable index");
    auto* staged_modes = staged->add_option_group("mode")->require_option(1);
    staged_modes->add_option("--encode", enc);
    staged_modes->add_option("--decode", dec);
    staged_modes->add_option("--fixed-point", fp);
    staged_modes->add_option("--stage", stage);
    staged_modes->add_option("--diagonal", diag);
    auto* g3 = app.add_subcommand("gn3", "Sharing numbering");
    auto* g3_modes = g3->add_option_group("mode")->require_option(1);
    g3_modes->add_option("--encode", enc);
    g3_modes->add_option("--decode", dec);
    g3_modes->add_option("--regularity-scan", scan, "FROM..TO");
    auto* app_x = app.add_subcommand("appendix", "gn4, gn5, gn6 and self-reference");
    app_x->add_option("--var", var);
    auto* app_modes = app_x->add_option_group("mode")->require_option(1);
    app_modes->add_option("--gn5", g5);
    app_modes->add_option("--gn6", g6);
    app_modes->add_option("--fixed-point", fp);
    app_modes->add_option("--beta", beta_n);
    auto* adq = app.add_subcommand("adequacy", "Monotonicity, domination, regularity, self-reference");
    adq->add_option("--numbering", numbering);
    adq->add_option("--check", check);
    adq->add_option("--sample-size", sample_size);
    adq->add_option("--max-length", max_len);
    adq->add_option("--numerals", nu_name);
    adq->add_option("--formula", formula);
    adq->add_option("--var", var);
    adq->add_option("--bound", bound);
    auto* liar = app.add_subcommand("liar", "Liar certificates for truth theories");
    liar->add_option("--item", item);
    liar->add_option("--theory", theory);
    liar->add_option("--numbering", numbering);
    liar->add_option("--numerals", nu_name);
    liar->add_option("--bound", bound);
    auto* table = app.add_subcommand("table", "Report tables");
    table->add_option("--section", section);
    table->add_option("--bound", bound);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    }

    try {
        if (cfg.bit_budget) CodeValue::set_bit_budget(cfg.bit_budget);
        notation();
        if (*parse) return cmd_parse(expr);
        if (*evc) return cmd_ev(expr);
        if (*num) return cmd_numeral(system, n_text, render_it);
        if (*code) return cmd_code(codec, enc, dec);
        if (*staged) return cmd_staged(numbering, enc, dec, fp, stage, diag, var);
        if (*g3) return cmd_gn3(enc, dec, scan);
        if (*app_x) return cmd_appendix(g5, g6, fp, var, beta_n);
        if (*adq) return cmd_adequacy(numbering, check, sample_size, max_len, nu_name, formula, var, bound);
        if (*liar) return cmd_liar(item, theory, numbering, nu_name, bound);
        if (*table) return cmd_table(section, bound);
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const CheckFailed&) {
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == "UnsupportedPair" ? 2 : 1;
    }
    return 2;
}
