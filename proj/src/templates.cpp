#include "rr/templates.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace rr {

namespace {

using L = Label;

LabelSet S(std::initializer_list<Label> ls) { return labels(ls); }

InfoTerm mk(LabelSet a, LabelSet b, LabelSet c) {
    auto t = canonicalize(a, b, c);
    if (!t) throw std::logic_error("bound term collapsed");
    return *t;
}

const std::map<std::string, InfoTerm>& term_table() {
    static const std::map<std::string, InfoTerm> t = [] {
        std::map<std::string, InfoTerm> m;
        const LabelSet y3 = S({L::Y3}), y4 = S({L::Y4});
        m["coop1"] = mk(S({L::V1}), S({L::Y2}), S({L::Q, L::V2, L::U2, L::T2, L::X2}));
        m["d1.T"] = mk(y3, S({L::T1}), S({L::Q, L::V1, L::V2, L::U1, L::U2}));
        m["d1.TU2"] = mk(y3, S({L::T1, L::U2}), S({L::Q, L::V1, L::V2, L::U1}));
        m["d1.TU1"] = mk(y3, S({L::T1, L::U1}), S({L::Q, L::V1, L::V2, L::U2}));
        m["d1.TU1U2"] = mk(y3, S({L::T1, L::U1, L::U2}), S({L::Q, L::V1, L::V2}));
        m["d1.all"] = mk(y3, S({L::T1, L::U1, L::U2, L::Q, L::V1, L::V2}), 0);
        m["coop2"] = mk(S({L::V2}), S({L::Y1}), S({L::Q, L::V1, L::U1, L::T1, L::X1}));
        m["d2.T"] = mk(y4, S({L::T2}), S({L::Q, L::V1, L::V2, L::U1, L::U2}));
        m["d2.TU1"] = mk(y4, S({L::T2, L::U1}), S({L::Q, L::V1, L::V2, L::U2}));
        m["d2.TU2"] = mk(y4, S({L::T2, L::U2}), S({L::Q, L::V1, L::V2, L::U1}));
        m["d2.TU1U2"] = mk(y4, S({L::T2, L::U1, L::U2}), S({L::Q, L::V1, L::V2}));
        m["d2.all"] = mk(y4, S({L::T2, L::U1, L::U2, L::Q, L::V1, L::V2}), 0);
        m["hk1.T"] = mk(y3, S({L::T1}), S({L::Q, L::U1, L::U2}));
        m["hk1.TU2"] = mk(y3, S({L::T1, L::U2}), S({L::Q, L::U1}));
        m["hk1.TU1"] = mk(y3, S({L::T1, L::U1}), S({L::Q, L::U2}));
        m["hk1.TU1U2"] = mk(y3, S({L::T1, L::U1, L::U2}), S({L::Q}));
        m["hk2.T"] = mk(y4, S({L::T2}), S({L::Q, L::U1, L::U2}));
        m["hk2.TU1"] = mk(y4, S({L::T2, L::U1}), S({L::Q, L::U2}));
        m["hk2.TU2"] = mk(y4, S({L::T2, L::U2}), S({L::Q, L::U1}));
        m["hk2.TU1U2"] = mk(y4, S({L::T2, L::U1, L::U2}), S({L::Q}));
        m["coop2.ext"] = mk(S({L::V2, L::U2}), S({L::Y1}), S({L::Q, L::V1, L::U1, L::T1, L::X1}));
        m["coop2.full"] = mk(S({L::V2, L::U2, L::T2}), S({L::Y1}), S({L::Q, L::V1, L::U1, L::T1, L::X1}));
        return m;
    }();
    return t;
}

Lhs lhs(std::initializer_list<std::pair<const char*, int>> parts) {
    Lhs out;
    for (const auto& [s, v] : parts) out[s] = v;
    return out;
}

LinearConstraint flagged(LinearConstraint c) {
    c.flagged = true;
    return c;
}

InfoExpr B(const char* name) { return bound(name); }

const char* kDec1[] = {"d1.T", "d1.TU2", "d1.TU1", "d1.TU1U2", "d1.all"};
const char* kDec2[] = {"d2.T", "d2.TU1", "d2.TU2", "d2.TU1U2", "d2.all"};

LinearSystem dec1_split(bool common) {
    LinearSystem s;
    s.add(le(lhs({{"R_11n", 1}}), B("d1.T")));
    s.add(le(lhs({{"R_11n", 1}, {"R_20n", 1}}), B("d1.TU2")));
    s.add(le(lhs({{"R_11n", 1}, {"R_10n", 1}}), B("d1.TU1")));
    s.add(le(lhs({{"R_11n", 1}, {"R_10n", 1}, {"R_20n", 1}}), B("d1.TU1U2")));
    Lhs all = lhs({{"R_11n", 1}, {"R_10n", 1}, {"R_20n", 1}, {"R_10c", 1}, {"R_20c", 1}});
    if (common) all["R0"] = 1;
    s.add(le(all, B("d1.all")));
    return s;
}

LinearSystem dec2_split(bool common) {
    LinearSystem s;
    s.add(le(lhs({{"R_22n", 1}}), B("d2.T")));
    s.add(le(lhs({{"R_22n", 1}, {"R_10n", 1}}), B("d2.TU1")));
    s.add(le(lhs({{"R_22n", 1}, {"R_20n", 1}}), B("d2.TU2")));
    s.add(le(lhs({{"R_22n", 1}, {"R_20n", 1}, {"R_10n", 1}}), B("d2.TU1U2")));
    Lhs all = lhs({{"R_22n", 1}, {"R_20n", 1}, {"R_10n", 1}, {"R_20c", 1}, {"R_10c", 1}});
    if (common) all["R0"] = 1;
    s.add(le(all, B("d2.all")));
    return s;
}

LinearSystem hk_dec(int user) {
    LinearSystem s;
    if (user == 1) {
        s.add(le(lhs({{"R_11n", 1}}), B("hk1.T")));
        s.add(le(lhs({{"R_11n", 1}, {"R_20n", 1}}), B("hk1.TU2")));
        s.add(le(lhs({{"R_11n", 1}, {"R_10n", 1}}), B("hk1.TU1")));
        s.add(le(lhs({{"R_11n", 1}, {"R_10n", 1}, {"R_20n", 1}}), B("hk1.TU1U2")));
    } else {
        s.add(le(lhs({{"R_22n", 1}}), B("hk2.T")));
        s.add(le(lhs({{"R_22n", 1}, {"R_10n", 1}}), B("hk2.TU1")));
        s.add(le(lhs({{"R_22n", 1}, {"R_20n", 1}}), B("hk2.TU2")));
        s.add(le(lhs({{"R_22n", 1}, {"R_20n", 1}, {"R_10n", 1}}), B("hk2.TU1U2")));
    }
    return s;
}

LinearSystem from_list(const std::vector<LinearConstraint>& cs) {
    LinearSystem s;
    for (const auto& c : cs) s.add(c);
    return s;
}

void add_totals(LinearSystem& s, bool with_common) {
    for (const auto& r : split_rates()) s.add(nonneg(r));
    s.add(nonneg("R1"));
    s.add(nonneg("R2"));
    if (with_common) s.add(nonneg("R0"));
    s.add(eq(lhs({{"R1", 1}, {"R_10c", -1}, {"R_10n", -1}, {"R_11n", -1}}), InfoExpr{}));
    s.add(eq(lhs({{"R2", 1}, {"R_20c", -1}, {"R_20n", -1}, {"R_22n", -1}}), InfoExpr{}));
}

}  // namespace

const std::vector<std::string>& bound_term_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, t] : term_table()) v.push_back(k);
        return v;
    }();
    return names;
}

InfoTerm bound_term(const std::string& name) {
    auto it = term_table().find(name);
    if (it == term_table().end()) throw std::invalid_argument("unknown bound term '" + name + "'");
    return it->second;
}

InfoExpr bound(const std::string& name) { return InfoExpr::term(bound_term(name)); }

SupIngredients sup_ingredients() {
    SupIngredients in;
    in.coop1 = B("coop1");
    in.coop2 = B("coop2");
    for (int i = 0; i < 5; ++i) {
        in.dec1[i] = B(kDec1[i]);
        in.dec2[i] = B(kDec2[i]);
    }
    return in;
}

SupIngredients ext_ingredients() {
    SupIngredients in = sup_ingredients();
    in.coop2 = B("coop2.ext");
    return in;
}

HkIngredients hk_ingredients() {
    HkIngredients in;
    const char* d1[] = {"hk1.T", "hk1.TU2", "hk1.TU1", "hk1.TU1U2"};
    const char* d2[] = {"hk2.T", "hk2.TU1", "hk2.TU2", "hk2.TU1U2"};
    for (int i = 0; i < 4; ++i) {
        in.dec1[i] = B(d1[i]);
        in.dec2[i] = B(d2[i]);
    }
    return in;
}

std::vector<LinearConstraint> hk_single_rate_pair(const HkIngredients& in) {
    const auto& a = in.dec1;
    const auto& b = in.dec2;
    return {flagged(le(lhs({{"R1", 1}}), a[0] + b[1])), flagged(le(lhs({{"R2", 1}}), b[0] + a[1]))};
}

LinearSystem hk_region(const HkIngredients& in, bool with_pair) {
    const auto& a = in.dec1;
    const auto& b = in.dec2;
    LinearSystem s;
    s.add(le(lhs({{"R1", 1}}), a[2]));
    s.add(le(lhs({{"R2", 1}}), b[2]));
    s.add(le(lhs({{"R1", 1}, {"R2", 1}}), a[3] + b[0]));
    s.add(le(lhs({{"R1", 1}, {"R2", 1}}), a[0] + b[3]));
    s.add(le(lhs({{"R1", 1}, {"R2", 1}}), a[1] + b[1]));
    s.add(le(lhs({{"R1", 2}, {"R2", 1}}), a[0] + a[3] + b[1]));
    s.add(le(lhs({{"R1", 1}, {"R2", 2}}), a[1] + b[0] + b[3]));
    if (with_pair)
        for (const auto& c : hk_single_rate_pair(in)) s.add(c);
    return s;
}

LinearSystem sup_region(const SupIngredients& in) {
    const auto& A = in.coop1;
    const auto& Bc = in.coop2;
    const auto& a = in.dec1;
    const auto& b = in.dec2;
    const Lhs r1 = lhs({{"R1", 1}}), r2 = lhs({{"R2", 1}}), sum = lhs({{"R1", 1}, {"R2", 1}});
    const Lhs w1 = lhs({{"R1", 2}, {"R2", 1}}), w2 = lhs({{"R1", 1}, {"R2", 2}});
    LinearSystem s;
    s.add(le(r1, a[4]));
    s.add(le(r1, A + a[2]));
    s.add(le(r2, b[4]));
    s.add(le(r2, Bc + b[2]));
    s.add(le(sum, a[4] + b[0]));
    s.add(le(sum, a[0] + b[4]));
    s.add(le(sum, A + Bc + a[3] + b[0]));
    s.add(le(sum, A + Bc + a[0] + b[3]));
    s.add(le(sum, A + Bc + a[1] + b[1]));
    s.add(le(w1, A + a[0] + a[4] + b[1]));
    s.add(le(w1, A * 2 + Bc + a[0] + a[3] + b[1]));
    s.add(le(w2, Bc + a[1] + b[0] + b[4]));
    s.add(le(w2, A + Bc * 2 + a[1] + b[0] + b[3]));
    s.add(flagged(le(r1, A + a[0] + b[1])));
    s.add(flagged(le(r2, Bc + b[0] + a[1])));
    return s;
}

LinearSystem ext_region(const SupIngredients& in) {
    const auto& A = in.coop1;
    const auto& Bx = in.coop2;
    const auto& a = in.dec1;
    const auto& b = in.dec2;
    const Lhs r1 = lhs({{"R1", 1}}), r2 = lhs({{"R2", 1}}), sum = lhs({{"R1", 1}, {"R2", 1}});
    LinearSystem s;
    s.add(le(r1, a[4]));
    s.add(le(r1, A + a[2]));
    s.add(le(r2, b[4]));
    s.add(le(r2, Bx + b[0]));
    s.add(le(sum, a[4] + b[0]));
    s.add(le(sum, a[0] + b[4]));
    s.add(le(sum, A + Bx + a[0] + b[1]));
    s.add(le(lhs({{"R1", 2}, {"R2", 1}}), A + a[0] + a[4] + b[1]));
    s.add(flagged(le(r1, A + a[0] + b[1])));
    return s;
}

const std::vector<std::string>& split_rates() {
    static const std::vector<std::string> v = {"R_10c", "R_10n", "R_11n", "R_20c", "R_20n", "R_22n"};
    return v;
}

LinearSystem hk_split_system() {
    LinearSystem s = hk_dec(1);
    s.add_all(hk_dec(2));
    for (const char* r : {"R_10n", "R_11n", "R_20n", "R_22n", "R1", "R2"}) s.add(nonneg(r));
    s.add(eq(lhs({{"R1", 1}, {"R_10n", -1}, {"R_11n", -1}}), InfoExpr{}));
    s.add(eq(lhs({{"R2", 1}, {"R_20n", -1}, {"R_22n", -1}}), InfoExpr{}));
    return s;
}

LinearSystem sup_split_system(bool with_common_rate) {
    LinearSystem s;
    s.add(le(lhs({{"R_10c", 1}}), B("coop1")));
    s.add_all(dec1_split(with_common_rate));
    s.add(le(lhs({{"R_20c", 1}}), B("coop2")));
    s.add_all(dec2_split(with_common_rate));
    add_totals(s, with_common_rate);
    return s;
}

LinearSystem ext_split_system() {
    LinearSystem s;
    s.add(le(lhs({{"R_10c", 1}}), B("coop1")));
    s.add_all(dec1_split(false));
    s.add(le(lhs({{"R_20n", 1}, {"R_20c", 1}}), B("coop2.ext")));
    s.add_all(dec2_split(false));
    add_totals(s, false);
    return s;
}

LinearSystem ext_full_split_system() {
    LinearSystem s;
    s.add(le(lhs({{"R_10c", 1}}), B("coop1")));
    s.add_all(dec1_split(false));
    s.add(le(lhs({{"R_22n", 1}, {"R_20n", 1}, {"R_20c", 1}}), B("coop2.full")));
    s.add_all(dec2_split(false));
    add_totals(s, false);
    return s;
}

DominanceRegistry curated_facts() {
    DominanceRegistry f;
    auto chain = [&](const char* p, std::initializer_list<std::pair<const char*, const char*>> pairs) {
        for (const auto& [a, b] : pairs) f.add(bound_term(std::string(p) + a), bound_term(std::string(p) + b));
    };
    chain("d1.", {{"T", "TU2"}, {"T", "TU1"}, {"TU2", "TU1U2"}, {"TU1", "TU1U2"}, {"TU1U2", "all"}});
    chain("d2.", {{"T", "TU1"}, {"T", "TU2"}, {"TU1", "TU1U2"}, {"TU2", "TU1U2"}, {"TU1U2", "all"}});
    chain("hk1.", {{"T", "TU2"}, {"T", "TU1"}, {"TU2", "TU1U2"}, {"TU1", "TU1U2"}});
    chain("hk2.", {{"T", "TU1"}, {"T", "TU2"}, {"TU1", "TU1U2"}, {"TU2", "TU1U2"}});
    return f;
}

// ---------------------------------------------------------------------------

const std::vector<TemplateId>& all_templates() {
    static const std::vector<TemplateId> v = {
        TemplateId::HK_DEC1, TemplateId::HK_DEC2, TemplateId::HK_REGION, TemplateId::SUP_COOP1,
        TemplateId::SUP_DEC1, TemplateId::SUP_COOP2, TemplateId::SUP_DEC2, TemplateId::SUP_REGION,
        TemplateId::EXT_COOP, TemplateId::EXT_REGION, TemplateId::BIN_ENC_BC, TemplateId::BIN_ENC_MDC,
        TemplateId::BIN_ENC_COOP, TemplateId::BIN_DEC1, TemplateId::BIN_DEC2};
    return v;
}

std::string template_name(TemplateId id) {
    switch (id) {
    case TemplateId::HK_DEC1: return "HK_DEC1";
    case TemplateId::HK_DEC2: return "HK_DEC2";
    case TemplateId::HK_REGION: return "HK_REGION";
    case TemplateId::SUP_COOP1: return "SUP_COOP1";
    case TemplateId::SUP_DEC1: return "SUP_DEC1";
    case TemplateId::SUP_COOP2: return "SUP_COOP2";
    case TemplateId::SUP_DEC2: return "SUP_DEC2";
    case TemplateId::SUP_REGION: return "SUP_REGION";
    case TemplateId::EXT_COOP: return "EXT_COOP";
    case TemplateId::EXT_REGION: return "EXT_REGION";
    case TemplateId::BIN_ENC_BC: return "BIN_ENC_BC";
    case TemplateId::BIN_ENC_MDC: return "BIN_ENC_MDC";
    case TemplateId::BIN_ENC_COOP: return "BIN_ENC_COOP";
    case TemplateId::BIN_DEC1: return "BIN_DEC1";
    case TemplateId::BIN_DEC2: return "BIN_DEC2";
    }
    return "?";
}

TemplateId parse_template(const std::string& name) {
    std::string up;
    for (char c : name) up += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (up == "HK") return TemplateId::HK_REGION;
    if (up == "SUP") return TemplateId::SUP_REGION;
    if (up == "EXT") return TemplateId::EXT_REGION;
    for (auto id : all_templates())
        if (template_name(id) == up) return id;
    throw std::invalid_argument("unknown template '" + name + "'");
}

LinearSystem build(TemplateId id) {
    switch (id) {
    case TemplateId::HK_DEC1: return hk_dec(1);
    case TemplateId::HK_DEC2: return hk_dec(2);
    case TemplateId::HK_REGION: return hk_region(hk_ingredients());
    case TemplateId::SUP_COOP1: return from_list({le(lhs({{"R_10c", 1}}), B("coop1"))});
    case TemplateId::SUP_DEC1: return dec1_split(false);
    case TemplateId::SUP_COOP2: return from_list({le(lhs({{"R_20c", 1}}), B("coop2"))});
    case TemplateId::SUP_DEC2: return dec2_split(false);
    case TemplateId::SUP_REGION: return sup_region(sup_ingredients());
    case TemplateId::EXT_COOP: return from_list({le(lhs({{"R_20n", 1}, {"R_20c", 1}}), B("coop2.ext"))});
    case TemplateId::EXT_REGION: return ext_region(ext_ingredients());
    case TemplateId::BIN_ENC_BC: {
        auto sys = build_full();
        return from_list({sys.encoder.front()});
    }
    case TemplateId::BIN_ENC_MDC: {
        auto sys = build_full();
        return from_list({sys.encoder.begin() + 1, sys.encoder.end()});
    }
    case TemplateId::BIN_ENC_COOP: return from_list(build_full().cooperation);
    case TemplateId::BIN_DEC1:
    case TemplateId::BIN_DEC2: {
        auto sys = build_full();
        LinearSystem s;
        for (const auto& r : id == TemplateId::BIN_DEC1 ? sys.dest1 : sys.dest2) s.add(row_constraint(r));
        for (const auto& c : sys.aggregates) s.add(c);
        return s;
    }
    }
    throw std::invalid_argument("unknown template");
}

// ---------------------------------------------------------------------------
// Reductions

const std::vector<ReductionId>& all_reductions() {
    static const std::vector<ReductionId> v = {
        ReductionId::NO_FEEDBACK, ReductionId::OUTPUT_FEEDBACK, ReductionId::COGNITIVE, ReductionId::BROADCAST,
        ReductionId::MAC_GF, ReductionId::MAC_GF_COMMON, ReductionId::RELAY_DF, ReductionId::CONFERENCING};
    return v;
}

std::string reduction_name(ReductionId id) {
    switch (id) {
    case ReductionId::NO_FEEDBACK: return "NO_FEEDBACK";
    case ReductionId::OUTPUT_FEEDBACK: return "OUTPUT_FEEDBACK";
    case ReductionId::COGNITIVE: return "COGNITIVE";
    case ReductionId::BROADCAST: return "BROADCAST";
    case ReductionId::MAC_GF: return "MAC_GF";
    case ReductionId::MAC_GF_COMMON: return "MAC_GF_COMMON";
    case ReductionId::RELAY_DF: return "RELAY_DF";
    case ReductionId::CONFERENCING: return "CONFERENCING";
    }
    return "?";
}

ReductionId parse_reduction(const std::string& name) {
    for (auto id : all_reductions())
        if (reduction_name(id) == name) return id;
    throw std::invalid_argument("unknown reduction '" + name + "'");
}

namespace {

TermPin pin(const char* term, TermPin::Kind k, std::string param = {}) {
    return TermPin{bound_term(term), k, std::move(param)};
}

InfoExpr Bs(const char* name, const Substitution& s) { return substitute(bound(name), s); }

LinearSystem mac_expected(const Substitution& s, bool common) {
    LinearSystem e;
    e.add(le(lhs({{"R1", 1}}), Bs("coop1", s) + Bs("d1.TU1", s)));
    e.add(le(lhs({{"R2", 1}}), Bs("coop2", s) + Bs("d1.TU2", s)));
    Lhs all = lhs({{"R1", 1}, {"R2", 1}});
    if (common) all["R0"] = 1;
    e.add(le(all, Bs("d1.all", s)));
    e.add(le(lhs({{"R1", 1}, {"R2", 1}}), Bs("coop1", s) + Bs("coop2", s) + Bs("d1.TU1U2", s)));
    return e;
}

Substitution mac_sigma() {
    Substitution s;
    s.map(L::Y3, L::Y).map(L::Y4, L::Y).map(L::T1, LabelSet{0}).map(L::T2, LabelSet{0});
    return s;
}

}  // namespace

Reduction reduction_map(ReductionId id) {
    using K = TermPin::Kind;
    Reduction r{id, {}, Substitution{}, {}, std::nullopt};
    switch (id) {
    case ReductionId::NO_FEEDBACK:
        r.pins = {pin("coop1", K::ZERO), pin("coop2", K::ZERO)};
        r.sigma.map(L::V1, L::Q).map(L::V2, L::Q);
        r.expected = hk_region(hk_ingredients(), true);
        break;
    case ReductionId::OUTPUT_FEEDBACK:
        r.sigma.map(L::Y1, L::Y3).map(L::Y2, L::Y4);
        break;
    case ReductionId::COGNITIVE: {
        r.pins = {pin("coop1", K::INFINITE), pin("coop2", K::ZERO)};
        r.sigma.map(L::U1, L::Q).map(L::V1, L::Q).map(L::V2, L::Q);
        const auto& s = r.sigma;
        LinearSystem e;
        e.add(le(lhs({{"R1", 1}}), Bs("d1.all", s)));
        e.add(le(lhs({{"R2", 1}}), Bs("d2.TU2", s)));
        e.add(le(lhs({{"R1", 1}, {"R2", 1}}), Bs("d1.all", s) + Bs("d2.T", s)));
        e.add(le(lhs({{"R1", 1}, {"R2", 1}}), Bs("d1.T", s) + Bs("d2.all", s)));
        e.add(le(lhs({{"R1", 1}, {"R2", 2}}), Bs("d1.TU2", s) + Bs("d2.T", s) + Bs("d2.all", s)));
        e.add(flagged(le(lhs({{"R2", 1}}), Bs("d2.T", s) + Bs("d1.TU2", s))));
        r.expected = e;
        break;
    }
    case ReductionId::BROADCAST: {
        r.pins = {pin("coop1", K::INFINITE), pin("coop2", K::INFINITE)};
        r.sigma.map(L::U1, L::Q).map(L::V1, L::Q).map(L::U2, L::Q).map(L::V2, L::Q);
        const auto& s = r.sigma;
        LinearSystem e;
        e.add(le(lhs({{"R1", 1}}), Bs("d1.all", s)));
        e.add(le(lhs({{"R2", 1}}), Bs("d2.all", s)));
        e.add(le(lhs({{"R1", 1}, {"R2", 1}}), Bs("d1.all", s) + Bs("d2.T", s)));
        e.add(le(lhs({{"R1", 1}, {"R2", 1}}), Bs("d1.T", s) + Bs("d2.all", s)));
        r.expected = e;
        break;
    }
    case ReductionId::MAC_GF:
        r.sigma = mac_sigma();
        r.expected = mac_expected(r.sigma, false);
        break;
    case ReductionId::MAC_GF_COMMON:
        r.sigma = mac_sigma();
        r.expected = mac_expected(r.sigma, true);
        break;
    case ReductionId::RELAY_DF: {
        r.sigma = mac_sigma();
        r.zero_rates = {"R2"};
        LinearSystem e;
        e.add(le(lhs({{"R1", 1}}), Bs("coop1", r.sigma) + Bs("d1.TU1", r.sigma)));
        e.add(le(lhs({{"R1", 1}}), Bs("d1.all", r.sigma)));
        r.expected = e;
        break;
    }
    case ReductionId::CONFERENCING: {
        r.pins = {pin("coop1", K::PARAM, "C21"), pin("coop2", K::PARAM, "C12")};
        SupIngredients in = sup_ingredients();
        in.coop1 = InfoExpr::param("C21");
        in.coop2 = InfoExpr::param("C12");
        r.expected = sup_region(in);
        break;
    }
    }
    return r;
}

LinearSystem apply_pins(const LinearSystem& s, const std::vector<TermPin>& pins) {
    LinearSystem out;
    auto rewrite = [&](InfoExpr e) {
        for (const auto& p : pins) {
            Rational c = e.coefficient(p.term);
            if (c == 0 || p.kind == TermPin::Kind::INFINITE) continue;
            e.add_term(p.term, -c);
            if (p.kind == TermPin::Kind::PARAM) e.add_param(p.param, c);
        }
        return e;
    };
    for (auto c : s.constraints()) {
        bool unbounded = false;
        for (const auto& p : pins)
            if (p.kind == TermPin::Kind::INFINITE) {
                Rational k = c.rhs.coefficient(p.term);
                if ((c.rel == Relation::LE && k > 0) || (c.rel == Relation::GE && k < 0)) unbounded = true;
            }
        if (unbounded) continue;
        c.rhs = rewrite(c.rhs);
        out.add(c);
    }
    for (const auto& e : s.side_conditions()) out.add_side_condition(rewrite(e));
    return out;
}

LinearSystem apply_substitution(const LinearSystem& s, const Substitution& sigma) {
    return s.map_rhs([&](const InfoExpr& e) { return substitute(e, sigma); });
}

LinearSystem zero_rates(const LinearSystem& s, const std::vector<std::string>& rates) {
    LinearSystem out;
    for (auto c : s.constraints()) {
        for (const auto& r : rates) c.lhs.erase(r);
        out.add(c);
    }
    for (const auto& e : s.side_conditions()) out.add_side_condition(e);
    return out;
}

LinearSystem apply_reduction(const Reduction& r) {
    LinearSystem base;
    if (r.id == ReductionId::MAC_GF_COMMON) {
        std::vector<std::string> victims = split_rates();
        base = drop_redundant_symbolic(fm_eliminate(sup_split_system(true), victims), curated_facts());
    } else {
        base = build(TemplateId::SUP_REGION);
        base.add(nonneg("R1"));
        base.add(nonneg("R2"));
    }
    LinearSystem s = zero_rates(apply_substitution(apply_pins(base, r.pins), r.sigma), r.zero_rates);
    return drop_redundant_symbolic(s, curated_facts().transported(r.sigma));
}

// ---------------------------------------------------------------------------
// Binning

namespace {

InfoExpr I(LabelSet a, LabelSet b, LabelSet c) { return InfoExpr::term(a, b, c); }

// Lower bounds taken with equality; the joint S-binning rate is split evenly.
std::vector<std::pair<std::string, InfoExpr>> binning_values() {
    const LabelSet q = S({L::Q}), s12 = S({L::S1, L::S2});
    std::vector<std::pair<std::string, InfoExpr>> v;
    const InfoExpr m1 = I(S({L::V1}), s12, q), m2 = I(S({L::V1, L::U1}), s12, q),
                   m3 = I(S({L::V1, L::U1, L::T1}), s12, q);
    v.push_back({"R'_10c", m1});
    v.push_back({"R'_10n", m2 - m1});
    v.push_back({"R'_11n", m3 - m2});
    v.push_back({"R'_11c", I(S({L::Z1}), S({L::S2, L::U1, L::T1}), S({L::Q, L::S1, L::V1}))});
    const Substitution sw = Substitution::user_swap();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) v.push_back({swap_symbol(v[i].first), substitute(v[i].second, sw)});
    const InfoExpr half = I(S({L::S1}), S({L::S2}), q) * Rational(1, 2);
    v.push_back({"R''_11c", half});
    v.push_back({"R''_22c", half});
    return v;
}

const std::vector<std::string>& binned_split() {
    static const std::vector<std::string> v = {"R_10c", "R_10n", "R_11n", "R_11c",
                                               "R_20c", "R_20n", "R_22n", "R_22c"};
    return v;
}

BinningElimination eliminate_rows(const BinningSystem& sys, const std::function<InfoExpr(const InfoExpr&)>& rhs_map,
                                  const std::vector<const ErrorEventRow*>& rows) {
    auto f = [&](const InfoExpr& e) { return rhs_map ? rhs_map(e) : e; };
    LinearSystem s;
    for (const auto* r : rows) {
        auto c = row_constraint(*r);
        c.rhs = f(c.rhs);
        s.add(c);
    }
    for (auto c : sys.first_stage1) {
        c.rhs = f(c.rhs);
        s.add(c);
    }
    for (auto c : sys.first_stage2) {
        c.rhs = f(c.rhs);
        s.add(c);
    }
    for (auto c : sys.cooperation) {
        c.rhs = f(c.rhs);
        s.add(c);
    }
    for (const auto& c : sys.aggregates) s.add(c);
    for (const auto& [sym, value] : binning_values()) {
        InfoExpr v = f(value);
        if (!v.is_zero() && (-v).evidently_nonneg())
            throw NegativeBinningRate("required binning rate " + sym + " = " + format_expr(v) + " is negative");
        s.add(eq(Lhs{{sym, 1}}, v));
    }
    for (const auto& r : binned_split()) s.add(nonneg(r));

    std::vector<std::string> victims;
    for (const auto& v : s.variables())
        if (std::find(binned_split().begin(), binned_split().end(), v) == binned_split().end()) victims.push_back(v);
    BinningElimination out;
    out.system = fm_eliminate(s, victims);
    out.families = bound_families(out.system);
    return out;
}

}  // namespace

BinningElimination binning_equality_eliminate(const BinningSystem& sys,
                                              const std::function<InfoExpr(const InfoExpr&)>& rhs_map) {
    std::vector<const ErrorEventRow*> rows;
    for (const auto& r : sys.dest1) rows.push_back(&r);
    for (const auto& r : sys.dest2) rows.push_back(&r);
    return eliminate_rows(sys, rhs_map, rows);
}

std::vector<std::pair<Rational, Rational>> bound_families(const LinearSystem& eliminated) {
    LinearSystem s;
    for (auto c : eliminated.constraints()) {
        for (const char* fixed : {"R_10c", "R_11c", "R_20c", "R_22c"}) c.lhs.erase(fixed);
        if (c.lhs.empty()) continue;
        c.rhs = InfoExpr{};
        c.flagged = false;
        s.add(c);
    }
    s.add(eq(lhs({{"R1", 1}, {"R_10n", -1}, {"R_11n", -1}}), InfoExpr{}));
    s.add(eq(lhs({{"R2", 1}, {"R_20n", -1}, {"R_22n", -1}}), InfoExpr{}));
    LinearSystem p = fm_eliminate(s, {"R_11n", "R_22n", "R_10n", "R_20n"});
    std::vector<std::pair<Rational, Rational>> dirs;
    for (const auto& c : p.constraints()) {
        if (c.rel != Relation::LE) continue;
        Rational a = c.lhs.count("R1") ? c.lhs.at("R1") : Rational(0);
        Rational b = c.lhs.count("R2") ? c.lhs.at("R2") : Rational(0);
        std::pair<Rational, Rational> d{a, b};
        if (std::find(dirs.begin(), dirs.end(), d) == dirs.end()) dirs.push_back(d);
    }
    std::sort(dirs.begin(), dirs.end());
    return dirs;
}

InfoExpr independence_zero(const InfoExpr& e) {
    const LabelSet b1 = S({L::V1, L::U1, L::T1, L::S1, L::Z1, L::X1});
    const LabelSet b2 = S({L::V2, L::U2, L::T2, L::S2, L::Z2, L::X2});
    const LabelSet ctx = b1 | b2 | S({L::Q});
    InfoExpr out(e.constant());
    for (const auto& [p, c] : e.params()) out.add_param(p, c);
    for (const auto& [t, c] : e.terms()) {
        bool split = (t.cond & ~ctx) == 0 && (((t.left & ~b1) == 0 && (t.right & ~b2) == 0) ||
                                               ((t.left & ~b2) == 0 && (t.right & ~b1) == 0));
        if (!split) out.add_term(t, c);
    }
    return out;
}

namespace {

Substitution degenerate_sigma() {
    Substitution s;
    s.map(L::S1, L::Q).map(L::Z1, L::Q).map(L::S2, L::Q).map(L::Z2, L::Q);
    return s;
}

// A wrong codeword that collapses onto correctly decoded ones is no error at all.
bool impossible(const ErrorEventRow& r, const Substitution& s) {
    const LabelSet known = s.apply(r.correct);
    for (Label w : members(r.wrong))
        if ((s.apply(bit(w)) & ~known) == 0) return true;
    return false;
}

}  // namespace

LinearSystem binning_degenerate_reduction() {
    const Substitution sigma = degenerate_sigma();
    const BinningSystem sys = build_full();
    std::vector<const ErrorEventRow*> rows;
    for (const auto& r : sys.dest1)
        if (!impossible(r, sigma)) rows.push_back(&r);
    for (const auto& r : sys.dest2)
        if (!impossible(r, sigma)) rows.push_back(&r);
    auto pin = [&](const InfoExpr& e) { return independence_zero(substitute(e, sigma)); };
    BinningElimination el = eliminate_rows(sys, pin, rows);
    LinearSystem reduced = fm_eliminate(el.system, {"R_11c", "R_22c"});
    std::set<InfoTerm> terms;
    for (const auto& c : reduced.constraints())
        for (const auto& [t, v] : c.rhs.terms()) terms.insert(t);
    DominanceRegistry facts = curated_facts();
    facts.merge(chain_rule_facts(terms));
    return drop_redundant_symbolic(reduced, facts).without_nonnegativity();
}

LinearSystem binning_degenerate_target() {
    LinearSystem t = build(TemplateId::SUP_DEC1);
    t.add_all(build(TemplateId::SUP_DEC2));
    t.add_all(build(TemplateId::SUP_COOP1));
    t.add_all(build(TemplateId::SUP_COOP2));
    return t;
}

}  // namespace rr
