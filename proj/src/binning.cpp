#include "rr/binning.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

namespace rr {

namespace {

using L = Label;

const std::array<Label, 8> kColumns = {L::Q, L::V1, L::U1, L::T1, L::S1, L::Z1, L::V2, L::U2};

struct Piece {
    LabelSet left, right, cond;
};

LabelSet S(std::initializer_list<Label> ls) { return labels(ls); }

// Subtracted Delta_C terms, transcribed from the displayed E expressions.
std::vector<Piece> correction_pieces(int row) {
    const Piece sv1{S({L::S1}), S({L::V1}), S({L::Q})};
    const Piece sz_u{S({L::S1, L::Z1}), S({L::U1}), S({L::Q})};
    switch (row) {
    case 5: return {{S({L::V1}), S({L::V2}), S({L::Q})}};
    case 6: return {{S({L::V1}), S({L::V2, L::U2}), S({L::Q})}};
    case 8: return {{S({L::V1, L::U1}), S({L::V2}), S({L::Q})}};
    case 9: return {{S({L::V1, L::U1}), S({L::V2, L::U2}), S({L::Q})}};
    case 11: return {{S({L::V1, L::U1, L::T1}), S({L::V2}), S({L::Q})}};
    case 12: return {{S({L::V1, L::U1, L::T1}), S({L::V2, L::U2}), S({L::Q})}};
    case 14: return {{S({L::S1}), S({L::V2}), S({L::Q})}};
    case 15: return {{S({L::S1}), S({L::V2, L::U2}), S({L::Q})}};
    case 16: return {sv1};
    case 17: return {sv1, {S({L::S1, L::V1}), S({L::V2}), S({L::Q})}};
    case 18: return {sv1, {S({L::S1, L::V1}), S({L::V2, L::U2}), S({L::Q})}};
    case 19: return {{S({L::S1}), S({L::V1, L::U1}), S({L::Q})}};
    case 20: return {{S({L::S1}), S({L::V1, L::U1}), S({L::Q})},
                     {S({L::S1, L::V1, L::U1}), S({L::V2}), S({L::Q})}};
    case 21: return {{S({L::S1}), S({L::V1, L::U1}), S({L::Q})},
                     {S({L::S1, L::V1, L::U1}), S({L::V2, L::U2}), S({L::Q})}};
    case 22: return {sv1};
    case 23: return {sv1, {S({L::S1, L::Z1, L::V1}), S({L::V2}), S({L::Q})}};
    case 24: return {sv1, {S({L::S1, L::Z1, L::V1}), S({L::V2, L::U2}), S({L::Q})}};
    case 25: return {sv1, sz_u};
    case 26: return {sv1, sz_u, {S({L::S1, L::Z1, L::V1, L::U1}), S({L::V2}), S({L::Q})}};
    case 27: return {sv1, sz_u, {S({L::S1, L::Z1, L::V1, L::U1}), S({L::V2, L::U2}), S({L::Q})}};
    default: return {};
    }
}

// Rate charged for one wrongly decoded codeword slot (aggregated rates and R' penalties).
Lhs slot_rate(Label slot) {
    switch (slot) {
    case L::Q: return {{"R_V1", 1}, {"R_V2", 1}, {"R'_10c", -1}, {"R'_20c", -1}};
    case L::V1: return {{"R'_10c", 1}};
    case L::U1: return {{"R_U1", 1}};
    case L::T1: return {{"R_T1", 1}};
    case L::S1: return {{"R_Z1", 1}, {"R''_11c", 1}, {"R'_11c", -1}};
    case L::Z1: return {{"R'_11c", 1}};
    case L::V2: return {{"R'_20c", 1}};
    case L::U2: return {{"R_U2", 1}};
    default: return {};
    }
}

void accumulate(Lhs& into, const Lhs& add) {
    for (const auto& [k, v] : add) {
        into[k] += v;
        if (into[k] == 0) into.erase(k);
    }
}

bool is_primed(const std::string& sym) { return sym.find('\'') != std::string::npos; }

ErrorEventRow dest1_row(int l) {
    ErrorEventRow r;
    r.index = l;
    r.pattern = table_patterns()[l];
    r.multiplicity = 1 << std::count(r.pattern.begin(), r.pattern.end(), '*');
    Lhs total;
    for (int i = 0; i < 8; ++i) {
        if (r.pattern[i] == '0') {
            r.correct |= bit(kColumns[i]);
        } else {
            r.wrong |= bit(kColumns[i]);
            accumulate(total, slot_rate(kColumns[i]));
        }
    }
    r.lhs = total;
    r.bound = InfoExpr::term(bit(L::Y3), r.wrong, r.correct) + delta(1);
    for (const auto& p : correction_pieces(l)) r.correction += InfoExpr::term(p.left, p.right, p.cond);
    r.bound -= r.correction;
    r.display_differs = l >= 25;
    r.destination = 1;
    return r;
}

ErrorEventRow swap_row(const ErrorEventRow& r) {
    const Substitution sw = Substitution::user_swap();
    ErrorEventRow o = r;
    o.lhs = swap_lhs(r.lhs);
    o.correct = sw.apply(r.correct);
    o.wrong = sw.apply(r.wrong);
    o.bound = substitute(r.bound, sw);
    o.correction = substitute(r.correction, sw);
    o.destination = 3 - r.destination;
    return o;
}

LinearConstraint swap_constraint(const LinearConstraint& c) {
    LinearConstraint o = c;
    o.lhs = swap_lhs(c.lhs);
    o.rhs = substitute(c.rhs, Substitution::user_swap());
    return o;
}

LinearConstraint ge(Lhs lhs, InfoExpr rhs, std::string note) {
    LinearConstraint c;
    c.lhs = std::move(lhs);
    c.rel = Relation::GE;
    c.rhs = std::move(rhs);
    c.note = std::move(note);
    return c;
}

InfoExpr T(LabelSet a, LabelSet b, LabelSet c) { return InfoExpr::term(a, b, c); }

std::vector<LinearConstraint> encoder_user1() {
    const LabelSet q = S({L::Q}), s12 = S({L::S1, L::S2});
    return {
        ge({{"R'_10c", 1}}, T(S({L::V1}), s12, q), "bin V1"),
        ge({{"R'_10c", 1}, {"R'_10n", 1}}, T(S({L::V1, L::U1}), s12, q), "bin U1"),
        ge({{"R'_10c", 1}, {"R'_10n", 1}, {"R'_11n", 1}}, T(S({L::V1, L::U1, L::T1}), s12, q), "bin T1"),
        ge({{"R'_11c", 1}}, T(S({L::Z1}), S({L::S2, L::U1, L::T1}), S({L::Q, L::S1, L::V1})), "bin Z1"),
    };
}

std::vector<LinearConstraint> cooperation_user1() {
    const InfoExpr z_s2 = T(S({L::Z1}), S({L::S2}), S({L::Q, L::S1, L::V1}));
    return {
        le({{"R_Z1", 1}}, T(S({L::Z1}), S({L::Y2}), S({L::X2bar, L::V1})) + z_s2, "source 2 decodes Z1"),
        le({{"R_V1", 1}, {"R_Z1", 1}},
           T(S({L::V1, L::Z1}), S({L::Y2}), S({L::X2bar})) + z_s2 + T(S({L::V1}), S({L::S1, L::S2}), S({L::Q})),
           "source 2 decodes V1,Z1"),
    };
}

std::vector<LinearConstraint> aggregate_block() {
    auto def = [](const std::string& agg, std::initializer_list<std::string> parts) {
        Lhs lhs{{agg, 1}};
        for (const auto& p : parts) lhs[p] = -1;
        return eq(lhs, InfoExpr{});
    };
    return {
        def("R_Q", {"R_10c", "R_20c"}),
        def("R_V1", {"R_10c", "R'_10c"}), def("R_U1", {"R_10n", "R'_10n"}),
        def("R_T1", {"R_11n", "R'_11n"}), def("R_S1", {"R_11c", "R''_11c"}),
        def("R_Z1", {"R_11c", "R'_11c"}),
        def("R_V2", {"R_20c", "R'_20c"}), def("R_U2", {"R_20n", "R'_20n"}),
        def("R_T2", {"R_22n", "R'_22n"}), def("R_S2", {"R_22c", "R''_22c"}),
        def("R_Z2", {"R_22c", "R'_22c"}),
    };
}

void drop_symbol(std::vector<LinearConstraint>& cs, const std::string& sym) {
    std::vector<LinearConstraint> out;
    for (auto c : cs) {
        c.lhs.erase(sym);
        if (!c.lhs.empty()) out.push_back(std::move(c));
    }
    cs = std::move(out);
}

void drop_symbol(std::vector<ErrorEventRow>& rows, const std::string& sym) {
    for (auto& r : rows) r.lhs.erase(sym);
}

void mirror_destination(BinningSystem& s) {
    s.dest2.clear();
    for (const auto& r : s.dest1) s.dest2.push_back(swap_row(r));
    s.first_stage2.clear();
    for (const auto& c : s.first_stage1) s.first_stage2.push_back(swap_constraint(c));
}

}  // namespace

const std::vector<std::string>& table_patterns() {
    static const std::vector<std::string> p = {
        "1*******",
        "01**1*1*", "01**1*01", "01**1*00",
        "001*1*1*", "001*1*01", "001*1*00",
        "00011*1*", "00011*01", "00011*00",
        "00001*1*", "00001*01", "00001*00",
        "01**0*1*", "01**0*01", "01**0*00",
        "001*011*", "001*0101", "001*0100",
        "0001011*", "00010101", "00010100",
        "001*001*", "001*0001", "001*0000",
        "0001001*", "00010001", "00010000",
    };
    return p;
}

InfoExpr delta(int user) {
    InfoExpr d = T(S({L::S1}), S({L::V1, L::U1, L::T1}), S({L::Q})) +
                 T(S({L::Z1}), S({L::U1, L::T1}), S({L::Q, L::S1, L::V1})) +
                 T(S({L::V2, L::U2}), S({L::V1, L::U1, L::T1, L::S1, L::Z1}), S({L::Q}));
    return user == 1 ? d : substitute(d, Substitution::user_swap());
}

std::string swap_symbol(const std::string& sym) {
    if (sym == "R1") return "R2";
    if (sym == "R2") return "R1";
    auto pos = sym.rfind('_');
    if (pos == std::string::npos) return sym;
    std::string head = sym.substr(0, pos + 1), tail = sym.substr(pos + 1);
    if (tail.size() >= 2 && std::isdigit(static_cast<unsigned char>(tail[0])) &&
        std::isdigit(static_cast<unsigned char>(tail[1]))) {
        std::string d = tail.substr(0, 2);
        std::string rest = tail.substr(2);
        if (d == "10") d = "20";
        else if (d == "20") d = "10";
        else if (d == "11") d = "22";
        else if (d == "22") d = "11";
        return head + d + rest;
    }
    if (!tail.empty() && (tail.back() == '1' || tail.back() == '2'))
        tail.back() = tail.back() == '1' ? '2' : '1';
    return head + tail;
}

Lhs swap_lhs(const Lhs& lhs) {
    Lhs out;
    for (const auto& [k, v] : lhs) out[swap_symbol(k)] = v;
    return out;
}

BinningSystem build_full() {
    BinningSystem s;
    auto enc1 = encoder_user1();
    s.encoder.push_back(ge({{"R''_11c", 1}, {"R''_22c", 1}},
                           T(S({L::S1}), S({L::S2}), S({L::Q})), "joint bin S1,S2"));
    for (const auto& c : enc1) s.encoder.push_back(c);
    for (const auto& c : enc1) s.encoder.push_back(swap_constraint(c));
    auto coop1 = cooperation_user1();
    for (const auto& c : coop1) s.cooperation.push_back(c);
    for (const auto& c : coop1) s.cooperation.push_back(swap_constraint(c));
    for (int l = 0; l < 28; ++l) s.dest1.push_back(dest1_row(l));
    mirror_destination(s);
    s.aggregates = aggregate_block();
    return s;
}

BinningSystem build_variant(BinningVariant v) {
    BinningSystem s = build_full();
    s.variant = v;
    auto keep_rows = [&](auto pred) {
        std::vector<ErrorEventRow> kept;
        for (const auto& r : s.dest1)
            if (pred(r.index)) kept.push_back(r);
        s.dest1 = std::move(kept);
    };
    switch (v) {
    case BinningVariant::FULL:
        break;
    case BinningVariant::NO_VBIN: {
        // a wrong V1 or V2 bin index is impossible once V is not binned
        const std::vector<int> gone = {1, 2, 3, 4, 7, 10, 13, 14, 15, 16, 19, 22, 25};
        keep_rows([&](int l) { return std::find(gone.begin(), gone.end(), l) == gone.end(); });
        for (const char* sym : {"R'_10c", "R'_20c"}) {
            drop_symbol(s.dest1, sym);
            drop_symbol(s.encoder, sym);
            drop_symbol(s.aggregates, sym);
        }
        break;
    }
    case BinningVariant::NO_ZBIN:
        keep_rows([](int l) { return l != 10 && l != 11; });
        for (auto& r : s.dest1)
            if (r.index != 12) r.lhs.erase("R_Z1");
        drop_symbol(s.dest1, "R'_11c");
        drop_symbol(s.encoder, "R'_11c");
        drop_symbol(s.aggregates, "R'_11c");
        break;
    case BinningVariant::TWO_STEP:
        keep_rows([](int l) { return l >= 13; });
        s.first_stage1 = {
            le({{"R_S1", 1}}, T(S({L::Y3}), S({L::S1}), S({L::Q})), "first step, S1"),
            le({{"R_Q", 1}, {"R_S1", 1}}, T(S({L::Y3}), S({L::S1, L::Q}), 0), "first step, Q and S1"),
        };
        break;
    }
    mirror_destination(s);
    return s;
}

BinningVariant parse_variant(const std::string& name) {
    if (name == "full" || name == "FULL") return BinningVariant::FULL;
    if (name == "no-vbin" || name == "NO_VBIN") return BinningVariant::NO_VBIN;
    if (name == "no-zbin" || name == "NO_ZBIN") return BinningVariant::NO_ZBIN;
    if (name == "two-step" || name == "TWO_STEP") return BinningVariant::TWO_STEP;
    throw std::invalid_argument("unknown binning variant '" + name + "'");
}

std::string variant_name(BinningVariant v) {
    switch (v) {
    case BinningVariant::FULL: return "full";
    case BinningVariant::NO_VBIN: return "no-vbin";
    case BinningVariant::NO_ZBIN: return "no-zbin";
    case BinningVariant::TWO_STEP: return "two-step";
    }
    return "?";
}

BinningSystem swap_users(const BinningSystem& sys) {
    BinningSystem o;
    o.variant = sys.variant;
    for (const auto& c : sys.encoder) o.encoder.push_back(swap_constraint(c));
    for (const auto& c : sys.cooperation) o.cooperation.push_back(swap_constraint(c));
    for (const auto& r : sys.dest2) o.dest1.push_back(swap_row(r));
    for (const auto& r : sys.dest1) o.dest2.push_back(swap_row(r));
    for (const auto& c : sys.first_stage2) o.first_stage1.push_back(swap_constraint(c));
    for (const auto& c : sys.first_stage1) o.first_stage2.push_back(swap_constraint(c));
    for (const auto& c : sys.aggregates) o.aggregates.push_back(swap_constraint(c));
    return o;
}

LinearConstraint row_constraint(const ErrorEventRow& r) {
    LinearConstraint c = le(r.lhs, r.bound, "E" + std::to_string(r.destination) + "_" + std::to_string(r.index));
    return c;
}

LinearSystem to_system(const BinningSystem& sys, bool with_encoder, bool with_cooperation, bool with_aggregates) {
    LinearSystem out;
    for (const auto& r : sys.dest1) out.add(row_constraint(r));
    for (const auto& r : sys.dest2) out.add(row_constraint(r));
    for (const auto& c : sys.first_stage1) out.add(c);
    for (const auto& c : sys.first_stage2) out.add(c);
    if (with_encoder)
        for (const auto& c : sys.encoder) out.add(c);
    if (with_cooperation)
        for (const auto& c : sys.cooperation) out.add(c);
    if (with_aggregates)
        for (const auto& c : sys.aggregates) out.add(c);
    return out;
}

}  // namespace rr
