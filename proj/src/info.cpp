#include "rr/info.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace rr {

namespace {

constexpr std::array<std::string_view, kLabelCount> kNames = {
    "Q", "V1", "U1", "T1", "S1", "Z1", "X1", "V2", "U2", "T2", "S2", "Z2", "X2",
    "X1bar", "X2bar", "Y1", "Y2", "Y3", "Y4", "Y", "EMPTY"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

LabelSet expand_bundles(LabelSet s) {
    LabelSet out = s & ~(bit(Label::X1bar) | bit(Label::X2bar) | bit(Label::EMPTY));
    if (s & bit(Label::X1bar)) out |= known_at_source1();
    if (s & bit(Label::X2bar)) out |= known_at_source2();
    return out;
}

// Descending label indices, compared lexicographically.
bool goes_left(LabelSet a, LabelSet b) {
    for (int i = kLabelCount - 1, j = kLabelCount - 1;;) {
        while (i >= 0 && !(a >> i & 1)) --i;
        while (j >= 0 && !(b >> j & 1)) --j;
        if (i < 0 || j < 0) return j < 0 && i >= 0;
        if (i != j) return i > j;
        --i;
        --j;
    }
}

}  // namespace

LabelSet labels(std::initializer_list<Label> ls) {
    LabelSet s = 0;
    for (Label l : ls) s |= bit(l);
    return s;
}

std::string_view label_name(Label l) { return kNames[static_cast<int>(l)]; }

std::optional<Label> parse_label(std::string_view name) {
    for (int i = 0; i < kLabelCount; ++i)
        if (kNames[i] == name) return static_cast<Label>(i);
    return std::nullopt;
}

std::vector<Label> members(LabelSet s) {
    std::vector<Label> out;
    for (int i = 0; i < kLabelCount; ++i)
        if (s >> i & 1) out.push_back(static_cast<Label>(i));
    return out;
}

std::string format_labels(LabelSet s) {
    std::string out;
    for (Label l : members(s)) {
        if (!out.empty()) out += ',';
        out += label_name(l);
    }
    return out;
}

LabelSet parse_labels(std::string_view text) {
    LabelSet s = 0;
    text = trim(text);
    if (text.empty()) return 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        auto name = trim(text.substr(pos, comma - pos));
        auto l = parse_label(name);
        if (!l) throw std::invalid_argument("unknown random variable '" + std::string(name) + "'");
        s |= bit(*l);
        pos = comma + 1;
    }
    return s;
}

LabelSet known_at_source1() {
    return labels({Label::Q, Label::S1, Label::S2, Label::Z1, Label::V1, Label::U1, Label::T1, Label::X1});
}
LabelSet known_at_source2() {
    return labels({Label::Q, Label::S2, Label::S1, Label::Z2, Label::V2, Label::U2, Label::T2, Label::X2});
}

std::optional<InfoTerm> canonicalize(LabelSet left, LabelSet right, LabelSet cond) {
    LabelSet c = expand_bundles(cond);
    LabelSet l = expand_bundles(left) & ~c;
    LabelSet r = expand_bundles(right) & ~c;
    if (!l || !r) return std::nullopt;
    if (l & r)
        throw std::domain_error("term I(" + format_labels(l) + " ; " + format_labels(r) +
                                ") shares variables between its sides");
    if (!goes_left(l, r)) std::swap(l, r);
    return InfoTerm{l, r, c};
}

std::optional<InfoTerm> canonicalize(const InfoTerm& t) { return canonicalize(t.left, t.right, t.cond); }

std::string format_term(const InfoTerm& t) {
    std::string s = "I(" + format_labels(t.left) + " ; " + format_labels(t.right);
    if (t.cond) s += " | " + format_labels(t.cond);
    return s + ")";
}

InfoTerm parse_term(std::string_view text) {
    auto body = trim(text);
    if (body.size() < 4 || body.substr(0, 2) != "I(" || body.back() != ')')
        throw std::invalid_argument("malformed term '" + std::string(text) + "'");
    body = body.substr(2, body.size() - 3);
    auto semi = body.find(';');
    if (semi == std::string_view::npos) throw std::invalid_argument("term without ';': '" + std::string(text) + "'");
    auto bar = body.find('|', semi);
    auto left = body.substr(0, semi);
    auto right = body.substr(semi + 1, bar == std::string_view::npos ? std::string_view::npos : bar - semi - 1);
    LabelSet cond = bar == std::string_view::npos ? 0 : parse_labels(body.substr(bar + 1));
    auto t = canonicalize(parse_labels(left), parse_labels(right), cond);
    if (!t) throw std::invalid_argument("term collapses to zero: '" + std::string(text) + "'");
    return *t;
}

InfoExpr InfoExpr::term(const InfoTerm& t, const Rational& coef) {
    InfoExpr e;
    e.add_term(t, coef);
    return e;
}

InfoExpr InfoExpr::term(LabelSet left, LabelSet right, LabelSet cond, const Rational& coef) {
    auto t = canonicalize(left, right, cond);
    return t ? term(*t, coef) : InfoExpr{};
}

InfoExpr InfoExpr::param(const std::string& name, const Rational& coef) {
    InfoExpr e;
    e.add_param(name, coef);
    return e;
}

void InfoExpr::add_term(const InfoTerm& t, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(t, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void InfoExpr::add_param(const std::string& name, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = params_.try_emplace(name, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) params_.erase(it);
    }
}

Rational InfoExpr::coefficient(const InfoTerm& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational InfoExpr::param_coefficient(const std::string& name) const {
    auto it = params_.find(name);
    return it == params_.end() ? Rational(0) : it->second;
}

InfoExpr& InfoExpr::operator+=(const InfoExpr& o) {
    for (const auto& [t, c] : o.terms_) add_term(t, c);
    for (const auto& [p, c] : o.params_) add_param(p, c);
    constant_ += o.constant_;
    return *this;
}

InfoExpr& InfoExpr::operator-=(const InfoExpr& o) {
    for (const auto& [t, c] : o.terms_) add_term(t, -c);
    for (const auto& [p, c] : o.params_) add_param(p, -c);
    constant_ -= o.constant_;
    return *this;
}

InfoExpr& InfoExpr::operator*=(const Rational& k) {
    if (k == 0) {
        *this = InfoExpr{};
        return *this;
    }
    for (auto& [t, c] : terms_) c *= k;
    for (auto& [p, c] : params_) c *= k;
    constant_ *= k;
    return *this;
}

bool InfoExpr::evidently_nonneg() const {
    if (constant_ < 0) return false;
    for (const auto& [t, c] : terms_)
        if (c < 0) return false;
    for (const auto& [p, c] : params_)
        if (c < 0) return false;
    return true;
}

bool InfoExpr::all_coefficients_integer() const {
    if (!is_integer(constant_)) return false;
    for (const auto& [t, c] : terms_)
        if (!is_integer(c)) return false;
    for (const auto& [p, c] : params_)
        if (!is_integer(c)) return false;
    return true;
}

namespace {

void append_signed(std::string& out, const Rational& c, const std::string& atom) {
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (out.empty())
        out += neg ? "-" : "";
    else
        out += neg ? " - " : " + ";
    if (atom.empty()) {
        out += to_string(a);
        return;
    }
    if (a != 1) out += to_string(a) + "*";
    out += atom;
}

}  // namespace

std::string format_expr(const InfoExpr& e) {
    std::string out;
    for (const auto& [t, c] : e.terms()) append_signed(out, c, format_term(t));
    for (const auto& [p, c] : e.params()) append_signed(out, c, p);
    if (e.constant() != 0) append_signed(out, e.constant(), "");
    return out.empty() ? "0" : out;
}

namespace {

struct ExprParser {
    std::string_view s;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument(why + " in expression '" + std::string(s) + "'");
    }
    std::string_view number() {
        std::size_t b = i;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/' || s[i] == '.')) ++i;
        return s.substr(b, i - b);
    }
    InfoExpr atom(const Rational& coef) {
        skip();
        if (i >= s.size()) fail("missing operand");
        if (s.compare(i, 2, "I(") == 0) {
            auto close = s.find(')', i);
            if (close == std::string_view::npos) fail("unclosed term");
            auto t = parse_term(s.substr(i, close - i + 1));
            i = close + 1;
            return InfoExpr::term(t, coef);
        }
        if (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_') {
            std::size_t b = i;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\'' || s[i] == '.'))
                ++i;
            return InfoExpr::param(std::string(s.substr(b, i - b)), coef);
        }
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            auto num = number();
            Rational v = parse_rational(num);
            skip();
            if (i < s.size() && s[i] == '*') {
                ++i;
                return atom(coef * v);
            }
            return InfoExpr(coef * v);
        }
        fail(std::string("unexpected '") + s[i] + "'");
    }
    InfoExpr run() {
        InfoExpr out;
        skip();
        if (i == s.size()) fail("empty");
        bool first = true;
        while (true) {
            skip();
            if (i == s.size()) break;
            Rational sign = 1;
            if (s[i] == '+' || s[i] == '-') {
                if (s[i] == '-') sign = -1;
                ++i;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            out += atom(sign);
            first = false;
        }
        return out;
    }
};

}  // namespace

InfoExpr parse_expr(std::string_view text) { return ExprParser{text}.run(); }

Substitution::Substitution() {
    for (int i = 0; i < kLabelCount; ++i) image_[i] = LabelSet{1} << i;
}

Substitution& Substitution::map(Label from, Label to) { return map(from, to == Label::EMPTY ? 0 : bit(to)); }

Substitution& Substitution::map(Label from, LabelSet to) {
    image_[static_cast<int>(from)] = to;
    return *this;
}

LabelSet Substitution::apply(LabelSet s) const {
    // Bundles expand first so that mapping their members is honored.
    s = expand_bundles(s);
    LabelSet out = 0;
    for (int i = 0; i < kLabelCount; ++i)
        if (s >> i & 1) out |= image_[i];
    return out;
}

bool Substitution::is_identity() const {
    for (int i = 0; i < kLabelCount; ++i)
        if (image_[i] != (LabelSet{1} << i)) return false;
    return true;
}

Substitution Substitution::user_swap() {
    Substitution s;
    auto sw = [&](Label a, Label b) {
        s.map(a, b);
        s.map(b, a);
    };
    sw(Label::V1, Label::V2);
    sw(Label::U1, Label::U2);
    sw(Label::T1, Label::T2);
    sw(Label::S1, Label::S2);
    sw(Label::Z1, Label::Z2);
    sw(Label::X1, Label::X2);
    sw(Label::X1bar, Label::X2bar);
    sw(Label::Y1, Label::Y2);
    sw(Label::Y3, Label::Y4);
    return s;
}

std::optional<InfoTerm> substitute(const InfoTerm& t, const Substitution& s) {
    return canonicalize(s.apply(t.left), s.apply(t.right), s.apply(t.cond));
}

InfoExpr substitute(const InfoExpr& e, const Substitution& s) {
    InfoExpr out(e.constant());
    for (const auto& [t, c] : e.terms())
        if (auto u = substitute(t, s)) out.add_term(*u, c);
    for (const auto& [p, c] : e.params()) out.add_param(p, c);
    return out;
}

int DominanceRegistry::add(const InfoTerm& a, const InfoTerm& b) {
    if (a == b) return -1;
    if (index_.count({b, a}))
        throw std::invalid_argument("conflicting dominance: " + format_term(b) + " <= " + format_term(a) +
                                    " is already registered");
    DominanceFact f{a, b};
    if (index_.insert(f).second) facts_.push_back(f);
    auto it = std::find(facts_.begin(), facts_.end(), f);
    return static_cast<int>(it - facts_.begin());
}

bool DominanceRegistry::holds(const InfoTerm& a, const InfoTerm& b) const {
    return a == b || index_.count({a, b}) != 0;
}

DominanceRegistry DominanceRegistry::transported(const Substitution& s) const {
    DominanceRegistry out;
    for (const auto& f : facts_) {
        auto a = substitute(f.smaller, s);
        auto b = substitute(f.larger, s);
        if (!a || !b || *a == *b) continue;
        // Two facts can become mutually inverse under a map; the terms are then equal and both
        // directions are kept, which is harmless for redundancy checks.
        DominanceFact g{*a, *b};
        if (out.index_.insert(g).second) out.facts_.push_back(g);
    }
    return out;
}

void DominanceRegistry::merge(const DominanceRegistry& other) {
    for (const auto& f : other.facts_)
        if (index_.insert(f).second) facts_.push_back(f);
}

DominanceRegistry chain_rule_facts(const std::set<InfoTerm>& terms) {
    DominanceRegistry out;
    struct View {
        LabelSet y, a, c;
    };
    auto views = [](const InfoTerm& t) {
        return std::array<View, 2>{View{t.left, t.right, t.cond}, View{t.right, t.left, t.cond}};
    };
    for (const auto& t1 : terms)
        for (const auto& t2 : terms) {
            if (t1 == t2) continue;
            bool found = false;
            for (const auto& v1 : views(t1)) {
                for (const auto& v2 : views(t2)) {
                    if (v1.y != v2.y) continue;
                    if ((v2.c & ~v1.c) != 0) continue;
                    LabelSet moved = v1.c & ~v2.c;
                    if ((moved & ~v2.a) != 0) continue;
                    if ((v1.a & ~(v2.a & ~moved)) != 0) continue;
                    found = true;
                }
            }
            if (found && !out.holds(t2, t1)) out.add(t1, t2);
        }
    return out;
}

}  // namespace rr
