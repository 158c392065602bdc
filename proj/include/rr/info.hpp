#pragma once
#include "rr/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace rr {

// Order matters: it fixes canonical label order inside a side and which side goes left.
enum class Label : std::uint8_t {
    Q, V1, U1, T1, S1, Z1, X1, V2, U2, T2, S2, Z2, X2,
    X1bar, X2bar, Y1, Y2, Y3, Y4, Y, EMPTY
};
inline constexpr int kLabelCount = 21;

using LabelSet = std::uint32_t;

constexpr LabelSet bit(Label l) { return LabelSet{1} << static_cast<int>(l); }
LabelSet labels(std::initializer_list<Label> ls);

std::string_view label_name(Label l);
std::optional<Label> parse_label(std::string_view name);
std::vector<Label> members(LabelSet s);
std::string format_labels(LabelSet s);  // "Q,V1,U2"
LabelSet parse_labels(std::string_view text);  // inverse of format_labels; throws on unknown names

// Bundles known at each source.
LabelSet known_at_source1();
LabelSet known_at_source2();

// I(left ; right | cond). Values of this type are always canonical.
struct InfoTerm {
    LabelSet left = 0;
    LabelSet right = 0;
    LabelSet cond = 0;
    auto operator<=>(const InfoTerm&) const = default;
};

// Expands bundles, drops EMPTY, removes conditioned labels from both sides and orders the
// sides. Returns nullopt when the term is identically zero. A label shared by both sides
// would make the term an entropy, which is outside the symbolic layer: std::domain_error.
std::optional<InfoTerm> canonicalize(LabelSet left, LabelSet right, LabelSet cond);
std::optional<InfoTerm> canonicalize(const InfoTerm& t);

std::string format_term(const InfoTerm& t);          // I(Y3 ; T1,U1 | Q,V1)
InfoTerm parse_term(std::string_view text);           // throws std::invalid_argument, or on a zero term

class InfoExpr {
public:
    InfoExpr() = default;
    explicit InfoExpr(Rational c) : constant_(std::move(c)) {}
    static InfoExpr term(const InfoTerm& t, const Rational& coef = 1);
    // Zero when the labels collapse.
    static InfoExpr term(LabelSet left, LabelSet right, LabelSet cond, const Rational& coef = 1);
    static InfoExpr param(const std::string& name, const Rational& coef = 1);

    const std::map<InfoTerm, Rational>& terms() const { return terms_; }
    const std::map<std::string, Rational>& params() const { return params_; }
    const Rational& constant() const { return constant_; }

    void add_term(const InfoTerm& t, const Rational& c);
    void add_param(const std::string& name, const Rational& c);
    void add_constant(const Rational& c) { constant_ += c; }

    Rational coefficient(const InfoTerm& t) const;
    Rational param_coefficient(const std::string& name) const;
    bool contains(const InfoTerm& t) const { return terms_.count(t) != 0; }

    InfoExpr& operator+=(const InfoExpr& o);
    InfoExpr& operator-=(const InfoExpr& o);
    InfoExpr& operator*=(const Rational& k);
    friend InfoExpr operator+(InfoExpr a, const InfoExpr& b) { return a += b; }
    friend InfoExpr operator-(InfoExpr a, const InfoExpr& b) { return a -= b; }
    friend InfoExpr operator*(InfoExpr a, const Rational& k) { return a *= k; }
    friend InfoExpr operator*(const Rational& k, InfoExpr a) { return a *= k; }
    InfoExpr operator-() const { InfoExpr r = *this; r *= -1; return r; }

    bool operator==(const InfoExpr& o) const = default;
    auto operator<=>(const InfoExpr& o) const = default;

    bool is_zero() const { return terms_.empty() && params_.empty() && constant_ == 0; }
    // All coefficients and the constant are >= 0; mutual informations and parameters are nonnegative.
    bool evidently_nonneg() const;
    bool all_coefficients_integer() const;

private:
    std::map<InfoTerm, Rational> terms_;
    std::map<std::string, Rational> params_;
    Rational constant_ = 0;
};

std::string format_expr(const InfoExpr& e);
InfoExpr parse_expr(std::string_view text);  // throws std::invalid_argument

// Label map; each label goes to a set of labels (empty set = deleted).
class Substitution {
public:
    Substitution();
    Substitution& map(Label from, Label to);
    Substitution& map(Label from, LabelSet to);
    LabelSet apply(LabelSet s) const;
    LabelSet image(Label l) const { return image_[static_cast<int>(l)]; }
    bool is_identity() const;
    // 1<->2 and Y3<->Y4, Y1<->Y2.
    static Substitution user_swap();

private:
    std::array<LabelSet, kLabelCount> image_{};
};

std::optional<InfoTerm> substitute(const InfoTerm& t, const Substitution& s);
InfoExpr substitute(const InfoExpr& e, const Substitution& s);

struct DominanceFact {
    InfoTerm smaller;
    InfoTerm larger;
    auto operator<=>(const DominanceFact&) const = default;
};

// Append-only list of curated facts a <= b.
class DominanceRegistry {
public:
    // Returns the fact index. a <= a is accepted and ignored (returns -1).
    // Registering b <= a after a <= b throws std::invalid_argument.
    int add(const InfoTerm& a, const InfoTerm& b);
    const std::vector<DominanceFact>& facts() const { return facts_; }
    std::size_t size() const { return facts_.size(); }
    bool holds(const InfoTerm& a, const InfoTerm& b) const;

    // Applies a label map to both sides of every fact. Facts with a vanished side or with
    // equal sides are dropped.
    DominanceRegistry transported(const Substitution& s) const;
    void merge(const DominanceRegistry& other);

private:
    std::vector<DominanceFact> facts_;
    std::set<DominanceFact> index_;
};

// Facts I(Y;A|C1) <= I(Y;A'|C2) that follow from the chain rule alone:
// C2 ⊆ C1, C1\C2 ⊆ A', and A ⊆ A'\(C1\C2). Only pairs drawn from `terms` are produced.
// This is an explicit, opt-in generator; it is never applied behind the caller's back.
DominanceRegistry chain_rule_facts(const std::set<InfoTerm>& terms);

}  // namespace rr
