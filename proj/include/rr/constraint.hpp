#pragma once
#include "rr/info.hpp"
#include "rr/polygon.hpp"
#include "rr/rational.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rr {

// Rate symbols sort in the fixed order below; unknown names follow, alphabetically.
const std::vector<std::string>& known_symbols();
struct SymbolLess {
    bool operator()(const std::string& a, const std::string& b) const;
};
using Lhs = std::map<std::string, Rational, SymbolLess>;

enum class Relation { LE, EQ, GE };

struct LinearConstraint {
    Lhs lhs;
    Relation rel = Relation::LE;
    InfoExpr rhs;
    // Redundant only through a union-over-distributions argument; kept, never pruned away.
    bool flagged = false;
    std::string note;  // display only

    bool same_as(const LinearConstraint& o) const { return rel == o.rel && lhs == o.lhs && rhs == o.rhs; }
    bool is_nonnegativity() const;
};

LinearConstraint le(Lhs lhs, InfoExpr rhs, std::string note = {});
LinearConstraint eq(Lhs lhs, InfoExpr rhs, std::string note = {});
LinearConstraint nonneg(const std::string& sym);

// Coprime integer lhs; >= rows become <= unless every lhs coefficient is negative, in which
// case the row is stored as >= with positive coefficients; equalities get a positive leading coefficient.
LinearConstraint normalize(const LinearConstraint& c);

class LinearSystem {
public:
    LinearSystem() = default;
    // Normalizes and merges duplicates; a merged row stays flagged only if both were flagged.
    void add(const LinearConstraint& c);
    void add_all(const LinearSystem& o);
    void add_side_condition(const InfoExpr& e);  // 0 <= e, kept apart from the constraints

    const std::vector<LinearConstraint>& constraints() const { return rows_; }
    const std::vector<InfoExpr>& side_conditions() const { return side_; }
    std::vector<std::string> variables() const;
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

    LinearSystem without_nonnegativity() const;
    LinearSystem map_rhs(const std::function<InfoExpr(const InfoExpr&)>& f) const;

private:
    std::vector<LinearConstraint> rows_;
    std::vector<InfoExpr> side_;
};

struct FmOptions {
    std::size_t cap = 100000;
};

struct FmLimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact projection. Equalities are substituted first; the remaining victims are paired
// with an extreme-ray (rank) filter that discards only combinations implied by others.
LinearSystem fm_eliminate(const LinearSystem& system, const std::vector<std::string>& victims,
                          const FmOptions& opt = {});

// Removes constraints implied by the others, by the facts, and by nonnegativity of every
// information term and parameter. Flagged constraints never support the removal of an
// unflagged one.
LinearSystem drop_redundant_symbolic(const LinearSystem& system, const DominanceRegistry& facts = {});

// Set equality of normalized constraints, flags included. On mismatch `diagnostic` lists
// the differences.
bool systems_equal(const LinearSystem& a, const LinearSystem& b, std::string* diagnostic = nullptr);

struct UnboundedRegion : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Binds every rhs to a real and intersects the half-planes with R1, R2 >= 0.
RatePolygon numeric_vertices_2d(const LinearSystem& system, const std::function<double(const InfoExpr&)>& bind);

// Text format: one constraint per line, `c1*SYM1 + c2*SYM2 <= RHS`, rationals as p/q.
// A trailing `[removable]` marks a flagged row; `#` starts a comment.
std::string format_lhs(const Lhs& lhs);
std::string format_constraint(const LinearConstraint& c);
std::string format_system(const LinearSystem& s);

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_no, const std::string& msg);
};
LinearConstraint parse_constraint(std::string_view line);  // throws std::invalid_argument
LinearSystem parse_system(std::string_view text);          // throws ParseError

}  // namespace rr
