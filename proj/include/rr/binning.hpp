#pragma once
#include "rr/constraint.hpp"
#include "rr/info.hpp"

#include <string>
#include <vector>

namespace rr {

// One line of the destination error-event table. Columns of `pattern` are the codeword
// slots Q, V1, U1, T1, S1, Z1, V2, U2 (own user first): '0' decoded correctly, '1' wrong,
// '*' either (implied wrong by superposition or irrelevant).
struct ErrorEventRow {
    int index = 0;
    std::string pattern;
    int multiplicity = 0;
    LabelSet correct = 0;
    LabelSet wrong = 0;
    Lhs lhs;                      // aggregated rates plus the R' penalties
    InfoExpr bound;               // information part of E_l
    InfoExpr correction;          // the subtracted Delta_C terms
    bool display_differs = false; // displayed correction differs from the Delta_C definition
    int destination = 1;
};

enum class BinningVariant { FULL, NO_VBIN, NO_ZBIN, TWO_STEP };

struct BinningSystem {
    BinningVariant variant = BinningVariant::FULL;
    std::vector<LinearConstraint> encoder;     // like-BC, like-MDC and mirrors
    std::vector<LinearConstraint> cooperation; // decoding at the sources, both directions
    std::vector<ErrorEventRow> dest1, dest2;
    std::vector<LinearConstraint> first_stage1, first_stage2;  // TWO_STEP only
    std::vector<LinearConstraint> aggregates;  // R_V1 = R_10c + R'_10c, ...
};

const std::vector<std::string>& table_patterns();
InfoExpr delta(int user);  // Delta^(u)

BinningSystem build_full();
BinningSystem build_variant(BinningVariant v);
BinningVariant parse_variant(const std::string& name);  // throws std::invalid_argument
std::string variant_name(BinningVariant v);
BinningSystem swap_users(const BinningSystem& sys);

std::string swap_symbol(const std::string& sym);
Lhs swap_lhs(const Lhs& lhs);

LinearConstraint row_constraint(const ErrorEventRow& r);
// Destination rows, cooperation, encoder and aggregate blocks, as selected.
LinearSystem to_system(const BinningSystem& sys, bool with_encoder = true, bool with_cooperation = true,
                       bool with_aggregates = true);

}  // namespace rr
