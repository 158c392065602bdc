#pragma once
#include "rr/binning.hpp"
#include "rr/constraint.hpp"
#include "rr/info.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace rr {

enum class TemplateId {
    HK_DEC1, HK_DEC2, HK_REGION,
    SUP_COOP1, SUP_DEC1, SUP_COOP2, SUP_DEC2, SUP_REGION,
    EXT_COOP, EXT_REGION,
    BIN_ENC_BC, BIN_ENC_MDC, BIN_ENC_COOP, BIN_DEC1, BIN_DEC2
};

const std::vector<TemplateId>& all_templates();
std::string template_name(TemplateId id);
TemplateId parse_template(const std::string& name);  // also "hk", "sup", "ext"; throws std::invalid_argument

LinearSystem build(TemplateId id);

// Mutual-information bounds of the decoding and cooperation steps, named by role.
// "coop1": source 2 decodes V1 from its own output; "d1.T": destination 1 decodes T1 with
// the other listed codewords known, ..., "d1.all": everything unknown. User 2 mirrors.
// "hk1.*"/"hk2.*" are the no-feedback analogues; "coop2.ext" lets source 1 decode (V2,U2),
// "coop2.full" the whole message (V2,U2,T2).
const std::vector<std::string>& bound_term_names();
InfoTerm bound_term(const std::string& name);  // throws std::invalid_argument
InfoExpr bound(const std::string& name);

// Right-hand-side ingredients of the final regions. dec1 = {T, TU2, TU1, TU1U2, all},
// dec2 = {T, TU1, TU2, TU1U2, all}.
struct SupIngredients {
    InfoExpr coop1, coop2;
    std::array<InfoExpr, 5> dec1, dec2;
};
SupIngredients sup_ingredients();       // from the named bound terms
SupIngredients ext_ingredients();       // coop2 replaced by the extended cooperation bound

// dec1 = {T, TU2, TU1, TU1U2}, dec2 = {T, TU1, TU2, TU1U2}.
struct HkIngredients {
    std::array<InfoExpr, 4> dec1, dec2;
};
HkIngredients hk_ingredients();

// The two single-rate bounds that only matter for a fixed distribution (flagged).
std::vector<LinearConstraint> hk_single_rate_pair(const HkIngredients& in);
LinearSystem hk_region(const HkIngredients& in, bool with_single_rate_pair = false);
LinearSystem sup_region(const SupIngredients& in);
LinearSystem ext_region(const SupIngredients& in);

// Split-rate systems fed to the projection.
LinearSystem hk_split_system();
LinearSystem sup_split_system(bool with_common_rate = false);
LinearSystem ext_split_system();
LinearSystem ext_full_split_system();  // source 1 decodes all of user 2's message
const std::vector<std::string>& split_rates();  // R_10c, R_10n, R_11n, R_20c, R_20n, R_22n

// Chains between the decoding bounds that hold for every distribution.
DominanceRegistry curated_facts();

// ---------------------------------------------------------------------------
// Reductions to special channels.

struct TermPin {
    enum class Kind { ZERO, INFINITE, PARAM };
    InfoTerm term;
    Kind kind = Kind::ZERO;
    std::string param;
};

enum class ReductionId {
    NO_FEEDBACK, OUTPUT_FEEDBACK, COGNITIVE, BROADCAST, MAC_GF, MAC_GF_COMMON, RELAY_DF, CONFERENCING
};

struct Reduction {
    ReductionId id;
    std::vector<TermPin> pins;
    Substitution sigma;
    std::vector<std::string> zero_rates;
    std::optional<LinearSystem> expected;
};

const std::vector<ReductionId>& all_reductions();
std::string reduction_name(ReductionId id);
ReductionId parse_reduction(const std::string& name);  // throws std::invalid_argument
Reduction reduction_map(ReductionId id);

LinearSystem apply_pins(const LinearSystem& s, const std::vector<TermPin>& pins);
LinearSystem apply_substitution(const LinearSystem& s, const Substitution& sigma);
LinearSystem zero_rates(const LinearSystem& s, const std::vector<std::string>& rates);
// Pins, label map, rate zeros, then redundancy removal with the transported facts.
LinearSystem apply_reduction(const Reduction& r);

// ---------------------------------------------------------------------------
// Binning region elimination.

struct BinningElimination {
    LinearSystem system;  // over R_10c .. R_22c
    std::vector<std::pair<Rational, Rational>> families;  // (R1, R2) directions, nonnegativity excluded
};

struct NegativeBinningRate : std::domain_error {
    using std::domain_error::domain_error;
};

// Binning rates at their lower bounds (the joint S-binning rate split evenly), aggregated
// rates expanded. `rhs_map` is applied to every right-hand side first (pinning).
BinningElimination binning_equality_eliminate(const BinningSystem& sys = build_full(),
                                              const std::function<InfoExpr(const InfoExpr&)>& rhs_map = {});

// Directions of the projection onto (R1, R2) with the cooperative rates held fixed.
std::vector<std::pair<Rational, Rational>> bound_families(const LinearSystem& eliminated);

// S1 = Z1 = S2 = Z2 = Q: result and the superposition-only target it should equal.
LinearSystem binning_degenerate_reduction();
LinearSystem binning_degenerate_target();

// I(A;B|C) = 0 for A, B in different users' codeword blocks and C within Q and both blocks.
InfoExpr independence_zero(const InfoExpr& e);

}  // namespace rr
