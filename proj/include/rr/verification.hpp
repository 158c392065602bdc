#pragma once
#include "rr/geometry.hpp"
#include "rr/io.hpp"
#include "rr/templates.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace rr {

struct CheckReport {
    std::string id;
    bool pass = false;
    std::vector<std::string> diagnostics;
    nlohmann::json witness = nlohmann::json::object();  // failing input, re-runnable from the CLI
};

nlohmann::json to_json(const CheckReport& r);

// Random draws used by the numeric checks.
GaussianScenario random_scenario(std::mt19937_64& rng);  // gains in [0.1, 2], powers in [0.5, 20]
PowerSplit random_split(const GaussianScenario& scn, std::mt19937_64& rng);  // uniform on each power simplex

// Projection of `input` compared with `expected` (nonnegativity rows ignored). Every flagged
// row of `expected` must be present in the projection.
CheckReport check_fm(const std::string& id, const LinearSystem& input, const std::vector<std::string>& victims,
                     const LinearSystem& expected);
CheckReport check_theorem1_fm(const LinearSystem& input = hk_split_system());
CheckReport check_theorem2_fm(const LinearSystem& input = sup_split_system());
CheckReport check_corollary1_symbolic(const LinearSystem& input = ext_split_system());
// Extended region at a split against the superposition region at the split with U2 folded
// into V2. `fold = false` compares at the unfolded split (must fail).
CheckReport check_corollary1_numeric(int draws, std::uint64_t seed, bool fold = true);
CheckReport check_corollary1(int draws, std::uint64_t seed);

// Points removed only by a flagged single-rate bound must lie in the region of the same
// scheme with the user's private common layer merged into its private layer (U' = empty,
// T' = (T, U)), evaluated through that label transform. With `keep_cooperative = false` the
// cooperative layer is also folded into the time-sharing variable (Q' = (Q, V), V' = empty).
CheckReport check_appendixA_redundancy(const GaussianScenario& scn, int trials, std::uint64_t seed,
                                       bool keep_cooperative = true);  // trials >= 1
CheckReport check_appendixA_redundancy(const std::vector<GaussianScenario>& scns, int trials, std::uint64_t seed,
                                       bool keep_cooperative = true);
Substitution appendixA_transform(int user, bool keep_cooperative = true);

CheckReport check_reductions();
CheckReport check_binning_structure();
// Decoding-bound chains T <= TU2, TU1 <= TU1U2 <= all and the mirror.
CheckReport check_chain_inequalities(int draws, std::uint64_t seed, double slack = 1e-10);

// Vertexwise agreement: every vertex of each polygon is within tol of a vertex of the other.
bool polygons_match(const RatePolygon& a, const RatePolygon& b, double tol, std::string* diagnostic = nullptr);

struct VerifyOptions {
    std::uint64_t seed = 7;
    int trials = 100;  // Appendix A splits per scenario
    int draws = 100;   // Corollary 1 and chain draws
    std::optional<GaussianScenario> scenario;  // Appendix A: this scenario instead of the default five
};

const std::vector<std::string>& check_ids();
CheckReport run_check(const std::string& id, const VerifyOptions& opt);  // throws std::invalid_argument
std::vector<CheckReport> run_all(const VerifyOptions& opt);

}  // namespace rr
