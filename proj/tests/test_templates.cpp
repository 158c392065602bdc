#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rr/templates.hpp"

#include <set>

using namespace rr;

namespace {

std::set<std::string> lhs_shapes(const LinearSystem& s) {
    std::set<std::string> out;
    for (const auto& c : s.constraints()) out.insert(format_lhs(c.lhs));
    return out;
}

}  // namespace

TEST_CASE("template names round trip") {
    for (TemplateId id : all_templates()) CHECK(parse_template(template_name(id)) == id);
    CHECK(parse_template("hk") == TemplateId::HK_REGION);
    CHECK(parse_template("SUP") == TemplateId::SUP_REGION);
    CHECK(parse_template("ext") == TemplateId::EXT_REGION);
    CHECK_THROWS_AS(parse_template("nope"), std::invalid_argument);
}

TEST_CASE("no-feedback region: seven rows over five bound families") {
    LinearSystem hk = build(TemplateId::HK_REGION);
    CHECK(hk.size() == 7);
    CHECK(lhs_shapes(hk) == std::set<std::string>{"R1", "R2", "R1 + R2", "2*R1 + R2", "R1 + 2*R2"});
    CHECK(hk_region(hk_ingredients(), true).size() == 9);
}

TEST_CASE("decoding templates") {
    CHECK(build(TemplateId::SUP_DEC1).size() == 5);
    CHECK(build(TemplateId::SUP_DEC2).size() == 5);
    CHECK(build(TemplateId::SUP_COOP1).size() == 1);
    CHECK(build(TemplateId::SUP_COOP2).size() == 1);
    CHECK(build(TemplateId::HK_DEC1).size() == 4);
    CHECK(build(TemplateId::HK_DEC2).size() == 4);
    CHECK(build(TemplateId::BIN_DEC1).size() >= 28);
}

TEST_CASE("superposition region carries two flagged rows") {
    LinearSystem sup = build(TemplateId::SUP_REGION);
    int flagged = 0;
    for (const auto& c : sup.constraints()) flagged += c.flagged;
    CHECK(sup.size() == 15);
    CHECK(flagged == 2);
}

TEST_CASE("bound chain facts are oriented from fewer to more unknowns") {
    DominanceRegistry f = curated_facts();
    CHECK(f.holds(bound_term("d1.T"), bound_term("d1.TU2")));
    CHECK(f.holds(bound_term("d1.TU1U2"), bound_term("d1.all")));
    CHECK(f.holds(bound_term("d2.T"), bound_term("d2.TU1")));
    CHECK_FALSE(f.holds(bound_term("d1.all"), bound_term("d1.T")));
}

TEST_CASE("every reduction with an expected system matches") {
    for (ReductionId id : all_reductions()) {
        Reduction r = reduction_map(id);
        CAPTURE(reduction_name(id));
        CHECK(parse_reduction(reduction_name(id)) == id);
        if (!r.expected) {
            CHECK(id == ReductionId::OUTPUT_FEEDBACK);
            continue;
        }
        std::string diag;
        bool ok = systems_equal(apply_reduction(r).without_nonnegativity(), *r.expected, &diag);
        CAPTURE(diag);
        CHECK(ok);
    }
}

TEST_CASE("output feedback maps the feedback outputs onto the destinations") {
    Reduction r = reduction_map(ReductionId::OUTPUT_FEEDBACK);
    CHECK(r.sigma.image(Label::Y1) == bit(Label::Y3));
    CHECK(r.sigma.image(Label::Y2) == bit(Label::Y4));
}

TEST_CASE("MAC with generalized feedback has four bounds") {
    Reduction r = reduction_map(ReductionId::MAC_GF);
    REQUIRE(r.expected);
    CHECK(r.expected->size() == 4);
}

TEST_CASE("relay rate is a single min of two bounds") {
    Reduction r = reduction_map(ReductionId::RELAY_DF);
    REQUIRE(r.expected);
    LinearSystem got = apply_reduction(r).without_nonnegativity();
    CHECK(got.size() == 2);
    for (const auto& c : got.constraints()) CHECK(format_lhs(c.lhs) == "R1");
}

TEST_CASE("conferencing pins the cooperation bounds to link capacities") {
    Reduction r = reduction_map(ReductionId::CONFERENCING);
    LinearSystem got = apply_reduction(r);
    bool c12 = false, c21 = false;
    for (const auto& c : got.constraints()) {
        c21 = c21 || c.rhs.param_coefficient("C21") != 0;
        c12 = c12 || c.rhs.param_coefficient("C12") != 0;
        CHECK_FALSE(c.rhs.contains(bound_term("coop1")));
        CHECK_FALSE(c.rhs.contains(bound_term("coop2")));
    }
    CHECK(c12);
    CHECK(c21);
}

TEST_CASE("unknown reduction") { CHECK_THROWS_AS(parse_reduction("teleport"), std::invalid_argument); }

TEST_CASE("pinning a term to infinity deletes its rows") {
    LinearSystem s;
    s.add(le({{"R1", 1}}, bound("coop1") + bound("d1.T")));
    s.add(le({{"R1", 1}}, bound("d1.all")));
    LinearSystem out = apply_pins(s, {TermPin{bound_term("coop1"), TermPin::Kind::INFINITE}});
    CHECK(out.size() == 1);
    LinearSystem zero = apply_pins(s, {TermPin{bound_term("coop1"), TermPin::Kind::ZERO}});
    CHECK(zero.size() == 2);
}

TEST_CASE("binning degenerate case equals the superposition decoding and cooperation rows") {
    std::string diag;
    bool ok = systems_equal(binning_degenerate_reduction(), binning_degenerate_target(), &diag);
    CAPTURE(diag);
    CHECK(ok);
}

TEST_CASE("binning elimination leaves the five bound families") {
    BinningElimination el = binning_equality_eliminate();
    std::vector<std::pair<Rational, Rational>> five = {{0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}};
    CHECK(el.families == five);
    for (const auto& c : el.system.constraints())
        for (const auto& [sym, k] : c.lhs) CHECK(sym.find('\'') == std::string::npos);
}

TEST_CASE("full decoding of the other message with a useless feedback link forces R2 to zero") {
    LinearSystem s = ext_full_split_system();
    LinearSystem pinned = apply_pins(s, {TermPin{bound_term("coop2.full"), TermPin::Kind::ZERO}});
    LinearSystem out = drop_redundant_symbolic(fm_eliminate(pinned, split_rates()), curated_facts());
    bool r2_zero = false;
    for (const auto& c : out.constraints())
        r2_zero = r2_zero || (format_lhs(c.lhs) == "R2" && c.rel == Relation::LE && c.rhs.is_zero());
    CHECK(r2_zero);
}
