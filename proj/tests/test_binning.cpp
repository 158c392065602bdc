#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rr/binning.hpp"
#include "rr/templates.hpp"

#include <numeric>
#include <set>

using namespace rr;
using L = Label;

namespace {

Lhs plain_rates(const Lhs& lhs) {
    Lhs out;
    for (const auto& [k, v] : lhs)
        if (k.find('\'') == std::string::npos) out[k] = v;
    return out;
}

}  // namespace

TEST_CASE("28 destination rows covering 248 wrong patterns") {
    BinningSystem s = build_full();
    REQUIRE(s.dest1.size() == 28);
    int total = 0;
    for (const auto& r : s.dest1) total += r.multiplicity;
    CHECK(total == 248);
    // With the 8 all-correct patterns of the three free slots, every one of the 2^8 patterns is accounted for.
    CHECK(total + 8 == 256);
}

TEST_CASE("first row: every rate of the destination") {
    BinningSystem s = build_full();
    Lhs expect{{"R_V1", 1}, {"R_V2", 1}, {"R_U1", 1}, {"R_T1", 1}, {"R_U2", 1}, {"R_Z1", 1}, {"R''_11c", 1}};
    CHECK(s.dest1[0].lhs == expect);
    CHECK(s.dest1[0].correct == 0);
}

TEST_CASE("row 12 bounds the Z1 bin rate alone") {
    BinningSystem s = build_full();
    CHECK(plain_rates(s.dest1[12].lhs) == Lhs{{"R_Z1", 1}});
}

TEST_CASE("eleven bound groups") {
    std::set<std::string> groups;
    for (const auto& r : build_full().dest1) groups.insert(format_lhs(plain_rates(r.lhs)));
    CHECK(groups.size() == 11);
}

TEST_CASE("Delta terms") {
    InfoExpr d = delta(1);
    CHECK(d.terms().size() == 3);
    CHECK(d.contains(*canonicalize(bit(L::S1), labels({L::V1, L::U1, L::T1}), bit(L::Q))));
    CHECK(delta(2) == substitute(d, Substitution::user_swap()));
}

TEST_CASE("rows without a correction") {
    BinningSystem s = build_full();
    for (int l : {0, 1, 2, 3, 4, 7, 10, 13}) CHECK(s.dest1[l].correction.is_zero());
    int flagged = 0;
    for (const auto& r : s.dest1) flagged += r.display_differs;
    CHECK(flagged == 3);
}

TEST_CASE("all coefficients are integers") {
    LinearSystem all = to_system(build_full());
    for (const auto& c : all.constraints()) {
        for (const auto& [k, v] : c.lhs) CHECK(is_integer(v));
        CHECK(c.rhs.all_coefficients_integer());
    }
}

TEST_CASE("encoder, cooperation and aggregate blocks") {
    BinningSystem s = build_full();
    // One joint-bin row plus user 1's encoder rows and their mirror.
    CHECK(s.encoder.size() % 2 == 1);
    CHECK(s.cooperation.size() % 2 == 0);
    CHECK_FALSE(s.aggregates.empty());
    for (const auto& c : s.encoder) CHECK(c.rel != Relation::LE);
    for (const auto& c : s.aggregates) CHECK(c.rel == Relation::EQ);
}

TEST_CASE("no orphan rate symbols") {
    BinningSystem s = build_full();
    std::set<std::string> defined;
    for (const auto& c : s.aggregates)
        for (const auto& [k, v] : c.lhs) defined.insert(k);
    LinearSystem all = to_system(s);
    for (const auto& c : all.constraints())
        for (const auto& [k, v] : c.lhs)
            if (k.rfind("R''", 0) != 0) CHECK(defined.count(k));
}

TEST_CASE("user swap") {
    BinningSystem s = build_full();
    BinningSystem w = swap_users(s);
    CHECK(systems_equal(to_system(swap_users(w)), to_system(s)));
    REQUIRE(w.dest1.size() == s.dest2.size());
    for (std::size_t i = 0; i < s.dest1.size(); ++i) {
        // The destination-2 table is the mirror of the destination-1 table, so the swap fixes both.
        CHECK(row_constraint(w.dest1[i]).same_as(row_constraint(s.dest1[i])));
        CHECK(row_constraint(w.dest2[i]).same_as(row_constraint(s.dest2[i])));
    }
    CHECK(swap_symbol("R'_10c") == "R'_20c");
    CHECK(swap_symbol("R''_11c") == "R''_22c");
    CHECK(swap_symbol("R_Z1") == "R_Z2");
    CHECK(swap_symbol("R1") == "R2");
    CHECK(substitute(delta(1), Substitution::user_swap()) == delta(2));
    CHECK(build(TemplateId::BIN_DEC2).size() == build(TemplateId::BIN_DEC1).size());
}

TEST_CASE("variant without V bins") {
    BinningSystem v = build_variant(BinningVariant::NO_VBIN);
    CHECK(v.dest1.size() == 15);
    LinearSystem all = to_system(v);
    for (const auto& c : all.constraints()) {
        CHECK_FALSE(c.lhs.count("R'_10c"));
        CHECK_FALSE(c.lhs.count("R'_20c"));
    }
}

TEST_CASE("variant without Z bins") {
    BinningSystem v = build_variant(BinningVariant::NO_ZBIN);
    CHECK(v.dest1.size() == 26);
    std::set<std::string> groups;
    for (const auto& r : v.dest1) {
        CHECK_FALSE(r.lhs.count("R'_11c"));
        if (r.index != 12) CHECK_FALSE(r.lhs.count("R_Z1"));
        CHECK(r.index != 10);
        CHECK(r.index != 11);
        Lhs p = plain_rates(r.lhs);
        if (p != Lhs{{"R_Z1", 1}}) groups.insert(format_lhs(p));
    }
    CHECK(groups == std::set<std::string>{"R_T1", "R_T1 + R_U2", "R_U1 + R_T1", "R_U1 + R_T1 + R_U2",
                                          "R_V1 + R_U1 + R_T1 + R_V2 + R_U2"});
    // Same rows as the full system once the removed terms are ignored.
    BinningSystem full = build_full();
    for (const auto& r : v.dest1) {
        bool found = false;
        for (const auto& f : full.dest1) found = found || f.index == r.index;
        CHECK(found);
    }
}

TEST_CASE("two-step decoding") {
    BinningSystem v = build_variant(BinningVariant::TWO_STEP);
    CHECK(v.first_stage1.size() == 2);
    CHECK(v.first_stage2.size() == 2);
    CHECK(v.dest1.size() == 15);
    for (const auto& r : v.dest1) CHECK(r.index >= 13);
}

TEST_CASE("variant names") {
    for (auto v : {BinningVariant::FULL, BinningVariant::NO_VBIN, BinningVariant::NO_ZBIN, BinningVariant::TWO_STEP})
        CHECK(parse_variant(variant_name(v)) == v);
    CHECK_THROWS_AS(parse_variant("three-step"), std::invalid_argument);
}
