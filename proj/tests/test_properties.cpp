#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fm_sampling.hpp"
#include "rr/templates.hpp"

#include <algorithm>
#include <random>

using namespace rr;
using namespace rr::testing;

TEST_CASE("projection is sound and every projected point lifts") {
    SamplingResult r = fm_sampling(300, 99);
    CHECK(r.points > 1000);
    CHECK(r.soundness_violations == 0);
    CHECK(r.lift_violations == 0);
}

TEST_CASE("projection does not depend on victim order") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 100; ++k) {
        LinearSystem s = random_small_system(rng);
        CHECK(systems_equal(fm_eliminate(s, {"x", "y"}), fm_eliminate(s, {"y", "x"})));
    }
}

TEST_CASE("normalization is idempotent") {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> c(-6, 6);
    for (int k = 0; k < 500; ++k) {
        Lhs l;
        for (const char* v : {"R1", "R2", "R_10c"})
            if (int x = c(rng)) {
                Rational q(x, 1 + std::abs(c(rng)));
                q.canonicalize();
                l[v] = q;
            }
        if (l.empty()) continue;
        LinearConstraint con{l, static_cast<Relation>(k % 3), bound("d1.T") * Rational(c(rng))};
        LinearConstraint once = normalize(con);
        CHECK(normalize(once).same_as(once));
        for (const auto& [sym, v] : once.lhs) CHECK(is_integer(v));
    }
}

TEST_CASE("redundancy removal keeps the feasible set of random constant systems") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> coord(0, 40);
    for (int k = 0; k < 100; ++k) {
        LinearSystem s = random_small_system(rng);
        LinearSystem d = drop_redundant_symbolic(s);
        CHECK(d.size() <= s.size());
        for (int t = 0; t < 30; ++t) {
            std::map<std::string, Rational> pt;
            for (const char* v : {"a", "b", "x", "y"}) pt[v] = Rational(coord(rng), 4);
            CHECK(satisfies(s, pt) == satisfies(d, pt));
        }
    }
}

TEST_CASE("text round trip of every template") {
    for (TemplateId id : all_templates()) {
        LinearSystem s = build(id);
        CAPTURE(template_name(id));
        CHECK(systems_equal(parse_system(format_system(s)), s));
    }
}

TEST_CASE("user swap maps each two-user template onto its mirror") {
    Substitution w = Substitution::user_swap();
    auto mirrored = [&](const LinearSystem& s) {
        LinearSystem o;
        for (auto c : s.constraints()) {
            Lhs l;
            for (const auto& [k, v] : c.lhs) l[swap_symbol(k)] = v;
            c.lhs = l;
            c.rhs = substitute(c.rhs, w);
            o.add(c);
        }
        return o;
    };
    CHECK(systems_equal(mirrored(build(TemplateId::SUP_REGION)), build(TemplateId::SUP_REGION)));
    CHECK(systems_equal(mirrored(build(TemplateId::HK_REGION)), build(TemplateId::HK_REGION)));
    CHECK(systems_equal(mirrored(build(TemplateId::SUP_DEC1)), build(TemplateId::SUP_DEC2)));
    CHECK(systems_equal(mirrored(build(TemplateId::BIN_DEC1)), build(TemplateId::BIN_DEC2)));
}
