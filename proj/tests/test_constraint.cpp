#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rr/constraint.hpp"
#include "rr/lp.hpp"
#include "rr/templates.hpp"

using namespace rr;

namespace {

LinearSystem sys(const char* text) { return parse_system(text); }

InfoExpr num(double v) { return InfoExpr(Rational(v)); }

}  // namespace

TEST_CASE("one-variable projection drops the vacuous row") {
    LinearSystem s = sys("x <= 3\n-x <= 0\ny - x <= 2\n");
    LinearSystem out = fm_eliminate(s, {"x"});
    CHECK(systems_equal(out, sys("y <= 5")));
}

TEST_CASE("empty victim list returns the normalized input") {
    LinearSystem s = sys("2*R1 + 2*R2 <= 4\nR1 <= 1\n");
    CHECK(systems_equal(fm_eliminate(s, {}), s));
    CHECK(format_system(fm_eliminate(s, {})) == format_system(s));
}

TEST_CASE("victim that does not appear is a no-op") {
    LinearSystem s = sys("R1 <= 1\nR2 <= 1\n");
    CHECK(systems_equal(fm_eliminate(s, {"R_10c"}), s));
    CHECK(fm_eliminate(LinearSystem{}, {"R1"}).empty());
}

TEST_CASE("equalities are substituted before pairing") {
    LinearSystem s = sys("R1 - a1 - a2 = 0\na1 <= I(Y3 ; T1 | Q)\na2 <= C21\n-a1 <= 0\n-a2 <= 0\n");
    LinearSystem out = fm_eliminate(s, {"a1", "a2"}).without_nonnegativity();
    CHECK(systems_equal(out, sys("R1 <= I(Y3 ; T1 | Q) + C21")));
}

TEST_CASE("normalization: coprime integers, duplicates merge, idempotent") {
    LinearConstraint c = parse_constraint("1/2*R1 + 3/4*R2 <= I(Y3 ; T1 | Q)");
    LinearConstraint n = normalize(c);
    CHECK(n.lhs.at("R1") == 2);
    CHECK(n.lhs.at("R2") == 3);
    CHECK(n.rhs == InfoExpr::term(parse_term("I(Y3 ; T1 | Q)"), 4));
    CHECK(normalize(n).same_as(n));
    LinearSystem s;
    s.add(c);
    s.add(parse_constraint("2*R1 + 3*R2 <= 4*I(Y3 ; T1 | Q)"));
    CHECK(s.size() == 1);
}

TEST_CASE("greater-or-equal rows") {
    LinearConstraint c = normalize(parse_constraint("R1 >= 0"));
    CHECK(c.is_nonnegativity());
    LinearConstraint d = normalize(parse_constraint("R1 - R2 >= 1"));
    CHECK(d.rel == Relation::LE);
    CHECK(d.lhs.at("R1") == -1);
}

TEST_CASE("no derivable redundancy leaves the system unchanged") {
    LinearSystem s = sys("R1 <= a\nR1 + R2 <= c\nR2 <= b\n");
    CHECK(systems_equal(drop_redundant_symbolic(s), s));
}

TEST_CASE("dominated bound is removed") {
    LinearSystem s = sys("R1 <= a\nR1 <= a + c\n");
    CHECK(systems_equal(drop_redundant_symbolic(s), sys("R1 <= a")));
}

TEST_CASE("registered chain fact prunes the larger bound") {
    LinearSystem s;
    s.add(le({{"R1", 1}}, bound("d1.T")));
    s.add(le({{"R1", 1}}, bound("d1.TU1U2")));
    DominanceRegistry f;
    f.add(bound_term("d1.T"), bound_term("d1.TU1U2"));
    LinearSystem out = drop_redundant_symbolic(s, f);
    REQUIRE(out.size() == 1);
    CHECK(out.constraints()[0].rhs == bound("d1.T"));
    CHECK(drop_redundant_symbolic(s).size() == 2);
}

TEST_CASE("flagged rows never support removing an unflagged one") {
    LinearSystem s;
    LinearConstraint f = le({{"R1", 1}}, bound("d1.T"));
    f.flagged = true;
    s.add(f);
    s.add(le({{"R1", 1}}, bound("d1.T") + bound("coop1")));
    CHECK(drop_redundant_symbolic(s).size() == 2);
}

TEST_CASE("set equality and diagnostics") {
    LinearSystem hk = build(TemplateId::HK_REGION);
    LinearSystem permuted;
    for (auto it = hk.constraints().rbegin(); it != hk.constraints().rend(); ++it) permuted.add(*it);
    CHECK(systems_equal(hk, permuted));
    LinearSystem missing;
    for (const auto& c : hk.constraints())
        if (!(c.lhs.size() == 2 && c.lhs.at("R2") == 2)) missing.add(c);
    std::string diag;
    CHECK_FALSE(systems_equal(hk, missing, &diag));
    CHECK(diag.find("R1 + 2*R2") != std::string::npos);
}

TEST_CASE("pentagon vertices") {
    LinearSystem s = sys("R1 <= 1\nR2 <= 1\nR1 + R2 <= 3/2\n");
    RatePolygon p = numeric_vertices_2d(s, [](const InfoExpr& e) { return e.constant().get_d(); });
    std::vector<std::pair<double, double>> expect = {{0, 0}, {1, 0}, {1, 0.5}, {0.5, 1}, {0, 1}};
    REQUIRE(p.vertices.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) {
        CHECK(p.vertices[i].r1 == doctest::Approx(expect[i].first));
        CHECK(p.vertices[i].r2 == doctest::Approx(expect[i].second));
    }
}

TEST_CASE("zero box is the origin; unbounded and infeasible regions") {
    auto bind = [](const InfoExpr& e) { return e.constant().get_d(); };
    RatePolygon p = numeric_vertices_2d(sys("R1 <= 0\nR2 <= 0\n"), bind);
    REQUIRE(p.vertices.size() == 1);
    CHECK(p.vertices[0].r1 == 0);
    CHECK_THROWS_AS(numeric_vertices_2d(sys("R1 <= 1\n"), bind), UnboundedRegion);
    CHECK(numeric_vertices_2d(sys("R1 <= 1\nR2 <= 1\n-R1 <= -2\n"), bind).empty());
}

TEST_CASE("Han-Kobayashi-shaped bounds against a brute-force half-plane oracle") {
    LinearSystem hk = build(TemplateId::HK_REGION);
    auto bind = [](const InfoExpr& e) {
        Rational k = 0;
        for (const auto& [t, c] : e.terms()) k += c;
        double v = k.get_d();
        return v == 1 ? 1.0 : v == 2 ? 1.6 : 2.4;
    };
    RatePolygon p = numeric_vertices_2d(hk, bind);
    // Brute force: pairwise intersections of all boundary lines (axes included) that satisfy every row.
    std::vector<std::tuple<double, double, double>> lines = {{1, 0, 0}, {0, 1, 0}};
    for (const auto& c : hk.constraints())
        lines.emplace_back(c.lhs.count("R1") ? c.lhs.at("R1").get_d() : 0, c.lhs.count("R2") ? c.lhs.at("R2").get_d() : 0,
                           bind(c.rhs));
    auto feasible = [&](double x, double y) {
        if (x < -1e-9 || y < -1e-9) return false;
        for (std::size_t i = 2; i < lines.size(); ++i) {
            auto [a, b, r] = lines[i];
            if (a * x + b * y > r + 1e-9) return false;
        }
        return true;
    };
    std::vector<std::pair<double, double>> oracle;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            auto [a1, b1, r1] = lines[i];
            auto [a2, b2, r2] = lines[j];
            double det = a1 * b2 - a2 * b1;
            if (std::abs(det) < 1e-12) continue;
            double x = (i < 2 ? 0 : r1), y = (j < 2 ? 0 : r2);
            double px = (x * b2 - y * b1) / det, py = (a1 * y - a2 * x) / det;
            if (feasible(px, py)) oracle.emplace_back(px, py);
        }
    for (const auto& v : p.vertices) {
        bool found = false;
        for (const auto& [x, y] : oracle) found = found || (std::abs(x - v.r1) < 1e-9 && std::abs(y - v.r2) < 1e-9);
        CHECK(found);
    }
    for (const auto& [x, y] : oracle) {
        bool found = false;
        for (const auto& v : p.vertices) found = found || (std::abs(x - v.r1) < 1e-9 && std::abs(y - v.r2) < 1e-9);
        CHECK(found);
    }
}

TEST_CASE("text format round trip, flags and parse errors") {
    LinearSystem sup = build(TemplateId::SUP_REGION);
    LinearSystem back = parse_system(format_system(sup));
    CHECK(systems_equal(back, sup));
    try {
        parse_system("R1 <= 1\n# comment\nR2 <= 3/0\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_system("R1 <== 2\n"), ParseError);
}

TEST_CASE("projection cap") {
    FmOptions opt;
    opt.cap = 3;
    LinearSystem s = sys("x + y <= 1\nx - y <= 1\n-x + y <= 1\n-x - y <= 1\nx + z <= 1\n-x + z <= 1\n");
    CHECK_THROWS_AS(fm_eliminate(s, {"x"}, opt), FmLimitExceeded);
}

TEST_CASE("elimination order does not change the projection") {
    LinearSystem s = sup_split_system();
    std::vector<std::string> order = split_rates();
    LinearSystem a = drop_redundant_symbolic(fm_eliminate(s, order), curated_facts());
    std::reverse(order.begin(), order.end());
    LinearSystem b = drop_redundant_symbolic(fm_eliminate(s, order), curated_facts());
    CHECK(systems_equal(a, b));
}

TEST_CASE("exact LP helpers") {
    CHECK(exact_feasible({{1, 1}}, {2}));
    CHECK_FALSE(exact_feasible({{1, 1}}, {-1}));
    CHECK(exact_rank({{1, 2}, {2, 4}}) == 1);
    CHECK(exact_rank({{1, 0}, {0, 1}}) == 2);
}
