#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rr/gaussian.hpp"
#include "rr/templates.hpp"
#include "rr/verification.hpp"

#include <cmath>
#include <random>

using namespace rr;
using L = Label;

namespace {

GaussianScenario plain(double h31, double h32, double h21) {
    GaussianScenario s;
    s.h31 = s.h42 = h31;
    s.h32 = s.h41 = h32;
    s.h21 = s.h12 = h21;
    s.P1 = s.P2 = 20;
    return s;
}

}  // namespace

TEST_CASE("private rate at destination 1 with the other private layer silent") {
    GaussianScenario s = plain(1, 0.7, 1);
    PowerSplit p;
    p.var_11n = 3;
    CHECK(eval_term(bound_term("d1.T"), build_cov(s, p)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(closed_form("d1.T", s, p) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("cooperation rate of user 1") {
    GaussianScenario s = plain(1, 0.7, 1);
    PowerSplit p;
    p.var_10c = 2;
    p.var_10n = 0.4;
    p.var_11n = 0.6;
    CHECK(eval_term(bound_term("coop1"), build_cov(s, p)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(closed_form("coop1", s, p) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("no-feedback single-user corner of the symmetric network") {
    GaussianScenario s = symmetric_network(6, 2, 1);
    PowerSplit p;
    p.var_11n = 6;
    CHECK(closed_form("d1.T", s, p) == doctest::Approx(std::log2(2.5)).epsilon(1e-12));
    CHECK(eval_term(bound_term("d1.T"), build_cov(s, p)) == doctest::Approx(std::log2(2.5)).epsilon(1e-12));
}

TEST_CASE("silent sources give zero for every bound") {
    GaussianScenario s = symmetric_network(6, 2, 1);
    PowerSplit p;
    CovModel m = build_cov(s, p);
    for (const auto& n : bound_term_names()) CHECK(eval_term(bound_term(n), m) == 0.0);
    Eigen::MatrixXcd y = m.covariance({L::Y3});
    CHECK(std::abs(y(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("symmetric network gains") {
    GaussianScenario s = symmetric_network(6, 2, 1);
    CHECK(s.h31 == doctest::Approx(0.5));
    CHECK(s.h42 == doctest::Approx(0.5));
    CHECK(s.h21 == doctest::Approx(1.0));
    CHECK(s.h12 == doctest::Approx(1.0));
    CHECK(std::abs(s.h41 - cplx(1 / std::sqrt(5.0), 0)) < 1e-15);
    CHECK(std::abs(s.h32 - cplx(1 / std::sqrt(5.0), 0)) < 1e-15);
    CHECK(s.P1 == 6);
    GaussianScenario e = symmetric_network(3, 1.5, 1.5);
    CHECK(e.h21 == doctest::Approx(e.h31));
    GaussianScenario ph = symmetric_network(6, 2, 1, 0.3);
    CHECK(std::arg(ph.h32) == doctest::Approx(0.3));
}

TEST_CASE("all power on the common layer") {
    GaussianScenario s = symmetric_network(6, 2, 1);
    PowerSplit p;
    p.alpha1 = p.alpha2 = std::sqrt(6.0);
    CovModel m = build_cov(s, p);
    double expect = 1 + 6 * std::norm(cplx(s.h31) + s.h32);
    CHECK(std::abs(m.covariance({L::Y3})(0, 0) - expect) < 1e-12);
}

TEST_CASE("independent sources without the common layer") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        GaussianScenario s = random_scenario(rng);
        PowerSplit p = random_split(s, rng);
        p.alpha1 = p.alpha2 = 0;
        Eigen::MatrixXcd c = build_cov(s, p).covariance({L::X1, L::X2});
        CHECK(std::abs(c(0, 1)) < 1e-12);
    }
}

TEST_CASE("conditioning on the common layer removes the source correlation") {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 20; ++k) {
        GaussianScenario s = random_scenario(rng);
        PowerSplit p = random_split(s, rng);
        CovModel m = build_cov(s, p);
        Eigen::MatrixXcd c = m.covariance({L::X1, L::X2, L::Q});
        Eigen::MatrixXcd cond = c.topLeftCorner(2, 2) - c.topRightCorner(2, 1) * c.bottomRightCorner(1, 1).inverse() *
                                                              c.bottomLeftCorner(1, 2);
        CHECK(std::abs(cond(0, 1)) < 1e-9 * (1 + std::abs(c(0, 1))));
    }
}

TEST_CASE("build_cov rejects a split over the power budget") {
    GaussianScenario s = symmetric_network(6, 2, 1);
    PowerSplit p;
    p.var_11n = 6.5;
    CHECK_THROWS_AS(build_cov(s, p), std::invalid_argument);
    p.var_11n = -1;
    CHECK_THROWS_AS(build_cov(s, p), std::invalid_argument);
}

TEST_CASE("closed forms agree with the generic evaluator") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        GaussianScenario s = random_scenario(rng);
        PowerSplit p = random_split(s, rng);
        TermCache cache(s, p);
        for (const auto& n : closed_form_names()) {
            double a = closed_form(n, s, p), b = cache(bound_term(n));
            CAPTURE(n);
            CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("closed forms without beamforming") {
    GaussianScenario s = symmetric_network(6, 2, 1);
    PowerSplit p;
    p.var_10c = p.var_20c = 2;
    p.var_10n = p.var_20n = 2;
    p.var_11n = p.var_22n = 2;
    double all = closed_form("d1.all", s, p);
    double t = closed_form("d1.TU1U2", s, p);
    CHECK(all >= t);
    CHECK(all == doctest::Approx(eval_term(bound_term("d1.all"), build_cov(s, p))).epsilon(1e-12));
}

TEST_CASE("more interfering private power never raises a decoding bound") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 50; ++k) {
        GaussianScenario s = random_scenario(rng);
        s.P2 *= 2;
        PowerSplit p = random_split(s, rng);
        p.var_22n *= 0.5;
        PowerSplit q = p;
        q.var_22n *= 2;
        for (const char* n : {"d1.T", "d1.TU2", "d1.TU1", "d1.TU1U2", "d1.all"}) {
            CAPTURE(n);
            CHECK(closed_form(n, s, q) <= closed_form(n, s, p) + 1e-12);
        }
    }
}

TEST_CASE("every evaluated bound is nonnegative, degenerate splits included") {
    std::mt19937_64 rng(6);
    std::bernoulli_distribution zero(0.4);
    for (int k = 0; k < 200; ++k) {
        GaussianScenario s = random_scenario(rng);
        PowerSplit p = random_split(s, rng);
        for (double* v : {&p.var_10c, &p.var_10n, &p.var_11n, &p.var_20c, &p.var_20n, &p.var_22n})
            if (zero(rng)) *v = 0;
        if (zero(rng)) p.alpha1 = 0;
        if (zero(rng)) p.alpha2 = 0;
        TermCache cache(s, p);
        for (const auto& n : bound_term_names()) CHECK(cache(bound_term(n)) >= 0.0);
    }
}

TEST_CASE("parameters must be bound") {
    GaussianScenario s = symmetric_network(6, 2, 1);
    CovModel m = build_cov(s, PowerSplit{});
    InfoExpr e = InfoExpr::param("C21") + bound("coop1");
    CHECK_THROWS_AS(eval_expr(e, m), std::invalid_argument);
    CHECK(eval_expr(e, m, {{"C21", 0.5}}) == doctest::Approx(0.5));
}
