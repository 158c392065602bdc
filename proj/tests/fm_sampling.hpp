#pragma once
#include "rr/constraint.hpp"
#include "rr/lp.hpp"

#include <random>
#include <string>
#include <vector>

namespace rr::testing {

// Random bounded system over kept symbols a, b and victims x, y with constant right-hand sides.
inline LinearSystem random_small_system(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-3, 3), rhs(0, 12), rows(3, 7);
    const std::vector<std::string> syms = {"a", "b", "x", "y"};
    LinearSystem s;
    for (const auto& v : syms) {
        s.add(le(Lhs{{v, 1}}, InfoExpr(Rational(10))));
        s.add(le(Lhs{{v, -1}}, InfoExpr(Rational(0))));
    }
    int n = rows(rng);
    for (int k = 0; k < n; ++k) {
        Lhs l;
        for (const auto& v : syms)
            if (int c = coef(rng)) l[v] = c;
        if (l.empty()) continue;
        s.add(le(l, InfoExpr(Rational(rhs(rng)))));
    }
    return s;
}

inline Rational eval_lhs(const Lhs& l, const std::map<std::string, Rational>& x) {
    Rational v = 0;
    for (const auto& [k, c] : l) v += c * x.at(k);
    return v;
}

inline bool satisfies(const LinearSystem& s, const std::map<std::string, Rational>& x) {
    for (const auto& c : s.constraints()) {
        Rational lhs = eval_lhs(c.lhs, x);
        const Rational& r = c.rhs.constant();
        if (c.rel == Relation::LE && lhs > r) return false;
        if (c.rel == Relation::GE && lhs < r) return false;
        if (c.rel == Relation::EQ && lhs != r) return false;
    }
    return true;
}

// Is there (x, y) such that (a, b, x, y) satisfies `s`? Exact LP with split free victims and slacks.
inline bool liftable(const LinearSystem& s, const Rational& a, const Rational& b) {
    const auto& rows = s.constraints();
    const std::size_t m = rows.size();
    // Columns: x+, x-, y+, y-, one slack per row.
    std::vector<std::vector<Rational>> A(m, std::vector<Rational>(4 + m, Rational(0)));
    std::vector<Rational> rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = rows[i];
        Rational fixed = 0;
        for (const auto& [k, v] : c.lhs) {
            if (k == "a") fixed += v * a;
            else if (k == "b") fixed += v * b;
            else {
                int col = k == "x" ? 0 : 2;
                A[i][col] += v;
                A[i][col + 1] -= v;
            }
        }
        rhs[i] = c.rhs.constant() - fixed;
        if (c.rel == Relation::LE) A[i][4 + i] = 1;
        if (c.rel == Relation::GE) A[i][4 + i] = -1;
    }
    return exact_feasible(A, rhs);
}

struct SamplingResult {
    int systems = 0, soundness_violations = 0, lift_violations = 0, points = 0;
};

// Feasible points of each system must satisfy its projection; points of the projection must lift.
inline SamplingResult fm_sampling(int systems, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(0, 40);
    SamplingResult r;
    for (int k = 0; k < systems; ++k) {
        LinearSystem s = random_small_system(rng);
        LinearSystem p = fm_eliminate(s, {"x", "y"});
        ++r.systems;
        for (int t = 0; t < 30; ++t) {
            std::map<std::string, Rational> pt;
            for (const char* v : {"a", "b", "x", "y"}) pt[v] = Rational(coord(rng), 4);
            if (satisfies(s, pt)) {
                ++r.points;
                if (!satisfies(p, pt)) ++r.soundness_violations;
            }
            std::map<std::string, Rational> ab{{"a", pt["a"]}, {"b", pt["b"]}};
            if (satisfies(p, ab)) {
                ++r.points;
                if (!liftable(s, ab["a"], ab["b"])) ++r.lift_violations;
            }
        }
    }
    return r;
}

}  // namespace rr::testing
