#include "rr/verification.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rr {

using nlohmann::json;

namespace {

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        if (!l.empty()) out.push_back(l);
    return out;
}

// Rows of `got` that coincide with a flagged row of `expected` carry the flag.
LinearSystem adopt_flags(const LinearSystem& got, const LinearSystem& expected) {
    LinearSystem out;
    for (auto c : got.constraints()) {
        for (const auto& e : expected.constraints())
            if (e.flagged && e.same_as(c)) c.flagged = true;
        out.add(c);
    }
    return out;
}

double bind_lhs(const Lhs& lhs, const Point& p) {
    double v = 0;
    for (const auto& [sym, k] : lhs) v += k.get_d() * (sym == "R1" ? p.r1 : sym == "R2" ? p.r2 : 0.0);
    return v;
}

// Extreme points of the part of `poly` where a.R > b.
std::vector<Point> cut_off_points(const RatePolygon& poly, const Lhs& a, double b, double tol) {
    std::vector<Point> out;
    const auto& P = poly.vertices;
    for (std::size_t i = 0; i < P.size(); ++i) {
        const Point& p = P[i];
        const Point& q = P[(i + 1) % P.size()];
        double fp = bind_lhs(a, p) - b, fq = bind_lhs(a, q) - b;
        if (fp > tol) out.push_back(p);
        if ((fp > tol && fq < -tol) || (fp < -tol && fq > tol)) {
            double t = fp / (fp - fq);
            out.push_back({p.r1 + t * (q.r1 - p.r1), p.r2 + t * (q.r2 - p.r2)});
        }
    }
    return out;
}

}  // namespace

json to_json(const CheckReport& r) {
    return json{{"id", r.id}, {"pass", r.pass}, {"diagnostics", r.diagnostics}, {"witness", r.witness}};
}

GaussianScenario random_scenario(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> gain(0.1, 2.0), power(0.5, 20.0);
    GaussianScenario s;
    s.h31 = gain(rng);
    s.h42 = gain(rng);
    s.h21 = gain(rng);
    s.h12 = gain(rng);
    s.h32 = gain(rng);
    s.h41 = gain(rng);
    s.P1 = power(rng);
    s.P2 = power(rng);
    return s;
}

PowerSplit random_split(const GaussianScenario& scn, std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0);
    auto simplex = [&](double P) {
        std::array<double, 4> w{};
        double t = 0;
        for (auto& x : w) t += x = e(rng);
        for (auto& x : w) x *= P / t;
        return w;
    };
    auto a = simplex(scn.P1), b = simplex(scn.P2);
    PowerSplit p;
    p.alpha1 = std::sqrt(a[0]);
    p.var_10c = a[1];
    p.var_10n = a[2];
    p.var_11n = a[3];
    p.alpha2 = std::sqrt(b[0]);
    p.var_20c = b[1];
    p.var_20n = b[2];
    p.var_22n = b[3];
    return p;
}

bool polygons_match(const RatePolygon& a, const RatePolygon& b, double tol, std::string* diagnostic) {
    auto one_way = [&](const RatePolygon& x, const RatePolygon& y, const char* tag) {
        for (const auto& v : x.vertices) {
            double best = INFINITY;
            for (const auto& w : y.vertices) best = std::min(best, std::hypot(v.r1 - w.r1, v.r2 - w.r2));
            if (best > tol) {
                if (diagnostic) {
                    std::ostringstream os;
                    os.precision(17);
                    os << tag << " vertex (" << v.r1 << ", " << v.r2 << ") off by " << best;
                    *diagnostic = os.str();
                }
                return false;
            }
        }
        return true;
    };
    return one_way(a, b, "first") && one_way(b, a, "second");
}

// ---------------------------------------------------------------------------
// Symbolic checks.

CheckReport check_fm(const std::string& id, const LinearSystem& input, const std::vector<std::string>& victims,
                     const LinearSystem& expected) {
    CheckReport r{id};
    LinearSystem got = drop_redundant_symbolic(fm_eliminate(input, victims), curated_facts());
    got = adopt_flags(got, expected).without_nonnegativity();
    std::string diag;
    r.pass = systems_equal(got, expected, &diag);
    if (!r.pass) {
        r.diagnostics = lines(diag);
        r.witness["projection"] = lines(format_system(got));
    }
    for (const auto& e : expected.constraints()) {
        if (!e.flagged) continue;
        bool present = std::any_of(got.constraints().begin(), got.constraints().end(),
                                   [&](const LinearConstraint& c) { return c.flagged && c.same_as(e); });
        if (!present) {
            r.pass = false;
            r.diagnostics.push_back("flagged row not produced: " + format_constraint(e));
        }
    }
    return r;
}

CheckReport check_theorem1_fm(const LinearSystem& input) {
    return check_fm("theorem1-fm", input, {"R_10n", "R_11n", "R_20n", "R_22n"}, hk_region(hk_ingredients(), true));
}

CheckReport check_theorem2_fm(const LinearSystem& input) {
    CheckReport r = check_fm("theorem2-fm", input, split_rates(), build(TemplateId::SUP_REGION));
    // The 2R1+R2 bound through both cooperation steps counts source 2's decoding twice.
    const InfoTerm coop1 = bound_term("coop1");
    const Lhs two_one{{"R1", 2}, {"R2", 1}};
    bool doubled = false;
    LinearSystem got = drop_redundant_symbolic(fm_eliminate(input, split_rates()), curated_facts());
    for (const auto& c : got.constraints())
        if (c.lhs == two_one && c.rhs.coefficient(coop1) == 2) doubled = true;
    if (!doubled) {
        r.pass = false;
        r.diagnostics.push_back("no 2R1+R2 bound with the doubled cooperation term");
    }
    return r;
}

CheckReport check_corollary1_symbolic(const LinearSystem& input) {
    return check_fm("corollary1-symbolic", input, split_rates(), build(TemplateId::EXT_REGION));
}

// ---------------------------------------------------------------------------
// Numeric checks.

CheckReport check_corollary1_numeric(int draws, std::uint64_t seed, bool fold) {
    CheckReport r{"corollary1-numeric"};
    if (draws < 1) throw std::invalid_argument("draws must be at least 1");
    std::mt19937_64 rng(seed);
    r.pass = true;
    for (int k = 0; k < draws; ++k) {
        GaussianScenario scn = k == 0 ? symmetric_network(6, 2, 1) : random_scenario(rng);
        PowerSplit split = random_split(scn, rng);
        PowerSplit folded = split;
        if (fold) {
            folded.var_20c += folded.var_20n;
            folded.var_20n = 0;
        }
        RatePolygon ext = region_at(scn, split, TemplateId::EXT_REGION);
        RatePolygon sup = region_at(scn, folded, TemplateId::SUP_REGION);
        std::string diag;
        if (!polygons_match(ext, sup, 1e-9, &diag)) {
            r.pass = false;
            r.diagnostics.push_back("draw " + std::to_string(k) + ": " + diag);
            r.witness = json{{"seed", seed}, {"draw", k}, {"scenario", to_json(scn)}, {"split", to_json(split)}};
            break;
        }
    }
    return r;
}

CheckReport check_corollary1(int draws, std::uint64_t seed) {
    CheckReport a = check_corollary1_symbolic();
    CheckReport b = check_corollary1_numeric(draws, seed);
    CheckReport r{"corollary1", a.pass && b.pass};
    for (const auto& d : a.diagnostics) r.diagnostics.push_back("symbolic: " + d);
    for (const auto& d : b.diagnostics) r.diagnostics.push_back("numeric: " + d);
    if (!a.pass) r.witness["symbolic"] = a.witness;
    if (!b.pass) r.witness["numeric"] = b.witness;
    return r;
}

Substitution appendixA_transform(int user, bool keep_cooperative) {
    using L = Label;
    const bool one = user == 1;
    const L q = L::Q, v = one ? L::V1 : L::V2, u = one ? L::U1 : L::U2, t = one ? L::T1 : L::T2;
    Substitution s;
    s.map(t, labels({t, u})).map(u, LabelSet{0});
    if (!keep_cooperative) s.map(q, labels({q, v})).map(v, LabelSet{0});
    return s;
}

CheckReport check_appendixA_redundancy(const std::vector<GaussianScenario>& scns, int trials, std::uint64_t seed,
                                       bool keep_cooperative) {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    CheckReport r{"appendixA", true};
    const LinearSystem full = numeric_template(TemplateId::SUP_REGION, false);
    const LinearSystem kept = numeric_template(TemplateId::SUP_REGION, true);
    std::vector<LinearConstraint> flagged;
    for (const auto& c : full.constraints())
        if (c.flagged) flagged.push_back(c);
    const std::array<Substitution, 2> transform{appendixA_transform(1, keep_cooperative),
                                                  appendixA_transform(2, keep_cooperative)};
    std::mt19937_64 rng(seed);
    int active = 0;
    for (std::size_t s = 0; s < scns.size() && r.pass; ++s) {
        for (int k = 0; k < trials && r.pass; ++k) {
            PowerSplit split = random_split(scns[s], rng);
            TermCache cache(scns[s], split);
            RatePolygon region = numeric_vertices_2d(kept, [&](const InfoExpr& e) { return cache(e); });
            for (const auto& c : flagged) {
                const int user = c.lhs.count("R1") ? 1 : 2;
                auto pts = cut_off_points(region, c.lhs, cache(c.rhs), 1e-12);
                if (pts.empty()) continue;
                ++active;
                RatePolygon target = region_at(scns[s], split, kept, &transform[user - 1]);
                for (const auto& p : pts) {
                    if (contains_point(target, p, 1e-9)) continue;
                    r.pass = false;
                    std::ostringstream os;
                    os.precision(17);
                    os << "scenario " << s << " trial " << k << ": point (" << p.r1 << ", " << p.r2
                       << ") removed by the user-" << user << " flagged bound is outside the transformed region";
                    r.diagnostics.push_back(os.str());
                    r.witness = json{{"seed", seed}, {"scenario", to_json(scns[s])}, {"split", to_json(split)},
                                     {"point", {p.r1, p.r2}}, {"user", user}};
                    break;
                }
            }
        }
    }
    r.diagnostics.push_back("splits where a flagged bound was active: " + std::to_string(active));
    return r;
}

CheckReport check_appendixA_redundancy(const GaussianScenario& scn, int trials, std::uint64_t seed,
                                       bool keep_cooperative) {
    return check_appendixA_redundancy(std::vector<GaussianScenario>{scn}, trials, seed, keep_cooperative);
}

CheckReport check_reductions() {
    CheckReport r{"reductions", true};
    for (ReductionId id : all_reductions()) {
        Reduction red = reduction_map(id);
        if (!red.expected) continue;
        std::string diag;
        LinearSystem got = apply_reduction(red).without_nonnegativity();
        if (!systems_equal(got, *red.expected, &diag)) {
            r.pass = false;
            for (const auto& l : lines(diag)) r.diagnostics.push_back(reduction_name(id) + ": " + l);
            r.witness[reduction_name(id)] = lines(format_system(got));
        }
    }
    std::string diag;
    LinearSystem dg = binning_degenerate_reduction();
    if (!systems_equal(dg, binning_degenerate_target(), &diag)) {
        r.pass = false;
        for (const auto& l : lines(diag)) r.diagnostics.push_back("binning-degenerate: " + l);
        r.witness["binning-degenerate"] = lines(format_system(dg));
    }
    return r;
}

CheckReport check_binning_structure() {
    CheckReport r{"binning", true};
    auto fail = [&](const std::string& msg) {
        r.pass = false;
        r.diagnostics.push_back(msg);
    };
    const BinningSystem sys = build_full();
    static const std::vector<int> multiplicities = {128, 16, 8, 8, 8, 4, 4, 4, 2, 2, 4, 2, 2, 16,
                                                    8,   8,  4, 2, 2, 2, 1, 1, 4, 2, 2, 2, 1, 1};
    if (sys.dest1.size() != 28) fail("destination-1 rows: " + std::to_string(sys.dest1.size()));
    if (sys.dest2.size() != sys.dest1.size()) fail("destination-2 row count differs");
    for (std::size_t l = 0; l < std::min<std::size_t>(sys.dest1.size(), 28); ++l) {
        const auto& row = sys.dest1[l];
        if (row.multiplicity != multiplicities[l])
            fail("row " + std::to_string(l) + " multiplicity " + std::to_string(row.multiplicity));
        if (row.pattern != table_patterns()[l]) fail("row " + std::to_string(l) + " pattern " + row.pattern);
    }
    for (int l : {0, 1, 2, 3, 4, 7, 10, 13})
        if (l < static_cast<int>(sys.dest1.size()) && !sys.dest1[l].correction.is_zero())
            fail("row " + std::to_string(l) + " should carry no correction");
    // Every rate symbol is defined by the aggregate block or is a component rate.
    std::set<std::string> defined;
    for (const auto& c : sys.aggregates)
        for (const auto& [sym, k] : c.lhs) defined.insert(sym);
    LinearSystem all = to_system(sys);
    for (const auto& c : all.constraints())
        for (const auto& [sym, k] : c.lhs)
            if (!defined.count(sym) && sym.rfind("R''", 0) != 0) fail("orphan rate symbol " + sym);
    try {
        auto el = binning_equality_eliminate(sys);
        const std::vector<std::pair<Rational, Rational>> five = {{0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}};
        std::vector<std::pair<Rational, Rational>> got = el.families;
        std::sort(got.begin(), got.end());
        if (got != five) {
            std::string fams;
            for (const auto& [a, b] : got) fams += " (" + a.get_str() + "," + b.get_str() + ")";
            fail("bound families:" + fams);
        }
    } catch (const std::exception& e) {
        fail(std::string("elimination failed: ") + e.what());
    }
    if (!systems_equal(to_system(swap_users(swap_users(sys))), all)) fail("user swap is not an involution");
    return r;
}

CheckReport check_chain_inequalities(int draws, std::uint64_t seed, double slack) {
    CheckReport r{"chain", true};
    std::mt19937_64 rng(seed);
    const std::array<std::array<std::string, 5>, 2> names{{{"d1.T", "d1.TU2", "d1.TU1", "d1.TU1U2", "d1.all"},
                                                            {"d2.T", "d2.TU1", "d2.TU2", "d2.TU1U2", "d2.all"}}};
    for (int k = 0; k < draws && r.pass; ++k) {
        GaussianScenario scn = random_scenario(rng);
        PowerSplit split = random_split(scn, rng);
        TermCache cache(scn, split);
        for (const auto& n : names) {
            std::array<double, 5> v{};
            for (int i = 0; i < 5; ++i) v[i] = cache(bound_term(n[i]));
            double lo = std::min(v[1], v[2]), hi = std::max(v[1], v[2]);
            if (lo - v[0] < -slack || hi - lo < -slack || v[3] - hi < -slack || v[4] - v[3] < -slack) {
                r.pass = false;
                r.diagnostics.push_back("draw " + std::to_string(k) + ": chain broken for " + n[0]);
                r.witness = json{{"seed", seed}, {"draw", k}, {"scenario", to_json(scn)}, {"split", to_json(split)},
                                 {"values", v}};
                break;
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& check_ids() {
    static const std::vector<std::string> ids = {"theorem1-fm", "theorem2-fm", "corollary1", "appendixA",
                                                 "reductions",  "binning",     "chain"};
    return ids;
}

CheckReport run_check(const std::string& id, const VerifyOptions& opt) {
    if (id == "theorem1-fm") return check_theorem1_fm();
    if (id == "theorem2-fm") return check_theorem2_fm();
    if (id == "corollary1") return check_corollary1(opt.draws, opt.seed);
    if (id == "appendixA") {
        std::vector<GaussianScenario> scns;
        if (opt.scenario) {
            scns.push_back(*opt.scenario);
        } else {
            std::mt19937_64 rng(opt.seed ^ 0x5bd1e995u);
            scns.push_back(symmetric_network(6, 2, 1));
            while (scns.size() < 5) scns.push_back(random_scenario(rng));
        }
        return check_appendixA_redundancy(scns, opt.trials, opt.seed);
    }
    if (id == "reductions") return check_reductions();
    if (id == "binning") return check_binning_structure();
    if (id == "chain") return check_chain_inequalities(opt.draws, opt.seed);
    throw std::invalid_argument("unknown check '" + id + "'");
}

std::vector<CheckReport> run_all(const VerifyOptions& opt) {
    std::vector<CheckReport> out;
    for (const auto& id : check_ids()) out.push_back(run_check(id, opt));
    return out;
}

}  // namespace rr
