#include "rr/constraint.hpp"

#include "rr/lp.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>

namespace rr {

const std::vector<std::string>& known_symbols() {
    static const std::vector<std::string> s = {
        "R0",      "R1",      "R2",      "R_10c",   "R_10n",   "R_11n",   "R_20c",  "R_20n",
        "R_22n",   "R_11c",   "R_22c",   "R'_10c",  "R'_10n",  "R'_11n",  "R'_20c", "R'_20n",
        "R'_22n",  "R'_11c",  "R'_22c",  "R''_11c", "R''_22c", "R_Q",     "R_V1",   "R_U1",
        "R_T1",    "R_S1",    "R_Z1",    "R_V2",    "R_U2",    "R_T2",    "R_S2",   "R_Z2"};
    return s;
}

namespace {

int symbol_rank(const std::string& s) {
    static const std::unordered_map<std::string, int> idx = [] {
        std::unordered_map<std::string, int> m;
        const auto& k = known_symbols();
        for (std::size_t i = 0; i < k.size(); ++i) m[k[i]] = static_cast<int>(i);
        return m;
    }();
    auto it = idx.find(s);
    return it == idx.end() ? static_cast<int>(idx.size()) : it->second;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

bool SymbolLess::operator()(const std::string& a, const std::string& b) const {
    int ra = symbol_rank(a), rb = symbol_rank(b);
    if (ra != rb) return ra < rb;
    return a < b;
}

bool LinearConstraint::is_nonnegativity() const {
    return rel == Relation::GE && lhs.size() == 1 && lhs.begin()->second > 0 && rhs.is_zero();
}

LinearConstraint le(Lhs lhs, InfoExpr rhs, std::string note) {
    return LinearConstraint{std::move(lhs), Relation::LE, std::move(rhs), false, std::move(note)};
}
LinearConstraint eq(Lhs lhs, InfoExpr rhs, std::string note) {
    return LinearConstraint{std::move(lhs), Relation::EQ, std::move(rhs), false, std::move(note)};
}
LinearConstraint nonneg(const std::string& sym) {
    return LinearConstraint{Lhs{{sym, 1}}, Relation::GE, InfoExpr{}, false, {}};
}

LinearConstraint normalize(const LinearConstraint& c) {
    LinearConstraint out = c;
    for (auto it = out.lhs.begin(); it != out.lhs.end();)
        it = it->second == 0 ? out.lhs.erase(it) : std::next(it);
    if (out.rel == Relation::GE) {
        for (auto& [s, v] : out.lhs) v = -v;
        out.rhs *= -1;
        out.rel = Relation::LE;
    }
    if (out.lhs.empty()) return out;
    mpz_class den = 1, g = 0;
    for (const auto& [s, v] : out.lhs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    for (const auto& [s, v] : out.lhs) {
        Rational scaled = v * den;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_num_mpz_t());
    }
    Rational k(den, g);
    k.canonicalize();
    bool flip = false;
    if (out.rel == Relation::EQ) {
        flip = out.lhs.begin()->second < 0;
    } else {
        flip = std::all_of(out.lhs.begin(), out.lhs.end(), [](const auto& kv) { return kv.second < 0; });
        if (flip) out.rel = Relation::GE;
    }
    if (flip) k = -k;
    for (auto& [s, v] : out.lhs) v *= k;
    out.rhs *= k;
    return out;
}

void LinearSystem::add(const LinearConstraint& c) {
    LinearConstraint n = normalize(c);
    if (n.lhs.empty()) {
        add_side_condition(n.rhs);
        if (n.rel == Relation::EQ) add_side_condition(-n.rhs);
        return;
    }
    for (auto& r : rows_)
        if (r.same_as(n)) {
            r.flagged = r.flagged && n.flagged;
            if (r.note.empty()) r.note = n.note;
            return;
        }
    rows_.push_back(std::move(n));
}

void LinearSystem::add_all(const LinearSystem& o) {
    for (const auto& c : o.rows_) add(c);
    for (const auto& s : o.side_) add_side_condition(s);
}

void LinearSystem::add_side_condition(const InfoExpr& e) {
    if (e.evidently_nonneg()) return;
    if (std::find(side_.begin(), side_.end(), e) == side_.end()) side_.push_back(e);
}

std::vector<std::string> LinearSystem::variables() const {
    std::set<std::string, SymbolLess> vs;
    for (const auto& c : rows_)
        for (const auto& [s, v] : c.lhs) vs.insert(s);
    return {vs.begin(), vs.end()};
}

LinearSystem LinearSystem::without_nonnegativity() const {
    LinearSystem out;
    for (const auto& c : rows_)
        if (!c.is_nonnegativity()) out.add(c);
    for (const auto& s : side_) out.add_side_condition(s);
    return out;
}

LinearSystem LinearSystem::map_rhs(const std::function<InfoExpr(const InfoExpr&)>& f) const {
    LinearSystem out;
    for (auto c : rows_) {
        c.rhs = f(c.rhs);
        out.add(c);
    }
    for (const auto& s : side_) out.add_side_condition(f(s));
    return out;
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin

namespace {

struct Row {
    std::vector<Rational> a;
    InfoExpr rhs;
    bool is_eq = false;
    bool flagged = false;
    boost::dynamic_bitset<> support;
};

void scale_row(Row& r) {
    mpz_class den = 1, g = 0;
    for (const auto& v : r.a)
        if (v != 0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    for (const auto& v : r.a)
        if (v != 0) {
            Rational s = v * den;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
        }
    if (g == 0) return;
    Rational k(den, g);
    k.canonicalize();
    if (k == 1) return;
    for (auto& v : r.a) v *= k;
    r.rhs *= k;
}

bool all_zero(const std::vector<Rational>& a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& v) { return v == 0; });
}

}  // namespace

LinearSystem fm_eliminate(const LinearSystem& system, const std::vector<std::string>& victims, const FmOptions& opt) {
    if (system.empty()) return system;
    std::vector<std::string> vars = system.variables();
    std::unordered_map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < vars.size(); ++i) col[vars[i]] = i;

    std::vector<Row> rows;
    for (const auto& c : system.constraints()) {
        Row r;
        r.a.assign(vars.size(), 0);
        Rational sgn = c.rel == Relation::GE ? -1 : 1;
        for (const auto& [s, v] : c.lhs) r.a[col[s]] = sgn * v;
        r.rhs = c.rhs * sgn;
        r.is_eq = c.rel == Relation::EQ;
        r.flagged = c.flagged;
        rows.push_back(std::move(r));
    }
    std::vector<InfoExpr> side = system.side_conditions();

    std::vector<std::size_t> pending;
    for (const auto& v : victims) {
        auto it = col.find(v);
        if (it == col.end()) continue;  // absent victim: nothing to do
        if (std::find(pending.begin(), pending.end(), it->second) == pending.end()) pending.push_back(it->second);
    }

    auto settle = [&](std::vector<Row>& rs) {
        std::vector<Row> kept;
        for (auto& r : rs) {
            if (all_zero(r.a)) {
                if (r.is_eq) {
                    if (!r.rhs.is_zero()) {
                        side.push_back(r.rhs);
                        side.push_back(-r.rhs);
                    }
                } else if (!r.rhs.evidently_nonneg()) {
                    side.push_back(r.rhs);
                }
                continue;
            }
            kept.push_back(std::move(r));
        }
        rs = std::move(kept);
    };

    // Phase 1: substitute equalities.
    for (bool progress = true; progress;) {
        progress = false;
        for (auto vit = pending.begin(); vit != pending.end(); ++vit) {
            std::size_t v = *vit;
            auto e = std::find_if(rows.begin(), rows.end(), [&](const Row& r) { return r.is_eq && r.a[v] != 0; });
            if (e == rows.end()) continue;
            Row pivot = *e;
            rows.erase(e);
            for (auto& r : rows) {
                if (r.a[v] == 0) continue;
                Rational f = r.a[v] / pivot.a[v];
                for (std::size_t j = 0; j < vars.size(); ++j)
                    if (pivot.a[j] != 0) r.a[j] -= f * pivot.a[j];
                r.rhs -= pivot.rhs * f;
                r.flagged = r.flagged || pivot.flagged;
                scale_row(r);
            }
            settle(rows);
            pending.erase(vit);
            progress = true;
            break;
        }
    }

    // Phase 2: pairing with the extreme-ray filter. Supports refer to the rows as they stand now.
    const std::size_t n0 = rows.size();
    std::vector<std::vector<Rational>> origin;
    for (std::size_t i = 0; i < n0; ++i) {
        rows[i].support.resize(n0);
        rows[i].support.set(i);
        origin.push_back(rows[i].a);
    }
    std::vector<std::size_t> eliminated;
    for (std::size_t v : pending) {
        bool present = std::any_of(rows.begin(), rows.end(), [&](const Row& r) { return r.a[v] != 0; });
        if (!present) continue;
        eliminated.push_back(v);
        std::vector<Row> pos, neg, next;
        for (auto& r : rows) {
            if (r.a[v] > 0)
                pos.push_back(std::move(r));
            else if (r.a[v] < 0)
                neg.push_back(std::move(r));
            else
                next.push_back(std::move(r));
        }
        std::set<boost::dynamic_bitset<>> seen;
        for (const auto& r : next) seen.insert(r.support);
        for (const auto& p : pos)
            for (const auto& q : neg) {
                if (p.is_eq || q.is_eq) continue;  // equalities without victims never reach here
                auto sup = p.support | q.support;
                std::size_t k = sup.count();
                if (k > eliminated.size() + 1) continue;
                if (seen.count(sup)) continue;
                std::vector<std::vector<Rational>> M;
                for (auto i = sup.find_first(); i != boost::dynamic_bitset<>::npos; i = sup.find_next(i)) {
                    std::vector<Rational> row;
                    for (std::size_t e : eliminated) row.push_back(origin[i][e]);
                    M.push_back(std::move(row));
                }
                if (exact_rank(M) != static_cast<int>(k) - 1) continue;
                Row r;
                Rational fp = -q.a[v], fq = p.a[v];
                r.a.resize(vars.size());
                for (std::size_t j = 0; j < vars.size(); ++j) r.a[j] = fp * p.a[j] + fq * q.a[j];
                r.a[v] = 0;
                r.rhs = p.rhs * fp + q.rhs * fq;
                r.flagged = p.flagged || q.flagged;
                r.support = sup;
                scale_row(r);
                seen.insert(sup);
                next.push_back(std::move(r));
                if (next.size() > opt.cap)
                    throw FmLimitExceeded("Fourier-Motzkin exceeded " + std::to_string(opt.cap) + " intermediate constraints");
            }
        settle(next);
        rows = std::move(next);
    }

    LinearSystem out;
    for (const auto& r : rows) {
        LinearConstraint c;
        for (std::size_t j = 0; j < vars.size(); ++j)
            if (r.a[j] != 0) c.lhs[vars[j]] = r.a[j];
        c.rel = r.is_eq ? Relation::EQ : Relation::LE;
        c.rhs = r.rhs;
        c.flagged = r.flagged;
        out.add(c);
    }
    for (const auto& s : side) out.add_side_condition(s);
    return out;
}

// ---------------------------------------------------------------------------
// Redundancy

namespace {

struct LeRow {
    Lhs lhs;
    InfoExpr rhs;
    bool flagged;
};

bool implied(const LeRow& target, const std::vector<const LeRow*>& others, const DominanceRegistry& facts) {
    std::set<std::string, SymbolLess> vars;
    std::set<InfoTerm> terms;
    std::set<std::string> params;
    auto collect = [&](const LeRow& r) {
        for (const auto& [s, v] : r.lhs) vars.insert(s);
        for (const auto& [t, v] : r.rhs.terms()) terms.insert(t);
        for (const auto& [p, v] : r.rhs.params()) params.insert(p);
    };
    collect(target);
    for (const auto* o : others) collect(*o);
    std::vector<const DominanceFact*> fs;
    for (const auto& f : facts.facts()) {
        fs.push_back(&f);
        terms.insert(f.smaller);
        terms.insert(f.larger);
    }
    std::vector<std::string> vlist(vars.begin(), vars.end());
    std::vector<InfoTerm> tlist(terms.begin(), terms.end());
    std::vector<std::string> plist(params.begin(), params.end());
    const std::size_t nv = vlist.size(), nt = tlist.size(), np = plist.size();
    const std::size_t m = nv + nt + np + 1;
    const std::size_t n = others.size() + fs.size() + nt + np + 1;
    std::vector<std::vector<Rational>> A(m, std::vector<Rational>(n, 0));
    std::vector<Rational> b(m, 0);
    std::map<InfoTerm, std::size_t> tidx;
    for (std::size_t i = 0; i < nt; ++i) tidx[tlist[i]] = nv + i;
    std::map<std::string, std::size_t> pidx;
    for (std::size_t i = 0; i < np; ++i) pidx[plist[i]] = nv + nt + i;
    std::map<std::string, std::size_t, SymbolLess> vidx;
    for (std::size_t i = 0; i < nv; ++i) vidx[vlist[i]] = i;
    const std::size_t crow = m - 1;
    auto fill = [&](const LeRow& r, std::size_t j, std::vector<Rational>* rhs_only) {
        for (const auto& [s, v] : r.lhs) (rhs_only ? (*rhs_only)[vidx[s]] : A[vidx[s]][j]) = v;
        for (const auto& [t, v] : r.rhs.terms()) (rhs_only ? (*rhs_only)[tidx[t]] : A[tidx[t]][j]) = v;
        for (const auto& [p, v] : r.rhs.params()) (rhs_only ? (*rhs_only)[pidx[p]] : A[pidx[p]][j]) = v;
        (rhs_only ? (*rhs_only)[crow] : A[crow][j]) = r.rhs.constant();
    };
    fill(target, 0, &b);
    std::size_t j = 0;
    for (const auto* o : others) fill(*o, j++, nullptr);
    for (const auto* f : fs) {
        A[tidx[f->larger]][j] += 1;
        A[tidx[f->smaller]][j] -= 1;
        ++j;
    }
    for (std::size_t i = 0; i < nt + np; ++i) A[nv + i][j++] = 1;
    A[crow][j++] = 1;
    return exact_feasible(std::move(A), std::move(b));
}

}  // namespace

LinearSystem drop_redundant_symbolic(const LinearSystem& system, const DominanceRegistry& facts) {
    // Every row in <= form; an equality contributes both directions.
    std::vector<LeRow> rows;
    std::vector<int> owner;
    const auto& cs = system.constraints();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto& c = cs[i];
        LeRow r{c.lhs, c.rhs, c.flagged};
        if (c.rel == Relation::GE) {
            for (auto& [s, v] : r.lhs) v = -v;
            r.rhs *= -1;
        }
        rows.push_back(r);
        owner.push_back(static_cast<int>(i));
        if (c.rel == Relation::EQ) {
            for (auto& [s, v] : r.lhs) v = -v;
            r.rhs *= -1;
            rows.push_back(r);
            owner.push_back(static_cast<int>(i));
        }
    }
    std::vector<bool> alive(cs.size(), true);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto& c = cs[i];
        if (c.rel == Relation::EQ || c.is_nonnegativity()) continue;
        std::size_t ri = std::find(owner.begin(), owner.end(), static_cast<int>(i)) - owner.begin();
        std::vector<const LeRow*> others;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (owner[k] == static_cast<int>(i) || !alive[owner[k]]) continue;
            if (!c.flagged && rows[k].flagged) continue;
            others.push_back(&rows[k]);
        }
        if (implied(rows[ri], others, facts)) alive[i] = false;
    }
    LinearSystem out;
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (alive[i]) out.add(cs[i]);
    for (const auto& s : system.side_conditions()) out.add_side_condition(s);
    return out;
}

// ---------------------------------------------------------------------------

bool systems_equal(const LinearSystem& a, const LinearSystem& b, std::string* diagnostic) {
    std::ostringstream d;
    bool ok = true;
    auto va = a.variables(), vb = b.variables();
    if (va != vb) {
        ok = false;
        d << "variable sets differ:";
        for (const auto& v : va)
            if (std::find(vb.begin(), vb.end(), v) == vb.end()) d << " +" << v;
        for (const auto& v : vb)
            if (std::find(va.begin(), va.end(), v) == va.end()) d << " -" << v;
        d << "\n";
    }
    auto find = [](const LinearSystem& s, const LinearConstraint& c) -> const LinearConstraint* {
        for (const auto& r : s.constraints())
            if (r.same_as(c)) return &r;
        return nullptr;
    };
    for (const auto& c : b.constraints()) {
        const auto* r = find(a, c);
        if (!r) {
            ok = false;
            d << "missing: " << format_constraint(c) << "\n";
        } else if (r->flagged != c.flagged) {
            ok = false;
            d << "flag differs: " << format_constraint(c) << "\n";
        }
    }
    for (const auto& c : a.constraints())
        if (!find(b, c)) {
            ok = false;
            d << "extra: " << format_constraint(c) << "\n";
        }
    if (diagnostic) *diagnostic = d.str();
    return ok;
}

// ---------------------------------------------------------------------------
// Numeric 2-D vertices

RatePolygon numeric_vertices_2d(const LinearSystem& system, const std::function<double(const InfoExpr&)>& bind) {
    struct H {
        double a, b, c;  // a R1 + b R2 <= c
    };
    std::vector<H> hs = {{-1, 0, 0}, {0, -1, 0}};
    for (const auto& s : system.side_conditions())
        if (bind(s) < -1e-12) return {};
    for (const auto& con : system.constraints()) {
        double a = 0, b = 0;
        for (const auto& [s, v] : con.lhs) {
            if (s == "R1")
                a = v.get_d();
            else if (s == "R2")
                b = v.get_d();
            else
                throw std::invalid_argument("numeric_vertices_2d: symbol " + s + " is not R1 or R2");
        }
        double c = bind(con.rhs);
        if (!std::isfinite(c)) throw std::invalid_argument("numeric_vertices_2d: non-finite bound");
        if (con.rel == Relation::GE)
            hs.push_back({-a, -b, -c});
        else
            hs.push_back({a, b, c});
        if (con.rel == Relation::EQ) hs.push_back({-a, -b, -c});
    }
    // Bounded iff no nonzero direction d >= 0 has a.d <= 0 for every half-plane.
    auto recedes = [&](double x, double y) {
        for (const auto& h : hs)
            if (h.a * x + h.b * y > 1e-15) return false;
        return true;
    };
    std::vector<std::pair<double, double>> dirs = {{1, 0}, {0, 1}};
    for (const auto& h : hs) {
        // direction along the boundary line, restricted to the quadrant
        double x = h.b, y = -h.a;
        if (x < 0 || y < 0) x = -x, y = -y;
        if (x >= 0 && y >= 0 && (x > 0 || y > 0)) dirs.emplace_back(x, y);
    }
    for (auto [x, y] : dirs)
        if (recedes(x, y)) throw UnboundedRegion("rate region is unbounded (missing a sum-rate bound)");

    std::vector<Point> pts;
    auto feasible = [&](double x, double y) {
        for (const auto& h : hs)
            if (h.a * x + h.b * y > h.c + 1e-9 * std::max(1.0, std::abs(h.c))) return false;
        return true;
    };
    for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            double det = hs[i].a * hs[j].b - hs[i].b * hs[j].a;
            if (std::abs(det) < 1e-14) continue;
            double x = (hs[i].c * hs[j].b - hs[i].b * hs[j].c) / det;
            double y = (hs[i].a * hs[j].c - hs[i].c * hs[j].a) / det;
            if (!feasible(x, y)) continue;
            if (std::abs(x) < 1e-13) x = 0;
            if (std::abs(y) < 1e-13) y = 0;
            bool dup = false;
            for (const auto& p : pts)
                if (std::abs(p.r1 - x) <= 1e-12 && std::abs(p.r2 - y) <= 1e-12) dup = true;
            if (!dup) pts.push_back({x, y});
        }
    RatePolygon poly;
    if (pts.empty()) return poly;
    double cx = 0, cy = 0;
    for (const auto& p : pts) cx += p.r1, cy += p.r2;
    cx /= pts.size();
    cy /= pts.size();
    std::sort(pts.begin(), pts.end(), [&](const Point& p, const Point& q) {
        return std::atan2(p.r2 - cy, p.r1 - cx) < std::atan2(q.r2 - cy, q.r1 - cx);
    });
    // start at the origin when present, for stable output
    auto o = std::find_if(pts.begin(), pts.end(), [](const Point& p) { return p.r1 == 0 && p.r2 == 0; });
    if (o != pts.end()) std::rotate(pts.begin(), o, pts.end());
    poly.vertices = std::move(pts);
    return poly;
}

// ---------------------------------------------------------------------------
// Text format

std::string format_lhs(const Lhs& lhs) {
    std::string out;
    for (const auto& [s, v] : lhs) {
        bool negv = v < 0;
        Rational a = negv ? Rational(-v) : v;
        if (out.empty())
            out += negv ? "-" : "";
        else
            out += negv ? " - " : " + ";
        if (a != 1) out += to_string(a) + "*";
        out += s;
    }
    return out.empty() ? "0" : out;
}

std::string format_constraint(const LinearConstraint& c) {
    const char* rel = c.rel == Relation::LE ? " <= " : c.rel == Relation::GE ? " >= " : " = ";
    std::string s = format_lhs(c.lhs) + rel + format_expr(c.rhs);
    if (c.flagged) s += " [removable]";
    if (!c.note.empty()) s += "  # " + c.note;
    return s;
}

std::string format_system(const LinearSystem& s) {
    std::string out;
    for (const auto& c : s.constraints()) out += format_constraint(c) + "\n";
    for (const auto& e : s.side_conditions()) out += "0 <= " + format_expr(e) + "\n";
    return out;
}

ParseError::ParseError(int line_no, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}

namespace {

Lhs parse_lhs(std::string_view s) {
    Lhs lhs;
    s = trim(s);
    if (s == "0") return lhs;
    std::size_t i = 0;
    bool first = true;
    while (true) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i == s.size()) break;
        Rational sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        } else if (!first) {
            throw std::invalid_argument("expected '+' or '-' in '" + std::string(s) + "'");
        }
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t b = i;
        while (i < s.size() && s[i] != '+' && s[i] != '-') ++i;
        auto tok = trim(s.substr(b, i - b));
        if (tok.empty()) throw std::invalid_argument("missing term in '" + std::string(s) + "'");
        Rational coef = 1;
        std::string_view sym = tok;
        auto star = tok.find('*');
        if (star != std::string_view::npos) {
            coef = parse_rational(trim(tok.substr(0, star)));
            sym = trim(tok.substr(star + 1));
        }
        if (sym.empty() || !(std::isalpha(static_cast<unsigned char>(sym[0])) || sym[0] == '_'))
            throw std::invalid_argument("bad symbol '" + std::string(sym) + "'");
        for (char ch : sym)
            if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\''))
                throw std::invalid_argument("bad symbol '" + std::string(sym) + "'");
        lhs[std::string(sym)] += sign * coef;
        first = false;
    }
    return lhs;
}

}  // namespace

LinearConstraint parse_constraint(std::string_view line) {
    auto hash = line.find('#');
    std::string note;
    if (hash != std::string_view::npos) {
        note = std::string(trim(line.substr(hash + 1)));
        line = line.substr(0, hash);
    }
    line = trim(line);
    bool flagged = false;
    const std::string_view tag = "[removable]";
    if (line.size() >= tag.size() && line.substr(line.size() - tag.size()) == tag) {
        flagged = true;
        line = trim(line.substr(0, line.size() - tag.size()));
    }
    Relation rel;
    std::size_t at, width = 2;
    if ((at = line.find("<=")) != std::string_view::npos)
        rel = Relation::LE;
    else if ((at = line.find(">=")) != std::string_view::npos)
        rel = Relation::GE;
    else if ((at = line.find('=')) != std::string_view::npos)
        rel = Relation::EQ, width = 1;
    else
        throw std::invalid_argument("no relation ('<=', '>=' or '=')");
    LinearConstraint c;
    c.lhs = parse_lhs(line.substr(0, at));
    c.rel = rel;
    c.rhs = parse_expr(line.substr(at + width));
    c.flagged = flagged;
    c.note = note;
    return c;
}

LinearSystem parse_system(std::string_view text) {
    LinearSystem s;
    int no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(pos, nl - pos);
        ++no;
        pos = nl + 1;
        auto body = trim(line.substr(0, line.find('#')));
        if (body.empty()) {
            if (nl == text.size()) break;
            continue;
        }
        try {
            auto c = parse_constraint(line);
            s.add(c);
        } catch (const std::exception& e) {
            throw ParseError(no, e.what());
        }
        if (nl == text.size()) break;
    }
    return s;
}

}  // namespace rr
