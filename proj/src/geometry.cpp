#include "rr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace rr {

LinearSystem numeric_template(TemplateId id, bool drop_flagged) {
    if (id != TemplateId::HK_REGION && id != TemplateId::SUP_REGION && id != TemplateId::EXT_REGION)
        throw std::invalid_argument("numeric regions exist for HK_REGION, SUP_REGION and EXT_REGION only");
    LinearSystem s = id == TemplateId::HK_REGION ? hk_region(hk_ingredients(), true) : build(id);
    if (!drop_flagged) return s;
    LinearSystem out;
    for (const auto& c : s.constraints())
        if (!c.flagged) out.add(c);
    return out;
}

RatePolygon region_at(const GaussianScenario& scn, const PowerSplit& split, const LinearSystem& system,
                      const Substitution* sigma) {
    TermCache cache(scn, split);
    auto bind = [&](const InfoExpr& e) { return sigma ? cache(substitute(e, *sigma)) : cache(e); };
    RatePolygon p = numeric_vertices_2d(system, bind);
    p.provenance.assign(p.vertices.size(), split);
    return p;
}

RatePolygon region_at(const GaussianScenario& scn, const PowerSplit& split, TemplateId id, bool drop_flagged,
                      const Substitution* sigma) {
    return region_at(scn, split, numeric_template(id, drop_flagged), sigma);
}

// ---------------------------------------------------------------------------

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
    return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

}  // namespace

RatePolygon dominated_hull(const std::vector<Point>& pts, const std::vector<std::optional<PowerSplit>>& prov) {
    struct Cand {
        Point p;
        std::optional<PowerSplit> src;
        std::size_t order;
    };
    // Only Pareto-maximal points and the three corners can be vertices; projections onto the
    // axes would otherwise make near-vertical triples that the turn test mistakes for collinear.
    std::vector<Cand> all;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Point p{std::max(0.0, pts[i].r1), std::max(0.0, pts[i].r2)};
        all.push_back({p, i < prov.size() ? prov[i] : std::nullopt, i + 3});
    }
    std::stable_sort(all.begin(), all.end(), [](const Cand& a, const Cand& b) {
        if (a.p.r1 != b.p.r1) return a.p.r1 > b.p.r1;
        return a.p.r2 > b.p.r2;
    });
    std::vector<Cand> c;
    double top = -1, r1max = 0, r2max = 0;
    for (const auto& x : all) {
        r1max = std::max(r1max, x.p.r1);
        r2max = std::max(r2max, x.p.r2);
        if (x.p.r2 > top) {
            top = x.p.r2;
            c.push_back(x);
        }
    }
    c.push_back({{0, 0}, std::nullopt, 0});
    c.push_back({{r1max, 0}, std::nullopt, 1});
    c.push_back({{0, r2max}, std::nullopt, 2});
    std::stable_sort(c.begin(), c.end(), [](const Cand& a, const Cand& b) {
        if (a.p.r1 != b.p.r1) return a.p.r1 < b.p.r1;
        if (a.p.r2 != b.p.r2) return a.p.r2 < b.p.r2;
        // a point with a source beats a bare corner at the same place
        if (a.src.has_value() != b.src.has_value()) return a.src.has_value();
        return a.order < b.order;
    });
    std::vector<Cand> u;
    for (const auto& x : c)
        if (u.empty() || std::abs(u.back().p.r1 - x.p.r1) > 1e-12 || std::abs(u.back().p.r2 - x.p.r2) > 1e-12)
            u.push_back(x);
    std::vector<Cand> h;
    if (u.size() <= 2) {
        h = u;
    } else {
        // Exact turn test: clusters of refined points span ~1e-8, where any absolute tolerance is too coarse.
        const double eps = 0;
        std::vector<Cand> lower, upper;
        for (const auto& x : u) {
            while (lower.size() >= 2 && cross(lower[lower.size() - 2].p, lower.back().p, x.p) <= eps) lower.pop_back();
            lower.push_back(x);
        }
        for (auto it = u.rbegin(); it != u.rend(); ++it) {
            while (upper.size() >= 2 && cross(upper[upper.size() - 2].p, upper.back().p, it->p) <= eps)
                upper.pop_back();
            upper.push_back(*it);
        }
        lower.pop_back();
        upper.pop_back();
        h = lower;
        h.insert(h.end(), upper.begin(), upper.end());
    }
    auto o = std::find_if(h.begin(), h.end(), [](const Cand& x) { return x.p.r1 == 0 && x.p.r2 == 0; });
    if (o != h.end()) std::rotate(h.begin(), o, h.end());
    RatePolygon out;
    for (const auto& x : h) {
        out.vertices.push_back(x.p);
        out.provenance.push_back(x.src);
    }
    return out;
}

bool contains_point(const RatePolygon& outer, const Point& v0, double tol) {
    if (outer.empty()) return false;
    Point v{std::max(0.0, v0.r1), std::max(0.0, v0.r2)};
    const auto& P = outer.vertices;
    if (P.size() < 3) {
        double mx = 0, my = 0;
        for (const auto& p : P) {
            mx = std::max(mx, p.r1);
            my = std::max(my, p.r2);
        }
        return v.r1 <= mx + tol && v.r2 <= my + tol;
    }
    for (std::size_t i = 0; i < P.size(); ++i) {
        const Point& a = P[i];
        const Point& b = P[(i + 1) % P.size()];
        double len = std::hypot(b.r1 - a.r1, b.r2 - a.r2);
        if (len == 0) continue;
        if (cross(a, b, v) < -tol * len) return false;
    }
    return true;
}

bool contains(const RatePolygon& outer, const RatePolygon& inner, double tol) {
    for (const auto& v : inner.vertices)
        if (!contains_point(outer, v, tol)) return false;
    return true;
}

RegionMetrics metrics(const RatePolygon& p) {
    if (p.empty()) throw std::invalid_argument("metrics of an empty region");
    RegionMetrics m;
    for (const auto& v : p.vertices) {
        m.max_r1 = std::max(m.max_r1, v.r1);
        m.max_r2 = std::max(m.max_r2, v.r2);
        m.max_sum = std::max(m.max_sum, v.r1 + v.r2);
    }
    const auto& P = p.vertices;
    if (P.size() >= 3) {
        double t = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < P.size(); ++i) {
            const Point& a = P[i];
            const Point& b = P[(i + 1) % P.size()];
            // outward normal of a CCW edge
            double nx = b.r2 - a.r2, ny = a.r1 - b.r1;
            double along = nx + ny;
            if (along <= 1e-15) continue;
            t = std::min(t, (nx * a.r1 + ny * a.r2) / along);
        }
        m.symmetric_rate = std::isfinite(t) ? std::max(0.0, t) : 0.0;
    }
    return m;
}

unsigned worker_count(unsigned requested) {
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("RATE_REGIONS_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return std::max(1u, n);
}

std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                                double step, int max_iterations) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> s(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) s[i + 1][i] += step;
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(s[i]);
    std::vector<std::size_t> idx(n + 1);
    for (int it = 0; it < max_iterations; ++it) {
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> f2;
        for (auto i : idx) {
            s2.push_back(s[i]);
            f2.push_back(fv[i]);
        }
        s = std::move(s2);
        fv = std::move(f2);
        if (std::abs(fv[n] - fv[0]) < 1e-13) break;
        std::vector<double> c(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) c[j] += s[i][j] / n;
        auto along = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t j = 0; j < n; ++j) x[j] = c[j] + t * (s[n][j] - c[j]);
            return x;
        };
        auto xr = along(-1.0);
        double fr = f(xr);
        if (fr < fv[0]) {
            auto xe = along(-2.0);
            double fe = f(xe);
            if (fe < fr) {
                s[n] = xe;
                fv[n] = fe;
            } else {
                s[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            s[n] = xr;
            fv[n] = fr;
        } else {
            auto xc = fr < fv[n] ? along(-0.5) : along(0.5);
            double fc = f(xc);
            if (fc < std::min(fr, fv[n])) {
                s[n] = xc;
                fv[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) s[i][j] = s[0][j] + 0.5 * (s[i][j] - s[0][j]);
                    fv[i] = f(s[i]);
                }
            }
        }
    }
    std::size_t best = std::min_element(fv.begin(), fv.end()) - fv.begin();
    return s[best];
}

// ---------------------------------------------------------------------------
// Sweeps

namespace {

// Box of one sweep: full GF split (alpha^2, 10c, 10n, 11n per user) or the no-feedback face (10n, 11n).
struct Box {
    bool face = false;
    int parts() const { return face ? 2 : 4; }
};

std::vector<std::vector<int>> compositions(int units, int parts) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(parts, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == parts - 1) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int k = left; k >= 0; --k) {
            cur[pos] = k;
            rec(pos + 1, left - k);
        }
    };
    rec(0, units);
    return out;
}

PowerSplit make_split(const GaussianScenario& scn, const Box& box, const std::vector<double>& w1,
                      const std::vector<double>& w2) {
    PowerSplit p;
    if (box.face) {
        p.var_10n = w1[0];
        p.var_11n = w1[1];
        p.var_20n = w2[0];
        p.var_22n = w2[1];
        return p;
    }
    p.alpha1 = cplx(std::sqrt(w1[0]), 0.0);
    // align h31 a1 + h32 a2 to be real-positive
    double phase = std::abs(scn.h32) > 0 ? -std::arg(scn.h32) : 0.0;
    if (scn.h31 < 0) phase += M_PI;
    p.alpha2 = std::polar(std::sqrt(w2[0]), phase);
    p.var_10c = w1[1];
    p.var_10n = w1[2];
    p.var_11n = w1[3];
    p.var_20c = w2[1];
    p.var_20n = w2[2];
    p.var_22n = w2[3];
    return p;
}

std::vector<double> normalized(const double* z, int k, double P) {
    double t = 0;
    for (int i = 0; i < k; ++i) t += z[i] * z[i];
    std::vector<double> w(k, 0.0);
    if (t <= 0) return w;
    for (int i = 0; i < k; ++i) w[i] = P * z[i] * z[i] / t;
    return w;
}

struct Evaluated {
    RatePolygon poly;
    PowerSplit split;
};

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, n))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += threads) body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

double support(const RatePolygon& p, double dx, double dy) {
    double best = 0;
    for (const auto& v : p.vertices) best = std::max(best, dx * v.r1 + dy * v.r2);
    return best;
}

// Lattice plus refinement over one box; appends candidate points in a fixed order.
void sweep_box(const GaussianScenario& scn, const LinearSystem& system, const Box& box, const SweepSpec& spec,
               unsigned threads, std::vector<Point>& pts, std::vector<std::optional<PowerSplit>>& prov,
               SweepStats& stats) {
    const int k = box.parts();
    const auto comps = compositions(spec.units, k);
    const std::size_t nc = comps.size(), n = nc * nc;
    std::vector<Evaluated> grid(n);
    auto weights = [&](const std::vector<int>& c, double P) {
        std::vector<double> w(k);
        for (int i = 0; i < k; ++i) w[i] = P * c[i] / spec.units;
        return w;
    };
    parallel_for(n, threads, [&](std::size_t i) {
        PowerSplit s = make_split(scn, box, weights(comps[i / nc], scn.P1), weights(comps[i % nc], scn.P2));
        grid[i] = {region_at(scn, s, system), s};
    });
    stats.lattice_points += n;
    stats.evaluations += n;
    for (const auto& g : grid)
        for (std::size_t v = 0; v < g.poly.vertices.size(); ++v) {
            pts.push_back(g.poly.vertices[v]);
            prov.push_back(g.split);
        }

    const int R = spec.refinements;
    std::vector<Evaluated> refined(R);
    std::vector<std::size_t> evals(R, 0);
    const double step = 0.25 * (1.0 + static_cast<double>(spec.seed % 7) / 7.0);
    parallel_for(static_cast<std::size_t>(R), threads, [&](std::size_t r) {
        const double th = (r + 0.5) / R * M_PI / 2;
        const double dx = std::cos(th), dy = std::sin(th);
        std::size_t seed = 0;
        double best = -1;
        for (std::size_t i = 0; i < n; ++i) {
            double s = support(grid[i].poly, dx, dy);
            if (s > best + 1e-15) {
                best = s;
                seed = i;
            }
        }
        std::vector<double> z0(2 * k);
        for (int i = 0; i < k; ++i) {
            z0[i] = std::sqrt(static_cast<double>(comps[seed / nc][i]) / spec.units);
            z0[k + i] = std::sqrt(static_cast<double>(comps[seed % nc][i]) / spec.units);
        }
        auto to_split = [&](const std::vector<double>& z) {
            return make_split(scn, box, normalized(z.data(), k, scn.P1), normalized(z.data() + k, k, scn.P2));
        };
        auto f = [&](const std::vector<double>& z) {
            ++evals[r];
            return -support(region_at(scn, to_split(z), system), dx, dy);
        };
        auto z = nelder_mead(f, z0, step, spec.max_iterations);
        PowerSplit s = to_split(z);
        refined[r] = {region_at(scn, s, system), s};
    });
    for (const auto& g : refined) {
        for (std::size_t v = 0; v < g.poly.vertices.size(); ++v) {
            pts.push_back(g.poly.vertices[v]);
            prov.push_back(g.split);
        }
    }
    for (auto e : evals) stats.evaluations += e + 1;
}

}  // namespace

RatePolygon sweep_union(const GaussianScenario& scn, TemplateId id, const SweepSpec& spec, SweepStats* stats) {
    if (spec.units < 1) throw std::invalid_argument("sweep lattice needs at least one power unit");
    if (spec.refinements < 0 || spec.max_iterations < 0) throw std::invalid_argument("negative refinement budget");
    const unsigned threads = worker_count(spec.threads);
    std::vector<Point> pts;
    std::vector<std::optional<PowerSplit>> prov;
    SweepStats st;
    if (id == TemplateId::HK_REGION) {
        sweep_box(scn, numeric_template(id, spec.drop_flagged), Box{true}, spec, threads, pts, prov, st);
    } else {
        sweep_box(scn, numeric_template(id, spec.drop_flagged), Box{false}, spec, threads, pts, prov, st);
        if (spec.include_face)
            sweep_box(scn, numeric_template(TemplateId::HK_REGION, spec.drop_flagged), Box{true}, spec, threads, pts,
                      prov, st);
    }
    if (stats) *stats = st;
    return dominated_hull(pts, prov);
}

}  // namespace rr
