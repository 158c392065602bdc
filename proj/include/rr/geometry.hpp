#pragma once
#include "rr/gaussian.hpp"
#include "rr/polygon.hpp"
#include "rr/templates.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace rr {

// Numeric region of one template at one split. A label map, when given, is applied to every
// right-hand side before evaluation.
RatePolygon region_at(const GaussianScenario& scn, const PowerSplit& split, TemplateId id, bool drop_flagged = true,
                      const Substitution* sigma = nullptr);
// Same, for an arbitrary two-rate system.
RatePolygon region_at(const GaussianScenario& scn, const PowerSplit& split, const LinearSystem& system,
                      const Substitution* sigma = nullptr);
LinearSystem numeric_template(TemplateId id, bool drop_flagged);  // HK_REGION, SUP_REGION or EXT_REGION

struct SweepSpec {
    int units = 8;          // lattice resolution: each user's power is split in units/`units` steps
    int refinements = 200;  // Nelder-Mead runs, one per support direction
    int max_iterations = 400;
    bool drop_flagged = true;
    bool include_face = true;  // GF templates also sweep the no-feedback face under HK_REGION
    unsigned threads = 0;      // 0: hardware concurrency, capped by RATE_REGIONS_THREADS
    std::uint64_t seed = 0;    // perturbs the initial simplex size only
};

struct SweepStats {
    std::size_t lattice_points = 0;
    std::size_t evaluations = 0;
};

// Convex hull of the regions over the lattice plus refinements; deterministic for a given spec.
RatePolygon sweep_union(const GaussianScenario& scn, TemplateId id, const SweepSpec& spec = {},
                        SweepStats* stats = nullptr);

// Down-closed convex hull of the points (origin and axis projections added), CCW from the origin.
RatePolygon dominated_hull(const std::vector<Point>& pts, const std::vector<std::optional<PowerSplit>>& prov = {});

struct RegionMetrics {
    double max_r1 = 0, max_r2 = 0, max_sum = 0, symmetric_rate = 0;
};
RegionMetrics metrics(const RatePolygon& p);  // throws std::invalid_argument on an empty polygon

// Every vertex of `inner` is dominated by the hull of `outer`, within tol.
bool contains(const RatePolygon& outer, const RatePolygon& inner, double tol);
bool contains_point(const RatePolygon& outer, const Point& v, double tol);

unsigned worker_count(unsigned requested);

// Simplex search for a minimum; deterministic.
std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                                double step, int max_iterations);

}  // namespace rr
