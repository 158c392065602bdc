#pragma once
#include "rr/model.hpp"

#include <optional>
#include <vector>

namespace rr {

struct Point {
    double r1 = 0, r2 = 0;
};

// Convex region in the (R1, R2) quadrant, vertices counter-clockwise. Membership means
// "dominated by some point of the hull".
struct RatePolygon {
    std::vector<Point> vertices;
    // Same length as vertices when present.
    std::vector<std::optional<PowerSplit>> provenance;

    bool empty() const { return vertices.empty(); }
};

}  // namespace rr
