#pragma once
#include "rr/rational.hpp"

#include <vector>

namespace rr {

// Does A x = b have a solution with x >= 0? Exact phase-1 simplex, Bland's rule.
bool exact_feasible(std::vector<std::vector<Rational>> A, std::vector<Rational> b);

// Rank of a small dense rational matrix.
int exact_rank(std::vector<std::vector<Rational>> M);

}  // namespace rr
