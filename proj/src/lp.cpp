#include "rr/lp.hpp"

#include <cstddef>

namespace rr {

bool exact_feasible(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
    const std::size_t m = A.size();
    if (m == 0) return true;
    const std::size_t n = A[0].size();
    for (std::size_t i = 0; i < m; ++i)
        if (b[i] < 0) {
            b[i] = -b[i];
            for (auto& v : A[i]) v = -v;
        }
    // Artificial columns are not stored: once an artificial leaves the basis it never returns.
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
    std::vector<Rational> cost(n, 0);
    Rational value = 0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (A[i][j] != 0) cost[j] -= A[i][j];
        value -= b[i];
    }
    while (true) {
        if (value == 0) return true;
        std::size_t enter = n;
        for (std::size_t j = 0; j < n; ++j)
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        if (enter == n) return false;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (A[i][enter] <= 0) continue;
            Rational ratio = b[i] / A[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) return false;  // cannot happen in phase 1, the objective is bounded
        Rational piv = A[leave][enter];
        for (auto& v : A[leave])
            if (v != 0) v /= piv;
        b[leave] /= piv;
        const auto& prow = A[leave];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < n; ++j)
            if (prow[j] != 0) nz.push_back(j);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || A[i][enter] == 0) continue;
            Rational f = A[i][enter];
            for (std::size_t j : nz) A[i][j] -= f * prow[j];
            b[i] -= f * b[leave];
        }
        if (cost[enter] != 0) {
            Rational f = cost[enter];
            for (std::size_t j : nz) cost[j] -= f * prow[j];
            value -= f * b[leave];
        }
        basis[leave] = enter;
    }
}

int exact_rank(std::vector<std::vector<Rational>> M) {
    if (M.empty()) return 0;
    const std::size_t rows = M.size(), cols = M[0].size();
    int rank = 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && M[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(M[p], M[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (M[i][c] == 0) continue;
            Rational f = M[i][c] / M[r][c];
            for (std::size_t j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
        }
        ++r;
        ++rank;
    }
    return rank;
}

}  // namespace rr
