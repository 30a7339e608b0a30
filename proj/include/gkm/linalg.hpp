#pragma once

#include "gkm/numeric.hpp"

#include <vector>

namespace gkm {

// Exact Gaussian elimination with the deterministic pivot rule: first
// nonzero entry in row-major order.
struct LinearSolution {
    enum class Kind { Unique, Inconsistent, Underdetermined } kind;
    RatVec solution;       // Unique: the solution; Underdetermined: free vars at 0
    std::vector<RatVec> nullspace;  // Underdetermined: basis, one per free column
    std::vector<int> free_columns;
    int witness_row = -1;  // Inconsistent: index of a row reduced to 0 = nonzero
};

LinearSolution solve_rational(RatMat a, RatVec b);

// Basis of {x : a x = 0}, one vector per free column, deterministic.
std::vector<RatVec> rational_nullspace(RatMat a);

int rational_rank(RatMat a);

}  // namespace gkm
