#include "gkm/linalg.hpp"

#include <stdexcept>

namespace gkm {

namespace {

// Row-reduce [a | b]; returns pivot column per row (-1 for zero rows).
// b may be empty (homogeneous use).
std::vector<int> reduce(RatMat& a, RatVec* b) {
    const size_t rows = a.size();
    const size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<int> pivot_col(rows, -1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        if (b) std::swap((*b)[p], (*b)[r]);
        const Rat inv = a[r][c];
        for (size_t j = c; j < cols; ++j) a[r][j] /= inv;
        if (b) (*b)[r] /= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rat factor = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= factor * a[r][j];
            if (b) (*b)[i] -= factor * (*b)[r];
        }
        pivot_col[r] = static_cast<int>(c);
        ++r;
    }
    return pivot_col;
}

}  // namespace

LinearSolution solve_rational(RatMat a, RatVec b) {
    if (a.size() != b.size()) throw std::invalid_argument("solve_rational: dimension mismatch");
    const size_t cols = a.empty() ? 0 : a[0].size();
    for (const auto& row : a)
        if (row.size() != cols) throw std::invalid_argument("solve_rational: ragged matrix");

    LinearSolution out;
    std::vector<int> pivot_col = reduce(a, &b);

    for (size_t i = 0; i < a.size(); ++i) {
        if (pivot_col[i] == -1 && b[i] != 0) {
            out.kind = LinearSolution::Kind::Inconsistent;
            out.witness_row = static_cast<int>(i);
            return out;
        }
    }

    std::vector<bool> is_pivot(cols, false);
    for (int pc : pivot_col)
        if (pc >= 0) is_pivot[pc] = true;

    out.solution.assign(cols, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        if (pivot_col[i] >= 0) out.solution[pivot_col[i]] = b[i];

    for (size_t c = 0; c < cols; ++c)
        if (!is_pivot[c]) out.free_columns.push_back(static_cast<int>(c));

    if (out.free_columns.empty()) {
        out.kind = LinearSolution::Kind::Unique;
        return out;
    }

    out.kind = LinearSolution::Kind::Underdetermined;
    for (int fc : out.free_columns) {
        RatVec v(cols, Rat(0));
        v[fc] = 1;
        for (size_t i = 0; i < a.size(); ++i)
            if (pivot_col[i] >= 0) v[pivot_col[i]] = -a[i][fc];
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

std::vector<RatVec> rational_nullspace(RatMat a) {
    const size_t cols = a.empty() ? 0 : a[0].size();
    std::vector<int> pivot_col = reduce(a, nullptr);
    std::vector<bool> is_pivot(cols, false);
    for (int pc : pivot_col)
        if (pc >= 0) is_pivot[pc] = true;
    std::vector<RatVec> basis;
    for (size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        RatVec v(cols, Rat(0));
        v[c] = 1;
        for (size_t i = 0; i < a.size(); ++i)
            if (pivot_col[i] >= 0) v[pivot_col[i]] = -a[i][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

int rational_rank(RatMat a) {
    std::vector<int> pivot_col = reduce(a, nullptr);
    int r = 0;
    for (int pc : pivot_col)
        if (pc >= 0) ++r;
    return r;
}

}  // namespace gkm
