#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "priccati/ratfunc.hpp"

namespace priccati {

// Dense row-major matrix over F_q(x).
struct MatrixRat {
    FieldPtr field;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<RatFunc> entries;

    MatrixRat() = default;
    MatrixRat(FieldPtr field, std::size_t rows, std::size_t cols);

    RatFunc& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const RatFunc& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    std::vector<RatFunc> apply(const std::vector<RatFunc>& x) const;
};

struct RatSolveResult {
    std::optional<std::vector<RatFunc>> solution;
    std::vector<std::vector<RatFunc>> kernel;
    std::size_t rank = 0;
};

// Exact Gauss-Jordan elimination over F_q(x) with the same pivoting rule as
// solve_fp.
RatSolveResult solve_fqx(const MatrixRat& m, const std::vector<RatFunc>& v);

} // namespace priccati
