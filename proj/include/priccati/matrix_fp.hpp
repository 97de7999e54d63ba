#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace priccati {

// Dense row-major matrix over the prime field F_p.
struct MatrixFp {
    std::uint64_t p = 2;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint64_t> entries;

    MatrixFp() = default;
    MatrixFp(std::uint64_t p, std::size_t rows, std::size_t cols);
    static MatrixFp identity(std::uint64_t p, std::size_t n);

    std::uint64_t& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    std::uint64_t at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    std::vector<std::uint64_t> apply(std::span<const std::uint64_t> x) const;
    MatrixFp operator*(const MatrixFp& other) const;
    MatrixFp operator-(const MatrixFp& other) const;
};

struct FpSolveResult {
    std::optional<std::vector<std::uint64_t>> solution;
    std::vector<std::vector<std::uint64_t>> kernel;
    std::size_t rank = 0;
};

// Solves M x = v by Gauss-Jordan elimination. The pivot of each column is the
// first nonzero entry at or below the current row; free variables are set to
// zero in the particular solution.
FpSolveResult solve_fp(const MatrixFp& m, std::span<const std::uint64_t> v);

} // namespace priccati
