#include "priccati/matrix_fp.hpp"

#include "priccati/error.hpp"

namespace priccati {

namespace {

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p)
{
    std::uint64_t r = 1;
    std::uint64_t e = p - 2;
    a %= p;
    while (e != 0) {
        if (e & 1U) {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1U;
    }
    return r;
}

} // namespace

MatrixFp::MatrixFp(std::uint64_t p_, std::size_t rows_, std::size_t cols_)
    : p(p_), rows(rows_), cols(cols_), entries(rows_ * cols_, 0)
{
}

MatrixFp MatrixFp::identity(std::uint64_t p, std::size_t n)
{
    MatrixFp m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = 1;
    }
    return m;
}

std::vector<std::uint64_t> MatrixFp::apply(std::span<const std::uint64_t> x) const
{
    if (x.size() != cols) {
        throw InputError("matrix-vector product: dimension mismatch");
    }
    std::vector<std::uint64_t> out(rows, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < cols; ++j) {
            acc = (acc + at(i, j) * x[j]) % p;
        }
        out[i] = acc;
    }
    return out;
}

MatrixFp MatrixFp::operator*(const MatrixFp& other) const
{
    if (cols != other.rows || p != other.p) {
        throw InputError("matrix product: dimension mismatch");
    }
    MatrixFp out(p, rows, other.cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < cols; ++k) {
            const std::uint64_t a = at(i, k);
            if (a == 0) {
                continue;
            }
            for (std::size_t j = 0; j < other.cols; ++j) {
                out.at(i, j) = (out.at(i, j) + a * other.at(k, j)) % p;
            }
        }
    }
    return out;
}

MatrixFp MatrixFp::operator-(const MatrixFp& other) const
{
    if (rows != other.rows || cols != other.cols || p != other.p) {
        throw InputError("matrix difference: dimension mismatch");
    }
    MatrixFp out(p, rows, cols);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        out.entries[i] = (entries[i] + p - other.entries[i]) % p;
    }
    return out;
}

FpSolveResult solve_fp(const MatrixFp& m, std::span<const std::uint64_t> v)
{
    if (v.size() != m.rows) {
        throw InputError("solve_fp: right-hand side has wrong length");
    }
    const std::uint64_t p = m.p;
    const std::size_t rows = m.rows;
    const std::size_t cols = m.cols;
    const std::size_t width = cols + 1;
    std::vector<std::uint64_t> a(rows * width);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            a[i * width + j] = m.at(i, j) % p;
        }
        a[i * width + cols] = v[i] % p;
    }

    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv * width + c] == 0) {
            ++piv;
        }
        if (piv == rows) {
            continue;
        }
        if (piv != r) {
            for (std::size_t j = c; j < width; ++j) {
                std::swap(a[piv * width + j], a[r * width + j]);
            }
        }
        const std::uint64_t s = inv_mod(a[r * width + c], p);
        for (std::size_t j = c; j < width; ++j) {
            a[r * width + j] = a[r * width + j] * s % p;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) {
                continue;
            }
            const std::uint64_t f = a[i * width + c];
            if (f == 0) {
                continue;
            }
            const std::uint64_t nf = p - f;
            for (std::size_t j = c; j < width; ++j) {
                a[i * width + j] = (a[i * width + j] + nf * a[r * width + j]) % p;
            }
        }
        pivot_cols.push_back(c);
        ++r;
    }

    FpSolveResult result;
    result.rank = r;

    bool consistent = true;
    for (std::size_t i = r; i < rows; ++i) {
        if (a[i * width + cols] != 0) {
            consistent = false;
            break;
        }
    }
    if (consistent) {
        std::vector<std::uint64_t> x(cols, 0);
        for (std::size_t k = 0; k < pivot_cols.size(); ++k) {
            x[pivot_cols[k]] = a[k * width + cols];
        }
        result.solution = std::move(x);
    }

    std::vector<bool> is_pivot(cols, false);
    for (const std::size_t c : pivot_cols) {
        is_pivot[c] = true;
    }
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        std::vector<std::uint64_t> k(cols, 0);
        k[f] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
            k[pivot_cols[i]] = (p - a[i * width + f]) % p;
        }
        result.kernel.push_back(std::move(k));
    }
    return result;
}

} // namespace priccati
