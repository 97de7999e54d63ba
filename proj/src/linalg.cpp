#include "priccati/linalg.hpp"

#include "priccati/error.hpp"

namespace priccati {

MatrixRat::MatrixRat(FieldPtr field_, std::size_t rows_, std::size_t cols_)
    : field(std::move(field_)), rows(rows_), cols(cols_), entries(rows_ * cols_, RatFunc(field))
{
}

std::vector<RatFunc> MatrixRat::apply(const std::vector<RatFunc>& x) const
{
    if (x.size() != cols) {
        throw InputError("matrix-vector product: dimension mismatch");
    }
    std::vector<RatFunc> out(rows, RatFunc(field));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (!at(i, j).is_zero() && !x[j].is_zero()) {
                out[i] += at(i, j) * x[j];
            }
        }
    }
    return out;
}

RatSolveResult solve_fqx(const MatrixRat& m, const std::vector<RatFunc>& v)
{
    if (v.size() != m.rows) {
        throw InputError("solve_fqx: right-hand side has wrong length");
    }
    const std::size_t rows = m.rows;
    const std::size_t cols = m.cols;
    const std::size_t width = cols + 1;
    std::vector<RatFunc> a;
    a.reserve(rows * width);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            a.push_back(m.at(i, j));
        }
        a.push_back(v[i]);
    }

    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv * width + c].is_zero()) {
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
        const RatFunc s = a[r * width + c].inverse();
        for (std::size_t j = c; j < width; ++j) {
            if (!a[r * width + j].is_zero()) {
                a[r * width + j] *= s;
            }
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i * width + c].is_zero()) {
                continue;
            }
            const RatFunc f = a[i * width + c];
            for (std::size_t j = c; j < width; ++j) {
                if (!a[r * width + j].is_zero()) {
                    a[i * width + j] -= f * a[r * width + j];
                }
            }
        }
        pivot_cols.push_back(c);
        ++r;
    }

    RatSolveResult result;
    result.rank = r;
    bool consistent = true;
    for (std::size_t i = r; i < rows; ++i) {
        if (!a[i * width + cols].is_zero()) {
            consistent = false;
            break;
        }
    }
    if (consistent) {
        std::vector<RatFunc> x(cols, RatFunc(m.field));
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
        std::vector<RatFunc> k(cols, RatFunc(m.field));
        k[f] = RatFunc::constant(m.field, m.field->one());
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
            k[pivot_cols[i]] = -a[i * width + f];
        }
        result.kernel.push_back(std::move(k));
    }
    return result;
}

} // namespace priccati
