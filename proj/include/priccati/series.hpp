#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "priccati/finite_field.hpp"
#include "priccati/poly.hpp"

namespace priccati {

// Truncated Laurent series sum_{k < precision} c_k t^k over a finite field.
// Coefficients are stored from the valuation onwards; a series with no
// nonzero coefficient below its precision is "zero to precision" and reports
// its precision as valuation.
class LaurentSeries {
public:
    // Precision used for exactly known series (polynomials).
    static constexpr int kExact = 1 << 28;

    LaurentSeries() = default;
    LaurentSeries(FieldPtr field, int offset, std::vector<FqElem> coeffs, int precision);

    static LaurentSeries zero(const FieldPtr& field, int precision);
    static LaurentSeries monomial(const FieldPtr& field, FqElem c, int exponent, int precision = kExact);
    // p(t) * t^shift, exact.
    static LaurentSeries from_poly(const Poly& p, int shift = 0);

    const FieldPtr& field() const { return field_; }
    int precision() const { return precision_; }
    bool is_exact() const { return precision_ >= kExact / 2; }
    bool is_zero() const { return coeffs_.empty(); }
    int valuation() const { return coeffs_.empty() ? precision_ : offset_; }
    const std::vector<FqElem>& coeffs() const { return coeffs_; }
    // Coefficient of t^e; throws PrecisionError when e >= precision.
    FqElem coeff(int e) const;
    FqElem leading() const;

    LaurentSeries operator-() const;
    LaurentSeries& operator+=(const LaurentSeries& o);
    LaurentSeries& operator-=(const LaurentSeries& o);
    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b);

    LaurentSeries inverse() const;
    LaurentSeries scaled(FqElem c) const;
    // Multiplication by t^k.
    LaurentSeries shifted(int k) const;
    LaurentSeries truncated(int precision) const;
    LaurentSeries pow(std::uint64_t e) const;
    // d/dt
    LaurentSeries derivative() const;
    // Coefficientwise Frobenius together with t -> t^p, i.e. the p-th power.
    LaurentSeries frobenius() const;
    LaurentSeries mapped(const Embedding& e) const;
    // Equality of all coefficients below the smaller precision.
    bool agrees_with(const LaurentSeries& o) const;

    std::string to_string(const std::string& var = "t") const;

private:
    void normalize();

    FieldPtr field_;
    int offset_ = 0;
    std::vector<FqElem> coeffs_;
    int precision_ = 0;
};

} // namespace priccati
