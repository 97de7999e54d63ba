#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "priccati/bivariate.hpp"
#include "priccati/ratfunc.hpp"

namespace priccati {

class CurveField;
using CurvePtr = std::shared_ptr<const CurveField>;

// Element of K_N = F_q(x)[a], N_*(x, a) = 0, as coordinates on 1, a, ..., a^{d_y-1}.
class FFElem {
public:
    FFElem() = default;
    FFElem(CurvePtr curve, std::vector<RatFunc> coords);

    const CurvePtr& curve() const { return curve_; }
    const std::vector<RatFunc>& coords() const { return coords_; }
    const RatFunc& coord(std::size_t i) const { return coords_.at(i); }
    bool is_zero() const;

    FFElem operator-() const;
    FFElem& operator+=(const FFElem& o);
    FFElem& operator-=(const FFElem& o);
    friend FFElem operator+(FFElem a, const FFElem& b) { return a += b; }
    friend FFElem operator-(FFElem a, const FFElem& b) { return a -= b; }
    friend FFElem operator*(const FFElem& a, const FFElem& b);
    friend FFElem operator/(const FFElem& a, const FFElem& b);
    friend bool operator==(const FFElem& a, const FFElem& b) { return a.coords_ == b.coords_; }

    FFElem scaled(const RatFunc& c) const;
    FFElem inverse() const;
    FFElem pow(std::uint64_t e) const;

    // Least common monic denominator of the coordinates.
    Poly common_denominator() const;
    // max over i of deg(D) and deg(D f_i) with D the common denominator.
    int coefficient_degree() const;
    std::string to_string() const;

private:
    CurvePtr curve_;
    std::vector<RatFunc> coords_;
};

// The function field defined by an irreducible separable N_*(x, Y).
class CurveField : public std::enable_shared_from_this<CurveField> {
public:
    // Validates and builds the field: the content in x is removed, and N_* must
    // have positive Y-degree, nonzero discriminant and be irreducible over F_q(x).
    static CurvePtr create(const BivPoly& nstar, std::uint64_t seed = 0);

    const FieldPtr& base() const { return base_; }
    std::uint64_t p() const { return base_->characteristic(); }
    const BivPoly& nstar() const { return nstar_; }
    int dx() const { return nstar_.degree_x(); }
    int dy() const { return nstar_.degree_y(); }
    const Poly& disc() const { return disc_; }
    const Poly& lc() const { return nstar_.leading(); }
    std::uint64_t seed() const { return seed_; }

    FFElem zero() const;
    FFElem one() const;
    FFElem x() const;
    FFElem a() const;
    FFElem from_ratfunc(const RatFunc& r) const;
    FFElem from_poly_in_a(const std::vector<RatFunc>& coeffs) const;
    // y_N = a^p.
    FFElem y_n() const;
    // a' = -N_x(x, a) / N_Y(x, a).
    FFElem a_prime() const;
    // Coordinates of a^k for k < 2 d_y.
    const std::vector<RatFunc>& power_of_a(std::size_t k) const { return a_powers_.at(k); }
    // Coordinates of (a^p)^i for i < d_y.
    const std::vector<RatFunc>& frobenius_of_power(std::size_t i) const { return frob_powers_.at(i); }
    // Evaluates a bivariate polynomial at (x, a).
    FFElem evaluate(const BivPoly& g) const;

    CurveField(FieldPtr base, BivPoly nstar, Poly disc, std::uint64_t seed);

private:
    std::vector<RatFunc> reduce(std::vector<RatFunc> poly_in_a) const;
    std::vector<RatFunc> multiply(const std::vector<RatFunc>& u, const std::vector<RatFunc>& v) const;
    void init();

    friend class FFElem;
    friend FFElem operator*(const FFElem& a, const FFElem& b);

    FieldPtr base_;
    BivPoly nstar_;
    Poly disc_;
    std::uint64_t seed_;
    std::vector<std::vector<RatFunc>> a_powers_;
    std::vector<RatFunc> a_prime_;
    std::vector<RatFunc> y_n_;
    std::vector<std::vector<RatFunc>> frob_powers_;
};

// The canonical derivation extending d/dx.
FFElem derive(const FFElem& f);
// f^p.
FFElem frobenius(const FFElem& f);
// f^{(p-1)} + f^p.
FFElem riccati_map(const FFElem& f);
bool is_solution(const FFElem& f);
// The coordinate f_i computed as a trace, Tr(Q_i(a) f / N_Y(x, a)).
RatFunc coeff_via_trace(const FFElem& f, std::size_t i);
// Tr_{K_N / F_q(x)}.
RatFunc trace(const FFElem& f);
// g'/g.
FFElem log_derivative(const FFElem& g);

} // namespace priccati
