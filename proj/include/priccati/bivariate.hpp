#pragma once

#include <optional>
#include <string>
#include <vector>

#include "priccati/poly.hpp"

namespace priccati {

// Polynomial in F_q[x][Y] stored as its coefficients in Y (each a polynomial
// in x), lowest power of Y first, without trailing zeros.
class BivPoly {
public:
    BivPoly() = default;
    explicit BivPoly(FieldPtr field);
    BivPoly(FieldPtr field, std::vector<Poly> ycoeffs);

    static BivPoly from_x(const Poly& c);
    static BivPoly y(const FieldPtr& field);

    const FieldPtr& field() const { return field_; }
    const std::vector<Poly>& coeffs() const { return coeffs_; }
    Poly coeff(std::size_t i) const;
    int degree_y() const { return static_cast<int>(coeffs_.size()) - 1; }
    int degree_x() const;
    bool is_zero() const { return coeffs_.empty(); }
    const Poly& leading() const { return coeffs_.back(); }

    BivPoly operator-() const;
    BivPoly& operator+=(const BivPoly& o);
    BivPoly& operator-=(const BivPoly& o);
    friend BivPoly operator+(BivPoly a, const BivPoly& b) { return a += b; }
    friend BivPoly operator-(BivPoly a, const BivPoly& b) { return a -= b; }
    friend BivPoly operator*(const BivPoly& a, const BivPoly& b);
    friend bool operator==(const BivPoly& a, const BivPoly& b);

    BivPoly scaled(const Poly& c) const;
    BivPoly pow(std::uint64_t e) const;
    BivPoly derivative_y() const;
    BivPoly derivative_x() const;
    // gcd of the Y-coefficients, monic.
    Poly content() const;
    BivPoly primitive() const;
    // Specialization x = c, a polynomial in Y.
    Poly eval_x(FqElem c) const;
    // Specialization x = c after mapping the coefficients through e.
    Poly eval_x(const Embedding& e, FqElem c) const;
    // The polynomial with x and Y swapped.
    BivPoly swapped() const;
    BivPoly mapped(const Embedding& e) const;

    std::string to_string(const std::string& xvar = "x", const std::string& yvar = "Y") const;

private:
    void trim();

    FieldPtr field_;
    std::vector<Poly> coeffs_;
};

// a / b when b divides a in F_q[x][Y].
std::optional<BivPoly> divide_exact(const BivPoly& a, const BivPoly& b);
// Determinant of the Sylvester matrix of a and b in Y, using the given formal
// degrees (which may exceed the actual degrees).
Poly resultant_y(const BivPoly& a, const BivPoly& b, int deg_a, int deg_b);
// Disc_Y(f) = (-1)^{n(n-1)/2} Res_Y(f, f_Y) / lc_Y(f) with n = deg_Y f.
Poly discriminant_y(const BivPoly& f);
// Determinant over F_q[x] by fraction-free elimination.
Poly bareiss_determinant(std::vector<std::vector<Poly>> m, const FieldPtr& field);

// Irreducibility of a primitive polynomial of positive Y-degree over F_q(x)
// with nonzero discriminant.
bool is_irreducible_over_fqx(const BivPoly& f, std::uint64_t seed = 0);
// A nontrivial factor of f in F_q[x][Y] if one exists (same preconditions).
std::optional<BivPoly> find_factor(const BivPoly& f, std::uint64_t seed = 0);

} // namespace priccati
