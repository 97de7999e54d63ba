#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "priccati/finite_field.hpp"

namespace priccati {

// Dense univariate polynomial over a finite field, lowest coefficient first,
// without trailing zeros.
class Poly {
public:
    Poly() = default;
    explicit Poly(FieldPtr field);
    Poly(FieldPtr field, std::vector<FqElem> coeffs);

    static Poly constant(const FieldPtr& field, FqElem c);
    static Poly from_ints(const FieldPtr& field, const std::vector<std::int64_t>& coeffs);
    static Poly monomial(const FieldPtr& field, FqElem c, std::size_t degree);
    static Poly x(const FieldPtr& field);

    const FieldPtr& field() const { return field_; }
    const std::vector<FqElem>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const;
    bool is_constant() const { return coeffs_.size() <= 1; }
    FqElem coeff(std::size_t i) const;
    FqElem leading() const;
    // Lowest index with a nonzero coefficient; -1 for zero.
    int low_degree() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b);

    Poly scaled(FqElem c) const;
    Poly shifted(std::size_t k) const;
    Poly truncated(std::size_t n) const;
    Poly monic() const;
    Poly derivative() const;
    FqElem eval(FqElem c) const;
    // f(x + c)
    Poly taylor_shift(FqElem c) const;
    // Coefficients mapped through an embedding into a larger field.
    Poly mapped(const Embedding& e) const;
    // Coefficients pulled back through an embedding; nullopt if some
    // coefficient is not in its image.
    std::optional<Poly> pulled_back(const Embedding& e) const;
    // f^p.
    Poly frobenius() const;
    // g with g^p = f, if f is a p-th power.
    std::optional<Poly> pth_root() const;
    Poly pow(std::uint64_t e) const;

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();

    FieldPtr field_;
    std::vector<FqElem> coeffs_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
// Monic gcd (zero if both are zero).
Poly gcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);
// Returns (g, s, t) with s a + t b = g monic.
struct XgcdResult {
    Poly g;
    Poly s;
    Poly t;
};
XgcdResult xgcd(const Poly& a, const Poly& b);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod);
Poly mulmod(const Poly& a, const Poly& b, const Poly& mod);
// Composition f(g) mod m.
Poly compose_mod(const Poly& f, const Poly& g, const Poly& mod);
// Largest k such that d^k divides f (f nonzero, d nonconstant).
int multiplicity(Poly f, const Poly& d);

bool is_irreducible(const Poly& f);
// Product of the distinct monic irreducible factors.
Poly squarefree_part(const Poly& f);
// Monic squarefree factorization: pairs (g_i, i) with f = lc * prod g_i^i.
std::vector<std::pair<Poly, int>> squarefree_factor(const Poly& f);
// Complete factorization into monic irreducibles with multiplicities, sorted by
// degree and then by coefficient encodings; deterministic given the seed.
std::vector<std::pair<Poly, int>> poly_factor(const Poly& f, std::uint64_t seed = 0);
// Distinct roots in the coefficient field, sorted by encoding.
std::vector<FqElem> roots(const Poly& f, std::uint64_t seed = 0);
// First monic irreducible polynomial of the given degree over the field, in
// the enumeration order of coefficient encodings.
Poly first_irreducible_poly(const FieldPtr& field, unsigned degree);
// Total order on polynomials: degree first, then coefficients from the top.
bool poly_less(const Poly& a, const Poly& b);

// The field obtained by adjoining a root of an irreducible polynomial R to a
// base field, realized as a standard absolute field, with the embedding of the
// base and the chosen root (the smallest root by encoding).
struct FieldExtension {
    FieldPtr field;
    Embedding embedding;
    FqElem root;
};
FieldExtension extend(const FieldPtr& base, const Poly& r);
// Extension of the given relative degree.
FieldExtension extend_degree(const FieldPtr& base, unsigned degree);

} // namespace priccati
