#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace priccati {

// An element of a finite field F_q = F_p[z]/(m). The representation is the
// integer sum c_i p^i where c_i are the coefficients of the residue of degree
// < deg m; the value only has meaning together with its FiniteField.
struct FqElem {
    std::uint64_t rep = 0;

    friend bool operator==(FqElem, FqElem) = default;
    friend auto operator<=>(FqElem, FqElem) = default;
};

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

class FiniteField {
public:
    // F_p itself. Cached: repeated calls return the same pointer.
    static FieldPtr prime(std::uint64_t p);
    // F_p[z]/(modulus); modulus is given lowest coefficient first and must be
    // monic irreducible over F_p.
    static FieldPtr with_modulus(std::uint64_t p, const std::vector<std::uint64_t>& modulus);
    // F_p[z]/(m) where m is the first monic irreducible polynomial of degree n
    // in the enumeration order of first_irreducible(). Cached.
    static FieldPtr standard(std::uint64_t p, unsigned n);

    // First monic irreducible polynomial of degree n over F_p, enumerating the
    // lower coefficients as the base-p digits of 0, 1, 2, ...
    static std::vector<std::uint64_t> first_irreducible(std::uint64_t p, unsigned n);
    static bool is_prime(std::uint64_t n);

    std::uint64_t characteristic() const { return p_; }
    unsigned degree() const { return n_; }
    std::uint64_t order() const { return q_; }
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }

    FqElem zero() const { return {0}; }
    FqElem one() const { return {1}; }
    FqElem from_int(std::int64_t v) const;
    // The class of z (for n = 1 this is the root of the linear modulus).
    FqElem generator() const;
    // A generator of the multiplicative group.
    FqElem primitive_element() const;

    bool is_zero(FqElem a) const { return a.rep == 0; }
    bool is_one(FqElem a) const { return a.rep == 1; }
    bool in_prime_field(FqElem a) const { return a.rep < p_; }

    FqElem add(FqElem a, FqElem b) const;
    FqElem sub(FqElem a, FqElem b) const;
    FqElem neg(FqElem a) const;
    FqElem mul(FqElem a, FqElem b) const;
    FqElem inv(FqElem a) const;
    FqElem div(FqElem a, FqElem b) const;
    FqElem pow(FqElem a, std::uint64_t e) const;
    // a^p
    FqElem frobenius(FqElem a) const;
    // The unique r with r^p = a.
    FqElem frobenius_root(FqElem a) const;
    // Absolute trace to F_p.
    std::uint64_t trace(FqElem a) const;

    // Coordinates on the basis 1, z, ..., z^{n-1}.
    std::vector<std::uint64_t> coords(FqElem a) const;
    FqElem from_coords(std::span<const std::uint64_t> c) const;
    FqElem random(std::mt19937_64& rng) const;
    // Element with the given encoding index in [0, q).
    FqElem element(std::uint64_t index) const { return {index}; }

    std::string to_string(FqElem a, const std::string& var = "z") const;
    bool same_as(const FiniteField& other) const;

    FiniteField(std::uint64_t p, std::vector<std::uint64_t> modulus);

private:
    FqElem slow_mul(FqElem a, FqElem b) const;
    void build_tables();

    std::uint64_t p_;
    unsigned n_;
    std::uint64_t q_;
    std::vector<std::uint64_t> modulus_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint64_t> powp_;
};

// A field embedding F -> G determined by the image of the generator of F.
class Embedding {
public:
    Embedding() = default;
    Embedding(FieldPtr from, FieldPtr to, FqElem image_of_generator);
    static Embedding identity(const FieldPtr& field);

    const FieldPtr& source() const { return from_; }
    const FieldPtr& target() const { return to_; }
    bool is_identity() const { return identity_; }

    FqElem operator()(FqElem a) const;
    // The element of the source mapping to b, if any.
    std::optional<FqElem> preimage(FqElem b) const;
    // this: A -> B, next: B -> C; returns A -> C.
    Embedding then(const Embedding& next) const;

private:
    FieldPtr from_;
    FieldPtr to_;
    bool identity_ = false;
    std::vector<FqElem> basis_images_;
};

} // namespace priccati
