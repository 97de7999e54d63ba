#pragma once

#include <optional>
#include <string>

#include "priccati/poly.hpp"

namespace priccati {

// Element of F_q(x) in lowest terms with monic denominator.
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(const FieldPtr& field);
    explicit RatFunc(Poly num);
    RatFunc(Poly num, Poly den);

    static RatFunc constant(const FieldPtr& field, FqElem c);
    static RatFunc x(const FieldPtr& field);

    const FieldPtr& field() const { return num_.field(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    // max(deg num, deg den): the degree of the function as a map P^1 -> P^1.
    int height() const;
    // Valuation at the place x = infinity: deg den - deg num.
    int valuation_at_infinity() const;

    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    friend bool operator==(const RatFunc& a, const RatFunc& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    RatFunc inverse() const;
    RatFunc scaled(FqElem c) const;
    RatFunc pow(std::int64_t e) const;
    // d/dx
    RatFunc derivative() const;
    // f^p
    RatFunc frobenius() const;
    std::optional<RatFunc> pth_root() const;
    RatFunc mapped(const Embedding& e) const;

    std::string to_string(const std::string& var = "x") const;

private:
    void normalize();

    Poly num_;
    Poly den_;
};

} // namespace priccati
