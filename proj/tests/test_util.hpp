#pragma once

#include <random>
#include <string>

#include "priccati/curve.hpp"
#include "priccati/expr.hpp"
#include "priccati/finite_field.hpp"
#include "priccati/poly.hpp"
#include "priccati/ratfunc.hpp"

namespace testutil {

inline priccati::Poly random_poly(const priccati::FieldPtr& f, int degree, std::mt19937_64& rng)
{
    std::vector<priccati::FqElem> c(static_cast<std::size_t>(degree) + 1);
    for (auto& e : c) {
        e = f->random(rng);
    }
    return priccati::Poly(f, c);
}

inline priccati::Poly random_monic(const priccati::FieldPtr& f, int degree, std::mt19937_64& rng)
{
    auto c = random_poly(f, degree, rng).coeffs();
    c.resize(static_cast<std::size_t>(degree) + 1, f->zero());
    c.back() = f->one();
    return priccati::Poly(f, c);
}

// Random rational function with numerator degree <= dn and monic
// denominator of degree <= dd.
inline priccati::RatFunc random_ratfunc(const priccati::FieldPtr& f, int dn, int dd, std::mt19937_64& rng)
{
    const int d = dd == 0 ? 0 : static_cast<int>(rng() % static_cast<std::uint64_t>(dd + 1));
    return priccati::RatFunc(random_poly(f, dn, rng), random_monic(f, d, rng));
}

inline priccati::FFElem random_ffelem(const priccati::CurvePtr& c, int dn, int dd, std::mt19937_64& rng)
{
    std::vector<priccati::RatFunc> coords;
    for (int i = 0; i < c->dy(); ++i) {
        coords.push_back(random_ratfunc(c->base(), dn, dd, rng));
    }
    return priccati::FFElem(c, coords);
}

inline priccati::FFElem random_nonzero_ffelem(const priccati::CurvePtr& c, int dn, int dd, std::mt19937_64& rng)
{
    for (;;) {
        auto f = random_ffelem(c, dn, dd, rng);
        if (!f.is_zero()) {
            return f;
        }
    }
}

inline priccati::CurvePtr curve(std::uint64_t p, const std::string& nstar, unsigned b = 1)
{
    const auto field = priccati::FiniteField::standard(p, b);
    return priccati::CurveField::create(priccati::parse_bivpoly(nstar, field));
}

} // namespace testutil

namespace testutil {

// The curve N_* = den(a) Y - num(a), so that a is the given rational function.
inline priccati::CurvePtr rational_curve(const priccati::RatFunc& a)
{
    return priccati::CurveField::create(priccati::BivPoly(a.field(), {-a.num(), a.den()}));
}

// p-th root of riccati_map(f) for f in F_q(x): the a of an instance solved by f.
inline priccati::RatFunc riccati_root(const priccati::RatFunc& f)
{
    const auto c = rational_curve(priccati::RatFunc::x(f.field()));
    const auto y = priccati::riccati_map(priccati::FFElem(c, {f}));
    return *y.coord(0).pth_root();
}

} // namespace testutil
