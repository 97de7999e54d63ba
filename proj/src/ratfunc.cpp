#include "priccati/ratfunc.hpp"

#include <algorithm>

#include "priccati/error.hpp"

namespace priccati {

RatFunc::RatFunc(const FieldPtr& field) : num_(field), den_(Poly::constant(field, field->one())) {}

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), num_.field()->one())) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den))
{
    normalize();
}

RatFunc RatFunc::constant(const FieldPtr& field, FqElem c)
{
    return RatFunc(Poly::constant(field, c));
}

RatFunc RatFunc::x(const FieldPtr& field)
{
    return RatFunc(Poly::x(field));
}

void RatFunc::normalize()
{
    if (den_.is_zero()) {
        throw InputError("rational function with zero denominator");
    }
    if (num_.is_zero()) {
        den_ = Poly::constant(den_.field(), den_.field()->one());
        return;
    }
    if (!den_.is_constant()) {
        const Poly g = gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }
    const FqElem l = den_.leading();
    if (l.rep != 1) {
        const FqElem li = den_.field()->inv(l);
        num_ = num_.scaled(li);
        den_ = den_.scaled(li);
    }
}

int RatFunc::height() const
{
    return std::max(num_.degree(), den_.degree());
}

int RatFunc::valuation_at_infinity() const
{
    if (is_zero()) {
        throw InputError("valuation of zero");
    }
    return den_.degree() - num_.degree();
}

RatFunc RatFunc::operator-() const
{
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o)
{
    if (o.is_zero()) {
        return *this;
    }
    if (is_zero()) {
        return *this = o;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
        normalize();
        return *this;
    }
    const Poly g = gcd(den_, o.den_);
    const Poly a = o.den_ / g;
    const Poly b = den_ / g;
    num_ = num_ * a + o.num_ * b;
    den_ = den_ * a;
    normalize();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o)
{
    return *this += -o;
}

RatFunc& RatFunc::operator*=(const RatFunc& o)
{
    if (is_zero() || o.is_zero()) {
        *this = RatFunc(field());
        return *this;
    }
    const Poly g1 = gcd(num_, o.den_);
    const Poly g2 = gcd(o.num_, den_);
    num_ = (num_ / g1) * (o.num_ / g2);
    den_ = (den_ / g2) * (o.den_ / g1);
    const FqElem l = den_.leading();
    if (l.rep != 1) {
        const FqElem li = field()->inv(l);
        num_ = num_.scaled(li);
        den_ = den_.scaled(li);
    }
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o)
{
    return *this *= o.inverse();
}

RatFunc RatFunc::inverse() const
{
    if (is_zero()) {
        throw InputError("inverse of the zero rational function");
    }
    return RatFunc(den_, num_);
}

RatFunc RatFunc::scaled(FqElem c) const
{
    if (c.rep == 0) {
        return RatFunc(field());
    }
    RatFunc r = *this;
    r.num_ = r.num_.scaled(c);
    return r;
}

RatFunc RatFunc::pow(std::int64_t e) const
{
    if (e < 0) {
        return inverse().pow(-e);
    }
    RatFunc r(num_.pow(static_cast<std::uint64_t>(e)), den_.pow(static_cast<std::uint64_t>(e)));
    return r;
}

RatFunc RatFunc::derivative() const
{
    if (den_.is_one()) {
        return RatFunc(num_.derivative());
    }
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc RatFunc::frobenius() const
{
    RatFunc r = *this;
    r.num_ = num_.frobenius();
    r.den_ = den_.frobenius();
    return r;
}

std::optional<RatFunc> RatFunc::pth_root() const
{
    auto n = num_.pth_root();
    auto d = den_.pth_root();
    if (!n || !d) {
        return std::nullopt;
    }
    return RatFunc(*n, *d);
}

RatFunc RatFunc::mapped(const Embedding& e) const
{
    return RatFunc(num_.mapped(e), den_.mapped(e));
}

std::string RatFunc::to_string(const std::string& var) const
{
    if (den_.is_one()) {
        return num_.to_string(var);
    }
    auto wrap = [&](const Poly& p) {
        const std::string s = p.to_string(var);
        const bool simple = p.coeffs().size() == 1 || (s.find(' ') == std::string::npos && s.find('*') == std::string::npos);
        return simple ? s : "(" + s + ")";
    };
    return wrap(num_) + "/" + wrap(den_);
}

} // namespace priccati
