#include "priccati/series.hpp"

#include <algorithm>
#include <sstream>

#include "priccati/error.hpp"

namespace priccati {

namespace {

int clamp_precision(long long v)
{
    return static_cast<int>(std::min<long long>(v, LaurentSeries::kExact));
}

} // namespace

LaurentSeries::LaurentSeries(FieldPtr field, int offset, std::vector<FqElem> coeffs, int precision)
    : field_(std::move(field)), offset_(offset), coeffs_(std::move(coeffs)), precision_(std::min(precision, kExact))
{
    normalize();
}

void LaurentSeries::normalize()
{
    if (offset_ >= precision_) {
        coeffs_.clear();
    } else if (static_cast<long long>(offset_) + static_cast<long long>(coeffs_.size()) > precision_) {
        coeffs_.resize(static_cast<std::size_t>(precision_ - offset_));
    }
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].rep == 0) {
        ++lead;
    }
    if (lead == coeffs_.size()) {
        coeffs_.clear();
        offset_ = precision_;
        return;
    }
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
        offset_ += static_cast<int>(lead);
    }
    while (!coeffs_.empty() && coeffs_.back().rep == 0) {
        coeffs_.pop_back();
    }
}

LaurentSeries LaurentSeries::zero(const FieldPtr& field, int precision)
{
    return LaurentSeries(field, precision, {}, precision);
}

LaurentSeries LaurentSeries::monomial(const FieldPtr& field, FqElem c, int exponent, int precision)
{
    return LaurentSeries(field, exponent, {c}, precision);
}

LaurentSeries LaurentSeries::from_poly(const Poly& p, int shift)
{
    return LaurentSeries(p.field(), shift, p.coeffs(), kExact);
}

FqElem LaurentSeries::coeff(int e) const
{
    if (e >= precision_) {
        throw PrecisionError("series coefficient of t^" + std::to_string(e) + " requested beyond precision " +
                             std::to_string(precision_));
    }
    if (e < offset_ || coeffs_.empty()) {
        return field_->zero();
    }
    const auto idx = static_cast<std::size_t>(e - offset_);
    return idx < coeffs_.size() ? coeffs_[idx] : field_->zero();
}

FqElem LaurentSeries::leading() const
{
    if (coeffs_.empty()) {
        throw PrecisionError("leading coefficient of a series that is zero to precision");
    }
    return coeffs_.front();
}

LaurentSeries LaurentSeries::operator-() const
{
    LaurentSeries r = *this;
    for (auto& c : r.coeffs_) {
        c = field_->neg(c);
    }
    return r;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o)
{
    const int prec = std::min(precision_, o.precision_);
    if (o.coeffs_.empty()) {
        precision_ = prec;
        normalize();
        return *this;
    }
    if (coeffs_.empty()) {
        *this = o;
        precision_ = prec;
        normalize();
        return *this;
    }
    const int lo = std::min(offset_, o.offset_);
    const int hi = std::min<int>(prec, std::max(offset_ + static_cast<int>(coeffs_.size()),
                                                o.offset_ + static_cast<int>(o.coeffs_.size())));
    std::vector<FqElem> out(static_cast<std::size_t>(std::max(0, hi - lo)), field_->zero());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const int e = offset_ + static_cast<int>(i);
        if (e < hi) {
            out[static_cast<std::size_t>(e - lo)] = coeffs_[i];
        }
    }
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
        const int e = o.offset_ + static_cast<int>(i);
        if (e < hi) {
            auto& slot = out[static_cast<std::size_t>(e - lo)];
            slot = field_->add(slot, o.coeffs_[i]);
        }
    }
    offset_ = lo;
    coeffs_ = std::move(out);
    precision_ = prec;
    normalize();
    return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o)
{
    return *this += -o;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b)
{
    const long long pa = static_cast<long long>(a.precision_) + b.valuation();
    const long long pb = static_cast<long long>(b.precision_) + a.valuation();
    const int prec = clamp_precision(std::min(pa, pb));
    if (a.coeffs_.empty() || b.coeffs_.empty()) {
        return LaurentSeries::zero(a.field_, prec);
    }
    const int offset = a.offset_ + b.offset_;
    const long long span = static_cast<long long>(prec) - offset;
    if (span <= 0) {
        return LaurentSeries::zero(a.field_, prec);
    }
    const auto keep = static_cast<std::size_t>(std::min<long long>(span, static_cast<long long>(a.coeffs_.size() + b.coeffs_.size())));
    const Poly pa_poly(a.field_, std::vector<FqElem>(a.coeffs_.begin(), a.coeffs_.begin() + static_cast<std::ptrdiff_t>(std::min(keep, a.coeffs_.size()))));
    const Poly pb_poly(b.field_, std::vector<FqElem>(b.coeffs_.begin(), b.coeffs_.begin() + static_cast<std::ptrdiff_t>(std::min(keep, b.coeffs_.size()))));
    const Poly prod = (pa_poly * pb_poly).truncated(keep);
    return LaurentSeries(a.field_, offset, prod.coeffs(), prec);
}

LaurentSeries LaurentSeries::inverse() const
{
    if (coeffs_.empty()) {
        throw PrecisionError("inverse of a series that is zero to precision");
    }
    const int v = offset_;
    const long long rel = static_cast<long long>(precision_) - v;
    if (is_exact() && coeffs_.size() == 1) {
        return LaurentSeries(field_, -v, {field_->inv(coeffs_[0])}, kExact);
    }
    if (is_exact()) {
        throw PrecisionError("inverse of an exact non-monomial series needs an explicit precision");
    }
    const auto n = static_cast<std::size_t>(rel);
    std::vector<FqElem> inv(n, field_->zero());
    const FqElem c0 = field_->inv(coeffs_[0]);
    inv[0] = c0;
    for (std::size_t k = 1; k < n; ++k) {
        FqElem acc = field_->zero();
        const std::size_t lim = std::min(k, coeffs_.size() - 1);
        for (std::size_t i = 1; i <= lim; ++i) {
            acc = field_->add(acc, field_->mul(coeffs_[i], inv[k - i]));
        }
        inv[k] = field_->neg(field_->mul(acc, c0));
    }
    return LaurentSeries(field_, -v, std::move(inv), clamp_precision(static_cast<long long>(precision_) - 2LL * v));
}

LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b)
{
    return a * b.inverse();
}

LaurentSeries LaurentSeries::scaled(FqElem c) const
{
    LaurentSeries r = *this;
    for (auto& e : r.coeffs_) {
        e = field_->mul(e, c);
    }
    r.normalize();
    return r;
}

LaurentSeries LaurentSeries::shifted(int k) const
{
    LaurentSeries r = *this;
    r.offset_ += k;
    r.precision_ = clamp_precision(static_cast<long long>(precision_) + k);
    if (r.coeffs_.empty()) {
        r.offset_ = r.precision_;
    }
    return r;
}

LaurentSeries LaurentSeries::truncated(int precision) const
{
    if (precision >= precision_) {
        return *this;
    }
    LaurentSeries r = *this;
    r.precision_ = precision;
    r.normalize();
    return r;
}

LaurentSeries LaurentSeries::pow(std::uint64_t e) const
{
    LaurentSeries r = monomial(field_, field_->one(), 0);
    LaurentSeries b = *this;
    while (e != 0) {
        if (e & 1U) {
            r = r * b;
        }
        e >>= 1U;
        if (e != 0) {
            b = b * b;
        }
    }
    return r;
}

LaurentSeries LaurentSeries::derivative() const
{
    const std::uint64_t p = field_->characteristic();
    std::vector<FqElem> out(coeffs_.size(), field_->zero());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const long long e = offset_ + static_cast<long long>(i);
        const long long m = ((e % static_cast<long long>(p)) + static_cast<long long>(p)) % static_cast<long long>(p);
        out[i] = field_->mul(coeffs_[i], field_->from_int(m));
    }
    const int prec = is_exact() ? kExact : precision_ - 1;
    return LaurentSeries(field_, offset_ - 1, std::move(out), prec);
}

LaurentSeries LaurentSeries::frobenius() const
{
    const auto p = static_cast<int>(field_->characteristic());
    if (coeffs_.empty()) {
        return zero(field_, clamp_precision(static_cast<long long>(precision_) * p));
    }
    std::vector<FqElem> out((coeffs_.size() - 1) * static_cast<std::size_t>(p) + 1, field_->zero());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        out[i * static_cast<std::size_t>(p)] = field_->frobenius(coeffs_[i]);
    }
    return LaurentSeries(field_, offset_ * p, std::move(out), clamp_precision(static_cast<long long>(precision_) * p));
}

LaurentSeries LaurentSeries::mapped(const Embedding& e) const
{
    std::vector<FqElem> out;
    out.reserve(coeffs_.size());
    for (const auto c : coeffs_) {
        out.push_back(e(c));
    }
    return LaurentSeries(e.target(), offset_, std::move(out), precision_);
}

bool LaurentSeries::agrees_with(const LaurentSeries& o) const
{
    const int prec = std::min(precision_, o.precision_);
    const LaurentSeries d = (*this - o).truncated(prec);
    return d.is_zero();
}

std::string LaurentSeries::to_string(const std::string& var) const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].rep == 0) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        const int e = offset_ + static_cast<int>(i);
        const std::string cs = field_->to_string(coeffs_[i]);
        const bool compound = cs.find('+') != std::string::npos;
        if (e == 0) {
            os << (compound ? "(" + cs + ")" : cs);
            continue;
        }
        if (coeffs_[i].rep != 1) {
            os << (compound ? "(" + cs + ")" : cs) << '*';
        }
        os << var;
        if (e != 1) {
            os << '^' << e;
        }
    }
    if (first) {
        os << '0';
    }
    if (!is_exact()) {
        os << " + O(" << var << '^' << precision_ << ')';
    }
    return os.str();
}

} // namespace priccati
