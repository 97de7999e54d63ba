#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "priccati/curve.hpp"
#include "priccati/error.hpp"
#include "priccati/ratfunc.hpp"

namespace priccati {

// Differential-field interface used by OrePoly.
template <class T>
struct OreTraits;

template <>
struct OreTraits<RatFunc> {
    static RatFunc one_like(const RatFunc& z) { return RatFunc::constant(z.field(), z.field()->one()); }
    static RatFunc zero_like(const RatFunc& z) { return RatFunc(z.field()); }
    static RatFunc derive(const RatFunc& r) { return r.derivative(); }
    static bool compatible(const RatFunc& a, const RatFunc& b) { return a.field()->same_as(*b.field()); }
    static std::string to_string(const RatFunc& r) { return r.to_string(); }
};

template <>
struct OreTraits<FFElem> {
    static FFElem one_like(const FFElem& z) { return z.curve()->one(); }
    static FFElem zero_like(const FFElem& z) { return z.curve()->zero(); }
    static FFElem derive(const FFElem& f) { return priccati::derive(f); }
    static bool compatible(const FFElem& a, const FFElem& b) { return a.curve() == b.curve(); }
    static std::string to_string(const FFElem& f) { return f.to_string(); }
};

// Skew polynomial sum c_i D^i with D c = c D + c'.
template <class T>
class OrePoly {
public:
    using Traits = OreTraits<T>;

    // The zero operator over the field of the given element.
    explicit OrePoly(const T& like) : zero_(Traits::zero_like(like)) {}
    OrePoly(const T& like, std::vector<T> coeffs) : zero_(Traits::zero_like(like)), coeffs_(std::move(coeffs))
    {
        for (const auto& c : coeffs_) {
            if (!Traits::compatible(c, zero_)) {
                throw InputError("Ore polynomial coefficients from different fields");
            }
        }
        trim();
    }

    // c D^k.
    static OrePoly monomial(const T& c, std::size_t k)
    {
        std::vector<T> v(k + 1, Traits::zero_like(c));
        v[k] = c;
        return OrePoly(c, std::move(v));
    }

    const T& zero() const { return zero_; }
    T one() const { return Traits::one_like(zero_); }
    const std::vector<T>& coeffs() const { return coeffs_; }
    T coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : zero_; }
    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const T& leading() const
    {
        if (coeffs_.empty()) {
            throw InputError("leading coefficient of the zero operator");
        }
        return coeffs_.back();
    }

    OrePoly operator-() const
    {
        OrePoly r = *this;
        for (auto& c : r.coeffs_) {
            c = -c;
        }
        return r;
    }
    OrePoly& operator+=(const OrePoly& o)
    {
        check(o);
        if (o.coeffs_.size() > coeffs_.size()) {
            coeffs_.resize(o.coeffs_.size(), zero_);
        }
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
            coeffs_[i] += o.coeffs_[i];
        }
        trim();
        return *this;
    }
    OrePoly& operator-=(const OrePoly& o) { return *this += -o; }
    friend OrePoly operator+(OrePoly a, const OrePoly& b) { return a += b; }
    friend OrePoly operator-(OrePoly a, const OrePoly& b) { return a -= b; }
    friend bool operator==(const OrePoly& a, const OrePoly& b) { return a.coeffs_ == b.coeffs_; }

    // D * this.
    OrePoly d_times() const
    {
        std::vector<T> out(coeffs_.size() + 1, zero_);
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            out[j + 1] += coeffs_[j];
            out[j] += Traits::derive(coeffs_[j]);
        }
        return OrePoly(zero_, std::move(out));
    }

    // c * this.
    OrePoly left_scaled(const T& c) const
    {
        std::vector<T> out;
        out.reserve(coeffs_.size());
        for (const auto& a : coeffs_) {
            out.push_back(c * a);
        }
        return OrePoly(zero_, std::move(out));
    }

    friend OrePoly operator*(const OrePoly& a, const OrePoly& b)
    {
        a.check(b);
        OrePoly acc(a.zero_);
        OrePoly di = b;
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (!a.coeffs_[i].is_zero()) {
                acc += di.left_scaled(a.coeffs_[i]);
            }
            if (i + 1 < a.coeffs_.size()) {
                di = di.d_times();
            }
        }
        return acc;
    }

    OrePoly monic() const { return left_scaled(one() / leading()); }

    std::string to_string(const std::string& var = "D") const
    {
        if (coeffs_.empty()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            if (coeffs_[i].is_zero()) {
                continue;
            }
            if (!first) {
                os << " + ";
            }
            first = false;
            const std::string cs = Traits::to_string(coeffs_[i]);
            const bool unit = coeffs_[i] == one();
            if (i == 0) {
                os << "(" << cs << ")";
                continue;
            }
            if (!unit) {
                os << "(" << cs << ")*";
            }
            os << var;
            if (i > 1) {
                os << '^' << i;
            }
        }
        return os.str();
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) {
            coeffs_.pop_back();
        }
    }
    void check(const OrePoly& o) const
    {
        if (!Traits::compatible(zero_, o.zero_)) {
            throw InputError("Ore polynomials over different fields");
        }
    }

    T zero_;
    std::vector<T> coeffs_;
};

template <class T>
OrePoly<T> ore_mul(const OrePoly<T>& a, const OrePoly<T>& b)
{
    return a * b;
}

// A = Q B + R with ord R < ord B.
template <class T>
std::pair<OrePoly<T>, OrePoly<T>> right_divmod(const OrePoly<T>& a, const OrePoly<T>& b)
{
    if (b.is_zero()) {
        throw InputError("right division by the zero operator");
    }
    OrePoly<T> q(a.zero());
    OrePoly<T> r = a;
    if (r.order() < b.order()) {
        return {q, r};
    }
    const auto steps = static_cast<std::size_t>(r.order() - b.order());
    std::vector<OrePoly<T>> shifts{b};
    for (std::size_t k = 1; k <= steps; ++k) {
        shifts.push_back(shifts.back().d_times());
    }
    const T lb_inv = b.one() / b.leading();
    while (!r.is_zero() && r.order() >= b.order()) {
        const auto k = static_cast<std::size_t>(r.order() - b.order());
        const T c = r.leading() * lb_inv;
        q += OrePoly<T>::monomial(c, k);
        r -= shifts[k].left_scaled(c);
    }
    return {q, r};
}

// Monic greatest common right divisor.
template <class T>
OrePoly<T> gcrd(OrePoly<T> a, OrePoly<T> b)
{
    if (a.is_zero() && b.is_zero()) {
        throw InputError("gcrd of two zero operators");
    }
    while (!b.is_zero()) {
        auto r = right_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// D^p mod (D - f): r_0 = 1, r_{k+1} = r_k f + r_k'.
template <class T>
T pth_power_mod(const T& f, std::uint64_t p)
{
    T r = OreTraits<T>::one_like(f);
    for (std::uint64_t k = 0; k < p; ++k) {
        r = r * f + OreTraits<T>::derive(r);
    }
    return r;
}

// N_*^p(D) = sum_i n_i^p D^{p i} over F_q(x).
OrePoly<RatFunc> nstar_p_operator(const CurvePtr& curve);
// The same operator with coefficients viewed in K_N.
OrePoly<FFElem> lift_to_curve(const OrePoly<RatFunc>& l, const CurvePtr& curve);

// Monic right factor of order d_y of N_*^p(D) from a p-Riccati solution.
OrePoly<RatFunc> reconstruct_factor(const CurvePtr& curve, const FFElem& f);
// -b_{m-1}/m from the monic gcrd(L, D^p - y_N) of order m.
FFElem vdp_extract(const OrePoly<FFElem>& l, const CurvePtr& curve);

} // namespace priccati
