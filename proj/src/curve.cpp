#include "priccati/curve.hpp"

#include <sstream>

#include "priccati/error.hpp"
#include "priccati/linalg.hpp"

namespace priccati {

namespace {

void require_same_curve(const FFElem& a, const FFElem& b)
{
    if (!a.curve() || a.curve() != b.curve()) {
        throw InputError("function field elements from different curves");
    }
}

} // namespace

FFElem::FFElem(CurvePtr curve, std::vector<RatFunc> coords) : curve_(std::move(curve)), coords_(std::move(coords))
{
    if (coords_.size() != static_cast<std::size_t>(curve_->dy())) {
        throw InputError("function field element with the wrong number of coordinates");
    }
}

bool FFElem::is_zero() const
{
    for (const auto& c : coords_) {
        if (!c.is_zero()) {
            return false;
        }
    }
    return true;
}

FFElem FFElem::operator-() const
{
    FFElem r = *this;
    for (auto& c : r.coords_) {
        c = -c;
    }
    return r;
}

FFElem& FFElem::operator+=(const FFElem& o)
{
    require_same_curve(*this, o);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        coords_[i] += o.coords_[i];
    }
    return *this;
}

FFElem& FFElem::operator-=(const FFElem& o)
{
    require_same_curve(*this, o);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        coords_[i] -= o.coords_[i];
    }
    return *this;
}

FFElem operator*(const FFElem& a, const FFElem& b)
{
    require_same_curve(a, b);
    return FFElem(a.curve_, a.curve_->multiply(a.coords_, b.coords_));
}

FFElem operator/(const FFElem& a, const FFElem& b)
{
    return a * b.inverse();
}

FFElem FFElem::scaled(const RatFunc& c) const
{
    FFElem r = *this;
    for (auto& e : r.coords_) {
        if (!e.is_zero()) {
            e *= c;
        }
    }
    return r;
}

FFElem FFElem::inverse() const
{
    if (is_zero()) {
        throw InputError("inverse of zero in the function field");
    }
    const auto n = static_cast<std::size_t>(curve_->dy());
    if (n == 1) {
        return FFElem(curve_, {coords_[0].inverse()});
    }
    const FieldPtr& f = curve_->base();
    MatrixRat m(f, n, n);
    std::vector<RatFunc> col = coords_;
    const FFElem a = curve_->a();
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            m.at(i, j) = col[i];
        }
        if (j + 1 < n) {
            col = curve_->multiply(col, a.coords_);
        }
    }
    std::vector<RatFunc> rhs(n, RatFunc(f));
    rhs[0] = RatFunc::constant(f, f->one());
    const auto sol = solve_fqx(m, rhs);
    if (!sol.solution || !sol.kernel.empty()) {
        throw Error("function field inverse: singular multiplication matrix");
    }
    return FFElem(curve_, *sol.solution);
}

FFElem FFElem::pow(std::uint64_t e) const
{
    FFElem r = curve_->one();
    FFElem b = *this;
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

Poly FFElem::common_denominator() const
{
    const FieldPtr& f = curve_->base();
    Poly d = Poly::constant(f, f->one());
    for (const auto& c : coords_) {
        d = lcm(d, c.den());
    }
    return d;
}

int FFElem::coefficient_degree() const
{
    const Poly d = common_denominator();
    int deg = d.degree();
    for (const auto& c : coords_) {
        if (!c.is_zero()) {
            deg = std::max(deg, (c.num() * (d / c.den())).degree());
        }
    }
    return deg;
}

std::string FFElem::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i].is_zero()) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        const std::string s = coords_[i].to_string();
        if (i == 0) {
            os << s;
            continue;
        }
        if (!coords_[i].is_one()) {
            os << '(' << s << ")*";
        }
        os << 'a';
        if (i > 1) {
            os << '^' << i;
        }
    }
    return first ? "0" : os.str();
}

CurveField::CurveField(FieldPtr base, BivPoly nstar, Poly disc, std::uint64_t seed)
    : base_(std::move(base)), nstar_(std::move(nstar)), disc_(std::move(disc)), seed_(seed)
{
}

CurvePtr CurveField::create(const BivPoly& nstar, std::uint64_t seed)
{
    if (nstar.is_zero() || nstar.degree_y() < 1) {
        throw InputError("N_* must have positive degree in Y");
    }
    const FieldPtr& base = nstar.field();
    const BivPoly prim = nstar.primitive();
    Poly disc = discriminant_y(prim);
    if (disc.is_zero()) {
        throw InputError("N_* is not separable in Y (zero discriminant)");
    }
    if (auto factor = find_factor(prim, seed)) {
        throw InputError("N_* is reducible over F_q(x): it has the factor " + factor->to_string());
    }
    auto curve = std::make_shared<CurveField>(base, prim, std::move(disc), seed);
    curve->init();
    return curve;
}

void CurveField::init()
{
    const FieldPtr& f = base_;
    const auto n = static_cast<std::size_t>(dy());
    const RatFunc zero(f);
    const RatFunc lc_inv = RatFunc(lc()).inverse();
    a_powers_.clear();
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<RatFunc> v(n, zero);
        v[k] = RatFunc::constant(f, f->one());
        a_powers_.push_back(std::move(v));
    }
    std::vector<RatFunc> top(n, zero);
    for (std::size_t i = 0; i < n; ++i) {
        top[i] = -(RatFunc(nstar_.coeff(i)) * lc_inv);
    }
    for (std::size_t k = n; k < 2 * n; ++k) {
        if (k == n) {
            a_powers_.push_back(top);
            continue;
        }
        const auto& prev = a_powers_.back();
        std::vector<RatFunc> next(n, zero);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            next[i + 1] = prev[i];
        }
        if (!prev[n - 1].is_zero()) {
            for (std::size_t i = 0; i < n; ++i) {
                next[i] += prev[n - 1] * top[i];
            }
        }
        a_powers_.push_back(std::move(next));
    }

    const FFElem yn = a().pow(p());
    y_n_ = yn.coords();
    frob_powers_.clear();
    FFElem cur = one();
    for (std::size_t i = 0; i < n; ++i) {
        frob_powers_.push_back(cur.coords());
        cur = cur * yn;
    }
    const FFElem ap = -(evaluate(nstar_.derivative_x()) / evaluate(nstar_.derivative_y()));
    a_prime_ = ap.coords();
}

std::vector<RatFunc> CurveField::reduce(std::vector<RatFunc> poly_in_a) const
{
    const auto n = static_cast<std::size_t>(dy());
    if (poly_in_a.size() <= n) {
        poly_in_a.resize(n, RatFunc(base_));
        return poly_in_a;
    }
    std::vector<RatFunc> out(poly_in_a.begin(), poly_in_a.begin() + static_cast<std::ptrdiff_t>(n));
    for (std::size_t k = n; k < poly_in_a.size(); ++k) {
        if (poly_in_a[k].is_zero()) {
            continue;
        }
        const auto& red = a_powers_.at(k);
        for (std::size_t i = 0; i < n; ++i) {
            if (!red[i].is_zero()) {
                out[i] += poly_in_a[k] * red[i];
            }
        }
    }
    return out;
}

std::vector<RatFunc> CurveField::multiply(const std::vector<RatFunc>& u, const std::vector<RatFunc>& v) const
{
    const auto n = static_cast<std::size_t>(dy());
    std::vector<RatFunc> prod(2 * n - 1, RatFunc(base_));
    for (std::size_t i = 0; i < n; ++i) {
        if (u[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!v[j].is_zero()) {
                prod[i + j] += u[i] * v[j];
            }
        }
    }
    return reduce(std::move(prod));
}

FFElem CurveField::zero() const
{
    return FFElem(shared_from_this(), std::vector<RatFunc>(static_cast<std::size_t>(dy()), RatFunc(base_)));
}

FFElem CurveField::one() const
{
    return from_ratfunc(RatFunc::constant(base_, base_->one()));
}

FFElem CurveField::x() const
{
    return from_ratfunc(RatFunc::x(base_));
}

FFElem CurveField::a() const
{
    std::vector<RatFunc> v(2, RatFunc(base_));
    v[1] = RatFunc::constant(base_, base_->one());
    return from_poly_in_a(v);
}

FFElem CurveField::from_ratfunc(const RatFunc& r) const
{
    std::vector<RatFunc> v(static_cast<std::size_t>(dy()), RatFunc(base_));
    v[0] = r;
    return FFElem(shared_from_this(), std::move(v));
}

FFElem CurveField::from_poly_in_a(const std::vector<RatFunc>& coeffs) const
{
    const auto n = static_cast<std::size_t>(dy());
    if (coeffs.size() <= 2 * n) {
        return FFElem(shared_from_this(), reduce(coeffs));
    }
    // Horner evaluation for long inputs.
    FFElem r = zero();
    const FFElem av = a();
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        r = r * av + from_ratfunc(coeffs[k]);
    }
    return r;
}

FFElem CurveField::y_n() const
{
    return FFElem(shared_from_this(), y_n_);
}

FFElem CurveField::a_prime() const
{
    return FFElem(shared_from_this(), a_prime_);
}

FFElem CurveField::evaluate(const BivPoly& g) const
{
    std::vector<RatFunc> c;
    for (const auto& e : g.coeffs()) {
        c.emplace_back(e);
    }
    if (c.empty()) {
        return zero();
    }
    return from_poly_in_a(c);
}

FFElem derive(const FFElem& f)
{
    const auto& curve = f.curve();
    const auto n = static_cast<std::size_t>(curve->dy());
    const FieldPtr& base = curve->base();
    std::vector<RatFunc> direct(n, RatFunc(base));
    std::vector<RatFunc> chain(n, RatFunc(base));
    bool has_chain = false;
    for (std::size_t i = 0; i < n; ++i) {
        const RatFunc& c = f.coord(i);
        if (c.is_zero()) {
            continue;
        }
        direct[i] = c.derivative();
        if (i > 0) {
            const auto k = static_cast<std::int64_t>(i % curve->p());
            if (k != 0) {
                chain[i - 1] = c.scaled(base->from_int(k));
                has_chain = true;
            }
        }
    }
    FFElem r(curve, std::move(direct));
    if (has_chain) {
        r += FFElem(curve, std::move(chain)) * curve->a_prime();
    }
    return r;
}

FFElem frobenius(const FFElem& f)
{
    const auto& curve = f.curve();
    const auto n = static_cast<std::size_t>(curve->dy());
    FFElem r = curve->zero();
    for (std::size_t i = 0; i < n; ++i) {
        if (f.coord(i).is_zero()) {
            continue;
        }
        r += FFElem(curve, curve->frobenius_of_power(i)).scaled(f.coord(i).frobenius());
    }
    return r;
}

FFElem riccati_map(const FFElem& f)
{
    FFElem d = f;
    for (std::uint64_t i = 0; i + 1 < f.curve()->p(); ++i) {
        d = derive(d);
    }
    return d + frobenius(f);
}

bool is_solution(const FFElem& f)
{
    return riccati_map(f) == f.curve()->y_n();
}

RatFunc trace(const FFElem& f)
{
    const auto& curve = f.curve();
    const auto n = static_cast<std::size_t>(curve->dy());
    RatFunc t(curve->base());
    FFElem cur = f;
    const FFElem a = curve->a();
    for (std::size_t j = 0; j < n; ++j) {
        t += cur.coord(j);
        if (j + 1 < n) {
            cur = cur * a;
        }
    }
    return t;
}

RatFunc coeff_via_trace(const FFElem& f, std::size_t i)
{
    const auto& curve = f.curve();
    const auto n = static_cast<std::size_t>(curve->dy());
    if (i >= n) {
        throw InputError("coefficient index out of range");
    }
    std::vector<RatFunc> q;
    for (std::size_t j = i + 1; j <= n; ++j) {
        q.emplace_back(curve->nstar().coeff(j));
    }
    const FFElem qi = curve->from_poly_in_a(q);
    const FFElem ny = curve->evaluate(curve->nstar().derivative_y());
    return trace(qi * f / ny);
}

FFElem log_derivative(const FFElem& g)
{
    if (g.is_zero()) {
        throw InputError("logarithmic derivative of zero");
    }
    return derive(g) / g;
}

} // namespace priccati
