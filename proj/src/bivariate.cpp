#include "priccati/bivariate.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "priccati/error.hpp"

namespace priccati {

namespace {

// Truncated power series in t whose coefficients are polynomials in Y.
using SeriesY = std::vector<Poly>;

SeriesY series_mul(const SeriesY& a, const SeriesY& b, std::size_t prec, const FieldPtr& f)
{
    SeriesY out(prec, Poly(f));
    for (std::size_t i = 0; i < a.size() && i < prec; ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.size() && i + j < prec; ++j) {
            if (!b[j].is_zero()) {
                out[i + j] += a[i] * b[j];
            }
        }
    }
    return out;
}

// Inverse of a power series in t with constant coefficients.
std::vector<FqElem> scalar_series_inverse(const Poly& s, std::size_t prec)
{
    const FieldPtr& f = s.field();
    std::vector<FqElem> inv(prec, f->zero());
    const FqElem c0 = f->inv(s.coeff(0));
    inv[0] = c0;
    for (std::size_t k = 1; k < prec; ++k) {
        FqElem acc = f->zero();
        for (std::size_t i = 1; i <= k; ++i) {
            acc = f->add(acc, f->mul(s.coeff(i), inv[k - i]));
        }
        inv[k] = f->neg(f->mul(acc, c0));
    }
    return inv;
}

// Subset sums of the factor degrees strictly between 0 and total.
std::set<int> proper_subset_sums(const std::vector<int>& degs, int total)
{
    std::set<int> sums{0};
    for (const int d : degs) {
        std::set<int> next = sums;
        for (const int s : sums) {
            next.insert(s + d);
        }
        sums = std::move(next);
    }
    std::set<int> out;
    for (const int s : sums) {
        if (s > 0 && s < total) {
            out.insert(s);
        }
    }
    return out;
}

struct Center {
    FieldPtr field;
    Embedding embedding;
    FqElem point;
};

// Centers x = c with lc(c) Disc(c) != 0, over F_q first, then over
// extensions of increasing degree.
std::vector<Center> usable_centers(const BivPoly& f, const Poly& disc, std::size_t wanted)
{
    std::vector<Center> out;
    const FieldPtr& base = f.field();
    const Poly bad = disc * f.leading();
    for (unsigned s = 1; out.size() < wanted && s <= 8; ++s) {
        if (s == 1) {
            for (std::uint64_t i = 0; i < base->order() && out.size() < wanted; ++i) {
                const FqElem c = base->element(i);
                if (bad.eval(c).rep != 0) {
                    out.push_back({base, Embedding::identity(base), c});
                }
            }
            continue;
        }
        const auto ext = extend_degree(base, s);
        const Poly badm = bad.mapped(ext.embedding);
        if (badm.eval(ext.root).rep != 0) {
            out.push_back({ext.field, ext.embedding, ext.root});
        }
    }
    return out;
}

std::optional<BivPoly> hensel_factor(const BivPoly& f, const Center& c, std::uint64_t seed)
{
    const FieldPtr& big = c.field;
    const std::size_t dy = static_cast<std::size_t>(f.degree_y());
    const std::size_t prec = static_cast<std::size_t>(f.degree_x()) + 1;

    // T(t, Y) = f(c + t, Y) over the residue field.
    std::vector<Poly> shifted;
    for (const auto& cf : f.coeffs()) {
        shifted.push_back(cf.mapped(c.embedding).taylor_shift(c.point));
    }
    SeriesY t(prec, Poly(big));
    for (std::size_t k = 0; k < prec; ++k) {
        std::vector<FqElem> yc(dy + 1, big->zero());
        for (std::size_t j = 0; j <= dy; ++j) {
            yc[j] = shifted[j].coeff(k);
        }
        t[k] = Poly(big, std::move(yc));
    }
    const Poly& lcs = shifted[dy];
    const auto lc_inv = scalar_series_inverse(lcs, prec);
    SeriesY lc_inv_series;
    for (const auto e : lc_inv) {
        lc_inv_series.push_back(Poly::constant(big, e));
    }
    const SeriesY monic = series_mul(lc_inv_series, t, prec, big);

    std::vector<Poly> g0;
    for (const auto& [g, m] : poly_factor(monic[0], seed)) {
        g0.push_back(g);
    }
    const std::size_t r = g0.size();
    if (r == 1) {
        return std::nullopt;
    }
    std::vector<Poly> sinv(r);
    for (std::size_t i = 0; i < r; ++i) {
        Poly others = Poly::constant(big, big->one());
        for (std::size_t j = 0; j < r; ++j) {
            if (j != i) {
                others = mulmod(others, g0[j], g0[i]);
            }
        }
        sinv[i] = xgcd(others, g0[i]).s;
    }
    std::vector<SeriesY> g(r);
    for (std::size_t i = 0; i < r; ++i) {
        g[i] = SeriesY(prec, Poly(big));
        g[i][0] = g0[i];
    }
    for (std::size_t k = 1; k < prec; ++k) {
        SeriesY prod(k + 1, Poly(big));
        prod[0] = Poly::constant(big, big->one());
        for (std::size_t i = 0; i < r; ++i) {
            prod = series_mul(prod, g[i], k + 1, big);
        }
        const Poly err = monic[k] - prod[k];
        if (err.is_zero()) {
            continue;
        }
        for (std::size_t i = 0; i < r; ++i) {
            g[i][k] = mulmod(err, sinv[i], g0[i]);
        }
    }

    SeriesY lcs_series;
    for (std::size_t k = 0; k < prec; ++k) {
        lcs_series.push_back(Poly::constant(big, lcs.coeff(k)));
    }
    const std::uint32_t full = (1U << r) - 1U;
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 1; m < full; ++m) {
        masks.push_back(m);
    }
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
    for (const std::uint32_t mask : masks) {
        SeriesY cand = lcs_series;
        for (std::size_t i = 0; i < r; ++i) {
            if (mask & (1U << i)) {
                cand = series_mul(cand, g[i], prec, big);
            }
        }
        int cdeg = 0;
        for (std::size_t i = 0; i < r; ++i) {
            if (mask & (1U << i)) {
                cdeg += g0[i].degree();
            }
        }
        std::vector<Poly> ycoeffs;
        bool ok = true;
        for (int j = 0; j <= cdeg && ok; ++j) {
            std::vector<FqElem> tc(prec, big->zero());
            for (std::size_t k = 0; k < prec; ++k) {
                tc[k] = cand[k].coeff(static_cast<std::size_t>(j));
            }
            const Poly in_x = Poly(big, std::move(tc)).taylor_shift(big->neg(c.point));
            auto back = in_x.pulled_back(c.embedding);
            if (!back) {
                ok = false;
                break;
            }
            ycoeffs.push_back(*back);
        }
        if (!ok) {
            continue;
        }
        const BivPoly candidate = BivPoly(f.field(), std::move(ycoeffs)).primitive();
        if (candidate.degree_y() < 1 || candidate.degree_y() >= f.degree_y()) {
            continue;
        }
        if (divide_exact(f, candidate)) {
            return candidate;
        }
    }
    return std::nullopt;
}

} // namespace

BivPoly::BivPoly(FieldPtr field) : field_(std::move(field)) {}

BivPoly::BivPoly(FieldPtr field, std::vector<Poly> ycoeffs) : field_(std::move(field)), coeffs_(std::move(ycoeffs))
{
    trim();
}

BivPoly BivPoly::from_x(const Poly& c)
{
    return BivPoly(c.field(), {c});
}

BivPoly BivPoly::y(const FieldPtr& field)
{
    return BivPoly(field, {Poly(field), Poly::constant(field, field->one())});
}

void BivPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back().is_zero()) {
        coeffs_.pop_back();
    }
}

Poly BivPoly::coeff(std::size_t i) const
{
    return i < coeffs_.size() ? coeffs_[i] : Poly(field_);
}

int BivPoly::degree_x() const
{
    int d = -1;
    for (const auto& c : coeffs_) {
        d = std::max(d, c.degree());
    }
    return d;
}

BivPoly BivPoly::operator-() const
{
    BivPoly r(field_);
    for (const auto& c : coeffs_) {
        r.coeffs_.push_back(-c);
    }
    return r;
}

BivPoly& BivPoly::operator+=(const BivPoly& o)
{
    if (coeffs_.size() < o.coeffs_.size()) {
        coeffs_.resize(o.coeffs_.size(), Poly(field_));
    }
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
        coeffs_[i] += o.coeffs_[i];
    }
    trim();
    return *this;
}

BivPoly& BivPoly::operator-=(const BivPoly& o)
{
    return *this += -o;
}

BivPoly operator*(const BivPoly& a, const BivPoly& b)
{
    if (a.is_zero() || b.is_zero()) {
        return BivPoly(a.field_);
    }
    std::vector<Poly> out(a.coeffs_.size() + b.coeffs_.size() - 1, Poly(a.field_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return BivPoly(a.field_, std::move(out));
}

bool operator==(const BivPoly& a, const BivPoly& b)
{
    return a.coeffs_ == b.coeffs_;
}

BivPoly BivPoly::scaled(const Poly& c) const
{
    std::vector<Poly> out;
    for (const auto& e : coeffs_) {
        out.push_back(e * c);
    }
    return BivPoly(field_, std::move(out));
}

BivPoly BivPoly::pow(std::uint64_t e) const
{
    BivPoly r = from_x(Poly::constant(field_, field_->one()));
    BivPoly b = *this;
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

BivPoly BivPoly::derivative_y() const
{
    std::vector<Poly> out;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        out.push_back(coeffs_[i].scaled(field_->from_int(static_cast<std::int64_t>(i % field_->characteristic()))));
    }
    return BivPoly(field_, std::move(out));
}

BivPoly BivPoly::derivative_x() const
{
    std::vector<Poly> out;
    for (const auto& c : coeffs_) {
        out.push_back(c.derivative());
    }
    return BivPoly(field_, std::move(out));
}

Poly BivPoly::content() const
{
    Poly g(field_);
    for (const auto& c : coeffs_) {
        g = gcd(g, c);
        if (g.is_one()) {
            break;
        }
    }
    return g;
}

BivPoly BivPoly::primitive() const
{
    if (is_zero()) {
        return *this;
    }
    const Poly c = content();
    std::vector<Poly> out;
    for (const auto& e : coeffs_) {
        out.push_back(e / c);
    }
    BivPoly r(field_, std::move(out));
    const FqElem l = r.leading().leading();
    return r.scaled(Poly::constant(field_, field_->inv(l)));
}

Poly BivPoly::eval_x(FqElem c) const
{
    std::vector<FqElem> out;
    for (const auto& e : coeffs_) {
        out.push_back(e.eval(c));
    }
    return Poly(field_, std::move(out));
}

Poly BivPoly::eval_x(const Embedding& e, FqElem c) const
{
    std::vector<FqElem> out;
    for (const auto& cf : coeffs_) {
        out.push_back(cf.mapped(e).eval(c));
    }
    return Poly(e.target(), std::move(out));
}

BivPoly BivPoly::swapped() const
{
    const int dx = degree_x();
    std::vector<Poly> out;
    for (int i = 0; i <= dx; ++i) {
        std::vector<FqElem> c(coeffs_.size(), field_->zero());
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            c[j] = coeffs_[j].coeff(static_cast<std::size_t>(i));
        }
        out.emplace_back(field_, std::move(c));
    }
    return BivPoly(field_, std::move(out));
}

BivPoly BivPoly::mapped(const Embedding& e) const
{
    std::vector<Poly> out;
    for (const auto& c : coeffs_) {
        out.push_back(c.mapped(e));
    }
    return BivPoly(e.target(), std::move(out));
}

std::string BivPoly::to_string(const std::string& xvar, const std::string& yvar) const
{
    if (is_zero()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = coeffs_.size(); j-- > 0;) {
        const Poly& c = coeffs_[j];
        if (c.is_zero()) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        const std::string cs = c.to_string(xvar);
        if (j == 0) {
            os << cs;
            continue;
        }
        if (!c.is_one()) {
            const bool wrap = cs.find(' ') != std::string::npos || cs.find('(') != std::string::npos;
            os << (wrap ? "(" + cs + ")" : cs) << '*';
        }
        os << yvar;
        if (j > 1) {
            os << '^' << j;
        }
    }
    return os.str();
}

std::optional<BivPoly> divide_exact(const BivPoly& a, const BivPoly& b)
{
    if (b.is_zero()) {
        throw InputError("bivariate division by zero");
    }
    const FieldPtr& f = a.field();
    if (a.is_zero()) {
        return BivPoly(f);
    }
    if (a.degree_y() < b.degree_y()) {
        return std::nullopt;
    }
    std::vector<Poly> r = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    std::vector<Poly> q(r.size() - db, Poly(f));
    for (std::size_t k = r.size(); k-- > db;) {
        if (r[k].is_zero()) {
            continue;
        }
        auto [qq, rem] = divmod(r[k], bc.back());
        if (!rem.is_zero()) {
            return std::nullopt;
        }
        q[k - db] = qq;
        for (std::size_t i = 0; i <= db; ++i) {
            r[k - db + i] -= qq * bc[i];
        }
    }
    for (std::size_t i = 0; i < db; ++i) {
        if (!r[i].is_zero()) {
            return std::nullopt;
        }
    }
    return BivPoly(f, std::move(q));
}

Poly bareiss_determinant(std::vector<std::vector<Poly>> m, const FieldPtr& field)
{
    const std::size_t n = m.size();
    if (n == 0) {
        return Poly::constant(field, field->one());
    }
    bool negate = false;
    Poly prev = Poly::constant(field, field->one());
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k].is_zero()) {
                ++piv;
            }
            if (piv == n) {
                return Poly(field);
            }
            std::swap(m[k], m[piv]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = Poly(field);
        }
        prev = m[k][k];
    }
    Poly d = m[n - 1][n - 1];
    return negate ? -d : d;
}

Poly resultant_y(const BivPoly& a, const BivPoly& b, int deg_a, int deg_b)
{
    const FieldPtr& f = a.field();
    const auto size = static_cast<std::size_t>(deg_a + deg_b);
    if (size == 0) {
        return Poly::constant(f, f->one());
    }
    std::vector<std::vector<Poly>> m(size, std::vector<Poly>(size, Poly(f)));
    for (int r = 0; r < deg_b; ++r) {
        for (int j = 0; j <= deg_a; ++j) {
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + j)] = a.coeff(static_cast<std::size_t>(deg_a - j));
        }
    }
    for (int r = 0; r < deg_a; ++r) {
        for (int j = 0; j <= deg_b; ++j) {
            m[static_cast<std::size_t>(deg_b + r)][static_cast<std::size_t>(r + j)] =
                b.coeff(static_cast<std::size_t>(deg_b - j));
        }
    }
    return bareiss_determinant(std::move(m), f);
}

Poly discriminant_y(const BivPoly& f)
{
    const int n = f.degree_y();
    if (n < 1) {
        throw InputError("discriminant of a polynomial of degree 0 in Y");
    }
    const Poly res = resultant_y(f, f.derivative_y(), n, n - 1);
    auto [q, r] = divmod(res, f.leading());
    if (!r.is_zero()) {
        throw Error("discriminant: resultant not divisible by the leading coefficient");
    }
    if (((n * (n - 1)) / 2) % 2 == 1) {
        q = -q;
    }
    return q;
}

std::optional<BivPoly> find_factor(const BivPoly& f, std::uint64_t seed)
{
    const int dy = f.degree_y();
    if (dy < 1) {
        throw InputError("irreducibility test needs positive degree in Y");
    }
    if (dy == 1) {
        return std::nullopt;
    }
    const Poly disc = discriminant_y(f);
    if (disc.is_zero()) {
        throw InputError("irreducibility test needs a separable polynomial");
    }
    const auto centers = usable_centers(f, disc, 6);
    if (centers.empty()) {
        throw Error("no usable specialization center found");
    }
    std::optional<std::set<int>> allowed;
    for (const auto& c : centers) {
        const Poly spec = f.eval_x(c.embedding, c.point);
        std::vector<int> degs;
        for (const auto& [g, m] : poly_factor(spec, seed)) {
            for (int i = 0; i < m; ++i) {
                degs.push_back(g.degree());
            }
        }
        // A factor over F_q[x] of Y-degree k specializes to a factor of
        // degree k over every residue field.
        const auto sums = proper_subset_sums(degs, dy);
        if (!allowed) {
            allowed = sums;
        } else {
            std::set<int> inter;
            std::set_intersection(allowed->begin(), allowed->end(), sums.begin(), sums.end(),
                                  std::inserter(inter, inter.begin()));
            allowed = std::move(inter);
        }
        if (allowed->empty()) {
            return std::nullopt;
        }
    }
    return hensel_factor(f, centers.front(), seed);
}

bool is_irreducible_over_fqx(const BivPoly& f, std::uint64_t seed)
{
    return !find_factor(f, seed).has_value();
}

} // namespace priccati
