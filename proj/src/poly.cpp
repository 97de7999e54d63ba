#include "priccati/poly.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "priccati/error.hpp"

namespace priccati {

namespace {

constexpr std::size_t kKaratsubaThreshold = 32;

using Coeffs = std::vector<FqElem>;

void schoolbook(const FiniteField& f, const FqElem* a, std::size_t na, const FqElem* b, std::size_t nb,
                FqElem* out)
{
    for (std::size_t i = 0; i < na; ++i) {
        if (a[i].rep == 0) {
            continue;
        }
        for (std::size_t j = 0; j < nb; ++j) {
            out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
        }
    }
}

// out must have room for na + nb - 1 entries and be zero on entry.
void karatsuba(const FiniteField& f, const FqElem* a, std::size_t na, const FqElem* b, std::size_t nb,
               FqElem* out)
{
    if (na == 0 || nb == 0) {
        return;
    }
    if (na < kKaratsubaThreshold || nb < kKaratsubaThreshold) {
        schoolbook(f, a, na, b, nb, out);
        return;
    }
    const std::size_t m = std::max(na, nb) / 2;
    const std::size_t a0n = std::min(m, na);
    const std::size_t a1n = na > m ? na - m : 0;
    const std::size_t b0n = std::min(m, nb);
    const std::size_t b1n = nb > m ? nb - m : 0;
    if (a1n == 0 || b1n == 0) {
        schoolbook(f, a, na, b, nb, out);
        return;
    }

    Coeffs z0(a0n + b0n - 1, f.zero());
    Coeffs z2(a1n + b1n - 1, f.zero());
    karatsuba(f, a, a0n, b, b0n, z0.data());
    karatsuba(f, a + m, a1n, b + m, b1n, z2.data());

    const std::size_t sa = std::max(a0n, a1n);
    const std::size_t sb = std::max(b0n, b1n);
    Coeffs as(sa, f.zero());
    Coeffs bs(sb, f.zero());
    for (std::size_t i = 0; i < a0n; ++i) {
        as[i] = a[i];
    }
    for (std::size_t i = 0; i < a1n; ++i) {
        as[i] = f.add(as[i], a[m + i]);
    }
    for (std::size_t i = 0; i < b0n; ++i) {
        bs[i] = b[i];
    }
    for (std::size_t i = 0; i < b1n; ++i) {
        bs[i] = f.add(bs[i], b[m + i]);
    }
    Coeffs z1(sa + sb - 1, f.zero());
    karatsuba(f, as.data(), sa, bs.data(), sb, z1.data());
    for (std::size_t i = 0; i < z0.size(); ++i) {
        z1[i] = f.sub(z1[i], z0[i]);
    }
    for (std::size_t i = 0; i < z2.size(); ++i) {
        z1[i] = f.sub(z1[i], z2[i]);
    }
    for (std::size_t i = 0; i < z0.size(); ++i) {
        out[i] = f.add(out[i], z0[i]);
    }
    for (std::size_t i = 0; i < z1.size(); ++i) {
        out[m + i] = f.add(out[m + i], z1[i]);
    }
    for (std::size_t i = 0; i < z2.size(); ++i) {
        out[2 * m + i] = f.add(out[2 * m + i], z2[i]);
    }
}

void require_same_field(const Poly& a, const Poly& b)
{
    if (!a.field() || !b.field() || !a.field()->same_as(*b.field())) {
        throw InputError("polynomials over different fields");
    }
}

Poly random_poly(const FieldPtr& f, std::size_t below_degree, std::mt19937_64& rng)
{
    Coeffs c(below_degree);
    for (auto& e : c) {
        e = f->random(rng);
    }
    return Poly(f, std::move(c));
}

void equal_degree_split(const Poly& g, unsigned d, std::mt19937_64& rng, std::vector<Poly>& out)
{
    if (g.degree() == static_cast<int>(d)) {
        out.push_back(g);
        return;
    }
    const FieldPtr& f = g.field();
    const std::uint64_t q = f->order();
    const Poly x = Poly::x(f);
    for (;;) {
        Poly h = random_poly(f, static_cast<std::size_t>(g.degree()), rng);
        if (h.degree() < 1) {
            continue;
        }
        Poly w(f);
        if (f->characteristic() == 2) {
            Poly cur = h;
            const unsigned steps = f->degree() * d;
            for (unsigned i = 0; i < steps; ++i) {
                w += cur;
                cur = mulmod(cur, cur, g);
            }
        } else {
            Poly norm = h;
            Poly cur = h;
            for (unsigned i = 1; i < d; ++i) {
                cur = powmod(cur, q, g);
                norm = mulmod(norm, cur, g);
            }
            w = powmod(norm, (q - 1) / 2, g) - Poly::constant(f, f->one());
        }
        Poly u = gcd(g, w);
        if (u.degree() > 0 && u.degree() < g.degree()) {
            equal_degree_split(u, d, rng, out);
            equal_degree_split(g / u, d, rng, out);
            return;
        }
    }
}

// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<Poly, unsigned>> distinct_degree(const Poly& f)
{
    std::vector<std::pair<Poly, unsigned>> out;
    const FieldPtr& field = f.field();
    const Poly x = Poly::x(field);
    Poly rest = f;
    Poly h = x % rest;
    unsigned i = 0;
    while (rest.degree() >= 2 * static_cast<int>(i + 1)) {
        ++i;
        h = powmod(h, field->order(), rest);
        Poly g = gcd(h - x, rest);
        if (!g.is_one()) {
            out.emplace_back(g, i);
            rest = rest / g;
            h = h % rest;
        }
    }
    if (rest.degree() > 0) {
        out.emplace_back(rest, static_cast<unsigned>(rest.degree()));
    }
    return out;
}

} // namespace

Poly::Poly(FieldPtr field) : field_(std::move(field)) {}

Poly::Poly(FieldPtr field, std::vector<FqElem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs))
{
    trim();
}

Poly Poly::constant(const FieldPtr& field, FqElem c)
{
    return Poly(field, {c});
}

Poly Poly::from_ints(const FieldPtr& field, const std::vector<std::int64_t>& coeffs)
{
    Coeffs c;
    c.reserve(coeffs.size());
    for (const auto v : coeffs) {
        c.push_back(field->from_int(v));
    }
    return Poly(field, std::move(c));
}

Poly Poly::monomial(const FieldPtr& field, FqElem c, std::size_t degree)
{
    Coeffs v(degree + 1, field->zero());
    v[degree] = c;
    return Poly(field, std::move(v));
}

Poly Poly::x(const FieldPtr& field)
{
    return monomial(field, field->one(), 1);
}

void Poly::trim()
{
    while (!coeffs_.empty() && coeffs_.back().rep == 0) {
        coeffs_.pop_back();
    }
}

bool Poly::is_one() const
{
    return coeffs_.size() == 1 && coeffs_[0].rep == 1;
}

FqElem Poly::coeff(std::size_t i) const
{
    return i < coeffs_.size() ? coeffs_[i] : FqElem{0};
}

FqElem Poly::leading() const
{
    return coeffs_.empty() ? FqElem{0} : coeffs_.back();
}

int Poly::low_degree() const
{
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].rep != 0) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

Poly Poly::operator-() const
{
    Poly r(field_);
    r.coeffs_.reserve(coeffs_.size());
    for (const auto c : coeffs_) {
        r.coeffs_.push_back(field_->neg(c));
    }
    return r;
}

Poly& Poly::operator+=(const Poly& o)
{
    require_same_field(*this, o);
    if (coeffs_.size() < o.coeffs_.size()) {
        coeffs_.resize(o.coeffs_.size(), field_->zero());
    }
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
        coeffs_[i] = field_->add(coeffs_[i], o.coeffs_[i]);
    }
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    require_same_field(*this, o);
    if (coeffs_.size() < o.coeffs_.size()) {
        coeffs_.resize(o.coeffs_.size(), field_->zero());
    }
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
        coeffs_[i] = field_->sub(coeffs_[i], o.coeffs_[i]);
    }
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    require_same_field(a, b);
    if (a.is_zero() || b.is_zero()) {
        return Poly(a.field());
    }
    Coeffs out(a.coeffs_.size() + b.coeffs_.size() - 1, FqElem{0});
    karatsuba(*a.field_, a.coeffs_.data(), a.coeffs_.size(), b.coeffs_.data(), b.coeffs_.size(), out.data());
    return Poly(a.field_, std::move(out));
}

Poly& Poly::operator*=(const Poly& o)
{
    *this = *this * o;
    return *this;
}

bool operator==(const Poly& a, const Poly& b)
{
    if (a.coeffs_ != b.coeffs_) {
        return false;
    }
    if (a.coeffs_.empty()) {
        return true;
    }
    return a.field_->same_as(*b.field_);
}

Poly Poly::scaled(FqElem c) const
{
    Coeffs out;
    out.reserve(coeffs_.size());
    for (const auto e : coeffs_) {
        out.push_back(field_->mul(e, c));
    }
    return Poly(field_, std::move(out));
}

Poly Poly::shifted(std::size_t k) const
{
    if (is_zero()) {
        return *this;
    }
    Coeffs out(k, field_->zero());
    out.insert(out.end(), coeffs_.begin(), coeffs_.end());
    return Poly(field_, std::move(out));
}

Poly Poly::truncated(std::size_t n) const
{
    if (coeffs_.size() <= n) {
        return *this;
    }
    return Poly(field_, Coeffs(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Poly Poly::monic() const
{
    if (is_zero()) {
        return *this;
    }
    return scaled(field_->inv(leading()));
}

Poly Poly::derivative() const
{
    if (coeffs_.size() <= 1) {
        return Poly(field_);
    }
    Coeffs out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        out[i - 1] = field_->mul(coeffs_[i], field_->from_int(static_cast<std::int64_t>(i % field_->characteristic())));
    }
    return Poly(field_, std::move(out));
}

FqElem Poly::eval(FqElem c) const
{
    FqElem r = field_->zero();
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        r = field_->add(field_->mul(r, c), coeffs_[i]);
    }
    return r;
}

Poly Poly::taylor_shift(FqElem c) const
{
    const Poly lin(field_, {c, field_->one()});
    Poly r(field_);
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        r = r * lin + Poly::constant(field_, coeffs_[i]);
    }
    return r;
}

Poly Poly::mapped(const Embedding& e) const
{
    Coeffs out;
    out.reserve(coeffs_.size());
    for (const auto c : coeffs_) {
        out.push_back(e(c));
    }
    return Poly(e.target(), std::move(out));
}

std::optional<Poly> Poly::pulled_back(const Embedding& e) const
{
    Coeffs out;
    out.reserve(coeffs_.size());
    for (const auto c : coeffs_) {
        auto pre = e.preimage(c);
        if (!pre) {
            return std::nullopt;
        }
        out.push_back(*pre);
    }
    return Poly(e.source(), std::move(out));
}

Poly Poly::frobenius() const
{
    if (is_zero()) {
        return *this;
    }
    const std::uint64_t p = field_->characteristic();
    Coeffs out((coeffs_.size() - 1) * p + 1, field_->zero());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        out[i * p] = field_->frobenius(coeffs_[i]);
    }
    return Poly(field_, std::move(out));
}

std::optional<Poly> Poly::pth_root() const
{
    if (is_zero()) {
        return *this;
    }
    const std::uint64_t p = field_->characteristic();
    Coeffs out(coeffs_.size() / p + 1, field_->zero());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].rep == 0) {
            continue;
        }
        if (i % p != 0) {
            return std::nullopt;
        }
        out[i / p] = field_->frobenius_root(coeffs_[i]);
    }
    return Poly(field_, std::move(out));
}

Poly Poly::pow(std::uint64_t e) const
{
    Poly r = Poly::constant(field_, field_->one());
    Poly b = *this;
    while (e != 0) {
        if (e & 1U) {
            r *= b;
        }
        e >>= 1U;
        if (e != 0) {
            b = b * b;
        }
    }
    return r;
}

std::string Poly::to_string(const std::string& var) const
{
    if (is_zero()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    const bool ext = field_->degree() > 1;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const FqElem c = coeffs_[i];
        if (c.rep == 0) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        const std::string cs = field_->to_string(c);
        const bool compound = ext && cs.find('+') != std::string::npos;
        if (i == 0) {
            os << (compound ? "(" + cs + ")" : cs);
            continue;
        }
        if (c.rep != 1) {
            os << (compound ? "(" + cs + ")" : cs) << '*';
        }
        os << var;
        if (i > 1) {
            os << '^' << i;
        }
    }
    return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
{
    require_same_field(a, b);
    if (b.is_zero()) {
        throw InputError("polynomial division by zero");
    }
    const FieldPtr& f = a.field();
    if (a.degree() < b.degree()) {
        return {Poly(f), a};
    }
    std::vector<FqElem> r = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    std::vector<FqElem> q(r.size() - db, f->zero());
    const FqElem linv = f->inv(bc.back());
    for (std::size_t k = r.size(); k-- > db;) {
        if (r[k].rep == 0) {
            continue;
        }
        const FqElem c = f->mul(r[k], linv);
        q[k - db] = c;
        for (std::size_t i = 0; i <= db; ++i) {
            r[k - db + i] = f->sub(r[k - db + i], f->mul(c, bc[i]));
        }
    }
    r.resize(db);
    return {Poly(f, std::move(q)), Poly(f, std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b)
{
    return divmod(a, b).first;
}

Poly operator%(const Poly& a, const Poly& b)
{
    return divmod(a, b).second;
}

Poly gcd(const Poly& a, const Poly& b)
{
    Poly x = a;
    Poly y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Poly lcm(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero()) {
        return Poly(a.field());
    }
    return (a / gcd(a, b) * b).monic();
}

XgcdResult xgcd(const Poly& a, const Poly& b)
{
    const FieldPtr& f = a.field();
    Poly r0 = a;
    Poly r1 = b;
    Poly s0 = Poly::constant(f, f->one());
    Poly s1(f);
    Poly t0(f);
    Poly t1 = Poly::constant(f, f->one());
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) {
        return {r0, s0, t0};
    }
    const FqElem li = f->inv(r0.leading());
    return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& mod)
{
    return (a * b) % mod;
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod)
{
    Poly r = Poly::constant(base.field(), base.field()->one()) % mod;
    Poly b = base % mod;
    while (e != 0) {
        if (e & 1U) {
            r = mulmod(r, b, mod);
        }
        e >>= 1U;
        if (e != 0) {
            b = mulmod(b, b, mod);
        }
    }
    return r;
}

Poly compose_mod(const Poly& f, const Poly& g, const Poly& mod)
{
    Poly r(f.field());
    const Poly gm = g % mod;
    for (std::size_t i = f.coeffs().size(); i-- > 0;) {
        r = mulmod(r, gm, mod) + Poly::constant(f.field(), f.coeffs()[i]);
    }
    return r % mod;
}

int multiplicity(Poly f, const Poly& d)
{
    if (f.is_zero() || d.degree() < 1) {
        throw InputError("multiplicity: invalid arguments");
    }
    int k = 0;
    for (;;) {
        auto [q, r] = divmod(f, d);
        if (!r.is_zero()) {
            return k;
        }
        f = std::move(q);
        ++k;
    }
}

bool is_irreducible(const Poly& f)
{
    if (f.degree() < 1) {
        return false;
    }
    if (f.degree() == 1) {
        return true;
    }
    const Poly df = f.derivative();
    if (df.is_zero() || !gcd(f, df).is_one()) {
        return false;
    }
    const Poly fm = f.monic();
    const Poly x = Poly::x(f.field());
    Poly h = x;
    for (int i = 1; i <= f.degree() / 2; ++i) {
        h = powmod(h, f.field()->order(), fm);
        if (!gcd(h - x, fm).is_one()) {
            return false;
        }
    }
    return true;
}

std::vector<std::pair<Poly, int>> squarefree_factor(const Poly& f)
{
    if (f.is_zero()) {
        throw InputError("squarefree factorization of the zero polynomial");
    }
    std::vector<std::pair<Poly, int>> out;
    const Poly fm = f.monic();
    if (fm.degree() < 1) {
        return out;
    }
    const auto p = static_cast<int>(f.field()->characteristic());
    const Poly df = fm.derivative();
    if (df.is_zero()) {
        for (auto& [g, m] : squarefree_factor(*fm.pth_root())) {
            out.emplace_back(g, m * p);
        }
        return out;
    }
    Poly c = gcd(fm, df);
    Poly w = fm / c;
    int i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (z.degree() > 0) {
            out.emplace_back(z, i);
        }
        ++i;
        w = std::move(y);
        c = c / w;
    }
    if (!c.is_one()) {
        for (auto& [g, m] : squarefree_factor(*c.pth_root())) {
            out.emplace_back(g, m * p);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    return out;
}

Poly squarefree_part(const Poly& f)
{
    Poly r = Poly::constant(f.field(), f.field()->one());
    for (const auto& [g, m] : squarefree_factor(f)) {
        r *= g;
    }
    return r;
}

bool poly_less(const Poly& a, const Poly& b)
{
    if (a.degree() != b.degree()) {
        return a.degree() < b.degree();
    }
    for (std::size_t i = a.coeffs().size(); i-- > 0;) {
        if (a.coeffs()[i] != b.coeffs()[i]) {
            return a.coeffs()[i] < b.coeffs()[i];
        }
    }
    return false;
}

std::vector<std::pair<Poly, int>> poly_factor(const Poly& f, std::uint64_t seed)
{
    if (f.is_zero()) {
        throw InputError("cannot factor the zero polynomial");
    }
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Poly, int>> out;
    for (const auto& [g, m] : squarefree_factor(f)) {
        for (const auto& [h, d] : distinct_degree(g)) {
            std::vector<Poly> parts;
            equal_degree_split(h, d, rng, parts);
            for (auto& part : parts) {
                out.emplace_back(part.monic(), m);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (poly_less(a.first, b.first)) {
            return true;
        }
        if (poly_less(b.first, a.first)) {
            return false;
        }
        return a.second < b.second;
    });
    return out;
}

std::vector<FqElem> roots(const Poly& f, std::uint64_t seed)
{
    if (f.is_zero()) {
        throw InputError("roots of the zero polynomial");
    }
    std::vector<FqElem> out;
    if (f.degree() < 1) {
        return out;
    }
    const FieldPtr& field = f.field();
    const Poly fm = f.monic();
    const Poly x = Poly::x(field);
    const Poly g = gcd(fm, powmod(x, field->order(), fm) - x);
    if (g.degree() < 1) {
        return out;
    }
    std::mt19937_64 rng(seed);
    std::vector<Poly> parts;
    equal_degree_split(g, 1, rng, parts);
    for (const auto& l : parts) {
        out.push_back(field->neg(l.monic().coeff(0)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Poly first_irreducible_poly(const FieldPtr& field, unsigned degree)
{
    if (degree == 0) {
        throw InputError("irreducible polynomial of degree 0 requested");
    }
    if (degree == 1) {
        return Poly::x(field);
    }
    const std::uint64_t q = field->order();
    for (std::uint64_t idx = 1;; ++idx) {
        std::vector<FqElem> c(degree + 1, field->zero());
        std::uint64_t v = idx;
        for (unsigned i = 0; i < degree; ++i) {
            c[i] = field->element(v % q);
            v /= q;
        }
        if (v != 0) {
            break;
        }
        c[degree] = field->one();
        Poly cand(field, std::move(c));
        if (cand.coeff(0).rep != 0 && is_irreducible(cand)) {
            return cand;
        }
    }
    throw Error("no irreducible polynomial found");
}

FieldExtension extend(const FieldPtr& base, const Poly& r)
{
    if (r.degree() < 1 || !r.field()->same_as(*base)) {
        throw InputError("extension by an invalid polynomial");
    }
    if (r.degree() == 1) {
        const Poly rm = r.monic();
        return {base, Embedding::identity(base), base->neg(rm.coeff(0))};
    }
    const unsigned abs_degree = base->degree() * static_cast<unsigned>(r.degree());
    const FieldPtr big = FiniteField::standard(base->characteristic(), abs_degree);
    Embedding emb;
    if (base->degree() == 1) {
        emb = Embedding(base, big, big->zero());
    } else {
        std::vector<FqElem> mc;
        for (const auto c : base->modulus()) {
            mc.push_back(big->from_int(static_cast<std::int64_t>(c)));
        }
        const auto rts = roots(Poly(big, std::move(mc)));
        if (rts.empty()) {
            throw Error("failed to embed base field");
        }
        emb = Embedding(base, big, rts.front());
    }
    const auto rts = roots(r.mapped(emb));
    if (rts.empty()) {
        throw InputError("extension polynomial is not irreducible of the expected degree");
    }
    return {big, emb, rts.front()};
}

FieldExtension extend_degree(const FieldPtr& base, unsigned degree)
{
    return extend(base, first_irreducible_poly(base, degree));
}

} // namespace priccati
