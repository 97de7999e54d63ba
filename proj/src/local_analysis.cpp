#include "priccati/local_analysis.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "priccati/error.hpp"

namespace priccati {

struct BranchData {
    FieldPtr field;
    Embedding embedding;
    bool infinity = false;
    FqElem x0{0};
    FqElem gamma{1};
    int e = 1;
    // a = prefix(t) + s t^w y(t) with F(t, y(t)) = 0 and y(0) = 0 a simple root.
    std::vector<std::pair<int, FqElem>> prefix;
    FqElem s{1};
    int w = 0;
    std::vector<Poly> equation;
    bool exact_zero = false;

    mutable std::mutex mutex;
    mutable Poly y_cache;
    mutable std::size_t y_precision = 0;
};

namespace {

long long floor_div(long long a, long long b)
{
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

long long ceil_div(long long a, long long b)
{
    return -floor_div(-a, b);
}

FqElem zpow(const FieldPtr& f, FqElem z, long long k)
{
    if (k >= 0) {
        return f->pow(z, static_cast<std::uint64_t>(k));
    }
    return f->inv(f->pow(z, static_cast<std::uint64_t>(-k)));
}

// 1/h mod t^n for h(0) != 0.
Poly series_inverse(const Poly& h, std::size_t n)
{
    const auto& f = h.field();
    Poly g = Poly::constant(f, f->inv(h.coeff(0)));
    std::size_t prec = 1;
    while (prec < n) {
        prec = std::min(2 * prec, n);
        const Poly hg = (h.truncated(prec) * g).truncated(prec);
        const Poly two_minus = Poly::constant(f, f->from_int(2)) - hg;
        g = (g * two_minus).truncated(prec);
    }
    return g.truncated(n);
}

Poly eval_truncated(const std::vector<Poly>& eq, const Poly& y, std::size_t n)
{
    Poly acc(y.field());
    for (std::size_t j = eq.size(); j-- > 0;) {
        acc = (acc * y).truncated(n) + eq[j].truncated(n);
    }
    return acc;
}

// y with eq(t, y) = 0 mod t^n, continuing from an approximation exact mod t^k.
Poly lift_root(const std::vector<Poly>& eq, Poly y, std::size_t k, std::size_t n)
{
    const auto& f = eq.front().field();
    std::vector<Poly> deq;
    for (std::size_t j = 1; j < eq.size(); ++j) {
        deq.push_back(eq[j].scaled(f->from_int(static_cast<std::int64_t>(j % f->characteristic()))));
    }
    std::size_t prec = std::max<std::size_t>(k, 1);
    while (prec < n) {
        prec = std::min(2 * prec, n);
        const Poly val = eval_truncated(eq, y, prec);
        const Poly der = eval_truncated(deq, y, prec);
        y = (y - (val * series_inverse(der, prec)).truncated(prec)).truncated(prec);
    }
    return y.truncated(n);
}

struct PuiseuxState {
    FieldPtr field;
    Embedding embedding;
    FqElem x0{0};
    FqElem gamma{1};
    int e = 1;
    std::vector<std::pair<int, FqElem>> prefix;
    FqElem s{1};
    int w = 0;
    std::vector<Poly> eq;
};

PuiseuxState map_state(const PuiseuxState& st, const FieldExtension& ext)
{
    if (ext.embedding.is_identity()) {
        return st;
    }
    const Embedding& m = ext.embedding;
    PuiseuxState r;
    r.field = ext.field;
    r.embedding = st.embedding.then(m);
    r.x0 = m(st.x0);
    r.gamma = m(st.gamma);
    r.e = st.e;
    for (const auto& [k, c] : st.prefix) {
        r.prefix.emplace_back(k, m(c));
    }
    r.s = m(st.s);
    r.w = st.w;
    for (const auto& h : st.eq) {
        r.eq.push_back(h.mapped(m));
    }
    return r;
}

// u q - v m = 1.
void bezout(long long q, long long m, long long& u, long long& v)
{
    if (q == 1) {
        u = 1;
        v = 0;
        return;
    }
    long long old_r = q;
    long long r = m;
    long long old_s = 1;
    long long s = 0;
    long long old_t = 0;
    long long t = 1;
    while (r != 0) {
        const long long quo = old_r / r;
        old_r = std::exchange(r, old_r - quo * r);
        old_s = std::exchange(s, old_s - quo * s);
        old_t = std::exchange(t, old_t - quo * t);
    }
    if (old_r < 0) {
        old_s = -old_s;
        old_t = -old_t;
    }
    u = old_s;
    v = -old_t;
}

class Puiseux {
public:
    Puiseux(bool infinity, std::uint64_t p, std::uint64_t seed) : infinity_(infinity), p_(p), seed_(seed) {}

    void run(PuiseuxState st, int imax)
    {
        if (st.eq[0].is_zero()) {
            finalize(st, true);
            st.eq.erase(st.eq.begin());
            --imax;
            if (imax == 0) {
                return;
            }
        }
        std::vector<std::pair<int, int>> pts;
        for (int i = 0; i <= imax; ++i) {
            if (!st.eq[static_cast<std::size_t>(i)].is_zero()) {
                pts.emplace_back(i, st.eq[static_cast<std::size_t>(i)].low_degree());
            }
        }
        std::vector<std::pair<int, int>> hull;
        for (const auto& pt : pts) {
            while (hull.size() >= 2) {
                const auto& a = hull[hull.size() - 2];
                const auto& b = hull.back();
                const long long cross = static_cast<long long>(b.first - a.first) * (pt.second - a.second) -
                                        static_cast<long long>(b.second - a.second) * (pt.first - a.first);
                if (cross > 0) {
                    break;
                }
                hull.pop_back();
            }
            hull.push_back(pt);
        }
        for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
            edge(st, hull[h], hull[h + 1]);
        }
    }

    std::vector<std::shared_ptr<BranchData>> branches;

private:
    void edge(const PuiseuxState& st, std::pair<int, int> from, std::pair<int, int> to)
    {
        const auto [i0, j0] = from;
        const auto [i1, j1] = to;
        long long m = j0 - j1;
        long long q = i1 - i0;
        const long long g = std::gcd(m < 0 ? -m : m, q);
        m /= g;
        q /= g;
        const auto& f = st.field;
        std::vector<FqElem> phi;
        for (long long k = 0; k <= (i1 - i0) / q; ++k) {
            const auto i = static_cast<std::size_t>(i0 + k * q);
            const long long j = j0 - k * m;
            phi.push_back(j >= 0 ? st.eq[i].coeff(static_cast<std::size_t>(j)) : f->zero());
        }
        for (const auto& [psi, mult] : poly_factor(Poly(f, phi), seed_)) {
            (void)mult;
            const FieldExtension ext = extend(f, psi);
            if ((static_cast<std::uint64_t>(q) * static_cast<std::uint64_t>(st.e)) % p_ == 0) {
                throw UnsupportedError("wildly ramified place (ramification index divisible by p = " +
                                       std::to_string(p_) + ")");
            }
            PuiseuxState st2 = map_state(st, ext);
            substitute(st2, ext.root, q, m, static_cast<long long>(q) * j0 + m * i0);
            int r = 0;
            while (st2.eq[static_cast<std::size_t>(r)].coeff(0).rep == 0) {
                ++r;
            }
            if (r == 1) {
                finalize(st2, false);
            } else {
                run(std::move(st2), r);
            }
        }
    }

    void substitute(PuiseuxState& st, FqElem zeta, long long q, long long m, long long line)
    {
        const auto& f = st.field;
        long long u = 0;
        long long v = 0;
        bezout(q, m, u, v);
        const FqElem gam = zpow(f, zeta, v);
        const FqElem beta = zpow(f, zeta, u);
        const std::size_t deg = st.eq.size() - 1;
        std::vector<std::vector<std::uint64_t>> binom(deg + 1);
        for (std::size_t i = 0; i <= deg; ++i) {
            binom[i].assign(i + 1, 1);
            for (std::size_t k = 1; k < i; ++k) {
                binom[i][k] = (binom[i - 1][k - 1] + binom[i - 1][k]) % p_;
            }
        }
        std::vector<FqElem> beta_pow(deg + 1, f->one());
        for (std::size_t i = 1; i <= deg; ++i) {
            beta_pow[i] = f->mul(beta_pow[i - 1], beta);
        }
        std::vector<Poly> out(deg + 1, Poly(f));
        for (std::size_t i = 0; i <= deg; ++i) {
            const Poly& h = st.eq[i];
            if (h.is_zero()) {
                continue;
            }
            std::vector<FqElem> ht;
            FqElem gj = f->one();
            for (std::size_t j = 0; j < h.coeffs().size(); ++j, gj = f->mul(gj, gam)) {
                const FqElem c = h.coeffs()[j];
                if (c.rep == 0) {
                    continue;
                }
                const long long ex = q * static_cast<long long>(j) + m * static_cast<long long>(i) - line;
                if (ex < 0) {
                    throw Error("Newton polygon edge below the point set");
                }
                if (ht.size() <= static_cast<std::size_t>(ex)) {
                    ht.resize(static_cast<std::size_t>(ex) + 1, f->zero());
                }
                ht[static_cast<std::size_t>(ex)] = f->add(ht[static_cast<std::size_t>(ex)], f->mul(c, gj));
            }
            const Poly htp(f, ht);
            for (std::size_t k = 0; k <= i; ++k) {
                const std::uint64_t b = binom[i][k];
                if (b == 0) {
                    continue;
                }
                const FqElem coef = f->mul(f->from_int(static_cast<std::int64_t>(b)), beta_pow[i - k]);
                out[k] += htp.scaled(coef);
            }
        }
        std::vector<std::pair<int, FqElem>> prefix;
        for (const auto& [k, c] : st.prefix) {
            prefix.emplace_back(static_cast<int>(q * k), f->mul(c, zpow(f, gam, k)));
        }
        const FqElem sg = f->mul(st.s, zpow(f, gam, st.w));
        prefix.emplace_back(static_cast<int>(q * st.w + m), f->mul(sg, beta));
        st.prefix = std::move(prefix);
        st.s = sg;
        st.w = static_cast<int>(q * st.w + m);
        st.gamma = f->mul(st.gamma, zpow(f, gam, st.e));
        st.e = static_cast<int>(q * st.e);
        st.eq = std::move(out);
    }

    void finalize(const PuiseuxState& st, bool exact_zero)
    {
        if (static_cast<std::uint64_t>(st.e) % p_ == 0) {
            throw UnsupportedError("wildly ramified place (ramification index " + std::to_string(st.e) +
                                   " divisible by p = " + std::to_string(p_) + ")");
        }
        auto b = std::make_shared<BranchData>();
        b->field = st.field;
        b->embedding = st.embedding;
        b->infinity = infinity_;
        b->x0 = st.x0;
        b->gamma = st.gamma;
        b->e = st.e;
        b->prefix = st.prefix;
        b->s = st.s;
        b->w = st.w;
        b->exact_zero = exact_zero;
        if (!exact_zero) {
            b->equation = st.eq;
        }
        b->y_cache = Poly(st.field);
        b->y_precision = 1;
        branches.push_back(std::move(b));
    }

    bool infinity_;
    std::uint64_t p_;
    std::uint64_t seed_;
};

// Exact expansion of a polynomial in x at the place.
LaurentSeries eval_poly(const Poly& f, const Place& place)
{
    const auto& g = place.residue();
    const Poly fm = f.mapped(place.embedding());
    const int e = place.ram_index();
    if (fm.is_zero()) {
        return LaurentSeries::zero(g, LaurentSeries::kExact);
    }
    if (place.center().infinity) {
        const int d = fm.degree();
        std::vector<FqElem> out(static_cast<std::size_t>(d * e) + 1, g->zero());
        const FqElem ginv = g->inv(place.gamma());
        FqElem gp = g->one();
        for (int j = 0; j <= d; ++j, gp = g->mul(gp, ginv)) {
            out[static_cast<std::size_t>((d - j) * e)] = g->mul(fm.coeff(static_cast<std::size_t>(j)), gp);
        }
        return LaurentSeries(g, -d * e, std::move(out), LaurentSeries::kExact);
    }
    const Poly sh = fm.taylor_shift(place.x0());
    const int d = sh.degree();
    std::vector<FqElem> out(static_cast<std::size_t>(d * e) + 1, g->zero());
    FqElem gp = g->one();
    for (int j = 0; j <= d; ++j, gp = g->mul(gp, place.gamma())) {
        out[static_cast<std::size_t>(j * e)] = g->mul(sh.coeff(static_cast<std::size_t>(j)), gp);
    }
    return LaurentSeries(g, 0, std::move(out), LaurentSeries::kExact);
}

LaurentSeries primitive(const LaurentSeries& h, const Place& place)
{
    const auto& g = h.field();
    const auto p = static_cast<long long>(g->characteristic());
    const LaurentSeries u = h * place.tprime_series().inverse();
    std::vector<FqElem> out;
    const int off = u.valuation() + 1;
    for (std::size_t i = 0; i < u.coeffs().size(); ++i) {
        const long long k = u.valuation() + static_cast<long long>(i);
        const long long k1 = ((k + 1) % p + p) % p;
        const FqElem c = u.coeffs()[i];
        if (k1 == 0) {
            if (c.rep != 0) {
                throw Error("series has no primitive: nonzero coefficient at t^" + std::to_string(k));
            }
            out.push_back(g->zero());
            continue;
        }
        out.push_back(g->div(c, g->from_int(k1)));
    }
    return LaurentSeries(g, off, std::move(out), u.is_exact() ? LaurentSeries::kExact : u.precision() + 1);
}

} // namespace

Center Center::at_infinity()
{
    Center c;
    c.infinity = true;
    return c;
}

Center Center::finite(const Poly& p)
{
    if (p.degree() < 1 || !is_irreducible(p)) {
        throw InputError("center must be a monic irreducible polynomial, got " + p.to_string());
    }
    Center c;
    c.poly = p.monic();
    return c;
}

std::string Center::to_string() const
{
    return infinity ? "infinity" : poly.to_string();
}

bool operator==(const Center& a, const Center& b)
{
    if (a.infinity || b.infinity) {
        return a.infinity == b.infinity;
    }
    return a.poly == b.poly;
}

Place::Place(CurvePtr curve, Center center, std::shared_ptr<BranchData> branch)
    : curve_(std::move(curve)), center_(std::move(center)), branch_(std::move(branch))
{
}

const FieldPtr& Place::residue() const
{
    return branch_->field;
}

const Embedding& Place::embedding() const
{
    return branch_->embedding;
}

int Place::ram_index() const
{
    return branch_->e;
}

int Place::relative_degree() const
{
    return static_cast<int>(branch_->field->degree() / (curve_->base()->degree() * static_cast<unsigned>(center_.degree())));
}

unsigned Place::residue_degree_over_fp() const
{
    return branch_->field->degree();
}

FqElem Place::x0() const
{
    return branch_->x0;
}

FqElem Place::gamma() const
{
    return branch_->gamma;
}

int Place::tprime_valuation() const
{
    return center_.infinity ? branch_->e + 1 : 1 - branch_->e;
}

int Place::default_precision() const
{
    return 4 * (static_cast<int>(curve_->p()) + curve_->dx() * curve_->dy());
}

LaurentSeries Place::x_series() const
{
    const auto& g = branch_->field;
    const int e = branch_->e;
    if (center_.infinity) {
        return LaurentSeries::monomial(g, g->inv(branch_->gamma), -e);
    }
    std::vector<FqElem> c(static_cast<std::size_t>(e) + 1, g->zero());
    c[0] = branch_->x0;
    c[static_cast<std::size_t>(e)] = branch_->gamma;
    return LaurentSeries(g, 0, std::move(c), LaurentSeries::kExact);
}

LaurentSeries Place::tprime_series() const
{
    const auto& g = branch_->field;
    const int e = branch_->e;
    const FqElem ef = g->from_int(e);
    if (center_.infinity) {
        return LaurentSeries::monomial(g, g->neg(g->div(branch_->gamma, ef)), e + 1);
    }
    return LaurentSeries::monomial(g, g->inv(g->mul(ef, branch_->gamma)), 1 - e);
}

LaurentSeries Place::a_series(int precision) const
{
    const BranchData& b = *branch_;
    const auto& g = b.field;
    int lo = 0;
    for (const auto& pr : b.prefix) {
        lo = std::min(lo, pr.first);
    }
    int hi = 0;
    for (const auto& pr : b.prefix) {
        hi = std::max(hi, pr.first);
    }
    std::vector<FqElem> pc(static_cast<std::size_t>(hi - lo) + 1, g->zero());
    for (const auto& [k, c] : b.prefix) {
        pc[static_cast<std::size_t>(k - lo)] = g->add(pc[static_cast<std::size_t>(k - lo)], c);
    }
    LaurentSeries prefix(g, lo, std::move(pc), LaurentSeries::kExact);
    if (b.exact_zero) {
        return prefix.truncated(precision);
    }
    const long long need = static_cast<long long>(precision) - b.w;
    if (need <= 0) {
        return prefix.truncated(precision);
    }
    const auto n = static_cast<std::size_t>(need);
    Poly y(g);
    {
        std::lock_guard<std::mutex> lock(b.mutex);
        if (b.y_precision < n) {
            b.y_cache = lift_root(b.equation, b.y_cache, b.y_precision, n);
            b.y_precision = n;
        }
        y = b.y_cache.truncated(n);
    }
    const LaurentSeries tail = LaurentSeries(g, b.w, y.coeffs(), precision).scaled(b.s);
    return (prefix + tail).truncated(precision);
}

int Place::a_valuation() const
{
    const BranchData& b = *branch_;
    if (b.exact_zero && b.prefix.empty()) {
        return LaurentSeries::kExact;
    }
    int prec = default_precision();
    for (;;) {
        const LaurentSeries a = a_series(prec);
        if (!a.is_zero()) {
            return a.valuation();
        }
        prec *= 2;
    }
}

std::string Place::to_string() const
{
    std::ostringstream os;
    os << "place above " << center_.to_string() << " (e = " << ram_index() << ", f = " << relative_degree() << ")";
    return os.str();
}

std::vector<Place> places_above(const CurvePtr& curve, const Center& center)
{
    const auto& base = curve->base();
    const BivPoly& n = curve->nstar();
    PuiseuxState st;
    if (center.infinity) {
        st.field = base;
        st.embedding = Embedding::identity(base);
        st.x0 = base->zero();
        const int dx = n.degree_x();
        for (const auto& c : n.coeffs()) {
            std::vector<FqElem> rev(static_cast<std::size_t>(dx) + 1, base->zero());
            for (int k = 0; k <= c.degree(); ++k) {
                rev[static_cast<std::size_t>(dx - k)] = c.coeff(static_cast<std::size_t>(k));
            }
            st.eq.emplace_back(base, std::move(rev));
        }
    } else {
        if (!center.poly.field()->same_as(*base)) {
            throw InputError("center is not defined over the base field");
        }
        const FieldExtension ext = extend(base, center.poly);
        st.field = ext.field;
        st.embedding = ext.embedding;
        st.x0 = ext.root;
        for (const auto& c : n.coeffs()) {
            st.eq.push_back(c.mapped(ext.embedding).taylor_shift(ext.root));
        }
    }
    st.gamma = st.field->one();
    st.s = st.field->one();
    Puiseux np(center.infinity, curve->p(), curve->seed());
    np.run(std::move(st), n.degree_y());
    std::vector<Place> out;
    for (auto& b : np.branches) {
        out.emplace_back(curve, center, std::move(b));
    }
    return out;
}

Place place_at_simple_root(const CurvePtr& curve, const Center& center, const FieldExtension& residue, FqElem y0)
{
    const auto& g = residue.field;
    const BivPoly& n = curve->nstar();
    std::vector<Poly> shifted_x;
    for (const auto& c : n.coeffs()) {
        shifted_x.push_back(c.mapped(residue.embedding).taylor_shift(residue.root));
    }
    // Substitute Y -> y0 + Y.
    std::vector<Poly> eq(shifted_x.size(), Poly(g));
    for (std::size_t i = shifted_x.size(); i-- > 0;) {
        std::vector<Poly> next(shifted_x.size(), Poly(g));
        for (std::size_t k = 0; k + 1 < eq.size(); ++k) {
            next[k + 1] += eq[k];
            next[k] += eq[k].scaled(y0);
        }
        next[0] += shifted_x[i];
        eq = std::move(next);
    }
    if (!eq[0].is_zero() && eq[0].coeff(0).rep != 0) {
        throw InputError("y0 is not a root of N_*(x0, Y)");
    }
    if (eq.size() < 2 || eq[1].coeff(0).rep == 0) {
        throw InputError("y0 is not a simple root of N_*(x0, Y)");
    }
    auto b = std::make_shared<BranchData>();
    b->field = g;
    b->embedding = residue.embedding;
    b->x0 = residue.root;
    b->gamma = g->one();
    b->e = 1;
    if (y0.rep != 0) {
        b->prefix.emplace_back(0, y0);
    }
    b->s = g->one();
    b->w = 0;
    b->equation = std::move(eq);
    b->y_cache = Poly(g);
    b->y_precision = 1;
    return Place(curve, center, std::move(b));
}

LaurentSeries expand(const RatFunc& f, const Place& place, int precision)
{
    const auto& g = place.residue();
    if (f.is_zero()) {
        return LaurentSeries::zero(g, precision);
    }
    const LaurentSeries num = eval_poly(f.num(), place);
    const LaurentSeries den = eval_poly(f.den(), place);
    const int vn = num.valuation();
    const int vd = den.valuation();
    const int rel = std::max(1, precision - vn + vd);
    const LaurentSeries inv = den.coeffs().size() == 1 ? den.inverse() : den.truncated(vd + rel).inverse();
    return (num * inv).truncated(precision);
}

LaurentSeries expand(const FFElem& f, const Place& place, int precision)
{
    const auto& g = place.residue();
    int slack = 0;
    for (;;) {
        const int wp = precision + slack;
        const LaurentSeries a = place.a_series(wp);
        LaurentSeries apow = LaurentSeries::monomial(g, g->one(), 0);
        LaurentSeries sum = LaurentSeries::zero(g, LaurentSeries::kExact);
        for (std::size_t i = 0; i < f.coords().size(); ++i) {
            if (!f.coord(i).is_zero()) {
                sum += expand(f.coord(i), place, wp) * apow;
            }
            if (i + 1 < f.coords().size()) {
                apow = apow * a;
            }
        }
        if (sum.precision() >= precision) {
            return sum.truncated(precision);
        }
        slack = std::max(2 * slack, 8) + (precision - sum.precision());
    }
}

LaurentSeries derive_series(const LaurentSeries& f, const Place& place)
{
    return f.derivative() * place.tprime_series();
}

LaurentSeries riccati_residual(const LaurentSeries& f, const Place& place)
{
    const auto p = static_cast<long long>(place.curve()->p());
    LaurentSeries d = f;
    for (long long i = 0; i + 1 < p; ++i) {
        d = derive_series(d, place);
    }
    const LaurentSeries fp = f.frobenius();
    const int target = std::min(d.precision(), fp.precision());
    if (target >= LaurentSeries::kExact / 2) {
        throw PrecisionError("riccati_residual needs a series of finite precision");
    }
    const LaurentSeries ap = place.a_series(static_cast<int>(ceil_div(target, p)) + 1).frobenius();
    return (d + fp - ap).truncated(target);
}

LaurentSeries power_derivation(const LaurentSeries& f, const Place& place)
{
    const auto p = place.curve()->p();
    LaurentSeries g = f * place.tprime_series().pow(p - 1);
    for (std::uint64_t i = 0; i + 1 < p; ++i) {
        g = g.derivative();
    }
    return g;
}

LaurentSeries newton_refine(const LaurentSeries& f0, const Place& place, int n)
{
    const auto p = static_cast<int>(place.curve()->p());
    const int e = place.e_p();
    const int goal = p * (p * n + (p - 1) * e);
    LaurentSeries f = f0;
    if (f.is_exact()) {
        f = f.truncated(std::max(goal, p * n) + (p - 1) * e + p);
    }
    const LaurentSeries r = riccati_residual(f, place);
    if (r.precision() < p * n) {
        throw PrecisionError("residual known to t^" + std::to_string(r.precision()) + " only; at least t^" +
                             std::to_string(p * n) + " is needed");
    }
    if (r.valuation() < p * n) {
        throw InputError("residual valuation " + std::to_string(r.valuation()) + " is below p*n = " +
                         std::to_string(p * n));
    }
    LaurentSeries prim = r;
    for (int i = 0; i + 1 < p; ++i) {
        prim = primitive(prim, place);
    }
    return f - prim;
}

int local_eta(const Place& place)
{
    const int va = place.a_valuation();
    if (va >= LaurentSeries::kExact / 2) {
        return -1;
    }
    return place.tprime_valuation() - va;
}

const MatrixFp& frobenius_matrix(const FieldPtr& field)
{
    static std::mutex mutex;
    static std::map<const FiniteField*, std::pair<FieldPtr, MatrixFp>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(field.get());
    if (it != cache.end()) {
        return it->second.second;
    }
    const unsigned b = field->degree();
    MatrixFp m(field->characteristic(), b, b);
    for (unsigned j = 0; j < b; ++j) {
        std::vector<std::uint64_t> ej(b, 0);
        ej[j] = 1;
        const auto img = field->coords(field->frobenius(field->from_coords(ej)));
        for (unsigned i = 0; i < b; ++i) {
            m.at(i, j) = img[i];
        }
    }
    return cache.emplace(field.get(), std::make_pair(field, std::move(m))).first->second.second;
}

MatrixFp multiplication_matrix(const FieldPtr& field, FqElem c)
{
    const unsigned b = field->degree();
    MatrixFp m(field->characteristic(), b, b);
    for (unsigned j = 0; j < b; ++j) {
        std::vector<std::uint64_t> ej(b, 0);
        ej[j] = 1;
        const auto img = field->coords(field->mul(c, field->from_coords(ej)));
        for (unsigned i = 0; i < b; ++i) {
            m.at(i, j) = img[i];
        }
    }
    return m;
}

std::optional<LocalSystem> build_local_system(const Place& place)
{
    const int eta = local_eta(place);
    if (eta <= 0) {
        return std::nullopt;
    }
    const auto& g = place.residue();
    const auto p = static_cast<long long>(g->characteristic());
    const int mu = place.tprime_valuation();
    const int v = place.a_valuation();
    const LaurentSeries a = place.a_series(mu);
    const FqElem g0 = g->pow(place.tprime_series().leading(), static_cast<std::uint64_t>(p - 1));
    const unsigned b = g->degree();
    const std::size_t n = static_cast<std::size_t>(eta) * b;
    LocalSystem sys;
    sys.eta = eta;
    sys.block = b;
    sys.phi = MatrixFp(static_cast<std::uint64_t>(p), n, n);
    sys.dmat = MatrixFp(static_cast<std::uint64_t>(p), n, n);
    const MatrixFp& fr = frobenius_matrix(g);
    const MatrixFp mg = multiplication_matrix(g, g0);
    for (int k = 0; k < eta; ++k) {
        const std::size_t r0 = static_cast<std::size_t>(k) * b;
        for (unsigned i = 0; i < b; ++i) {
            for (unsigned j = 0; j < b; ++j) {
                sys.phi.at(r0 + i, r0 + j) = fr.at(i, j);
            }
        }
        const long long nk = p * k - (p - 1) * (eta - 1);
        if (nk >= 0 && nk < eta) {
            const std::size_t c0 = static_cast<std::size_t>(nk) * b;
            for (unsigned i = 0; i < b; ++i) {
                for (unsigned j = 0; j < b; ++j) {
                    sys.dmat.at(r0 + i, c0 + j) = mg.at(i, j);
                }
            }
        }
        const auto ac = g->coords(g->frobenius(a.coeff(k + v)));
        sys.rhs.insert(sys.rhs.end(), ac.begin(), ac.end());
    }
    return sys;
}

bool local_solvable(const Place& place)
{
    const auto sys = build_local_system(place);
    if (!sys) {
        return true;
    }
    return solve_fp(sys->phi - sys->dmat, sys->rhs).solution.has_value();
}

std::uint64_t ramified_residue(const LaurentSeries& f, const Place& place)
{
    const int mu = place.tprime_valuation();
    if (f.valuation() >= mu) {
        return 0;
    }
    if (f.valuation() < mu - 1) {
        throw InputError("ramified residue needs nu(f) >= nu(t') - 1");
    }
    const auto& g = f.field();
    const FqElem k = g->div(f.leading(), place.tprime_series().leading());
    if (!g->in_prime_field(k)) {
        throw InputError("ramified residue is not in the prime field; f is not a local solution");
    }
    return k.rep;
}

} // namespace priccati
