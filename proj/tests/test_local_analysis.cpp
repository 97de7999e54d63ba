#include <tuple>

#include "doctest.h"
#include "priccati/error.hpp"
#include "priccati/local_analysis.hpp"
#include "test_util.hpp"

using namespace priccati;
using testutil::curve;

namespace {

int floor_div(int a, int b)
{
    return a >= 0 ? a / b : -((-a + b - 1) / b);
}

// Exhaustive search for c in the field with c^p - c = 1.
bool artin_schreier_has_root(const FieldPtr& f)
{
    for (std::uint64_t i = 0; i < f->order(); ++i) {
        const FqElem c = f->element(i);
        if (f->sub(f->frobenius(c), c) == f->one()) {
            return true;
        }
    }
    return false;
}

LaurentSeries random_series(const FieldPtr& f, int offset, int precision, std::mt19937_64& rng)
{
    std::vector<FqElem> c(static_cast<std::size_t>(precision - offset));
    for (auto& e : c) {
        e = f->random(rng);
    }
    return LaurentSeries(f, offset, c, precision);
}

// N_*(x(t), a(t)) at the place.
LaurentSeries curve_residual(const Place& pl, int precision)
{
    const auto& n = pl.curve()->nstar();
    const LaurentSeries a = pl.a_series(precision);
    LaurentSeries acc = LaurentSeries::zero(pl.residue(), LaurentSeries::kExact);
    for (std::size_t i = n.coeffs().size(); i-- > 0;) {
        acc = acc * a + expand(RatFunc(n.coeff(i)), pl, precision);
    }
    return acc;
}

std::vector<Center> centers_of(const Poly& f)
{
    std::vector<Center> out;
    if (f.degree() < 1) {
        return out;
    }
    for (const auto& [g, m] : poly_factor(f)) {
        (void)m;
        out.push_back(Center::finite(g));
    }
    return out;
}

CurvePtr random_curve(std::uint64_t p, unsigned b, std::mt19937_64& rng)
{
    const auto f = FiniteField::standard(p, b);
    for (;;) {
        const int dy = 1 + static_cast<int>(rng() % 3);
        std::vector<Poly> ys;
        for (int i = 0; i <= dy; ++i) {
            ys.push_back(testutil::random_poly(f, static_cast<int>(rng() % 4), rng));
        }
        if (ys.back().is_zero()) {
            continue;
        }
        try {
            return CurveField::create(BivPoly(f, ys));
        } catch (const InputError&) {
        }
    }
}

} // namespace

TEST_CASE("laurent series arithmetic")
{
    const auto f = FiniteField::prime(5);
    std::mt19937_64 rng(1);
    const LaurentSeries u = random_series(f, -2, 20, rng);
    const LaurentSeries one = LaurentSeries::monomial(f, f->one(), 0);
    REQUIRE_FALSE(u.is_zero());
    const LaurentSeries prod = u * u.inverse();
    CHECK((prod - one).is_zero());
    CHECK(prod.precision() == 20 - u.valuation());
    const LaurentSeries t = LaurentSeries::monomial(f, f->one(), 1);
    CHECK(t.frobenius().valuation() == 5);
    CHECK((u + u - u.scaled(f->from_int(2))).is_zero());
    CHECK(u.shifted(3).valuation() == u.valuation() + 3);
    CHECK(LaurentSeries::monomial(f, f->one(), 5).derivative().is_zero());
    CHECK_THROWS_AS(u.coeff(20), PrecisionError);
    const LaurentSeries v = random_series(f, 0, 15, rng);
    CHECK(((u * v).derivative() - (u.derivative() * v + u * v.derivative())).is_zero());
}

TEST_CASE("places_above examples")
{
    const auto c1 = curve(5, "Y - x");
    const auto f5 = c1->base();
    const auto pl1 = places_above(c1, Center::finite(Poly::x(f5)));
    REQUIRE(pl1.size() == 1);
    CHECK(pl1[0].ram_index() == 1);
    CHECK(pl1[0].a_series(10).agrees_with(LaurentSeries::monomial(f5, f5->one(), 1)));

    for (const std::uint64_t p : {3, 5, 7}) {
        const auto c2 = curve(p, "Y^2 - x");
        const auto& f = c2->base();
        const auto pl2 = places_above(c2, Center::finite(Poly::x(f)));
        REQUIRE(pl2.size() == 1);
        CHECK(pl2[0].ram_index() == 2);
        CHECK(pl2[0].x_series().agrees_with(LaurentSeries::monomial(f, f->one(), 2)));
        CHECK(pl2[0].a_series(12).agrees_with(LaurentSeries::monomial(f, f->one(), 1)));
        CHECK(pl2[0].tprime_valuation() == -1);

        const auto pl3 = places_above(c2, Center::finite(Poly::from_ints(f, {-1, 1})));
        REQUIRE(pl3.size() == 2);
        std::vector<FqElem> leads;
        for (const auto& pl : pl3) {
            CHECK(pl.ram_index() == 1);
            CHECK(pl.relative_degree() == 1);
            CHECK(pl.tprime_valuation() == 0);
            const LaurentSeries a = pl.a_series(8);
            CHECK(a.valuation() == 0);
            leads.push_back(a.leading());
        }
        std::sort(leads.begin(), leads.end());
        CHECK(leads == std::vector<FqElem>{f->one(), f->from_int(-1)});

        const auto inf = places_above(c2, Center::at_infinity());
        REQUIRE(inf.size() == 1);
        CHECK(inf[0].ram_index() == 2);
        CHECK(inf[0].a_valuation() == -1);
    }
    // x^2 + 1 is irreducible over F_3, so its place has a residue field F_9.
    const auto c3 = curve(3, "Y - x");
    const auto pl4 = places_above(c3, Center::finite(Poly::from_ints(c3->base(), {1, 0, 1})));
    REQUIRE(pl4.size() == 1);
    CHECK(pl4[0].residue()->order() == 9);
    CHECK(pl4[0].relative_degree() == 1);
    // Wild ramification is reported, never guessed.
    const auto c4 = curve(2, "x*Y^2 + x*Y + 1");
    CHECK_THROWS_AS(places_above(c4, Center::finite(Poly::x(c4->base()))), UnsupportedError);
}

TEST_CASE("expand examples")
{
    const auto c1 = curve(5, "Y - x");
    const auto& f = c1->base();
    const auto pl = places_above(c1, Center::finite(Poly::from_ints(f, {-2, 1})));
    REQUIRE(pl.size() == 1);
    const LaurentSeries xs = expand(c1->x(), pl[0], 10);
    CHECK(xs.precision() >= 10);
    CHECK(xs.coeff(0) == f->from_int(2));
    CHECK(xs.coeff(1) == f->one());
    CHECK(xs.coeff(2) == f->zero());

    const auto c2 = curve(5, "Y^2 - x");
    const auto pl2 = places_above(c2, Center::finite(Poly::x(f)));
    const LaurentSeries as = expand(c2->a(), pl2[0], 10);
    CHECK(as.agrees_with(LaurentSeries::monomial(f, f->one(), 1)));
    const LaurentSeries inv = expand(c2->x().inverse(), pl2[0], 10);
    CHECK(inv.valuation() == -2);
    CHECK(inv.precision() >= 10);
}

TEST_CASE("fundamental identity and branch invariants on random curves")
{
    std::mt19937_64 rng(11);
    int curves = 0;
    int wild = 0;
    const std::vector<std::pair<std::uint64_t, unsigned>> fields{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {2, 2}};
    while (curves < 30) {
        const auto [p, b] = fields[static_cast<std::size_t>(curves) % fields.size()];
        const auto c = random_curve(p, b, rng);
        std::vector<Center> centers{Center::at_infinity()};
        for (const auto& ct : centers_of(c->lc() * c->disc())) {
            centers.push_back(ct);
        }
        for (const auto& ct : centers_of(testutil::random_monic(c->base(), 2, rng))) {
            centers.push_back(ct);
        }
        for (const auto& ct : centers) {
            std::vector<Place> pls;
            try {
                pls = places_above(c, ct);
            } catch (const UnsupportedError&) {
                ++wild;
                continue;
            }
            int total = 0;
            for (const auto& pl : pls) {
                total += pl.ram_index() * pl.relative_degree();
                const LaurentSeries res = curve_residual(pl, 30);
                CHECK(res.is_zero());
                CHECK(res.precision() >= 10);
                const LaurentSeries chain = pl.tprime_series() * pl.x_series().derivative();
                CHECK(chain.agrees_with(LaurentSeries::monomial(pl.residue(), pl.residue()->one(), 0)));
                const int xv = ct.infinity ? -pl.x_series().valuation()
                                           : (pl.x_series() - LaurentSeries::monomial(pl.residue(), pl.x0(), 0)).valuation();
                CHECK(xv == pl.ram_index());
            }
            CHECK_MESSAGE(total == c->dy(), c->nstar().to_string(), " over ", ct.to_string());
        }
        ++curves;
    }
}

TEST_CASE("chain rule at constructed places")
{
    std::mt19937_64 rng(13);
    for (const auto& [p, nstar] : std::vector<std::pair<std::uint64_t, const char*>>{
             {5, "Y^2 - x"}, {7, "Y^3 - x^2 - 1"}, {3, "x*Y^2 + Y + x"}, {5, "Y^2 + x*Y + x^3 + 1"}}) {
        const auto c = curve(p, nstar);
        std::vector<Place> pls = places_above(c, Center::at_infinity());
        for (const auto& ct : centers_of(c->lc() * c->disc())) {
            for (auto& pl : places_above(c, ct)) {
                pls.push_back(pl);
            }
        }
        for (const auto& pl : pls) {
            for (int i = 0; i < 3; ++i) {
                const FFElem g = testutil::random_nonzero_ffelem(c, 2, 2, rng);
                const LaurentSeries lhs = expand(derive(g), pl, 15);
                const LaurentSeries rhs = derive_series(expand(g, pl, 40), pl);
                CHECK(lhs.agrees_with(rhs));
                CHECK(std::min(lhs.precision(), rhs.precision()) >= 15);
            }
        }
    }
}

TEST_CASE("p-1 power derivation identity on random series")
{
    std::mt19937_64 rng(17);
    for (const std::uint64_t p : {3, 5}) {
        const auto c = curve(p, "Y^2 - x^3 - 1");
        std::vector<Place> pls = places_above(c, Center::at_infinity());
        for (auto& pl : places_above(c, Center::finite(Poly::from_ints(c->base(), {1, 1})))) {
            pls.push_back(pl);
        }
        for (auto& pl : places_above(c, Center::finite(Poly::from_ints(c->base(), {2, 1})))) {
            pls.push_back(pl);
        }
        for (int i = 0; i < 50; ++i) {
            const Place& pl = pls[static_cast<std::size_t>(i) % pls.size()];
            const int off = static_cast<int>(rng() % 7) - 3;
            const LaurentSeries f = random_series(pl.residue(), off, off + 50 + 4 * static_cast<int>(p), rng);
            LaurentSeries d = f;
            for (std::uint64_t k = 0; k + 1 < p; ++k) {
                d = derive_series(d, pl);
            }
            const LaurentSeries lemma = power_derivation(f, pl);
            CHECK(d.agrees_with(lemma));
            CHECK(std::min(d.precision(), lemma.precision()) >= off + 50 - 4 * static_cast<int>(p));
        }
    }
}

TEST_CASE("newton_refine examples and monotone chains")
{
    // p = 3, place t = x, f0 = 0, y_N = (x + 1)^3: one step gives residual O(t^6).
    const auto c = curve(3, "Y - x - 1");
    const auto& f = c->base();
    const auto pl = places_above(c, Center::finite(Poly::x(f)));
    REQUIRE(pl.size() == 1);
    const LaurentSeries zero = LaurentSeries::zero(f, 60);
    const LaurentSeries f1 = newton_refine(zero, pl[0], 0);
    const LaurentSeries r1 = riccati_residual(f1, pl[0]);
    CHECK(r1.valuation() >= 6);
    CHECK(f1.valuation() >= 2);
    // An exact solution is a fixed point.
    const LaurentSeries exact = expand(c->x() + c->one(), pl[0], 60);
    CHECK(newton_refine(exact, pl[0], 5).agrees_with(exact));

    std::mt19937_64 rng(19);
    int chains = 0;
    const std::vector<std::pair<std::uint64_t, const char*>> insts{
        {3, "Y^2 - x"}, {5, "Y^2 - x^3 - 1"}, {3, "Y - x^2 - 1"}, {5, "x*Y^2 + Y + 1"}};
    for (int seed = 0; chains < 20; ++seed) {
        const auto& [p, nstar] = insts[static_cast<std::size_t>(seed) % insts.size()];
        const auto cv = curve(p, nstar);
        std::vector<Place> pls = places_above(cv, Center::finite(Poly::x(cv->base())));
        for (auto& q : places_above(cv, Center::finite(Poly::from_ints(cv->base(), {1, 1})))) {
            pls.push_back(q);
        }
        const Place& place = pls[rng() % pls.size()];
        const int e = place.e_p();
        const int va = place.a_valuation();
        const int start = std::max(va, 1 - e);
        LaurentSeries g = random_series(place.residue(), start, start + 3, rng);
        g = LaurentSeries(g.field(), start, g.coeffs(), 700);
        LaurentSeries r = riccati_residual(g, place);
        if (r.is_zero()) {
            continue;
        }
        int n = floor_div(r.valuation(), static_cast<int>(p));
        if (n <= -e) {
            continue;
        }
        ++chains;
        int prev = r.valuation();
        for (int step = 0; step < 3; ++step) {
            const int pr = static_cast<int>(p);
            const int bound = pr * (pr * n + (pr - 1) * e);
            if (bound >= 600) {
                break;
            }
            g = newton_refine(g, place, n);
            r = riccati_residual(g, place);
            const int val = r.valuation();
            CHECK(val > prev);
            CHECK(val >= std::min(bound, r.precision()));
            prev = val;
            n = floor_div(val, static_cast<int>(p));
        }
    }
}

TEST_CASE("local system examples")
{
    for (const std::uint64_t p : {3, 5, 7, 11}) {
        const auto c = curve(p, "x*Y - 1");
        const auto& f = c->base();
        const auto pl0 = places_above(c, Center::finite(Poly::x(f)));
        REQUIRE(pl0.size() == 1);
        CHECK(local_eta(pl0[0]) == 1);
        const auto sys = build_local_system(pl0[0]);
        REQUIRE(sys.has_value());
        CHECK(sys->eta == 1);
        CHECK(sys->dmat.at(0, 0) == 1);
        CHECK(sys->phi.at(0, 0) == 1);
        CHECK(sys->rhs == std::vector<std::uint64_t>{1});
        CHECK(local_solvable(pl0[0]) == artin_schreier_has_root(f));
        CHECK_FALSE(local_solvable(pl0[0]));
        const auto pl1 = places_above(c, Center::finite(Poly::from_ints(f, {-1, 1})));
        CHECK_FALSE(build_local_system(pl1[0]).has_value());
        const auto inf = places_above(c, Center::at_infinity());
        CHECK(local_eta(inf[0]) == 1);
        CHECK(local_solvable(inf[0]) == artin_schreier_has_root(f));
    }
    for (const unsigned b : {2U, 3U}) {
        const auto f = FiniteField::standard(3, b);
        const auto c = CurveField::create(parse_bivpoly("x*Y - 1", f));
        const auto pl0 = places_above(c, Center::finite(Poly::x(f)));
        CHECK(local_solvable(pl0[0]) == artin_schreier_has_root(f));
    }
    CHECK(artin_schreier_has_root(FiniteField::standard(3, 3)));
    // a = x: every place is locally solvable.
    for (const std::uint64_t p : {3, 5}) {
        const auto c = curve(p, "Y - x");
        const auto inf = places_above(c, Center::at_infinity());
        CHECK(local_eta(inf[0]) == 3);
        CHECK(local_solvable(inf[0]));
        const auto pl = places_above(c, Center::finite(Poly::x(c->base())));
        CHECK_FALSE(build_local_system(pl[0]).has_value());
    }
    // A global solution (f = a for Y^2 - x) implies local solvability everywhere.
    for (const std::uint64_t p : {5, 7, 11}) {
        const auto c = curve(p, "Y^2 - x");
        REQUIRE(is_solution(c->a()));
        for (const auto& pl : places_above(c, Center::at_infinity())) {
            CHECK(local_solvable(pl));
        }
        for (const auto& pl : places_above(c, Center::finite(Poly::x(c->base())))) {
            CHECK(local_solvable(pl));
        }
    }
}

TEST_CASE("local system agrees with the series residual")
{
    // For eta > 0, a solution X of the system gives a truncated f whose
    // residual vanishes below p * nu(t').
    std::mt19937_64 rng(23);
    for (const auto& [p, b, nstar] : std::vector<std::tuple<std::uint64_t, unsigned, const char*>>{
             {3, 3, "x*Y - 1"}, {3, 1, "Y - x"}, {5, 1, "x*Y - x^3 - 1"}, {3, 1, "x^2*Y - x - 1"},
             {5, 1, "Y^2 - x^3"}, {7, 1, "x*Y^2 - 1"}}) {
        const auto c = curve(p, nstar, b);
        std::vector<Place> pls = places_above(c, Center::at_infinity());
        for (auto& pl : places_above(c, Center::finite(Poly::x(c->base())))) {
            pls.push_back(pl);
        }
        for (const auto& pl : pls) {
            const auto sys = build_local_system(pl);
            if (!sys) {
                continue;
            }
            const auto sol = solve_fp(sys->phi - sys->dmat, sys->rhs);
            if (!sol.solution) {
                continue;
            }
            const auto& g = pl.residue();
            const int v = pl.a_valuation();
            std::vector<FqElem> coeffs;
            for (int k = 0; k < sys->eta; ++k) {
                const auto* base = sol.solution->data() + static_cast<std::ptrdiff_t>(k) * sys->block;
                coeffs.push_back(g->from_coords(std::span<const std::uint64_t>(base, sys->block)));
            }
            const LaurentSeries f(g, v, coeffs, 200);
            const LaurentSeries r = riccati_residual(f, pl);
            CHECK(r.valuation() >= static_cast<int>(p) * pl.tprime_valuation());
        }
    }
}

TEST_CASE("ramified residue examples")
{
    const auto c = curve(5, "Y - x");
    const auto& f = c->base();
    const auto pl = places_above(c, Center::finite(Poly::x(f)));
    const auto one = LaurentSeries::monomial(f, f->one(), 0);
    CHECK(ramified_residue(one, pl[0]) == 0);
    for (int m = 1; m <= 7; ++m) {
        const FFElem g = c->x().pow(static_cast<std::uint64_t>(m)) * (c->x() + c->one());
        const LaurentSeries ld = expand(log_derivative(g), pl[0], 20);
        CHECK(ramified_residue(ld, pl[0]) == static_cast<std::uint64_t>(m % 5));
    }
    // Ramified place of Y^2 - x at 0: x has valuation 2, so x'/x has residue 2.
    const auto c2 = curve(5, "Y^2 - x");
    const auto pl2 = places_above(c2, Center::finite(Poly::x(f)));
    CHECK(ramified_residue(expand(log_derivative(c2->x()), pl2[0], 20), pl2[0]) == 2);
    CHECK(ramified_residue(expand(log_derivative(c2->a()), pl2[0], 20), pl2[0]) == 1);
    // Shifting a local solution by g'/g adds nu(g) to the residue.
    const LaurentSeries sol = expand(c2->a(), pl2[0], 20);
    const LaurentSeries shifted = sol - expand(log_derivative(c2->a().pow(3)), pl2[0], 20);
    CHECK(ramified_residue(shifted, pl2[0]) == (ramified_residue(sol, pl2[0]) + 5 - 3) % 5);
    CHECK_THROWS_AS(ramified_residue(LaurentSeries::monomial(f, f->one(), -5), pl2[0]), InputError);
}
