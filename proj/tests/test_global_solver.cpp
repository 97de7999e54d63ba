#include <tuple>

#include "doctest.h"
#include "priccati/error.hpp"
#include "priccati/global_solver.hpp"
#include "test_util.hpp"

using namespace priccati;
using testutil::curve;

namespace {

LaurentSeries random_series(const FieldPtr& f, int offset, int precision, std::mt19937_64& rng)
{
    std::vector<FqElem> c(static_cast<std::size_t>(precision - offset));
    for (auto& e : c) {
        e = f->random(rng);
    }
    return LaurentSeries(f, offset, c, precision);
}

bool divides(const Poly& d, const Poly& f)
{
    return (f % d).is_zero();
}

} // namespace

TEST_CASE("section_series examples")
{
    for (const std::uint64_t p : {3, 5, 7}) {
        const auto c = curve(p, "Y - x");
        const auto gp = choose_good_place(c, Poly::constant(c->base(), c->base()->one()));
        const auto& f = gp.place.residue();
        const auto tp = LaurentSeries(f, static_cast<int>(p) - 1, {f->one()}, 40);
        const auto s1 = section_series(tp, gp.place);
        CHECK(s1.agrees_with(LaurentSeries::monomial(f, f->one(), 0)));
        CHECK(s1.precision() == 40 / static_cast<int>(p));
        CHECK(section_series(LaurentSeries(f, 1, {f->one()}, 40), gp.place).is_zero());
    }
    std::mt19937_64 rng(31);
    for (const std::uint64_t p : {3, 5}) {
        for (const unsigned b : {1U, 2U}) {
            const auto c = curve(p, "Y^2 - x^3 - 1", b);
            const auto gp = choose_good_place(c, Poly::constant(c->base(), c->base()->one()));
            const auto& f = gp.place.residue();
            for (int i = 0; i < 10; ++i) {
                const LaurentSeries s = random_series(f, 0, 60, rng);
                LaurentSeries d = s;
                for (std::uint64_t k = 0; k + 1 < p; ++k) {
                    d = d.derivative();
                }
                CHECK((-section_series(s, gp.place).frobenius()).agrees_with(d));
            }
        }
    }
    const auto c2 = curve(5, "Y^2 - x");
    const auto inf = places_above(c2, Center::at_infinity());
    CHECK_THROWS_AS(section_series(LaurentSeries::monomial(c2->base(), c2->base()->one(), 0), inf[0]), InputError);
}

TEST_CASE("choose_good_place examples")
{
    const auto c1 = curve(3, "Y - x");
    const auto& f = c1->base();
    const Poly one = Poly::constant(f, f->one());
    CHECK(choose_good_place(c1, one).c == f->zero());
    CHECK(choose_good_place(c1, Poly::x(f)).c == f->one());
    const auto c2 = curve(3, "Y^2 - x");
    const auto gp = choose_good_place(c2, one);
    CHECK(gp.c == f->one());
    CHECK(gp.place.tprime_valuation() == 0);
    // Every element of F_3 is a root of x^3 - x, so the place moves to F_9.
    const auto gp2 = choose_good_place(c1, Poly::from_ints(f, {0, -1, 0, 1}));
    CHECK(gp2.place.center().degree() == 2);
    CHECK(gp2.place.residue()->order() == 9);
}

TEST_CASE("build_global_system examples")
{
    const auto c = curve(3, "Y - x");
    const auto space = candidate_space(c, 0);
    CHECK(space.B == 1);
    CHECK(space.delta.is_one());
    CHECK(space.dimension() == 2);
    const auto gp = choose_good_place(c, space.delta);
    const auto sys = build_global_system(space, gp);
    const auto sol = solve_fp(sys.matrix, sys.rhs);
    REQUIRE(sol.solution.has_value());
    CHECK(*sol.solution == std::vector<std::uint64_t>{0, 1});
    CHECK(space.element(*sol.solution) == c->x());

    // a = x^2 is out of reach of the span of 1 and x.
    const auto c2 = curve(3, "Y - x^2");
    CandidateSpace small = candidate_space(c2, 0);
    small.B = 1;
    const auto gp2 = choose_good_place(c2, small.delta);
    const auto sys2 = build_global_system(small, gp2);
    CHECK_FALSE(solve_fp(sys2.matrix, sys2.rhs).solution.has_value());
}

TEST_CASE("solve_priccati examples")
{
    const auto c1 = curve(3, "Y - x");
    const auto s1 = solve_priccati(c1);
    REQUIRE(s1.has_value());
    CHECK(riccati_map(*s1) == c1->x().pow(3));
    for (const std::uint64_t p : {3, 5, 7}) {
        CHECK_FALSE(solve_priccati(curve(p, "x*Y - 1")).has_value());
    }
    for (const std::uint64_t p : {5, 7}) {
        const auto c = curve(p, "Y^2 - x");
        const auto s = solve_priccati(c);
        REQUIRE(s.has_value());
        CHECK(is_solution(*s));
        CHECK(valuation_bound_check(*s));
    }
    const auto c27 = curve(3, "x*Y - 1", 3);
    const auto s27 = solve_priccati(c27);
    REQUIRE(s27.has_value());
    CHECK(is_solution(*s27));
}

TEST_CASE("valuation_bound_check examples")
{
    const auto c1 = curve(5, "Y - x");
    CHECK(valuation_bound_check(c1->x()));
    const auto c2 = curve(5, "Y^2 - x");
    CHECK(valuation_bound_check(c2->a()));
    std::mt19937_64 rng(37);
    for (int i = 0; i < 6; ++i) {
        const FFElem g = testutil::random_nonzero_ffelem(c2, 2, 2, rng);
        CHECK(valuation_bound_check(c2->a() - log_derivative(g)));
    }
    CHECK_THROWS_AS(valuation_bound_check(c2->a() + c2->one()), InputError);
}

TEST_CASE("section and derivation agree at the good place")
{
    std::mt19937_64 rng(41);
    for (const auto& [p, nstar] : std::vector<std::pair<std::uint64_t, const char*>>{
             {3, "Y^2 - x"}, {5, "Y^2 - x^3 - 1"}, {5, "x*Y - x^2 - 1"}, {7, "Y^3 - x^2 - x"}}) {
        const auto c = curve(p, nstar);
        const auto space = candidate_space(c, 0);
        const auto gp = choose_good_place(c, space.delta);
        for (int i = 0; i < 5; ++i) {
            std::vector<std::uint64_t> coords(space.dimension());
            for (auto& v : coords) {
                v = rng() % p;
            }
            const FFElem f = space.element(coords);
            const LaurentSeries fs = expand(f, gp.place, 60);
            const LaurentSeries lhs = expand(riccati_map(f), gp.place, 60);
            const LaurentSeries rhs = (fs - section_series(fs, gp.place)).frobenius();
            CHECK(lhs.agrees_with(rhs));
            CHECK(rhs.precision() >= 60 - static_cast<int>(p));
        }
    }
}

TEST_CASE("rational case: stability and shape")
{
    std::mt19937_64 rng(43);
    for (int i = 0; i < 30; ++i) {
        const std::uint64_t p = std::vector<std::uint64_t>{3, 5, 7}[static_cast<std::size_t>(i) % 3];
        const auto f = FiniteField::prime(p);
        const RatFunc g0 = testutil::random_ratfunc(f, 3, 3, rng);
        const RatFunc a = testutil::riccati_root(g0);
        if (a.is_zero()) {
            continue;
        }
        const auto c = testutil::rational_curve(a);
        const auto out = solve_priccati_detailed(c);
        REQUIRE(out.solution.has_value());
        CHECK(out.level == 0);
        const RatFunc& s = out.solution->coord(0);
        CHECK(divides(s.den(), a.den()));
        CHECK(s.num().degree() <= std::max(a.num().degree(), a.den().degree()));
        // f - S(f) = (riccati_map f)^{1/p} keeps the squarefree denominator of the space.
        const Poly delta = squarefree_part(a.den()).monic();
        const RatFunc member(testutil::random_poly(f, 3, rng), delta);
        const RatFunc image = testutil::riccati_root(member);
        CHECK(divides(image.den(), delta));
    }
}

TEST_CASE("solver agrees with the irreducibility verdict")
{
    for (const auto& [p, b, nstar] : std::vector<std::tuple<std::uint64_t, unsigned, const char*>>{
             {3, 1, "Y - x"}, {3, 1, "x*Y - 1"}, {3, 2, "x*Y - 1"}, {5, 1, "Y^2 - x"}, {5, 1, "x^2*Y - x - 1"},
             {7, 1, "Y^2 - x^3 - 1"}, {5, 1, "x*Y^2 - 1"}, {3, 1, "Y^2 + x*Y + 1"}}) {
        const auto c = curve(p, nstar, b);
        const auto out = solve_priccati_detailed(c);
        CHECK_MESSAGE((out.report.verdict == Verdict::Reducible) == out.solution.has_value(), nstar, " p=", p);
        if (out.solution) {
            CHECK(is_solution(*out.solution));
            for (const auto& pl : critical_places(c)) {
                CHECK(local_solvable(pl));
            }
        }
    }
}
