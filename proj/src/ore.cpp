#include "priccati/ore.hpp"

#include "priccati/linalg.hpp"

namespace priccati {

OrePoly<RatFunc> nstar_p_operator(const CurvePtr& curve)
{
    const auto& f = curve->base();
    const std::uint64_t p = curve->p();
    const RatFunc zero(f);
    std::vector<RatFunc> coeffs(static_cast<std::size_t>(curve->dy()) * p + 1, zero);
    for (int i = 0; i <= curve->dy(); ++i) {
        coeffs[static_cast<std::size_t>(i) * p] = RatFunc(curve->nstar().coeff(static_cast<std::size_t>(i)).pow(p));
    }
    return OrePoly<RatFunc>(zero, std::move(coeffs));
}

OrePoly<FFElem> lift_to_curve(const OrePoly<RatFunc>& l, const CurvePtr& curve)
{
    std::vector<FFElem> coeffs;
    for (const auto& c : l.coeffs()) {
        coeffs.push_back(curve->from_ratfunc(c));
    }
    return OrePoly<FFElem>(curve->zero(), std::move(coeffs));
}

OrePoly<RatFunc> reconstruct_factor(const CurvePtr& curve, const FFElem& f)
{
    if (f.curve() != curve || !is_solution(f)) {
        throw InputError("reconstruct_factor needs a solution of the p-Riccati equation");
    }
    const auto dy = static_cast<std::size_t>(curve->dy());
    std::vector<FFElem> a{curve->one()};
    for (std::size_t i = 0; i < dy; ++i) {
        a.push_back(a.back() * f + derive(a.back()));
    }
    MatrixRat m(curve->base(), dy, dy + 1);
    for (std::size_t j = 0; j <= dy; ++j) {
        for (std::size_t i = 0; i < dy; ++i) {
            m.at(i, j) = a[j].coord(i);
        }
    }
    const auto res = solve_fqx(m, std::vector<RatFunc>(dy, RatFunc(curve->base())));
    if (res.kernel.empty()) {
        throw Error("the vectors a_0, ..., a_{d_y} are independent");
    }
    const OrePoly<RatFunc> l(RatFunc(curve->base()), res.kernel.front());
    return l.monic();
}

FFElem vdp_extract(const OrePoly<FFElem>& l, const CurvePtr& curve)
{
    const auto p = curve->p();
    if (l.order() < 1 || static_cast<std::uint64_t>(l.order()) >= p * static_cast<std::uint64_t>(curve->dy())) {
        throw InputError("vdp_extract needs a nontrivial right divisor of N(D^p)");
    }
    OrePoly<FFElem> dp = OrePoly<FFElem>::monomial(curve->one(), p) - OrePoly<FFElem>(curve->zero(), {curve->y_n()});
    const OrePoly<FFElem> lstar = gcrd(l, dp);
    const int m = lstar.order();
    if (m < 1) {
        throw InputError("gcrd(L, D^p - y_N) is trivial; L does not right-divide N(D^p)");
    }
    if (static_cast<std::uint64_t>(m) % p == 0) {
        throw InputError("the order of gcrd(L, D^p - y_N) is divisible by p");
    }
    const FFElem mf = curve->from_ratfunc(RatFunc::constant(curve->base(), curve->base()->from_int(m)));
    return -(lstar.coeff(static_cast<std::size_t>(m - 1)) / mf);
}

} // namespace priccati
