#include "priccati/global_solver.hpp"

#include <algorithm>

#include "priccati/error.hpp"

namespace priccati {

namespace {

RatFunc a_as_ratfunc(const CurvePtr& curve)
{
    const BivPoly& n = curve->nstar();
    return RatFunc(-n.coeff(0), n.coeff(1));
}

void put_coords(MatrixFp& m, std::size_t col, const LaurentSeries& s, const FieldPtr& g, int precision)
{
    const unsigned bg = g->degree();
    for (int k = 0; k < precision; ++k) {
        const FqElem c = s.coeff(k);
        if (c.rep == 0) {
            continue;
        }
        const auto cs = g->coords(c);
        for (unsigned r = 0; r < bg; ++r) {
            m.at(static_cast<std::size_t>(k) * bg + r, col) = cs[r];
        }
    }
}

} // namespace

std::size_t CandidateSpace::dimension() const
{
    return static_cast<std::size_t>(curve->base()->degree()) * static_cast<std::size_t>(curve->dy()) *
           static_cast<std::size_t>(B + 1);
}

std::size_t CandidateSpace::index(unsigned l, int j, int i) const
{
    const std::size_t b = curve->base()->degree();
    return (static_cast<std::size_t>(i) * static_cast<std::size_t>(B + 1) + static_cast<std::size_t>(j)) * b + l;
}

FFElem CandidateSpace::element(const std::vector<std::uint64_t>& coords) const
{
    if (coords.size() != dimension()) {
        throw InputError("coordinate vector does not match the candidate space");
    }
    const auto& f = curve->base();
    const unsigned b = f->degree();
    std::vector<RatFunc> out;
    for (int i = 0; i < curve->dy(); ++i) {
        std::vector<FqElem> num;
        for (int j = 0; j <= B; ++j) {
            const auto* base = coords.data() + index(0, j, i);
            num.push_back(f->from_coords(std::span<const std::uint64_t>(base, b)));
        }
        out.emplace_back(Poly(f, num), delta);
    }
    return FFElem(curve, out);
}

CandidateSpace candidate_space(const CurvePtr& curve, int level)
{
    if (level < 0) {
        throw InputError("level must be nonnegative");
    }
    CandidateSpace s;
    s.curve = curve;
    s.level = level;
    const int dx = curve->dx();
    const int dy = curve->dy();
    const auto& f = curve->base();
    if (dy == 1) {
        const RatFunc a = a_as_ratfunc(curve);
        s.delta = a.den();
        const int b0 = a.is_zero() ? 0 : a.height();
        s.B = level == 0 ? b0 : std::max(1, b0) << level;
    } else {
        s.B = std::max(1, dx * dy) << level;
        const Poly rad = squarefree_part(curve->lc()).monic();
        const Poly base = (curve->lc() * squarefree_part(curve->disc())).monic();
        s.delta = base.pow((std::uint64_t{1} << level) - 1) * rad;
    }
    if (s.delta.is_zero()) {
        s.delta = Poly::constant(f, f->one());
    }
    s.pole_bound = dy * (s.delta.degree() + s.B) + (dy - 1) * dx + dx + dy * std::max(0, curve->disc().degree()) +
                   (dy - 1) * curve->lc().degree();
    return s;
}

int degree_cap(const CurvePtr& curve)
{
    const int dx = std::max(1, curve->dx());
    const int dy = curve->dy();
    const int rmax = (dx - 1) * (dy - 1) + 1;
    return 8 * rmax * dx * dy;
}

GoodPlace choose_good_place(const CurvePtr& curve, const Poly& delta)
{
    const auto& base = curve->base();
    const Poly bad = delta * curve->disc() * curve->lc();
    for (unsigned s = 1;; ++s) {
        const FieldExtension ext = s == 1 ? FieldExtension{base, Embedding::identity(base), base->zero()}
                                          : extend_degree(base, s);
        const auto& g = ext.field;
        const Poly bad_g = bad.mapped(ext.embedding);
        const std::uint64_t q = base->order();
        for (std::uint64_t idx = 0; idx < g->order(); ++idx) {
            const FqElem c = g->element(idx);
            std::vector<FqElem> orbit{c};
            for (FqElem y = g->pow(c, q); y != c; y = g->pow(y, q)) {
                orbit.push_back(y);
            }
            if (orbit.size() != s) {
                continue;
            }
            if (bad_g.eval(c).rep == 0) {
                continue;
            }
            const Poly nc = curve->nstar().eval_x(ext.embedding, c);
            const Poly dnc = nc.derivative();
            for (const FqElem y0 : roots(nc, curve->seed())) {
                if (dnc.eval(y0).rep == 0) {
                    continue;
                }
                Poly minpoly = Poly::constant(g, g->one());
                for (const FqElem r : orbit) {
                    minpoly = minpoly * Poly(g, {g->neg(r), g->one()});
                }
                const auto mp = minpoly.pulled_back(ext.embedding);
                if (!mp) {
                    throw Error("minimal polynomial does not descend to the base field");
                }
                const FieldExtension residue{g, ext.embedding, c};
                return GoodPlace{place_at_simple_root(curve, Center::finite(*mp), residue, y0), c};
            }
        }
    }
}

LaurentSeries section_series(const LaurentSeries& f, const Place& place)
{
    if (place.center().infinity || place.ram_index() != 1 || place.gamma() != place.residue()->one()) {
        throw InputError("section_series needs a place with t' = 1");
    }
    const auto& g = f.field();
    const auto p = static_cast<long long>(g->characteristic());
    auto fdiv = [](long long a, long long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
    const long long prec = fdiv(f.precision(), p);
    if (f.is_zero()) {
        return LaurentSeries::zero(g, static_cast<int>(prec));
    }
    const long long lo = fdiv(f.valuation(), p);
    std::vector<FqElem> out;
    for (long long k = lo; k < prec; ++k) {
        out.push_back(g->frobenius_root(f.coeff(static_cast<int>(p * k + p - 1))));
    }
    return LaurentSeries(g, static_cast<int>(lo), std::move(out), static_cast<int>(prec));
}

int global_precision(const CandidateSpace& space, const GoodPlace& place)
{
    return space.pole_bound / place.place.center().degree() + 1;
}

GlobalSystem build_global_system(const CandidateSpace& space, const GoodPlace& gp, int precision)
{
    const Place& place = gp.place;
    const auto& curve = space.curve;
    const auto& base = curve->base();
    const auto& g = place.residue();
    const int prec = precision > 0 ? precision : global_precision(space, gp);
    const auto p = static_cast<int>(curve->p());
    const int n = p * (prec + 1);
    const unsigned b = base->degree();
    const unsigned bg = g->degree();

    GlobalSystem sys;
    sys.precision = prec;
    sys.matrix = MatrixFp(curve->p(), static_cast<std::size_t>(prec) * bg, space.dimension());
    std::vector<FqElem> omega;
    std::vector<FqElem> omega_root;
    for (unsigned l = 0; l < b; ++l) {
        std::vector<std::uint64_t> el(b, 0);
        el[l] = 1;
        omega.push_back(place.embedding()(base->from_coords(el)));
        omega_root.push_back(g->frobenius_root(omega.back()));
    }
    const LaurentSeries a = place.a_series(n);
    const LaurentSeries x = place.x_series();
    LaurentSeries ai = expand(RatFunc(Poly::constant(base, base->one()), space.delta), place, n);
    for (int i = 0; i < curve->dy(); ++i) {
        LaurentSeries h = ai;
        for (int j = 0; j <= space.B; ++j) {
            const LaurentSeries sec = section_series(h, place);
            for (unsigned l = 0; l < b; ++l) {
                const LaurentSeries col = h.scaled(omega[l]) - sec.scaled(omega_root[l]);
                put_coords(sys.matrix, space.index(l, j, i), col, g, prec);
            }
            h = (h * x).truncated(n);
        }
        ai = (ai * a).truncated(n);
    }
    for (int k = 0; k < prec; ++k) {
        const auto cs = g->coords(a.coeff(k));
        sys.rhs.insert(sys.rhs.end(), cs.begin(), cs.end());
    }
    return sys;
}

SolveOutcome solve_priccati_detailed(const CurvePtr& curve, const SolveOptions& options)
{
    SolveOutcome out;
    out.report = is_reducible(curve);
    if (out.report.verdict == Verdict::Irreducible) {
        return out;
    }
    const int cap = degree_cap(curve);
    for (int level = 0;; ++level) {
        if (options.max_level >= 0 && level > options.max_level) {
            break;
        }
        const CandidateSpace space = candidate_space(curve, level);
        if (level > 0 && space.B > cap) {
            break;
        }
        const GoodPlace gp = choose_good_place(curve, space.delta);
        int prec = global_precision(space, gp);
        for (int d = 0; d <= options.max_doublings; ++d, prec *= 2) {
            const GlobalSystem sys = build_global_system(space, gp, prec);
            const FpSolveResult sol = solve_fp(sys.matrix, sys.rhs);
            if (!sol.solution) {
                break;
            }
            FFElem f = space.element(*sol.solution);
            if (is_solution(f)) {
                out.solution = std::move(f);
                out.level = level;
                out.B = space.B;
                out.delta = space.delta;
                out.precision = prec;
                out.good_center = gp.place.center().to_string();
                return out;
            }
        }
    }
    throw IncompleteSearchError("the instance is reducible but no solution was found up to coefficient degree " +
                                std::to_string(cap));
}

std::optional<FFElem> solve_priccati(const CurvePtr& curve)
{
    return solve_priccati_detailed(curve).solution;
}

bool valuation_bound_check(const FFElem& f)
{
    if (!is_solution(f)) {
        throw InputError("valuation_bound_check needs a solution of the p-Riccati equation");
    }
    if (f.is_zero()) {
        return true;
    }
    for (const auto& pl : critical_places(f.curve())) {
        int prec = pl.default_precision();
        LaurentSeries s = expand(f, pl, prec);
        while (s.is_zero()) {
            prec *= 2;
            s = expand(f, pl, prec);
        }
        const int bound = std::min(pl.a_valuation(), pl.tprime_valuation() - 1);
        if (s.valuation() < bound) {
            return false;
        }
    }
    return true;
}

} // namespace priccati
