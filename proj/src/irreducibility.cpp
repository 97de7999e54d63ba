#include "priccati/irreducibility.hpp"

#include "priccati/error.hpp"

namespace priccati {

namespace {

std::vector<Center> centers_dividing(const Poly& f, std::uint64_t seed)
{
    std::vector<Center> out;
    if (f.degree() < 1) {
        return out;
    }
    for (const auto& [g, m] : poly_factor(f, seed)) {
        (void)m;
        out.push_back(Center::finite(g));
    }
    return out;
}

bool divides(const Poly& d, const Poly& f)
{
    return !f.is_zero() && (f % d).is_zero();
}

PlaceReport describe(const Place& pl)
{
    PlaceReport r;
    r.center = pl.center().to_string();
    r.ram_index = pl.ram_index();
    r.relative_degree = pl.relative_degree();
    r.eta = local_eta(pl);
    return r;
}

} // namespace

std::string to_string(Verdict v)
{
    return v == Verdict::Reducible ? "reducible" : "irreducible";
}

std::vector<Place> critical_places(const CurvePtr& curve)
{
    std::vector<Place> out;
    for (const auto& c : centers_dividing(curve->lc(), curve->seed())) {
        for (auto& pl : places_above(curve, c)) {
            out.push_back(std::move(pl));
        }
    }
    for (auto& pl : places_above(curve, Center::at_infinity())) {
        out.push_back(std::move(pl));
    }
    for (const auto& c : centers_dividing(curve->disc(), curve->seed())) {
        if (divides(c.poly, curve->lc())) {
            continue;
        }
        std::vector<Place> pls;
        try {
            pls = places_above(curve, c);
        } catch (const UnsupportedError&) {
            continue;
        }
        for (auto& pl : pls) {
            if (pl.ram_index() > 1 && local_eta(pl) > 0) {
                out.push_back(std::move(pl));
            }
        }
    }
    return out;
}

IrreducibilityReport is_reducible(const CurvePtr& curve)
{
    IrreducibilityReport rep;
    auto test = [&rep](const Place& pl) {
        PlaceReport r = describe(pl);
        if (r.eta > 0) {
            r.tested = true;
            r.solvable = local_solvable(pl);
            if (!r.solvable) {
                rep.verdict = Verdict::Irreducible;
            }
        } else {
            r.note = "eta <= 0, always solvable";
        }
        rep.places.push_back(std::move(r));
    };
    for (const auto& c : centers_dividing(curve->lc(), curve->seed())) {
        for (const auto& pl : places_above(curve, c)) {
            test(pl);
        }
    }
    for (const auto& pl : places_above(curve, Center::at_infinity())) {
        test(pl);
    }
    for (const auto& c : centers_dividing(curve->disc(), curve->seed())) {
        if (divides(c.poly, curve->lc())) {
            continue;
        }
        try {
            for (const auto& pl : places_above(curve, c)) {
                if (pl.ram_index() > 1) {
                    test(pl);
                }
            }
        } catch (const UnsupportedError&) {
            // a is integral above this center and nu(t') <= 0, so eta <= 0 at
            // every place above it whatever the ramification.
            PlaceReport r;
            r.center = c.to_string();
            r.ram_index = 0;
            r.relative_degree = 0;
            r.note = "wildly ramified, a has no pole here so eta <= 0";
            rep.places.push_back(std::move(r));
        }
    }
    return rep;
}

} // namespace priccati
