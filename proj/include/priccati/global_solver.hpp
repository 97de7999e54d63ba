#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "priccati/irreducibility.hpp"
#include "priccati/local_analysis.hpp"
#include "priccati/matrix_fp.hpp"

namespace priccati {

// Span over F_p of omega_l x^j a^i / delta, with omega_l running over the power
// basis of F_q over F_p, 0 <= j <= B and 0 <= i < d_y.
struct CandidateSpace {
    CurvePtr curve;
    int level = 0;
    Poly delta;
    int B = 0;
    int pole_bound = 0;

    std::size_t dimension() const;
    // Index of omega_l x^j a^i / delta in the basis.
    std::size_t index(unsigned l, int j, int i) const;
    // The element with the given F_p-coordinates.
    FFElem element(const std::vector<std::uint64_t>& coords) const;
};

// Level l of the escalation ladder. For d_y = 1 the space has the denominator
// of a and numerator degree max(deg num a, deg den a) * 2^l; otherwise
// B = max(1, d_x d_y) 2^l and delta = (lc sqfree(Disc))^{2^l - 1} rad(lc).
CandidateSpace candidate_space(const CurvePtr& curve, int level);
// Largest coefficient degree the ladder may reach: 8 r_max d_x d_y.
int degree_cap(const CurvePtr& curve);

// An unramified place with t = x - c and t' = 1, away from delta, Disc and lc.
struct GoodPlace {
    Place place;
    FqElem c;
};

GoodPlace choose_good_place(const CurvePtr& curve, const Poly& delta);

// sum_k frobenius_root(f_{pk+p-1}) t^k; requires t' = 1.
LaurentSeries section_series(const LaurentSeries& f, const Place& place);

struct GlobalSystem {
    MatrixFp matrix;
    std::vector<std::uint64_t> rhs;
    int precision = 0;
};

// Precision floor(pole_bound / deg center) + 1.
int global_precision(const CandidateSpace& space, const GoodPlace& place);
// Columns: F_p-coordinates of h - S_{p-1}(h) mod t^precision for the basis
// elements h; right-hand side: the coordinates of a.
GlobalSystem build_global_system(const CandidateSpace& space, const GoodPlace& place, int precision = 0);

struct SolveOptions {
    // Highest level to try; negative means up to the degree cap.
    int max_level = -1;
    // Precision doublings after a candidate fails exact verification.
    int max_doublings = 3;
};

struct SolveOutcome {
    IrreducibilityReport report;
    std::optional<FFElem> solution;
    int level = -1;
    int B = 0;
    Poly delta;
    int precision = 0;
    std::string good_center;
};

// Runs the irreducibility test, then the escalation ladder. Throws
// IncompleteSearchError when the verdict is Reducible and every level fails.
SolveOutcome solve_priccati_detailed(const CurvePtr& curve, const SolveOptions& options = {});
std::optional<FFElem> solve_priccati(const CurvePtr& curve);

// nu(f) >= min(nu(a), nu(t') - 1) at every critical place, for a solution f.
bool valuation_bound_check(const FFElem& f);

} // namespace priccati
