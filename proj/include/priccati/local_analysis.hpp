#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "priccati/curve.hpp"
#include "priccati/matrix_fp.hpp"
#include "priccati/series.hpp"

namespace priccati {

// A point of the projective x-line: a monic irreducible P(x) over F_q or infinity.
struct Center {
    bool infinity = false;
    Poly poly;

    static Center at_infinity();
    static Center finite(const Poly& p);
    int degree() const { return infinity ? 1 : poly.degree(); }
    std::string to_string() const;
    friend bool operator==(const Center& a, const Center& b);
};

struct BranchData;

// A place of K_N above a center, given by a branch of N_*(x, Y) = 0.
// With t the local parameter, x = x0 + gamma t^e at a finite center and
// x = gamma^{-1} t^{-e} at infinity; a(t) is known to arbitrary precision.
class Place {
public:
    Place(CurvePtr curve, Center center, std::shared_ptr<BranchData> branch);

    const CurvePtr& curve() const { return curve_; }
    const Center& center() const { return center_; }
    // Residue field G_P, with the embedding of F_q.
    const FieldPtr& residue() const;
    const Embedding& embedding() const;
    int ram_index() const;
    // [G_P : residue field of the center].
    int relative_degree() const;
    // [G_P : F_p].
    unsigned residue_degree_over_fp() const;
    FqElem x0() const;
    FqElem gamma() const;

    // nu(t') and e_P = 1 - nu(t').
    int tprime_valuation() const;
    int e_p() const { return 1 - tprime_valuation(); }

    // Default working precision 4 (p + d_x d_y).
    int default_precision() const;
    LaurentSeries x_series() const;
    LaurentSeries tprime_series() const;
    LaurentSeries a_series(int precision) const;
    LaurentSeries a_series() const { return a_series(default_precision()); }
    // nu_P(a).
    int a_valuation() const;

    std::string to_string() const;

private:
    CurvePtr curve_;
    Center center_;
    std::shared_ptr<BranchData> branch_;
};

// All places above a center, by rational Newton-Puiseux. Throws
// UnsupportedError on a wildly ramified branch (p | e).
std::vector<Place> places_above(const CurvePtr& curve, const Center& center);

// The unramified place above the center through the point (x0, y0) of
// N_* = 0, where x0 generates the residue field of the center inside
// residue.field and y0 is a simple root of N_*(x0, Y). Here t = x - x0.
Place place_at_simple_root(const CurvePtr& curve, const Center& center, const FieldExtension& residue, FqElem y0);

// Expansion of a rational function in x at the place.
LaurentSeries expand(const RatFunc& f, const Place& place, int precision);
// Expansion of f in K_N at the place, with absolute precision >= precision.
LaurentSeries expand(const FFElem& f, const Place& place, int precision);
// d/dx of a local series: t' d/dt.
LaurentSeries derive_series(const LaurentSeries& f, const Place& place);
// f^{(p-1)} + f^p - a^p in the completion, with f^{(p-1)} the iterated d/dx.
LaurentSeries riccati_residual(const LaurentSeries& f, const Place& place);
// (p-1)-fold d/dt of t'^{p-1} f.
LaurentSeries power_derivation(const LaurentSeries& f, const Place& place);
// One Newton step f1 = f0 - I(f0), I the (p-1)-fold x-primitive of the
// residual with no exponent divisible by p. Requires nu(residual) >= p n.
LaurentSeries newton_refine(const LaurentSeries& f0, const Place& place, int n);

// The local solvability system (Phi - D) X = Phi (a_0, ..., a_{eta-1}) over F_p.
struct LocalSystem {
    int eta = 0;
    // [G_P : F_p].
    unsigned block = 0;
    MatrixFp dmat;
    MatrixFp phi;
    std::vector<std::uint64_t> rhs;
};

std::optional<LocalSystem> build_local_system(const Place& place);
bool local_solvable(const Place& place);
// nu(t') - nu(a).
int local_eta(const Place& place);
// The ramified residue k in F_p of a local solution f.
std::uint64_t ramified_residue(const LaurentSeries& f, const Place& place);

// Matrix of the Frobenius of G over F_p on the power basis, cached per field.
const MatrixFp& frobenius_matrix(const FieldPtr& field);
// Matrix of multiplication by c on the power basis of G over F_p.
MatrixFp multiplication_matrix(const FieldPtr& field, FqElem c);

} // namespace priccati
