#pragma once

#include <optional>
#include <string>
#include <vector>

#include "priccati/local_analysis.hpp"

namespace priccati {

enum class Verdict { Reducible, Irreducible };

std::string to_string(Verdict v);

// One line of the per-place report.
struct PlaceReport {
    std::string center;
    int ram_index = 1;
    int relative_degree = 1;
    // nu(t') - nu(a); the place is tested only when eta > 0.
    int eta = 0;
    bool tested = false;
    bool solvable = true;
    std::string note;
};

struct IrreducibilityReport {
    Verdict verdict = Verdict::Reducible;
    std::vector<PlaceReport> places;
};

// Places above the factors of lc(N_*) and above infinity, together with the
// ramified places above Disc(N_*) at which nu(a) < nu(t').
std::vector<Place> critical_places(const CurvePtr& curve);

// Decides irreducibility of N_*^p(d) by local solvability at the critical places.
IrreducibilityReport is_reducible(const CurvePtr& curve);

} // namespace priccati
