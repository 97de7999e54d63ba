#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "priccati/curve.hpp"

namespace priccati::cli {

// Process exit codes.
enum ExitCode : int { kSuccess = 0, kInputError = 1, kUnsupported = 2, kIncomplete = 3 };

// Everything that determines a run.
struct InstanceSpec {
    std::uint64_t p = 0;
    unsigned ext_degree = 1;
    // Polynomial in z over F_p; the standard modulus is used when absent.
    std::optional<std::string> ext_modulus;
    std::string nstar;
    std::uint64_t seed = 0;
    int max_level = -1;
};

struct Instance {
    InstanceSpec spec;
    FieldPtr field;
    CurvePtr curve;
};

// Validates p and the modulus and parses N_*; throws InputError.
Instance build_instance(const InstanceSpec& spec);

// Runs the command line (args excludes the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

} // namespace priccati::cli
