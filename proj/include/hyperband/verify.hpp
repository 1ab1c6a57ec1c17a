#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperband/magnetic.hpp"

namespace hyperband {

struct VerifyTolerances {
    double group = 1e-9;      // Fuchsian relation, generator traces
    double pairing = 1e-8;    // edge pairing (hyperbolic distance)
    double phase = 1e-7;      // flux relation phase
    double closure = 1e-6;    // flux relation point closure
    double constancy = 1e-8;  // z-independence of the flux relation phase
    double covering = 1e-8;   // q-fold covering and vertex-angle phases
    double algebra = 1e-8;    // commutators and Hamiltonian commutation
    double hermitian = 1e-12;
    double sectors = 1e-7;  // union of rotation sectors vs block spectrum
};

struct VerifyConfig {
    int genus = 2;
    double B = 0.0;
    std::optional<FluxParam> flux;  // set when B is an exact rational p/(2q)
    VerifyTolerances tol;
};

struct CheckResult {
    std::string name;
    double measured;
    double tolerance;
    bool pass;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
    /// One "PASS|FAIL  name  measured=... tol=...  detail" line per check.
    std::string format() const;
};

/// Runs every group, phase, operator-algebra and spectral identity check.
/// Throws std::invalid_argument on an invalid genus.
VerifyReport run_verification(const VerifyConfig& config);

}  // namespace hyperband
