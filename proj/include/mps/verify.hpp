#pragma once
// Self-contained property suites behind `mps verify`. Each suite runs a set
// of deterministic checks at desk scale and reports one line per property;
// the test binaries exercise the same invariants in finer grain.

#include <cstdint>
#include <string>
#include <vector>

namespace mps {

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::string detail;  // measured values, shown on failure and in verbose logs
};

// Suites: core (transforms, Leray, dealiasing), lp (dyadic decomposition),
// g (admissibility integrals), energy (L2 ledger), commutator (Kato-Ponce
// sampling), linop (per-mode propagators vs a diagonalization oracle).
std::vector<std::string> verify_suite_names();

// Throws std::invalid_argument for an unknown suite name.
std::vector<PropertyResult> run_verify_suite(const std::string& suite,
                                             std::uint64_t seed);

}  // namespace mps
