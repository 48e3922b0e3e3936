#pragma once

#include <string>

namespace cantorfour {

// Runs the full verification gate: nine independent checks covering signed-sum
// enumeration, closed-form vs quadrature agreement, product coefficients,
// exact construction constants, the perturbation bound, both selection modes,
// the mass-ratio/box-count audit, and byte-level determinism of the CLI at
// `cli_path`.  Prints one PASS/FAIL line per check and returns the number of
// failures (0 when everything holds).
int run_acceptance(const std::string& cli_path);

}  // namespace cantorfour
