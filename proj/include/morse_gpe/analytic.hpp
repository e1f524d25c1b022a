#pragma once

// Noninteracting (g' = 0) closed forms. The ansatz family contains the exact
// Morse ground state, so the variational energy equals the exact n = 0 level.

namespace morse_gpe::analytic {

struct NoninteractingSolution {
    double alpha;           // (k - 1) / 2
    double beta;            // 1/2, independent of k
    double energy_over_ND;  // -((k - 1)/k)^2
};

// Throws ValidityError for k < 2.
NoninteractingSolution noninteracting_solution(double k);

// Lowest Morse level -(1 - 1/k)^2 in units of D. Throws ValidityError for k < 2.
double exact_morse_ground_energy(double k);

}  // namespace morse_gpe::analytic
