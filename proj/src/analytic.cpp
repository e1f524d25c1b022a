#include "morse_gpe/analytic.hpp"

#include <cmath>
#include <string>

#include "morse_gpe/errors.hpp"
#include "morse_gpe/model.hpp"

namespace morse_gpe::analytic {
namespace {

void require_valid_k(double k) {
    if (!std::isfinite(k) || k < kMinWellParameter) {
        throw ValidityError("k = " + std::to_string(k) +
                            " is below the validity bound k >= 2 (alpha -> 0 at k = 1)");
    }
}

}  // namespace

NoninteractingSolution noninteracting_solution(double k) {
    require_valid_k(k);
    const double alpha = (k - 1.0) / 2.0;
    const double beta = 0.5;
    // Stationarity of the g = 0 energy: alpha + 1/2 = beta k and 1 + alpha/beta^2 + 1/(4 beta^2) = k/beta.
    const double ratio = (k - 1.0) / k;
    return {alpha, beta, -ratio * ratio};
}

double exact_morse_ground_energy(double k) {
    require_valid_k(k);
    // E_n / D = -(1 - (2n + 1)/k)^2 at n = 0.
    const double t = 1.0 - 1.0 / k;
    return -t * t;
}

}  // namespace morse_gpe::analytic
