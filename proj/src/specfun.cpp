#include "morse_gpe/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "morse_gpe/errors.hpp"

namespace morse_gpe::specfun {
namespace {

// B_{2n} / (2n (2n-1)), n = 1..8
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,         -1.0 / 360.0,  1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,       -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
};

// B_{2n} / (2n), n = 1..7
constexpr std::array<double, 7> kDigammaSeries = {
    1.0 / 12.0,  -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0,
};

void require_positive(double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(name) + ": argument must be finite and > 0, got " +
                          std::to_string(x));
    }
}

}  // namespace

double ln_gamma(double x) {
    require_positive(x, "ln_gamma");

    // ln Gamma(x) = ln Gamma(x + n) - ln(x (x+1) ... (x+n-1))
    double shift_product = 1.0;
    while (x < kAsymptoticThreshold) {
        shift_product *= x;
        x += 1.0;
    }

    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double power = inv;
    for (double c : kStirling) {
        series += c * power;
        power *= inv2;
    }
    const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
    return (x - 0.5) * std::log(x) - x + half_log_two_pi + series - std::log(shift_product);
}

double digamma(double x) {
    require_positive(x, "digamma");

    double shift_sum = 0.0;
    while (x < kAsymptoticThreshold) {
        shift_sum += 1.0 / x;
        x += 1.0;
    }

    const double inv2 = 1.0 / (x * x);
    double series = 0.0;
    double power = inv2;
    for (double c : kDigammaSeries) {
        series += c * power;
        power *= inv2;
    }
    return std::log(x) - 0.5 / x - series - shift_sum;
}

}  // namespace morse_gpe::specfun
