#include "morse_gpe/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "morse_gpe/errors.hpp"
#include "morse_gpe/specfun.hpp"

namespace morse_gpe {

using specfun::digamma;
using specfun::ln_gamma;

DimensionlessSystem::DimensionlessSystem(double k, double gprime) : k_(k), gprime_(gprime) {
    if (!std::isfinite(k) || !std::isfinite(gprime)) {
        throw ArgumentError("DimensionlessSystem: k and g' must be finite");
    }
    if (k < kMinWellParameter) {
        throw ValidityError("k = " + std::to_string(k) +
                            " is below the validity bound k >= 2 of the variational ansatz");
    }
    if (gprime < 0.0) {
        throw ArgumentError("g' must be >= 0 (repulsive interaction), got " +
                            std::to_string(gprime));
    }
}

double DimensionlessSystem::interaction_scale() const noexcept {
    return k_ * gprime_ / (2.0 * std::numbers::sqrt2);
}

AnsatzParams::AnsatzParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
        throw ArgumentError("AnsatzParams: alpha and beta must be finite and > 0");
    }
}

AnsatzParams AnsatzParams::on_constraint(double alpha, double k) {
    return AnsatzParams(alpha, (alpha + 0.5) / k);
}

namespace model {

double morse_potential(double u, double k) {
    const double e = std::exp(-u / k);
    return e * e - 2.0 * e;
}

double c_of_alpha(double alpha) {
    if (!(alpha > 0.0)) {
        throw DomainError("c_of_alpha: alpha must be > 0");
    }
    return std::exp(ln_gamma(4.0 * alpha) - 4.0 * alpha * std::numbers::ln2 -
                    2.0 * ln_gamma(2.0 * alpha));
}

double c_of_alpha_duplication(double alpha) {
    if (!(alpha > 0.0)) {
        throw DomainError("c_of_alpha_duplication: alpha must be > 0");
    }
    return std::exp(ln_gamma(2.0 * alpha + 0.5) - ln_gamma(2.0 * alpha)) /
           (2.0 * std::sqrt(std::numbers::pi));
}

double log_c_derivative(double alpha) {
    return 4.0 * (digamma(4.0 * alpha) - std::numbers::ln2 - digamma(2.0 * alpha));
}

double f1(double alpha, double k) {
    const double s = 2.0 * alpha + 1.0;
    return 1.0 - k * k / (s * s);
}

double f2_paper(double alpha, double k) {
    const double bracket =
        2.0 * digamma(2.0 * alpha) + 4.0 * std::numbers::ln2 - digamma(4.0 * alpha);
    return k / std::numbers::sqrt2 * c_of_alpha(alpha) * bracket;
}

double oscillator_bracket(double alpha, double beta, double k) {
    const double b2 = beta * beta;
    return alpha / 2.0 + alpha * alpha / (4.0 * b2) + alpha / (8.0 * b2) - alpha * k / (2.0 * beta);
}

EnergyBreakdown energy(const AnsatzParams& params, const DimensionlessSystem& sys) {
    const double k = sys.k();
    EnergyBreakdown e{};
    e.oscillator_part = 4.0 / (k * k) * oscillator_bracket(params.alpha(), params.beta(), k);
    e.interaction_part = sys.gprime() == 0.0
                             ? 0.0
                             : c_of_alpha(params.alpha()) * sys.interaction_scale();
    e.total = e.oscillator_part + e.interaction_part;
    return e;
}

double energy_on_constraint(double alpha, const DimensionlessSystem& sys) {
    const double k = sys.k();
    const double oscillator = 2.0 * alpha / (k * k) * (1.0 - k * k / (2.0 * alpha + 1.0));
    if (sys.gprime() == 0.0) {
        return oscillator;
    }
    return oscillator + c_of_alpha(alpha) * sys.interaction_scale();
}

double energy_on_constraint_slope(double alpha, const DimensionlessSystem& sys) {
    const double k = sys.k();
    const double oscillator = 2.0 / (k * k) * f1(alpha, k);
    if (sys.gprime() == 0.0) {
        return oscillator;
    }
    return oscillator + sys.interaction_scale() * c_of_alpha(alpha) * log_c_derivative(alpha);
}

DensityProfile density(const AnsatzParams& params, std::span<const double> y_grid) {
    if (y_grid.empty()) {
        throw ArgumentError("density: empty y grid");
    }
    DensityProfile out;
    out.y_values.assign(y_grid.begin(), y_grid.end());
    out.d_values.reserve(y_grid.size());

    const double two_a = 2.0 * params.alpha();
    const double two_b = 2.0 * params.beta();
    const double log_norm = two_a * std::log(two_b) - ln_gamma(two_a);
    double previous = 0.0;
    for (double y : y_grid) {
        if (!(y > previous) || !std::isfinite(y)) {
            throw ArgumentError("density: y grid must be strictly positive and increasing");
        }
        previous = y;
        out.d_values.push_back(std::exp(log_norm + two_a * std::log(y) - two_b * y));
    }
    return out;
}

double peak_location(const AnsatzParams& params) { return params.alpha() / params.beta(); }

namespace {

// Cumulative trapezoid of d(y)/y, starting at zero on the first node.
std::vector<double> cumulative_mass(const DensityProfile& p) {
    std::vector<double> acc(p.y_values.size(), 0.0);
    for (std::size_t i = 1; i < acc.size(); ++i) {
        const double h = p.y_values[i] - p.y_values[i - 1];
        const double left = p.d_values[i - 1] / p.y_values[i - 1];
        const double right = p.d_values[i] / p.y_values[i];
        acc[i] = acc[i - 1] + 0.5 * h * (left + right);
    }
    return acc;
}

double quantile(const DensityProfile& p, const std::vector<double>& acc, double q) {
    const double target = q * acc.back();
    for (std::size_t i = 1; i < acc.size(); ++i) {
        if (acc[i] >= target) {
            const double t = (target - acc[i - 1]) / (acc[i] - acc[i - 1]);
            return p.y_values[i - 1] + t * (p.y_values[i] - p.y_values[i - 1]);
        }
    }
    return p.y_values.back();
}

}  // namespace

double density_mass(const DensityProfile& profile) { return cumulative_mass(profile).back(); }

double density_iqr(const DensityProfile& profile) {
    if (profile.y_values.size() < 2) {
        throw ArgumentError("density_iqr: need at least two grid points");
    }
    const auto acc = cumulative_mass(profile);
    return quantile(profile, acc, 0.75) - quantile(profile, acc, 0.25);
}

}  // namespace model
}  // namespace morse_gpe
