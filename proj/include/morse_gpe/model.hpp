#pragma once

#include <span>
#include <vector>

// Dimensionless variational model of the 1D Gross-Pitaevskii ground state in
// a Morse well.
//
// Everything is expressed through two numbers: the well parameter k
// (k^2 = 8 m D / (hbar^2 a^2)) and the coupling g' = sqrt(m) g N / (hbar sqrt(D)).
// Energies are in units of N*D. The trial state in y = k exp(-a x) is
//
//     psi(y) ~ y^alpha exp(-beta y),
//
// and its energy is
//
//     E / ND = (4/k^2) (alpha/2 + alpha^2/(4 beta^2) + alpha/(8 beta^2) - alpha k/(2 beta))
//              + C(alpha) k g' / (2 sqrt 2),
//
// with C(alpha) = Gamma(4 alpha) / (2^{4 alpha} Gamma(2 alpha)^2).

namespace morse_gpe {

inline constexpr double kMinWellParameter = 2.0;

class DimensionlessSystem {
public:
    // Throws ValidityError if k < 2, ArgumentError if g' < 0 or either is non-finite.
    DimensionlessSystem(double k, double gprime);

    double k() const noexcept { return k_; }
    double gprime() const noexcept { return gprime_; }

    // k g' / (2 sqrt 2): the factor multiplying C(alpha) in the energy.
    double interaction_scale() const noexcept;

private:
    double k_;
    double gprime_;
};

class AnsatzParams {
public:
    // Throws ArgumentError unless alpha > 0 and beta > 0 (finite).
    AnsatzParams(double alpha, double beta);

    // Point on the line alpha + 1/2 = beta k, where dE/dbeta vanishes.
    static AnsatzParams on_constraint(double alpha, double k);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

private:
    double alpha_;
    double beta_;
};

struct EnergyBreakdown {
    double oscillator_part;   // (4/k^2) * bracket
    double interaction_part;  // C(alpha) k g' / (2 sqrt 2)
    double total;
};

struct DensityProfile {
    std::vector<double> y_values;
    std::vector<double> d_values;
};

namespace model {

// V(u)/D = exp(-2u/k) - 2 exp(-u/k), u = b x.
double morse_potential(double u, double k);

// C(alpha) via log-gamma. Throws DomainError for alpha <= 0.
double c_of_alpha(double alpha);

// Same quantity through the duplication formula, Gamma(2a + 1/2) / (2 sqrt(pi) Gamma(2a)).
double c_of_alpha_duplication(double alpha);

// d ln C / d alpha = 4 [Psi(4a) - ln 2 - Psi(2a)].
double log_c_derivative(double alpha);

double f1(double alpha, double k);

// (k / sqrt 2) C(alpha) [2 Psi(2a) + 4 ln 2 - Psi(4a)], transcribed as printed.
double f2_paper(double alpha, double k);

// Parenthesised bracket of the energy without the 4/k^2 prefactor.
double oscillator_bracket(double alpha, double beta, double k);

EnergyBreakdown energy(const AnsatzParams& params, const DimensionlessSystem& sys);

// Energy on beta = (alpha + 1/2)/k, reduced to (2a/k^2)(1 - k^2/(2a+1)) + C(a) k g'/(2 sqrt 2).
double energy_on_constraint(double alpha, const DimensionlessSystem& sys);

// Closed-form d/dalpha of energy_on_constraint: (2/k^2) f1 + scale * C'(alpha).
double energy_on_constraint_slope(double alpha, const DimensionlessSystem& sys);

// d(y) = (2b)^{2a} y^{2a} exp(-2 b y) / Gamma(2a); integrates to 1 against dy/y.
// Throws ArgumentError for an empty, non-positive or non-increasing grid.
DensityProfile density(const AnsatzParams& params, std::span<const double> y_grid);

// Mode of d(y): alpha / beta.
double peak_location(const AnsatzParams& params);

// Trapezoid integral of d(y)/y over the profile's grid.
double density_mass(const DensityProfile& profile);

// Inter-quartile range in y of the mass distribution d(y) dy / y, by
// trapezoid accumulation and linear interpolation on the profile's grid.
double density_iqr(const DensityProfile& profile);

}  // namespace model
}  // namespace morse_gpe
