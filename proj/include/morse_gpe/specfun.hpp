#pragma once

// Real-argument log-gamma and digamma for x > 0.
//
// Both functions shift the argument upward with the recurrence
// Gamma(x+1) = x Gamma(x) until x >= kAsymptoticThreshold and then sum the
// Stirling (Bernoulli) asymptotic series. Accuracy is ~1e-14 absolute over
// x in [1e-3, 200], which covers every gamma argument reached by the model.

namespace morse_gpe::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kAsymptoticThreshold = 10.0;

// ln Gamma(x). Throws DomainError for x <= 0 or non-finite x.
double ln_gamma(double x);

// Psi(x) = d/dx ln Gamma(x). Throws DomainError for x <= 0 or non-finite x.
double digamma(double x);

}  // namespace morse_gpe::specfun
