#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "morse_gpe/model.hpp"

namespace morse_gpe::solver {

// Paper: roots of f1(alpha) - g' f2(alpha) as printed.
// Consistent: roots of d/dalpha of the energy restricted to beta = (alpha + 1/2)/k.
enum class SolveMode { Paper, Consistent };

enum class Classification { LocalMin, Saddle, LocalMax, Degenerate };

// How the bound (negative-energy) branch ends as g' grows.
//   SaddleNode: the minimum merges with its partner root while E < 0.
//   ZeroEnergyCrossing: the minimum's energy reaches 0 (the alpha -> 0+
//     delocalised limit) before it merges; a metastable E > 0 minimum
//     survives up to the fold at gprime_fold.
enum class Termination { SaddleNode, ZeroEnergyCrossing };

std::string_view to_string(SolveMode mode);
std::string_view to_string(Classification c);
std::string_view to_string(Termination t);
std::optional<SolveMode> parse_mode(std::string_view text);

struct Hessian {
    double d2_alpha;        // d2E/dalpha2
    double d2_alpha_beta;   // d2E/dalpha dbeta
    double d2_beta;         // d2E/dbeta2

    double determinant() const noexcept { return d2_alpha * d2_beta - d2_alpha_beta * d2_alpha_beta; }
    double frobenius_squared() const noexcept;
    std::array<double, 2> eigenvalues() const noexcept;  // ascending
};

// |det H| < kDegeneracyRatio * ||H||_F^2 is Degenerate.
inline constexpr double kDegeneracyRatio = 1e-6;
inline constexpr double kDefaultHessianStep = 1e-4;
inline constexpr double kConsistentGradientTolerance = 1e-6;

struct StationaryPoint {
    double alpha;
    double beta;
    EnergyBreakdown energy;
    double grad_norm;       // max(|dE/dalpha|, |dE/dbeta|), central differences of the full energy
    Hessian hessian;        // full energy, central differences + one Richardson step
    Classification classification;
    double residual_slope;  // d/dalpha of the mode residual at the root
};

struct AlphaRange {
    double lo = 0.02;
    double hi = 40.0;
};

inline constexpr int kDefaultScanPoints = 2000;
inline constexpr double kRootTolerance = 1e-10;
inline constexpr double kRootMergeDistance = 1e-6;

// Mode residual whose zeros are the stationary alphas.
double residual(double alpha, const DimensionlessSystem& sys, SolveMode mode);

// Sign changes of the residual on a uniform scan, refined by bisection and sorted.
// Throws ArgumentError for an invalid range or scan_points < 100.
std::vector<double> find_roots(const DimensionlessSystem& sys, SolveMode mode,
                               AlphaRange range = {}, int scan_points = kDefaultScanPoints);

// Throws ArgumentError unless 1e-6 <= h <= 1e-2.
Hessian hessian_fd(const AnsatzParams& params, const DimensionlessSystem& sys,
                   double h = kDefaultHessianStep);

// Hessian of the bare oscillator bracket (no 4/k^2 prefactor, no interaction).
Hessian bracket_hessian_fd(const AnsatzParams& params, double k, double h = kDefaultHessianStep);

double gradient_norm(const AnsatzParams& params, const DimensionlessSystem& sys);

Classification classify(const Hessian& h);

// Energy, gradient, Hessian and classification at an arbitrary point on the constraint line.
StationaryPoint describe_point(double alpha, const DimensionlessSystem& sys, SolveMode mode);

// One StationaryPoint per root. Consistent mode throws ConvergenceError if a
// root's gradient norm exceeds kConsistentGradientTolerance.
std::vector<StationaryPoint> stationary_points(const DimensionlessSystem& sys, SolveMode mode,
                                               AlphaRange range = {},
                                               int scan_points = kDefaultScanPoints);

struct CriticalPoint {
    double gprime_c;            // last coupling (within resolution) with a bound root
    double alpha_star;          // merged root (Paper) or the minimum at gprime_c (Consistent)
    double energy_at_critical;  // constrained energy at (alpha_star, gprime_c)
    Termination termination;
    double gprime_fold;         // last coupling with any minimum; equals gprime_c in Paper mode
    std::vector<double> roots_at_critical;
    // Independent estimate. Paper: maximum of f1/f2 on the branch where both
    // are positive, i.e. the tangency of g' f2 with f1 (alpha_crosscheck is
    // its location). Consistent: coupling at which the constrained slope at
    // alpha = 0 changes sign, where the partner root is born at alpha = 0.
    double gprime_crosscheck;
    double alpha_crosscheck;
};

inline constexpr double kCriticalResolution = 1e-5;

// Throws ValidityError for k < 2.
CriticalPoint critical_coupling(double k, SolveMode mode);

struct SweepGRow {
    double gprime;
    std::optional<StationaryPoint> lower;
    std::optional<StationaryPoint> upper;
};

// Rows in input order; absent roots are empty optionals.
std::vector<SweepGRow> sweep_g(double k, std::span<const double> gprimes, SolveMode mode);

struct SweepKRow {
    double k;
    CriticalPoint critical;
};

struct SweepKResult {
    std::vector<SweepKRow> rows;
    bool gprime_c_decreasing;  // strictly, in input order
};

SweepKResult sweep_k(std::span<const double> ks, SolveMode mode);

}  // namespace morse_gpe::solver
