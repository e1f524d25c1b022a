#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "morse_gpe/model.hpp"
#include "morse_gpe/solver.hpp"

// Independent checks on the variational results: exhaustive grid minimisation
// of the ansatz energy, and a finite-difference imaginary-time solver for the
// full 1D functional
//
//     E / ND = Int [ (4/k^2) |phi'|^2 + (e^{-2x} - 2 e^{-x}) |phi|^2 + (lambda/2) |phi|^4 ] dx,
//
// over unit-norm phi(x), x = a * (physical position).

namespace morse_gpe::oracle {

struct BetaBox {
    double lo;
    double hi;
};

// Constrained: beta follows alpha + 1/2 = beta k (1D scan). Box: full 2D scan.
struct BetaChoice {
    std::optional<BetaBox> box;

    static BetaChoice constrained() { return {}; }
    static BetaChoice full(double lo, double hi) { return {BetaBox{lo, hi}}; }
};

inline constexpr int kMinGridResolution = 500;

struct GridSpec {
    double alpha_lo, alpha_hi;
    int alpha_points;
    std::optional<BetaBox> beta_box;
    int beta_points;  // 0 when constrained
};

struct GridSearchResult {
    double best_alpha;
    double best_beta;
    double best_energy;
    GridSpec grid;
    double alpha_cell;  // grid spacing in alpha
    // Golden-section refinement inside the best node's neighbouring cells.
    double refined_alpha;
    double refined_beta;
    double refined_energy;
};

// Throws ArgumentError for a degenerate range or resolution < 500.
GridSearchResult grid_minimize(const DimensionlessSystem& sys, solver::AlphaRange alpha_range,
                               BetaChoice beta_choice, int resolution);

// Interaction coefficient convention for the PDE.
//   DerivedLambda: lambda = 2 sqrt2 g'/k, from substituting psi = sqrt(N a) phi(a x)
//                  into the functional; the ansatz then carries (sqrt2 g'/k) C(alpha).
//   PaperLambda:   lambda = k g'/sqrt2, so the ansatz carries C(alpha) k g'/(2 sqrt2).
enum class LambdaConvention { DerivedLambda, PaperLambda };

std::string_view to_string(LambdaConvention c);
std::optional<LambdaConvention> parse_convention(std::string_view text);
double interaction_lambda(const DimensionlessSystem& sys, LambdaConvention convention);

struct PdeOptions {
    double x_min = -3.0;
    std::optional<double> x_max;  // default max(40, 12 k)
    int n_points = 4096;          // interior nodes
    double dtau = 1e-3;
    double tol = 1e-12;           // per-step energy change at termination
    long max_iterations = 1'000'000;
    bool record_trace = false;
};

struct PdeGroundState {
    double energy_over_ND;
    std::vector<double> x_grid;
    std::vector<double> density;  // |phi|^2; dx * sum = 1
    long iterations;
    double residual;
    LambdaConvention interaction_convention;
    double final_dtau;
    std::vector<double> energy_trace;  // accepted-step energies when record_trace
    std::vector<double> norm_trace;    // post-renormalisation norms when record_trace
};

// Normalised backward-Euler gradient flow with Dirichlet walls at both ends.
// Throws ArgumentError on bad options and ConvergenceError when the cap is hit.
PdeGroundState imaginary_time_ground_state(const DimensionlessSystem& sys,
                                           LambdaConvention convention,
                                           const PdeOptions& options = {});

// Fraction of the norm at x > x_cut.
double mass_beyond(const PdeGroundState& state, double x_cut);

}  // namespace morse_gpe::oracle
