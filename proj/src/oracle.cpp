#include "morse_gpe/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "morse_gpe/analytic.hpp"
#include "morse_gpe/errors.hpp"
#include "morse_gpe/rootfind.hpp"

namespace morse_gpe::oracle {

namespace {

double ansatz_energy(double alpha, double beta, const DimensionlessSystem& sys) {
    return model::energy(AnsatzParams(alpha, beta), sys).total;
}

double interaction_term(double alpha, const DimensionlessSystem& sys) {
    return sys.gprime() == 0.0 ? 0.0 : model::c_of_alpha(alpha) * sys.interaction_scale();
}

}  // namespace

GridSearchResult grid_minimize(const DimensionlessSystem& sys, solver::AlphaRange alpha_range,
                               BetaChoice beta_choice, int resolution) {
    if (!(alpha_range.lo > 0.0) || !(alpha_range.hi > alpha_range.lo)) {
        throw ArgumentError("grid_minimize: alpha range must satisfy 0 < lo < hi");
    }
    if (beta_choice.box && (!(beta_choice.box->lo > 0.0) || !(beta_choice.box->hi > beta_choice.box->lo))) {
        throw ArgumentError("grid_minimize: beta range must satisfy 0 < lo < hi");
    }
    if (resolution < kMinGridResolution) {
        throw ArgumentError("grid_minimize: resolution must be >= 500 points per axis");
    }

    const double k = sys.k();
    const double da = (alpha_range.hi - alpha_range.lo) / (resolution - 1);
    GridSearchResult r{};
    r.grid = {alpha_range.lo, alpha_range.hi, resolution, beta_choice.box,
              beta_choice.box ? resolution : 0};
    r.alpha_cell = da;
    r.best_energy = std::numeric_limits<double>::infinity();

    for (int i = 0; i < resolution; ++i) {
        const double a = alpha_range.lo + i * da;
        const double interaction = interaction_term(a, sys);
        if (!beta_choice.box) {
            const double b = (a + 0.5) / k;
            const double e = 4.0 / (k * k) * model::oscillator_bracket(a, b, k) + interaction;
            if (e < r.best_energy) r = {a, b, e, r.grid, da, 0, 0, 0};
            continue;
        }
        const auto box = *beta_choice.box;
        const double db = (box.hi - box.lo) / (resolution - 1);
        for (int j = 0; j < resolution; ++j) {
            const double b = box.lo + j * db;
            const double e = 4.0 / (k * k) * model::oscillator_bracket(a, b, k) + interaction;
            if (e < r.best_energy) r = {a, b, e, r.grid, da, 0, 0, 0};
        }
    }

    const double a_lo = std::max(alpha_range.lo, r.best_alpha - da);
    const double a_hi = std::min(alpha_range.hi, r.best_alpha + da);
    if (!beta_choice.box) {
        const auto m = rootfind::golden_section_min(
            [&](double a) { return ansatz_energy(a, (a + 0.5) / k, sys); }, a_lo, a_hi, 1e-12);
        r.refined_alpha = m.x;
        r.refined_beta = (m.x + 0.5) / k;
        r.refined_energy = m.value;
    } else {
        const auto box = *beta_choice.box;
        const double db = (box.hi - box.lo) / (resolution - 1);
        const double b_lo = std::max(box.lo, r.best_beta - db);
        const double b_hi = std::min(box.hi, r.best_beta + db);
        auto best_beta_for = [&](double a) {
            return rootfind::golden_section_min([&](double b) { return ansatz_energy(a, b, sys); },
                                                b_lo, b_hi, 1e-11);
        };
        const auto m = rootfind::golden_section_min(
            [&](double a) { return best_beta_for(a).value; }, a_lo, a_hi, 1e-10);
        r.refined_alpha = m.x;
        r.refined_beta = best_beta_for(m.x).x;
        r.refined_energy = m.value;
    }
    if (r.refined_energy > r.best_energy) {
        r.refined_alpha = r.best_alpha;
        r.refined_beta = r.best_beta;
        r.refined_energy = r.best_energy;
    }
    return r;
}

std::string_view to_string(LambdaConvention c) {
    return c == LambdaConvention::DerivedLambda ? "derived" : "paper";
}

std::optional<LambdaConvention> parse_convention(std::string_view text) {
    if (text == "derived") return LambdaConvention::DerivedLambda;
    if (text == "paper") return LambdaConvention::PaperLambda;
    return std::nullopt;
}

double interaction_lambda(const DimensionlessSystem& sys, LambdaConvention convention) {
    if (convention == LambdaConvention::DerivedLambda) {
        return 2.0 * std::numbers::sqrt2 * sys.gprime() / sys.k();
    }
    return sys.k() * sys.gprime() / std::numbers::sqrt2;
}

namespace {

struct Grid {
    std::vector<double> x;
    std::vector<double> potential;
    double dx;
};

double grid_energy(const Grid& g, const std::vector<double>& phi, double kinetic, double lambda) {
    const std::size_t n = phi.size();
    double grad = 0.0;
    double pot = 0.0;
    double quartic = 0.0;
    double prev = 0.0;  // wall value
    for (std::size_t i = 0; i < n; ++i) {
        const double d = phi[i] - prev;
        grad += d * d;
        prev = phi[i];
        const double p2 = phi[i] * phi[i];
        pot += g.potential[i] * p2;
        quartic += p2 * p2;
    }
    grad += prev * prev;
    return kinetic * grad / g.dx + g.dx * pot + 0.5 * lambda * g.dx * quartic;
}

double grid_norm(const std::vector<double>& phi, double dx) {
    double s = 0.0;
    for (double v : phi) s += v * v;
    return std::sqrt(s * dx);
}

// Thomas algorithm for a symmetric tridiagonal system with constant off-diagonal.
void solve_tridiagonal(const std::vector<double>& diag, double off, const std::vector<double>& rhs,
                       std::vector<double>& out, std::vector<double>& scratch) {
    const std::size_t n = diag.size();
    scratch.resize(n);
    out.resize(n);
    double denom = diag[0];
    scratch[0] = off / denom;
    out[0] = rhs[0] / denom;
    for (std::size_t i = 1; i < n; ++i) {
        denom = diag[i] - off * scratch[i - 1];
        scratch[i] = off / denom;
        out[i] = (rhs[i] - off * out[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        out[i] -= scratch[i] * out[i + 1];
    }
}

}  // namespace

PdeGroundState imaginary_time_ground_state(const DimensionlessSystem& sys,
                                           LambdaConvention convention,
                                           const PdeOptions& options) {
    const double k = sys.k();
    const double x_min = options.x_min;
    const double x_max = options.x_max.value_or(std::max(40.0, 12.0 * k));
    if (!(x_min <= -2.0) || !(x_max >= 10.0 * k)) {
        throw ArgumentError("PDE domain must contain the well: x_min <= -2 and x_max >= 10 k");
    }
    if (options.n_points < 1024) {
        throw ArgumentError("PDE grid needs n_points >= 1024");
    }
    if (!(options.dtau > 0.0) || !(options.tol > 0.0) || options.max_iterations <= 0) {
        throw ArgumentError("PDE needs dtau > 0, tol > 0 and a positive iteration cap");
    }

    const std::size_t n = static_cast<std::size_t>(options.n_points);
    Grid grid;
    grid.dx = (x_max - x_min) / static_cast<double>(n + 1);
    grid.x.resize(n);
    grid.potential.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        grid.x[i] = x_min + static_cast<double>(i + 1) * grid.dx;
        grid.potential[i] = model::morse_potential(k * grid.x[i], k);
    }
    const double kinetic = 4.0 / (k * k);
    const double lambda = interaction_lambda(sys, convention);

    // Start from the noninteracting ansatz: |phi(x)|^2 dx = d(y) dy / y, y = k e^{-x}.
    const auto g0 = analytic::noninteracting_solution(k);
    std::vector<double> phi(n);
    {
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) y[n - 1 - i] = k * std::exp(-grid.x[i]);
        const auto profile = model::density(AnsatzParams(g0.alpha, g0.beta), y);
        for (std::size_t i = 0; i < n; ++i) phi[i] = std::sqrt(profile.d_values[n - 1 - i]);
        const double norm = grid_norm(phi, grid.dx);
        for (double& v : phi) v /= norm;
    }

    PdeGroundState state{};
    state.interaction_convention = convention;
    double dtau = options.dtau;
    double energy = grid_energy(grid, phi, kinetic, lambda);
    double residual = std::numeric_limits<double>::infinity();

    std::vector<double> diag(n), next(n), scratch(n);
    long it = 0;
    for (; it < options.max_iterations; ++it) {
        const double off = -dtau * kinetic / (grid.dx * grid.dx);
        for (std::size_t i = 0; i < n; ++i) {
            diag[i] = 1.0 + dtau * (2.0 * kinetic / (grid.dx * grid.dx) + grid.potential[i] +
                                    lambda * phi[i] * phi[i]);
        }
        solve_tridiagonal(diag, off, phi, next, scratch);
        const double norm = grid_norm(next, grid.dx);
        for (double& v : next) v /= norm;
        const double trial = grid_energy(grid, next, kinetic, lambda);

        if (trial > energy + 1e-14 * std::max(1.0, std::abs(energy))) {
            dtau *= 0.5;
            if (dtau < 1e-12) {
                throw ConvergenceError("imaginary-time flow stalled: step underflow", residual);
            }
            continue;
        }
        residual = std::abs(energy - trial);
        energy = trial;
        phi.swap(next);
        if (options.record_trace) {
            state.energy_trace.push_back(energy);
            state.norm_trace.push_back(grid_norm(phi, grid.dx));
        }
        if (residual < options.tol) {
            ++it;
            break;
        }
    }
    if (!(residual < options.tol)) {
        throw ConvergenceError("imaginary-time flow hit the iteration cap, residual " +
                                   std::to_string(residual),
                               residual);
    }

    state.energy_over_ND = energy;
    state.x_grid = std::move(grid.x);
    state.density.resize(n);
    for (std::size_t i = 0; i < n; ++i) state.density[i] = phi[i] * phi[i];
    state.iterations = it;
    state.residual = residual;
    state.final_dtau = dtau;
    return state;
}

double mass_beyond(const PdeGroundState& state, double x_cut) {
    if (state.x_grid.size() < 2) return 0.0;
    const double dx = state.x_grid[1] - state.x_grid[0];
    double outside = 0.0;
    for (std::size_t i = 0; i < state.x_grid.size(); ++i) {
        if (state.x_grid[i] > x_cut) outside += state.density[i];
    }
    return outside * dx;
}

}  // namespace morse_gpe::oracle
