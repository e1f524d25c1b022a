#include "morse_gpe/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <string>

#include "morse_gpe/errors.hpp"
#include "morse_gpe/rootfind.hpp"

namespace morse_gpe::solver {

std::string_view to_string(SolveMode mode) {
    return mode == SolveMode::Paper ? "paper" : "consistent";
}

std::string_view to_string(Classification c) {
    switch (c) {
        case Classification::LocalMin: return "LocalMin";
        case Classification::Saddle: return "Saddle";
        case Classification::LocalMax: return "LocalMax";
        case Classification::Degenerate: return "Degenerate";
    }
    return "?";
}

std::string_view to_string(Termination t) {
    return t == Termination::SaddleNode ? "SaddleNode" : "ZeroEnergyCrossing";
}

std::optional<SolveMode> parse_mode(std::string_view text) {
    if (text == "paper") return SolveMode::Paper;
    if (text == "consistent") return SolveMode::Consistent;
    return std::nullopt;
}

double Hessian::frobenius_squared() const noexcept {
    return d2_alpha * d2_alpha + 2.0 * d2_alpha_beta * d2_alpha_beta + d2_beta * d2_beta;
}

std::array<double, 2> Hessian::eigenvalues() const noexcept {
    const double mean = 0.5 * (d2_alpha + d2_beta);
    const double half_diff = 0.5 * (d2_alpha - d2_beta);
    const double radius = std::hypot(half_diff, d2_alpha_beta);
    return {mean - radius, mean + radius};
}

double residual(double alpha, const DimensionlessSystem& sys, SolveMode mode) {
    if (mode == SolveMode::Paper) {
        const double f1 = model::f1(alpha, sys.k());
        return sys.gprime() == 0.0 ? f1 : f1 - sys.gprime() * model::f2_paper(alpha, sys.k());
    }
    return model::energy_on_constraint_slope(alpha, sys);
}

namespace {

void validate_range(AlphaRange range, int scan_points) {
    if (!(range.lo > 0.0) || !(range.hi > range.lo) || !std::isfinite(range.hi)) {
        throw ArgumentError("alpha range must satisfy 0 < lo < hi < inf");
    }
    if (scan_points < 100) {
        throw ArgumentError("scan_points must be >= 100");
    }
}

double residual_slope(double alpha, const DimensionlessSystem& sys, SolveMode mode) {
    const double h = std::min(1e-6 * std::max(1.0, alpha), 0.25 * alpha);
    return (residual(alpha + h, sys, mode) - residual(alpha - h, sys, mode)) / (2.0 * h);
}

double total_energy(double alpha, double beta, const DimensionlessSystem& sys) {
    return model::energy(AnsatzParams(alpha, beta), sys).total;
}

// Central second differences of f(alpha, beta) with per-axis steps.
template <class F>
Hessian central_hessian(F&& f, double a, double b, double ha, double hb) {
    const double f0 = f(a, b);
    Hessian h{};
    h.d2_alpha = (f(a + ha, b) - 2.0 * f0 + f(a - ha, b)) / (ha * ha);
    h.d2_beta = (f(a, b + hb) - 2.0 * f0 + f(a, b - hb)) / (hb * hb);
    h.d2_alpha_beta =
        (f(a + ha, b + hb) - f(a + ha, b - hb) - f(a - ha, b + hb) + f(a - ha, b - hb)) /
        (4.0 * ha * hb);
    return h;
}

// One Richardson step on the O(h^2) central scheme.
template <class F>
Hessian richardson_hessian(F&& f, double a, double b, double h) {
    const double ha = std::min(h * std::max(1.0, a), 0.25 * a);
    const double hb = std::min(h * std::max(1.0, b), 0.25 * b);
    const Hessian coarse = central_hessian(f, a, b, ha, hb);
    const Hessian fine = central_hessian(f, a, b, 0.5 * ha, 0.5 * hb);
    return {(4.0 * fine.d2_alpha - coarse.d2_alpha) / 3.0,
            (4.0 * fine.d2_alpha_beta - coarse.d2_alpha_beta) / 3.0,
            (4.0 * fine.d2_beta - coarse.d2_beta) / 3.0};
}

void validate_step(double h) {
    if (!(h >= 1e-6 && h <= 1e-2)) {
        throw ArgumentError("Hessian step must lie in [1e-6, 1e-2], got " + std::to_string(h));
    }
}

}  // namespace

std::vector<double> find_roots(const DimensionlessSystem& sys, SolveMode mode, AlphaRange range,
                               int scan_points) {
    validate_range(range, scan_points);
    auto f = [&](double a) { return residual(a, sys, mode); };

    const double step = (range.hi - range.lo) / (scan_points - 1);
    std::vector<double> roots;
    double a_prev = range.lo;
    double v_prev = f(a_prev);
    if (v_prev == 0.0) roots.push_back(a_prev);
    for (int i = 1; i < scan_points; ++i) {
        const double a = (i == scan_points - 1) ? range.hi : range.lo + i * step;
        const double v = f(a);
        if (v == 0.0) {
            roots.push_back(a);
        } else if (v_prev != 0.0 && (v < 0.0) != (v_prev < 0.0)) {
            roots.push_back(rootfind::bisect(f, a_prev, a, kRootTolerance));
        }
        a_prev = a;
        v_prev = v;
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> merged;
    for (double r : roots) {
        if (merged.empty() || r - merged.back() > kRootMergeDistance) merged.push_back(r);
    }
    if (merged.size() > 2) {
        merged = {merged.front(), merged.back()};
    }
    return merged;
}

Hessian hessian_fd(const AnsatzParams& params, const DimensionlessSystem& sys, double h) {
    validate_step(h);
    return richardson_hessian([&](double a, double b) { return total_energy(a, b, sys); },
                              params.alpha(), params.beta(), h);
}

Hessian bracket_hessian_fd(const AnsatzParams& params, double k, double h) {
    validate_step(h);
    return richardson_hessian(
        [&](double a, double b) { return model::oscillator_bracket(a, b, k); }, params.alpha(),
        params.beta(), h);
}

double gradient_norm(const AnsatzParams& params, const DimensionlessSystem& sys) {
    const double a = params.alpha();
    const double b = params.beta();
    const double ha = std::min(1e-6 * std::max(1.0, a), 0.25 * a);
    const double hb = std::min(1e-6 * std::max(1.0, b), 0.25 * b);
    const double ga = (total_energy(a + ha, b, sys) - total_energy(a - ha, b, sys)) / (2.0 * ha);
    const double gb = (total_energy(a, b + hb, sys) - total_energy(a, b - hb, sys)) / (2.0 * hb);
    return std::max(std::abs(ga), std::abs(gb));
}

Classification classify(const Hessian& h) {
    const double det = h.determinant();
    if (std::abs(det) < kDegeneracyRatio * h.frobenius_squared()) {
        return Classification::Degenerate;
    }
    if (det < 0.0) return Classification::Saddle;
    return h.d2_alpha + h.d2_beta > 0.0 ? Classification::LocalMin : Classification::LocalMax;
}

StationaryPoint describe_point(double alpha, const DimensionlessSystem& sys, SolveMode mode) {
    const auto params = AnsatzParams::on_constraint(alpha, sys.k());
    StationaryPoint p{};
    p.alpha = params.alpha();
    p.beta = params.beta();
    p.energy = model::energy(params, sys);
    p.grad_norm = gradient_norm(params, sys);
    p.hessian = hessian_fd(params, sys);
    p.classification = classify(p.hessian);
    p.residual_slope = residual_slope(alpha, sys, mode);
    return p;
}

std::vector<StationaryPoint> stationary_points(const DimensionlessSystem& sys, SolveMode mode,
                                               AlphaRange range, int scan_points) {
    std::vector<StationaryPoint> out;
    for (double alpha : find_roots(sys, mode, range, scan_points)) {
        auto p = describe_point(alpha, sys, mode);
        if (mode == SolveMode::Consistent && p.grad_norm > kConsistentGradientTolerance) {
            throw ConvergenceError("consistent-mode root at alpha = " + std::to_string(alpha) +
                                       " is not stationary",
                                   p.grad_norm);
        }
        out.push_back(p);
    }
    return out;
}

namespace {

// Scan used while tracing the threshold; dense enough to separate near-tangent pairs.
constexpr int kCriticalScanPoints = 20000;

AlphaRange critical_range(double k, SolveMode mode) {
    const double hi = std::max(40.0, 4.0 * k);
    return mode == SolveMode::Paper ? AlphaRange{0.02, hi} : AlphaRange{1e-5, hi};
}

std::vector<double> critical_roots(double k, double g, SolveMode mode) {
    return find_roots(DimensionlessSystem(k, g), mode, critical_range(k, mode),
                      kCriticalScanPoints);
}

// Largest f1/f2 on the branch where both are positive; at that coupling f2 touches f1.
rootfind::Extremum paper_tangency(double k) {
    auto ratio = [k](double a) {
        const double f2 = model::f2_paper(a, k);
        return f2 > 0.0 ? model::f1(a, k) / f2 : -1.0;
    };
    const double lo = (k - 1.0) / 2.0 + 1e-9;  // f1 > 0 above the g = 0 exponent
    const double hi = critical_range(k, SolveMode::Paper).hi;
    // Coarse bracket first; the ratio is unimodal on (lo, hi) but flat near its peak.
    constexpr int n = 4000;
    double best_a = lo;
    double best_v = -1.0;
    for (int i = 1; i < n; ++i) {
        const double a = lo + (hi - lo) * i / n;
        const double v = ratio(a);
        if (v > best_v) {
            best_v = v;
            best_a = a;
        }
    }
    const double cell = (hi - lo) / n;
    return rootfind::golden_section_max(ratio, std::max(lo, best_a - cell), best_a + cell, 1e-9);
}

}  // namespace

namespace {

// Largest g' in [0, inf) for which has_branch(g') holds, to kCriticalResolution.
template <class Pred>
double last_coupling_with(Pred&& has_branch) {
    double g_lo = 0.0;
    double g_hi = 1.0;
    while (has_branch(g_hi)) {
        g_lo = g_hi;
        g_hi *= 2.0;
        if (g_hi > 1e6) {
            throw ConvergenceError("critical_coupling: no upper bracket for the bound branch", g_hi);
        }
    }
    while (g_hi - g_lo > kCriticalResolution) {
        const double mid = 0.5 * (g_lo + g_hi);
        (has_branch(mid) ? g_lo : g_hi) = mid;
    }
    return g_lo;
}

std::vector<double> minima_of(const std::vector<double>& roots, const DimensionlessSystem& sys,
                              SolveMode mode) {
    std::vector<double> minima;
    for (double r : roots) {
        if (residual_slope(r, sys, mode) > 0.0) minima.push_back(r);
    }
    return minima;
}

}  // namespace

CriticalPoint critical_coupling(double k, SolveMode mode) {
    if (!std::isfinite(k) || k < kMinWellParameter) {
        throw ValidityError("critical_coupling: k = " + std::to_string(k) +
                            " is below the validity bound k >= 2");
    }

    CriticalPoint cp{};
    if (mode == SolveMode::Paper) {
        // Root count goes 1 (upper root beyond range) -> 2 -> 0; bisect on the 2 -> 0 edge.
        cp.gprime_c = last_coupling_with([&](double g) { return !critical_roots(k, g, mode).empty(); });
        cp.gprime_fold = cp.gprime_c;
        cp.roots_at_critical = critical_roots(k, cp.gprime_c, mode);
        cp.termination = Termination::SaddleNode;
        cp.alpha_star = cp.roots_at_critical.size() == 2
                            ? 0.5 * (cp.roots_at_critical[0] + cp.roots_at_critical[1])
                            : cp.roots_at_critical.front();
        const auto tangency = paper_tangency(k);
        cp.gprime_crosscheck = tangency.value;
        cp.alpha_crosscheck = tangency.x;
    } else {
        auto bound_minimum = [&](double g, bool require_negative) {
            const DimensionlessSystem sys(k, g);
            for (double m : minima_of(critical_roots(k, g, mode), sys, mode)) {
                if (!require_negative || model::energy_on_constraint(m, sys) < 0.0) return true;
            }
            return false;
        };
        cp.gprime_fold = last_coupling_with([&](double g) { return bound_minimum(g, false); });
        cp.gprime_c = last_coupling_with([&](double g) { return bound_minimum(g, true); });
        cp.termination = cp.gprime_fold - cp.gprime_c > 2.0 * kCriticalResolution
                             ? Termination::ZeroEnergyCrossing
                             : Termination::SaddleNode;
        cp.roots_at_critical = critical_roots(k, cp.gprime_c, mode);
        const DimensionlessSystem sys(k, cp.gprime_c);
        const auto minima = minima_of(cp.roots_at_critical, sys, mode);
        cp.alpha_star = minima.empty() ? cp.roots_at_critical.front() : minima.back();
        // C(alpha) = alpha + O(alpha^2), so the slope at 0 is 2(1 - k^2)/k^2 + k g'/(2 sqrt 2).
        cp.gprime_crosscheck = 4.0 * std::numbers::sqrt2 * (k * k - 1.0) / (k * k * k);
        cp.alpha_crosscheck = 0.0;
    }
    cp.energy_at_critical = model::energy_on_constraint(cp.alpha_star, DimensionlessSystem(k, cp.gprime_c));
    return cp;
}

std::vector<SweepGRow> sweep_g(double k, std::span<const double> gprimes, SolveMode mode) {
    if (!std::isfinite(k) || k < kMinWellParameter) {
        throw ValidityError("sweep_g: k must be >= 2");
    }
    if (gprimes.empty()) {
        throw ArgumentError("sweep_g: empty g' list");
    }
    std::vector<std::future<SweepGRow>> jobs;
    jobs.reserve(gprimes.size());
    for (double g : gprimes) {
        jobs.push_back(std::async(std::launch::async, [k, g, mode] {
            SweepGRow row{g, std::nullopt, std::nullopt};
            const auto points = stationary_points(DimensionlessSystem(k, g), mode);
            if (!points.empty()) row.lower = points.front();
            if (points.size() > 1) row.upper = points.back();
            return row;
        }));
    }
    std::vector<SweepGRow> rows;
    rows.reserve(jobs.size());
    for (auto& j : jobs) rows.push_back(j.get());
    return rows;
}

SweepKResult sweep_k(std::span<const double> ks, SolveMode mode) {
    if (ks.empty()) {
        throw ArgumentError("sweep_k: empty k list");
    }
    for (double k : ks) {
        if (!std::isfinite(k) || k < kMinWellParameter) {
            throw ValidityError("sweep_k: every k must be >= 2");
        }
    }
    std::vector<std::future<SweepKRow>> jobs;
    for (double k : ks) {
        jobs.push_back(std::async(std::launch::async,
                                  [k, mode] { return SweepKRow{k, critical_coupling(k, mode)}; }));
    }
    SweepKResult result{{}, true};
    for (auto& j : jobs) result.rows.push_back(j.get());
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
        if (!(result.rows[i].critical.gprime_c < result.rows[i - 1].critical.gprime_c)) {
            result.gprime_c_decreasing = false;
        }
    }
    return result;
}

}  // namespace morse_gpe::solver
