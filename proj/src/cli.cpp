#include "morse_gpe/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "morse_gpe/analytic.hpp"
#include "morse_gpe/errors.hpp"
#include "morse_gpe/model.hpp"
#include "morse_gpe/oracle.hpp"
#include "morse_gpe/report.hpp"
#include "morse_gpe/solver.hpp"
#include "morse_gpe/table.hpp"

namespace morse_gpe::cli {

namespace {

using io::Cell;
using io::Table;
using solver::SolveMode;

struct RunConfig {
    std::string k = "";
    std::string gprime = "";
    std::string mode = "paper";
    std::string format = "";
    std::string output_path = "";
    std::string from_file = "";
    // solver
    std::string alpha_range = "";
    int scan_points = solver::kDefaultScanPoints;
    // profiles
    std::string u_range = "-3:30:0.1";
    std::string y_range = "0.01:40:0.01";
    std::string branch = "lower";
    bool at_critical = false;
    // grid oracle
    std::string beta_range = "";
    int resolution = 2000;
    // pde oracle
    std::string lambda = "derived";
    double x_min = -3.0;
    std::optional<double> x_max;
    int n_points = 4096;
    double dtau = 1e-3;
    double tol = 1e-12;
    long max_iterations = 1'000'000;
    bool profile = false;
    double mass_cut = 10.0;
};

class NoBoundState : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ArgumentError("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) {
        throw ArgumentError("not a finite number: '" + s + "'");
    }
    return v;
}

double single_value(const std::string& spec, const char* flag) {
    if (spec.empty()) {
        throw ArgumentError(std::string(flag) + " is required");
    }
    const auto values = parse_values(spec);
    if (values.size() != 1) {
        throw ArgumentError(std::string(flag) + " expects a single value");
    }
    return values.front();
}

std::pair<double, double> parse_interval(const std::string& spec, const char* flag) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos || spec.find(':', colon + 1) != std::string::npos) {
        throw ArgumentError(std::string(flag) + " expects lo:hi");
    }
    const double lo = parse_double(spec.substr(0, colon));
    const double hi = parse_double(spec.substr(colon + 1));
    if (!(hi > lo)) {
        throw ArgumentError(std::string(flag) + " needs lo < hi");
    }
    return {lo, hi};
}

SolveMode mode_of(const RunConfig& cfg) {
    const auto m = solver::parse_mode(cfg.mode);
    if (!m) throw ArgumentError("--mode must be paper or consistent");
    return *m;
}

// ---- subcommands ---------------------------------------------------------

Table cmd_potential(const RunConfig& cfg) {
    const double k = single_value(cfg.k, "--k");
    DimensionlessSystem(k, 0.0);  // validity check
    Table t{"potential", {"u", "V"}, {}};
    for (double u : parse_values(cfg.u_range)) {
        t.add_row({u, model::morse_potential(u, k)});
    }
    return t;
}

std::vector<Cell> point_cells(const solver::StationaryPoint& p) {
    return {p.alpha,
            p.beta,
            p.energy.oscillator_part,
            p.energy.interaction_part,
            p.energy.total,
            p.grad_norm,
            p.hessian.d2_alpha,
            p.hessian.d2_alpha_beta,
            p.hessian.d2_beta,
            p.hessian.determinant(),
            std::string(solver::to_string(p.classification)),
            p.residual_slope};
}

solver::AlphaRange alpha_range_of(const RunConfig& cfg) {
    if (cfg.alpha_range.empty()) return {};
    const auto [lo, hi] = parse_interval(cfg.alpha_range, "--alpha-range");
    return {lo, hi};
}

Table cmd_solve(const RunConfig& cfg) {
    const DimensionlessSystem sys(single_value(cfg.k, "--k"), single_value(cfg.gprime, "--gprime"));
    const auto mode = mode_of(cfg);
    Table t{"solve",
            {"alpha", "beta", "E_oscillator", "E_interaction", "E", "grad_norm", "H_alpha_alpha",
             "H_alpha_beta", "H_beta_beta", "det_H", "classification", "residual_slope"},
            {}};
    for (const auto& p : solver::stationary_points(sys, mode, alpha_range_of(cfg), cfg.scan_points)) {
        t.add_row(point_cells(p));
    }
    return t;
}

Table cmd_critical(const RunConfig& cfg) {
    const auto ks = parse_values(cfg.k.empty() ? throw ArgumentError("--k is required") : cfg.k);
    const auto mode = mode_of(cfg);
    Table t{"critical",
            {"k", "gprime_c", "alpha_star", "E_at_critical", "termination", "gprime_fold",
             "gprime_crosscheck", "alpha_crosscheck"},
            {}};
    for (double k : ks) DimensionlessSystem(k, 0.0);
    for (double k : ks) {
        const auto cp = solver::critical_coupling(k, mode);
        t.add_row({k, cp.gprime_c, cp.alpha_star, cp.energy_at_critical,
                   std::string(solver::to_string(cp.termination)), cp.gprime_fold,
                   cp.gprime_crosscheck,
                   cp.alpha_crosscheck});
    }
    return t;
}

Table cmd_sweep_g(const RunConfig& cfg) {
    const double k = single_value(cfg.k, "--k");
    if (cfg.gprime.empty()) throw ArgumentError("--gprime is required");
    const auto gs = parse_values(cfg.gprime);
    for (double g : gs) DimensionlessSystem(k, g);
    Table t{"sweep-g", {"gprime", "alpha1", "beta1", "E1", "alpha2", "beta2", "E2"}, {}};
    for (const auto& row : solver::sweep_g(k, gs, mode_of(cfg))) {
        auto field = [](const std::optional<solver::StationaryPoint>& p, int which) -> Cell {
            if (!p) return std::monostate{};
            if (which == 0) return p->alpha;
            if (which == 1) return p->beta;
            return p->energy.total;
        };
        t.add_row({row.gprime, field(row.lower, 0), field(row.lower, 1), field(row.lower, 2),
                   field(row.upper, 0), field(row.upper, 1), field(row.upper, 2)});
    }
    return t;
}

Table cmd_sweep_k(const RunConfig& cfg) {
    if (cfg.k.empty()) throw ArgumentError("--k is required");
    const auto ks = parse_values(cfg.k);
    for (double k : ks) DimensionlessSystem(k, 0.0);
    const auto result = solver::sweep_k(ks, mode_of(cfg));
    Table t{"sweep-k",
            {"k", "gprime_c", "alpha_star", "E_at_critical", "termination", "gprime_c_decreasing"},
            {}};
    for (const auto& row : result.rows) {
        t.add_row({row.k, row.critical.gprime_c, row.critical.alpha_star,
                   row.critical.energy_at_critical,
                   std::string(solver::to_string(row.critical.termination)),
                   result.gprime_c_decreasing ? "true" : "false"});
    }
    return t;
}

Table cmd_density(const RunConfig& cfg) {
    const double k = single_value(cfg.k, "--k");
    const auto mode = mode_of(cfg);
    double alpha = 0.0;
    if (cfg.at_critical) {
        DimensionlessSystem(k, 0.0);
        alpha = solver::critical_coupling(k, mode).alpha_star;
    } else {
        const double g = cfg.gprime.empty() ? 0.0 : single_value(cfg.gprime, "--gprime");
        const DimensionlessSystem sys(k, g);
        if (cfg.branch != "lower" && cfg.branch != "upper") {
            throw ArgumentError("--branch must be lower or upper");
        }
        if (g == 0.0 && cfg.branch == "lower") {
            alpha = analytic::noninteracting_solution(k).alpha;
        } else {
            const auto roots = solver::find_roots(sys, mode);
            if (roots.empty() || (cfg.branch == "upper" && roots.size() < 2)) {
                throw NoBoundState("no stationary point on the requested branch at g' = " +
                                   io::format_number(g));
            }
            alpha = cfg.branch == "lower" ? roots.front() : roots.back();
        }
    }
    const auto params = AnsatzParams::on_constraint(alpha, k);
    const auto grid = parse_values(cfg.y_range);
    const auto profile = model::density(params, grid);
    Table t{"density", {"y", "d"}, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        t.add_row({profile.y_values[i], profile.d_values[i]});
    }
    return t;
}

Table cmd_oracle_grid(const RunConfig& cfg) {
    const DimensionlessSystem sys(single_value(cfg.k, "--k"),
                                  cfg.gprime.empty() ? 0.0 : single_value(cfg.gprime, "--gprime"));
    solver::AlphaRange range{0.2, 8.0};
    if (!cfg.alpha_range.empty()) range = alpha_range_of(cfg);
    auto choice = oracle::BetaChoice::constrained();
    if (!cfg.beta_range.empty()) {
        const auto [lo, hi] = parse_interval(cfg.beta_range, "--beta-range");
        choice = oracle::BetaChoice::full(lo, hi);
    }
    const auto r = oracle::grid_minimize(sys, range, choice, cfg.resolution);
    Table t{"oracle-grid",
            {"k", "gprime", "best_alpha", "best_beta", "best_energy", "alpha_cell", "refined_alpha",
             "refined_beta", "refined_energy"},
            {}};
    t.add_row({sys.k(), sys.gprime(), r.best_alpha, r.best_beta, r.best_energy, r.alpha_cell,
               r.refined_alpha, r.refined_beta, r.refined_energy});
    return t;
}

Table cmd_oracle_pde(const RunConfig& cfg) {
    const DimensionlessSystem sys(single_value(cfg.k, "--k"),
                                  cfg.gprime.empty() ? 0.0 : single_value(cfg.gprime, "--gprime"));
    const auto convention = oracle::parse_convention(cfg.lambda);
    if (!convention) throw ArgumentError("--lambda must be derived or paper");
    oracle::PdeOptions opt;
    opt.x_min = cfg.x_min;
    opt.x_max = cfg.x_max;
    opt.n_points = cfg.n_points;
    opt.dtau = cfg.dtau;
    opt.tol = cfg.tol;
    opt.max_iterations = cfg.max_iterations;
    const auto state = oracle::imaginary_time_ground_state(sys, *convention, opt);
    if (cfg.profile) {
        Table t{"oracle-pde", {"x", "density"}, {}};
        for (std::size_t i = 0; i < state.x_grid.size(); ++i) {
            t.add_row({state.x_grid[i], state.density[i]});
        }
        return t;
    }
    Table t{"oracle-pde",
            {"k", "gprime", "convention", "lambda", "energy", "iterations", "residual",
             "final_dtau", "mass_beyond_cut", "x_cut"},
            {}};
    t.add_row({sys.k(), sys.gprime(), std::string(oracle::to_string(*convention)),
               oracle::interaction_lambda(sys, *convention), state.energy_over_ND,
               static_cast<double>(state.iterations), state.residual, state.final_dtau,
               oracle::mass_beyond(state, cfg.mass_cut), cfg.mass_cut});
    return t;
}

// ---- output --------------------------------------------------------------

std::optional<std::filesystem::path> output_dir(const RunConfig& cfg) {
    if (!cfg.output_path.empty()) return std::filesystem::path(cfg.output_path);
    if (const char* env = std::getenv("MORSE_GPE_OUT"); env && *env) {
        return std::filesystem::path(env);
    }
    return std::nullopt;
}

void deliver(const std::string& name, const std::string& ext, const std::string& body,
             const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto dir = output_dir(cfg);
    if (!dir) {
        out << body;
        return;
    }
    std::filesystem::create_directories(*dir);
    const auto path = *dir / (name + "." + ext);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << body;
    err << "wrote " << path.string() << "\n";
}

io::Format format_of(const std::string& text, io::Format fallback) {
    if (text.empty()) return fallback;
    if (text == "csv") return io::Format::Csv;
    if (text == "json") return io::Format::Json;
    throw ArgumentError("--format must be csv or json");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ArgumentError("cannot read --from-file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int dispatch(const std::string& name, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (!cfg.from_file.empty()) {
        io::Format detected{};
        const auto table = io::parse_any(read_file(cfg.from_file), name, detected);
        const auto fmt = format_of(cfg.format, detected);
        deliver(name, fmt == io::Format::Csv ? "csv" : "json", io::emit(table, fmt), cfg, out, err);
        return kExitOk;
    }

    if (name == "report") {
        const auto ks = parse_values(cfg.k.empty() ? "2,3,4,5" : cfg.k);
        const auto rep = report::build_report(ks);
        const std::string fmt = cfg.format.empty() ? "md" : cfg.format;
        if (fmt == "md") {
            deliver("report", "md", report::to_markdown(rep), cfg, out, err);
            if (output_dir(cfg)) {
                deliver("report", "json", io::to_json(report::to_table(rep)), cfg, out, err);
            }
        } else {
            const auto f = format_of(fmt, io::Format::Json);
            deliver("report", fmt, io::emit(report::to_table(rep), f), cfg, out, err);
        }
        return kExitOk;
    }

    Table table;
    io::Format fallback = io::Format::Csv;
    if (name == "potential") {
        table = cmd_potential(cfg);
    } else if (name == "solve") {
        table = cmd_solve(cfg);
        fallback = io::Format::Json;
    } else if (name == "critical") {
        table = cmd_critical(cfg);
        fallback = io::Format::Json;
    } else if (name == "sweep-g") {
        table = cmd_sweep_g(cfg);
    } else if (name == "sweep-k") {
        table = cmd_sweep_k(cfg);
    } else if (name == "density") {
        table = cmd_density(cfg);
    } else if (name == "oracle-grid") {
        table = cmd_oracle_grid(cfg);
        fallback = io::Format::Json;
    } else if (name == "oracle-pde") {
        table = cmd_oracle_pde(cfg);
        fallback = cfg.profile ? io::Format::Csv : io::Format::Json;
    }
    const auto fmt = format_of(cfg.format, fallback);
    deliver(name, fmt == io::Format::Csv ? "csv" : "json", io::emit(table, fmt), cfg, out, err);
    return kExitOk;
}

}  // namespace

std::vector<double> parse_values(const std::string& spec) {
    if (spec.empty()) throw ArgumentError("empty value list");
    std::vector<double> values;
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw ArgumentError("range must be start:stop:step, got " + spec);
        const double start = parse_double(parts[0]);
        const double stop = parse_double(parts[1]);
        const double step = parse_double(parts[2]);
        if (!(step > 0.0) || stop < start) {
            throw ArgumentError("range needs step > 0 and stop >= start: " + spec);
        }
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (count > 10'000'000) throw ArgumentError("range too long: " + spec);
        for (long i = 0; i < count; ++i) values.push_back(start + static_cast<double>(i) * step);
        return values;
    }
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ',');) values.push_back(parse_double(p));
    return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Variational ground state of the 1D Gross-Pitaevskii equation in a Morse well",
                 "morse-gpe"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format: csv or json");
        sub->add_option("--output-path", cfg.output_path,
                        "Directory for output files (fallback: $MORSE_GPE_OUT, else stdout)");
        sub->add_option("--from-file", cfg.from_file,
                        "Re-read a previously emitted CSV/JSON file and re-emit it");
    };
    auto with_mode = [&](CLI::App* sub) {
        sub->add_option("--mode", cfg.mode, "paper | consistent")->capture_default_str();
    };

    auto* potential = app.add_subcommand("potential", "Morse profile V(u)/D on a u grid");
    potential->add_option("--k", cfg.k, "Well parameter k >= 2");
    potential->add_option("--u-range", cfg.u_range, "start:stop:step")->capture_default_str();
    common(potential);

    auto* solve = app.add_subcommand("solve", "Stationary points at one (k, g')");
    solve->add_option("--k", cfg.k, "Well parameter k >= 2");
    solve->add_option("--gprime", cfg.gprime, "Coupling g' >= 0");
    solve->add_option("--alpha-range", cfg.alpha_range, "lo:hi (default 0.02:40)");
    solve->add_option("--scan-points", cfg.scan_points)->capture_default_str();
    with_mode(solve);
    common(solve);

    auto* critical = app.add_subcommand("critical", "Critical coupling g'_c(k)");
    critical->add_option("--k", cfg.k, "Well parameter(s)");
    with_mode(critical);
    common(critical);

    auto* sweep_g = app.add_subcommand("sweep-g", "Both branches over a g' range");
    sweep_g->add_option("--k", cfg.k, "Well parameter k >= 2");
    sweep_g->add_option("--gprime", cfg.gprime, "start:stop:step or a,b,c");
    with_mode(sweep_g);
    common(sweep_g);

    auto* sweep_k = app.add_subcommand("sweep-k", "Critical coupling over a k range");
    sweep_k->add_option("--k", cfg.k, "start:stop:step or a,b,c");
    with_mode(sweep_k);
    common(sweep_k);

    auto* density = app.add_subcommand("density", "Density profile d(y) of a stationary point");
    density->add_option("--k", cfg.k, "Well parameter k >= 2");
    density->add_option("--gprime", cfg.gprime, "Coupling g' (default 0)");
    density->add_option("--y-range", cfg.y_range, "start:stop:step")->capture_default_str();
    density->add_option("--branch", cfg.branch, "lower | upper")->capture_default_str();
    density->add_flag("--at-critical", cfg.at_critical, "Use the merged root at g'_c");
    with_mode(density);
    common(density);

    auto* grid = app.add_subcommand("oracle-grid", "Brute-force minimum of the ansatz energy");
    grid->add_option("--k", cfg.k, "Well parameter k >= 2");
    grid->add_option("--gprime", cfg.gprime, "Coupling g' (default 0)");
    grid->add_option("--alpha-range", cfg.alpha_range, "lo:hi (default 0.2:8)");
    grid->add_option("--beta-range", cfg.beta_range, "lo:hi; omit to scan along alpha + 1/2 = beta k");
    grid->add_option("--resolution", cfg.resolution, "Points per axis (>= 500)")->capture_default_str();
    common(grid);

    auto* pde = app.add_subcommand("oracle-pde", "Imaginary-time ground state of the full functional");
    pde->add_option("--k", cfg.k, "Well parameter k >= 2");
    pde->add_option("--gprime", cfg.gprime, "Coupling g' (default 0)");
    pde->add_option("--lambda", cfg.lambda, "derived | paper")->capture_default_str();
    pde->add_option("--x-min", cfg.x_min)->capture_default_str();
    pde->add_option("--x-max", cfg.x_max, "default max(40, 12 k)");
    pde->add_option("--n-points", cfg.n_points)->capture_default_str();
    pde->add_option("--dtau", cfg.dtau)->capture_default_str();
    pde->add_option("--tol", cfg.tol)->capture_default_str();
    pde->add_option("--max-iterations", cfg.max_iterations)->capture_default_str();
    pde->add_option("--mass-cut", cfg.mass_cut, "x beyond which mass counts as escaped")
        ->capture_default_str();
    pde->add_flag("--profile", cfg.profile, "Emit x, density instead of the summary");
    common(pde);

    auto* rep = app.add_subcommand("report", "Published vs computed comparison (markdown/json/csv)");
    rep->add_option("--k", cfg.k, "k values in [2, 6] (default 2,3,4,5)");
    rep->add_option("--format", cfg.format, "md | json | csv");
    rep->add_option("--output-path", cfg.output_path, "Directory for report.md and report.json");
    rep->add_option("--from-file", cfg.from_file, "Re-read a report CSV/JSON and re-emit it");

    std::vector<const char*> argv;
    argv.push_back("morse-gpe");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitArgument;
    }

    const auto subs = app.get_subcommands();
    const std::string name = subs.front()->get_name();
    try {
        return dispatch(name, cfg, out, err);
    } catch (const ValidityError& e) {
        err << "error: " << e.what() << "\n";
        return kExitArgument;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return kExitArgument;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitArgument;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << " (residual " << e.residual() << ")\n";
        return kExitConvergence;
    } catch (const NoBoundState& e) {
        err << "error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace morse_gpe::cli
