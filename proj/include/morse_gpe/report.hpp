#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morse_gpe/table.hpp"

namespace morse_gpe::report {

// Published reference values the computed results are compared against.
namespace reference {

struct EnergyRow {
    double gprime;
    double e1;
    double e2;
    bool at_critical;  // the last row is quoted at g'_c itself
};

struct CriticalRow {
    double k;
    double gprime_c;
    double energy;
};

struct HessianEntry {
    const char* name;  // "d2E/dbeta2", ...
    double value;
};

inline constexpr double kEnergyTableK = 3.0;

// Energies of both stationary points versus g' at k = 3.
inline constexpr EnergyRow kEnergyRows[] = {
    {0.10, -0.418, 0.463, false}, {0.12, -0.407, 0.168, false}, {0.14, -0.395, -0.029, false},
    {0.155, -0.37, -0.177, false}, {0.17, -0.31, -0.31, true},
};

// Critical coupling and energy at the critical coupling.
inline constexpr CriticalRow kCriticalRows[] = {
    {2.0, 0.445, -0.048}, {3.0, 0.170, -0.310}, {4.0, 0.095, -0.459}, {5.0, 0.061, -0.546},
};

// Quoted roots at k = 3, g' = 0.1 and their beta partners.
inline constexpr double kRootsG01[2] = {1.2, 6.2};
inline constexpr double kBetasG01[2] = {0.56, 2.23};

// Second derivatives quoted at the lower (minimum) and upper (saddle) point.
inline constexpr HessianEntry kHessianLower[] = {
    {"d2E/dbeta2", 10.61}, {"d2E/dalpha2", 1.66}, {"d2E/dalpha dbeta", 1.1}};
inline constexpr HessianEntry kHessianUpper[] = {
    {"d2E/dbeta2", 0.84}, {"d2E/dalpha2", -437.75}, {"d2E/dalpha dbeta", -0.22}};

}  // namespace reference

inline constexpr double kEnergyTolerance = 0.1;
inline constexpr double kCouplingTolerance = 0.005;

struct ReportEntry {
    std::string section;
    std::string quantity;
    std::optional<double> paper_value;
    std::optional<double> computed_value;
    std::optional<double> abs_diff;
    std::string tolerance;  // "0.1", "0.005", "sign"
    bool within_tolerance;
    std::string notes;
};

struct ComparisonReport {
    std::vector<ReportEntry> entries;
};

// Throws ArgumentError unless every k lies in [2, 6].
ComparisonReport build_report(std::span<const double> k_list);

std::string to_markdown(const ComparisonReport& report);
io::Table to_table(const ComparisonReport& report);

}  // namespace morse_gpe::report
