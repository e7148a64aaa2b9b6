#pragma once

#include "lindisk/config.hpp"
#include "lindisk/report.hpp"

#include <optional>
#include <string>

namespace lindisk {

inline constexpr const char* kToolVersion = "0.1.0";

struct CommandOutcome {
    ReportDocument report;
    std::optional<std::string> spectrum_csv; // newton command
    std::optional<std::string> polygon_csv;  // newton command, top level
    std::optional<std::string> svg;          // newton command, top level
};

// Invariants, radii and the formula spectrum for the configured multiplier.
CommandOutcome run_analyze(const JobConfig& cfg);

// Conjugacy coefficient table plus the coefficient-law checks.
CommandOutcome run_conjugacy(const JobConfig& cfg);

// Iterate polygons, both spectra, ramification numbers, the minimal
// ramification verdict and the boundary-free verdict.
CommandOutcome run_newton(const JobConfig& cfg);

// Dispatch on cfg.command (verify is handled by the caller via run_verify).
CommandOutcome run_job(const JobConfig& cfg);

// Sweep mode: one job per lambda expression in cfg.sweep (or the single
// configured lambda), fanned out over a worker pool and merged in input
// order; the result is independent of the concurrency degree.
Json run_sweep(const JobConfig& cfg, long jobs);

} // namespace lindisk
