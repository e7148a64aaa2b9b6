#pragma once

#include "lindisk/report.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace lindisk {

// The built-in verification suite: one item per headline fixture, each with
// a frozen expected outcome and a wall-clock budget.  Used both by the
// `verify` command and by the acceptance test binary.
struct VerifyItem {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double budget_seconds = 0;
};

struct VerifySummary {
    std::vector<VerifyItem> items;
    bool all_pass() const;
};

VerifySummary run_paper_suite();

// Prints one pass/fail line per item; returns 0 iff everything passed.
// Unknown suite names raise ConfigError.
int run_verify(const std::string& suite, std::ostream& out);

// Comparison seam for the radius fixture (exposed so tests can establish
// that a tampered value is actually rejected).
bool radii_values_match(const Json& radii_block, const std::string& expect_tilde_r,
                        const std::string& expect_r);

} // namespace lindisk
