#pragma once

#include "lindisk/field.hpp"

#include <string>
#include <vector>

namespace lindisk {

// Batch-job description parsed from the keyed-table configuration format:
//
//   [field]
//   p = 3
//   kind = eisenstein          # trivial | eisenstein | cyclotomic
//   degree = 4
//   relation = pi^4 = p        # pure relation, or
//   coefficients = 3, 9, 18    # g_0..g_{e-1} of a monic Eisenstein polynomial
//   order = 9                  # cyclotomic preset p^s
//   [precision]
//   pi_digits = 96
//   [multiplier]
//   lambda = 1 + pi
//   [map]
//   series = lambda*x + x^2
//   [job]
//   command = analyze          # analyze | conjugacy | newton | verify
//   K = 50
//   nmax = 2
//   sweep = 1+pi ; 1+pi^3      # optional lambda sweep
struct JobConfig {
    Integer p = 0;
    std::string kind = "trivial";
    long degree = 0;
    std::string relation;
    std::vector<Integer> coefficients;
    Integer cyclo_order = 0;

    long pi_digits = 96;

    std::string lambda_expr;
    std::string map_expr = "lambda*x + x^2";

    std::string command;
    long K = 50;
    long nmax = 2;
    std::vector<std::string> sweep;
    std::string verify_suite = "paper";
    bool decimal = false;

    FieldPtr make_field() const;
};

JobConfig parse_config(const std::string& text);
JobConfig parse_config_file(const std::string& path);

} // namespace lindisk
