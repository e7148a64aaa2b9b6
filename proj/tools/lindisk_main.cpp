#include "lindisk/commands.hpp"
#include "lindisk/errors.hpp"
#include "lindisk/verify.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

void write_or_print(const std::string& content, const std::string& path) {
    if (path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw lindisk::ConfigError("cannot write to '" + path + "'");
    out << content;
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
    const size_t dot = path.find_last_of('.');
    if (dot == std::string::npos || path.find('/', dot) != std::string::npos)
        return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lindisk - exact linearization disks, conjugacy coefficients and "
                 "periodic orbits of power series over ramified p-adic fields"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format = "json";
    std::string svg_path;
    bool decimal = false;
    long jobs = 1;

    auto* run = app.add_subcommand("run", "execute the job described by a config file");
    run->add_option("config", config_path, "configuration file")->required();
    run->add_option("--out", out_path, "write the report here instead of stdout");
    run->add_option("--format", format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    run->add_option("--svg", svg_path, "write the Newton-polygon SVG here (newton command)");
    run->add_flag("--decimal", decimal, "add approximate decimal radii, clearly labeled");
    run->add_option("--jobs", jobs, "worker pool size for sweep mode")
        ->check(CLI::PositiveNumber);

    std::string suite = "paper";
    auto* verify = app.add_subcommand("verify", "run a built-in verification suite");
    verify->add_option("suite", suite, "suite name (default: paper)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed())
            return lindisk::run_verify(suite, std::cout);

        lindisk::JobConfig cfg = lindisk::parse_config_file(config_path);
        cfg.decimal = decimal;
        if (cfg.command == "verify")
            return lindisk::run_verify(cfg.verify_suite, std::cout);

        if (!cfg.sweep.empty()) {
            lindisk::Json arr = lindisk::run_sweep(cfg, jobs);
            write_or_print(arr.dump(2), out_path);
            return 0;
        }

        lindisk::CommandOutcome outcome = lindisk::run_job(cfg);
        if (format == "json") {
            write_or_print(outcome.report.serialize(), out_path);
        } else {
            std::string csv;
            if (outcome.spectrum_csv) {
                csv = *outcome.spectrum_csv;
                if (outcome.polygon_csv && !out_path.empty())
                    write_or_print(*outcome.polygon_csv, sibling_path(out_path, ".polygon"));
                else if (outcome.polygon_csv)
                    csv += "\n" + *outcome.polygon_csv;
            } else {
                throw lindisk::ConfigError("--format csv applies to the newton command");
            }
            write_or_print(csv, out_path);
        }
        if (!svg_path.empty()) {
            if (!outcome.svg)
                throw lindisk::ConfigError("--svg applies to the newton command");
            write_or_print(*outcome.svg, svg_path);
        }
        return 0;
    } catch (const lindisk::Error& ex) {
        std::cerr << "lindisk: " << ex.what() << "\n";
        return ex.exit_code();
    } catch (const std::exception& ex) {
        std::cerr << "lindisk: internal error: " << ex.what() << "\n";
        return 70;
    }
}
