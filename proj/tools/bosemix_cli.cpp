// bosemix_cli.cpp — scenario runner CLI.
//
//   bosemix <scenario-name> [--config FILE] [--out DIR] [--r12 LIST] [--L FLOAT]
//           [--d FLOAT] [--t-max FLOAT] [--steps INT] [--temperature FLOAT]
//           [--convention coherent_sum|as_printed] [--allow-immiscible] [--jobs N]

#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bosemix/bosemix.hpp"

namespace {

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token = bosemix::io::trim(token);
        if (token.empty()) continue;
        std::size_t used = 0;
        values.push_back(std::stod(token, &used));
        if (used != token.size())
            throw bosemix::ConfigError({"--r12: cannot parse list entry '" + token + "'"});
    }
    if (values.empty()) throw bosemix::ConfigError({"--r12: empty list"});
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bosemix — dephasing, backflow, spectral-density and entanglement dynamics "
                 "of impurity qubits in a quasi-1D two-component condensate"};
    app.set_version_flag("--version", bosemix::version_string);

    std::string scenario_name;
    app.add_option("scenario", scenario_name, "scenario to run")
        ->required()
        ->check(CLI::IsMember(bosemix::scenario_names()));

    std::string config_file, out_dir, r12_list, convention;
    double well_sep = 0.0, trap_dist = 0.0, t_max = 0.0, temperature = 0.0;
    std::size_t steps = 0;
    unsigned jobs = 0;
    bool allow_immiscible = false;

    auto* opt_config = app.add_option("--config", config_file, "INI config or JSON manifest");
    auto* opt_out = app.add_option("--out", out_dir, "output directory (default '.')");
    auto* opt_r12 = app.add_option("--r12", r12_list, "comma-separated interaction ratios");
    auto* opt_L = app.add_option("--L", well_sep, "well half separation, in l0");
    auto* opt_d = app.add_option("--d", trap_dist, "trap half distance, in l0 (default 2L)");
    auto* opt_tmax = app.add_option("--t-max", t_max, "time horizon, in 1/omega_perp");
    auto* opt_steps = app.add_option("--steps", steps, "time grid steps (>= 64)");
    auto* opt_temp = app.add_option("--temperature", temperature,
                                    "reservoir temperature, in hbar*omega_perp/kB");
    auto* opt_conv = app.add_option("--convention", convention, "pair-coupling convention")
                         ->check(CLI::IsMember({"coherent_sum", "as_printed"}));
    app.add_flag("--allow-immiscible", allow_immiscible,
                 "evaluate r12 >= 1 past the miscibility point");
    auto* opt_jobs = app.add_option("--jobs", jobs, "worker threads (default: hardware)");

    CLI11_PARSE(app, argc, argv);

    try {
        bosemix::ScenarioOverrides overrides;
        if (*opt_r12) overrides.r12 = parse_list(r12_list);
        if (*opt_L) overrides.well_half_sep = well_sep;
        if (*opt_d) overrides.trap_half_dist = trap_dist;
        if (*opt_tmax) overrides.t_max = t_max;
        if (*opt_steps) overrides.steps = steps;
        if (*opt_temp) overrides.temperature = temperature;
        if (*opt_conv)
            overrides.convention = convention == "as_printed"
                                       ? bosemix::PairConvention::as_printed
                                       : bosemix::PairConvention::coherent_sum;
        overrides.allow_immiscible = allow_immiscible;
        if (*opt_out) overrides.out_dir = out_dir;
        if (*opt_jobs) overrides.jobs = jobs;

        const auto kind = bosemix::scenario_kind_from_name(scenario_name);
        const auto scenario =
            bosemix::validate(kind, *opt_config ? config_file : std::string{}, overrides);
        for (const auto& warning : scenario.warnings)
            std::fprintf(stderr, "warning: %s\n", warning.c_str());

        const auto result = bosemix::run(scenario);
        for (const auto& file : result.files) std::printf("wrote %s\n", file.c_str());
        std::printf("wrote %s (%.2f s)\n", result.manifest_file.c_str(), result.wall_seconds);
        return 0;
    } catch (const bosemix::ConfigError& err) {
        for (const auto& issue : err.issues()) std::fprintf(stderr, "error: %s\n", issue.c_str());
        return 2;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
}
