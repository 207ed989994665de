// scenario.hpp — named scenario runner: maps canonical data-generation
// scenarios and user configs onto CSV outputs plus a JSON manifest that can
// reproduce the run.

#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bosemix/dephasing.hpp"
#include "bosemix/entanglement.hpp"
#include "bosemix/errors.hpp"
#include "bosemix/io/csv.hpp"
#include "bosemix/io/ini.hpp"
#include "bosemix/nonmarkov.hpp"
#include "bosemix/params.hpp"
#include "bosemix/reservoir.hpp"

namespace bosemix {

inline constexpr const char* version_string = "0.1.0";

enum class ScenarioKind {
    gamma_single,
    nonmarkov_single,
    sdf_single,
    gamma_two,
    decay_rates,
    sdf_two,
    induced_coupling,
    concurrence,
};

inline const std::vector<std::pair<std::string, ScenarioKind>>& scenario_table() {
    static const std::vector<std::pair<std::string, ScenarioKind>> table = {
        {"gamma-single", ScenarioKind::gamma_single},
        {"nonmarkov-single", ScenarioKind::nonmarkov_single},
        {"sdf-single", ScenarioKind::sdf_single},
        {"gamma-two", ScenarioKind::gamma_two},
        {"decay-rates", ScenarioKind::decay_rates},
        {"sdf-two", ScenarioKind::sdf_two},
        {"induced-coupling", ScenarioKind::induced_coupling},
        {"concurrence", ScenarioKind::concurrence},
    };
    return table;
}

inline std::vector<std::string> scenario_names() {
    std::vector<std::string> names;
    for (const auto& [name, kind] : scenario_table()) names.push_back(name);
    return names;
}

inline ScenarioKind scenario_kind_from_name(const std::string& name) {
    for (const auto& [known, kind] : scenario_table())
        if (known == name) return kind;
    throw ConfigError({"unknown scenario '" + name + "'"});
}

inline std::string scenario_name(ScenarioKind kind) {
    for (const auto& [name, known] : scenario_table())
        if (known == kind) return name;
    return "?";
}

struct GridSpec {
    double t_max{20.0};
    std::size_t steps{512};
    double omega_min{5e-3};
    double omega_max{20.0};
    std::size_t omega_points{600};
    FitWindow fit_window{};
};

struct Scenario {
    ScenarioKind kind{ScenarioKind::gamma_single};
    ReservoirConfig config{};          // base parameters; r12 is replaced per sweep value
    std::vector<double> r12_sweep{};
    GridSpec grid{};
    bool allow_immiscible{false};
    std::string out_dir{"."};
    unsigned jobs{0};  // 0 = hardware concurrency, 1 = serial
    std::vector<std::string> warnings{};
};

// Optional command-line overrides, applied after config-file values.
struct ScenarioOverrides {
    std::optional<std::vector<double>> r12;
    std::optional<double> well_half_sep;
    std::optional<double> trap_half_dist;
    std::optional<double> t_max;
    std::optional<std::size_t> steps;
    std::optional<double> temperature;
    std::optional<PairConvention> convention;
    bool allow_immiscible{false};
    std::optional<std::string> out_dir;
    std::optional<unsigned> jobs;
};

struct RunResult {
    std::vector<std::string> files;  // CSV paths, in output order
    std::string manifest_file;
    double wall_seconds{0.0};
    std::vector<std::string> warnings;
};

// ---------------------------------- validation ----------------------------------

namespace detail {

inline const std::vector<std::string>& dimensionless_keys() {
    static const std::vector<std::string> keys = {
        "alpha", "p", "kappa", "r12", "L", "d", "t_max", "steps", "temperature",
        "convention", "allow_immiscible", "out", "jobs",
        "omega_min", "omega_max", "omega_points", "fit_window_lo", "fit_window_hi"};
    return keys;
}

inline const std::vector<std::string>& physical_keys() {
    static const std::vector<std::string> keys = {
        "reservoir_mass", "impurity_mass", "density", "intra_scattering", "inter_scattering",
        "impurity_scattering", "transverse_freq", "impurity_trap_freq", "well_half_separation",
        "trap_half_distance", "reservoir_mass_2", "density_2", "intra_scattering_2",
        "transverse_freq_2"};
    return keys;
}

inline std::vector<std::string> known_keys() {
    std::vector<std::string> keys = dimensionless_keys();
    const auto& phys = physical_keys();
    keys.insert(keys.end(), phys.begin(), phys.end());
    return keys;
}

struct ValueParser {
    std::vector<std::string>& issues;

    bool number(const io::IniEntry& e, double& out) const {
        try {
            std::size_t used = 0;
            out = std::stod(e.value, &used);
            if (used != e.value.size()) throw std::invalid_argument("trailing characters");
            return true;
        } catch (const std::exception&) {
            issues.push_back("line " + std::to_string(e.line) + ": key '" + e.key +
                             "': cannot parse number from '" + e.value + "'");
            return false;
        }
    }

    bool count(const io::IniEntry& e, std::size_t& out) const {
        double v = 0.0;
        if (!number(e, v)) return false;
        if (v < 0.0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
            issues.push_back("line " + std::to_string(e.line) + ": key '" + e.key +
                             "': expected a nonnegative integer");
            return false;
        }
        out = static_cast<std::size_t>(v);
        return true;
    }

    bool boolean(const io::IniEntry& e, bool& out) const {
        const std::string& v = e.value;
        if (v == "true" || v == "1" || v == "yes") { out = true; return true; }
        if (v == "false" || v == "0" || v == "no") { out = false; return true; }
        issues.push_back("line " + std::to_string(e.line) + ": key '" + e.key +
                         "': expected true/false");
        return false;
    }

    bool numbers(const io::IniEntry& e, std::vector<double>& out) const {
        std::vector<double> values;
        std::stringstream ss(e.value);
        std::string token;
        while (std::getline(ss, token, ',')) {
            token = io::trim(token);
            if (token.empty()) continue;
            try {
                std::size_t used = 0;
                values.push_back(std::stod(token, &used));
                if (used != token.size()) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                issues.push_back("line " + std::to_string(e.line) + ": key '" + e.key +
                                 "': cannot parse list entry '" + token + "'");
                return false;
            }
        }
        if (values.empty()) {
            issues.push_back("line " + std::to_string(e.line) + ": key '" + e.key +
                             "': empty list");
            return false;
        }
        out = std::move(values);
        return true;
    }

    bool convention(const io::IniEntry& e, PairConvention& out) const {
        if (e.value == "coherent_sum") { out = PairConvention::coherent_sum; return true; }
        if (e.value == "as_printed") { out = PairConvention::as_printed; return true; }
        issues.push_back("line " + std::to_string(e.line) + ": key '" + e.key +
                         "': expected coherent_sum or as_printed");
        return false;
    }
};

inline GridSpec default_grid(ScenarioKind kind) {
    GridSpec grid;
    switch (kind) {
        case ScenarioKind::gamma_single:
        case ScenarioKind::gamma_two:
        case ScenarioKind::decay_rates:
            grid.t_max = 20.0;
            break;
        case ScenarioKind::nonmarkov_single:
        case ScenarioKind::induced_coupling:
        case ScenarioKind::concurrence:
            grid.t_max = 50.0;
            break;
        default:
            break;
    }
    return grid;
}

inline bool wide_geometry(ScenarioKind kind) {
    return kind == ScenarioKind::induced_coupling || kind == ScenarioKind::concurrence;
}

}  // namespace detail

/// Resolve a scenario from config-file entries plus command-line overrides.
/// Defaults are the canonical parameter set; unknown keys, unparsable values,
/// and constraint violations are aggregated into one ConfigError. Sweep values
/// past the miscibility point are accepted for the built-in default sweep
/// (with a warning) but require allow_immiscible when user-specified.
inline Scenario validate(ScenarioKind kind, const std::vector<io::IniEntry>& entries,
                         const ScenarioOverrides& overrides) {
    std::vector<std::string> issues;
    detail::ValueParser parse{issues};

    Scenario scenario;
    scenario.kind = kind;
    scenario.grid = detail::default_grid(kind);

    // physical-parameter block, if any key of it is present
    bool physical_block = false;
    for (const auto& e : entries)
        for (const auto& key : detail::physical_keys())
            if (e.key == key) physical_block = true;

    PhysicalParams phys = canonical_physical_params();
    const std::vector<std::string> known = detail::known_keys();
    double p_override = 0.0;
    bool has_p_override = false;

    for (const auto& e : entries) {
        bool recognized = false;
        for (const auto& key : known)
            if (e.key == key) recognized = true;
        if (!recognized) {
            issues.push_back("line " + std::to_string(e.line) + ": unknown key '" + e.key +
                             "' (did you mean '" + io::nearest_key(e.key, known) + "'?)");
            continue;
        }
        if (e.key == "reservoir_mass") parse.number(e, phys.reservoir_mass);
        else if (e.key == "impurity_mass") parse.number(e, phys.impurity_mass);
        else if (e.key == "density") parse.number(e, phys.density);
        else if (e.key == "intra_scattering") parse.number(e, phys.intra_scattering);
        else if (e.key == "inter_scattering") parse.number(e, phys.inter_scattering);
        else if (e.key == "impurity_scattering") parse.number(e, phys.impurity_scattering);
        else if (e.key == "transverse_freq") parse.number(e, phys.transverse_freq);
        else if (e.key == "impurity_trap_freq") parse.number(e, phys.impurity_trap_freq);
        else if (e.key == "well_half_separation") parse.number(e, phys.well_half_separation);
        else if (e.key == "trap_half_distance") parse.number(e, phys.trap_half_distance);
        else if (physical_block && e.key == "temperature") parse.number(e, phys.temperature);
        else if (e.key == "reservoir_mass_2" || e.key == "density_2" ||
                 e.key == "intra_scattering_2" || e.key == "transverse_freq_2") {
            double v = 0.0;
            if (parse.number(e, v)) {
                const double ref = e.key == "reservoir_mass_2"       ? phys.reservoir_mass
                                   : e.key == "density_2"            ? phys.density
                                   : e.key == "intra_scattering_2"   ? phys.intra_scattering
                                                                     : phys.transverse_freq;
                if (v != ref)
                    throw NonSymmetricMixture("line " + std::to_string(e.line) + ": key '" +
                                              e.key + "' differs from species 1");
            }
        }
    }

    ReservoirConfig base;
    if (physical_block) {
        try {
            base = to_dimensionless(phys);
        } catch (const Error& err) {
            issues.push_back(std::string("physical parameters: ") + err.what());
            base = canonical_config();
        }
    } else {
        base = canonical_config();
    }
    if (detail::wide_geometry(kind)) {
        base.well_half_sep = 7.5;
        base.trap_half_dist = 15.0;
    }

    scenario.r12_sweep = {0.2, 1.0, 3.0};
    bool r12_user = false;
    bool d_explicit = false;
    bool L_explicit = false;
    bool allow_flag = overrides.allow_immiscible;

    // dimensionless keys override the (possibly converted) base
    for (const auto& e : entries) {
        if (e.key == "alpha") parse.number(e, base.alpha);
        else if (e.key == "p") { if (parse.number(e, p_override)) has_p_override = true; }
        else if (e.key == "kappa") parse.number(e, base.coupling_prefactor);
        else if (e.key == "L") { if (parse.number(e, base.well_half_sep)) L_explicit = true; }
        else if (e.key == "d") { if (parse.number(e, base.trap_half_dist)) d_explicit = true; }
        else if (e.key == "t_max") parse.number(e, scenario.grid.t_max);
        else if (e.key == "steps") parse.count(e, scenario.grid.steps);
        else if (e.key == "temperature" && !physical_block) parse.number(e, base.temperature);
        else if (e.key == "convention") parse.convention(e, base.pair_convention);
        else if (e.key == "allow_immiscible") parse.boolean(e, allow_flag);
        else if (e.key == "out") scenario.out_dir = e.value;
        else if (e.key == "jobs") { std::size_t j = 0; if (parse.count(e, j)) scenario.jobs = static_cast<unsigned>(j); }
        else if (e.key == "omega_min") parse.number(e, scenario.grid.omega_min);
        else if (e.key == "omega_max") parse.number(e, scenario.grid.omega_max);
        else if (e.key == "omega_points") parse.count(e, scenario.grid.omega_points);
        else if (e.key == "fit_window_lo") parse.number(e, scenario.grid.fit_window.lo);
        else if (e.key == "fit_window_hi") parse.number(e, scenario.grid.fit_window.hi);
        else if (e.key == "r12") { if (parse.numbers(e, scenario.r12_sweep)) r12_user = true; }
    }
    if (has_p_override) base.p = p_override;

    // command-line overrides win
    if (overrides.r12) { scenario.r12_sweep = *overrides.r12; r12_user = true; }
    if (overrides.well_half_sep) { base.well_half_sep = *overrides.well_half_sep; L_explicit = true; }
    if (overrides.trap_half_dist) { base.trap_half_dist = *overrides.trap_half_dist; d_explicit = true; }
    if (overrides.t_max) scenario.grid.t_max = *overrides.t_max;
    if (overrides.steps) scenario.grid.steps = *overrides.steps;
    if (overrides.temperature) base.temperature = *overrides.temperature;
    if (overrides.convention) base.pair_convention = *overrides.convention;
    if (overrides.out_dir) scenario.out_dir = *overrides.out_dir;
    if (overrides.jobs) scenario.jobs = *overrides.jobs;

    // default two-qubit geometry 2d = 4L follows an explicit L
    if (L_explicit && !d_explicit) base.trap_half_dist = 2.0 * base.well_half_sep;

    if (scenario.r12_sweep.empty()) issues.push_back("r12 sweep must be nonempty");
    for (double r : scenario.r12_sweep) {
        if (r <= -1.0) {
            issues.push_back("r12 = " + io::format_double_short(r) +
                             ": below -1 the upper branch is unstable");
            continue;
        }
        if (r >= 1.0) {
            if (r12_user && !allow_flag) {
                issues.push_back(
                    "r12 = " + io::format_double_short(r) +
                    ": violates the symmetric-mixture stability bound r12 < 1"
                    " (pass --allow-immiscible to evaluate past the miscibility point)");
            } else {
                scenario.warnings.push_back(
                    "r12 = " + io::format_double_short(r) +
                    ": beyond the miscibility point; the lower branch is evaluated only above"
                    " its real-dispersion threshold");
                allow_flag = allow_flag || !r12_user;
            }
        }
    }
    scenario.allow_immiscible = allow_flag;

    if (!(scenario.grid.t_max > 0.0)) issues.push_back("t_max must be > 0");
    if (scenario.grid.steps < 64) issues.push_back("steps must be >= 64");
    if (!(scenario.grid.omega_min > 0.0) || !(scenario.grid.omega_max > scenario.grid.omega_min))
        issues.push_back("need 0 < omega_min < omega_max");
    if (scenario.grid.omega_points < 16) issues.push_back("omega_points must be >= 16");
    if (!(scenario.grid.fit_window.lo > 0.0) ||
        scenario.grid.fit_window.hi / scenario.grid.fit_window.lo < std::sqrt(10.0))
        issues.push_back("fit window must span at least half a decade");

    if (issues.empty()) {
        base.r12 = scenario.r12_sweep.front();
        try {
            scenario.config = validate_config(base, scenario.allow_immiscible);
        } catch (const Error& err) {
            issues.push_back(err.what());
        }
    }
    if (!issues.empty()) throw ConfigError(std::move(issues));
    return scenario;
}

inline Scenario validate(ScenarioKind kind, const std::string& config_path,
                         const ScenarioOverrides& overrides) {
    std::vector<io::IniEntry> entries;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError({"cannot open config file '" + config_path + "'"});
        std::string head;
        in >> std::ws;
        if (in.peek() == '{') {
            // JSON manifest from a previous run
            nlohmann::json manifest = nlohmann::json::parse(in);
            auto add = [&entries](const std::string& key, const std::string& value) {
                entries.push_back({key, value, 0});
            };
            const auto& cfg = manifest.at("config");
            add("alpha", io::format_double(cfg.at("alpha").get<double>()));
            add("p", io::format_double(cfg.at("p").get<double>()));
            add("kappa", io::format_double(cfg.at("kappa").get<double>()));
            add("L", io::format_double(cfg.at("L").get<double>()));
            add("d", io::format_double(cfg.at("d").get<double>()));
            add("temperature", io::format_double(cfg.at("temperature").get<double>()));
            add("convention", cfg.at("pair_convention").get<std::string>());
            add("allow_immiscible", cfg.at("allow_immiscible").get<bool>() ? "true" : "false");
            std::string sweep;
            for (double r : manifest.at("sweep").at("r12").get<std::vector<double>>()) {
                if (!sweep.empty()) sweep += ',';
                sweep += io::format_double(r);
            }
            add("r12", sweep);
            const auto& grid = manifest.at("grid");
            add("t_max", io::format_double(grid.at("t_max").get<double>()));
            add("steps", std::to_string(grid.at("steps").get<std::size_t>()));
            add("omega_min", io::format_double(grid.at("omega_min").get<double>()));
            add("omega_max", io::format_double(grid.at("omega_max").get<double>()));
            add("omega_points", std::to_string(grid.at("omega_points").get<std::size_t>()));
            add("fit_window_lo", io::format_double(grid.at("fit_window")[0].get<double>()));
            add("fit_window_hi", io::format_double(grid.at("fit_window")[1].get<double>()));
        } else {
            entries = io::parse_ini(in);
        }
    }
    return validate(kind, entries, overrides);
}

// ------------------------------------ running ------------------------------------

namespace detail {

template <class Body>
inline void parallel_for(std::size_t n, unsigned jobs, Body&& body) {
    if (jobs == 0) jobs = std::thread::hardware_concurrency();
    if (jobs == 0) jobs = 1;
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

inline ReservoirConfig with_r12(ReservoirConfig cfg, double r12) {
    cfg.r12 = r12;
    return cfg;
}

inline std::string file_stem(ScenarioKind kind) {
    std::string stem = scenario_name(kind);
    for (char& c : stem)
        if (c == '-') c = '_';
    return stem;
}

}  // namespace detail

/// Execute a resolved scenario: one CSV per branch (and per pair kind where
/// applicable) with the sweep as columns, plus a JSON manifest capturing the
/// fully resolved configuration. Reruns with identical settings produce
/// byte-identical CSVs.
inline RunResult run(const Scenario& scenario) {
    namespace fs = std::filesystem;
    const auto start = std::chrono::steady_clock::now();
    fs::create_directories(scenario.out_dir);

    RunResult result;
    result.warnings = scenario.warnings;
    nlohmann::ordered_json manifest;
    manifest["tool"] = "bosemix";
    manifest["version"] = version_string;
    manifest["scenario"] = scenario_name(scenario.kind);
    manifest["config"] = {
        {"alpha", scenario.config.alpha},
        {"p", scenario.config.p},
        {"kappa", scenario.config.coupling_prefactor},
        {"L", scenario.config.well_half_sep},
        {"d", scenario.config.trap_half_dist},
        {"temperature", scenario.config.temperature},
        {"pair_convention", to_string(scenario.config.pair_convention)},
        {"allow_immiscible", scenario.allow_immiscible},
    };
    manifest["sweep"] = {{"r12", scenario.r12_sweep}};
    manifest["grid"] = {
        {"t_max", scenario.grid.t_max},
        {"steps", scenario.grid.steps},
        {"omega_min", scenario.grid.omega_min},
        {"omega_max", scenario.grid.omega_max},
        {"omega_points", scenario.grid.omega_points},
        {"fit_window", {scenario.grid.fit_window.lo, scenario.grid.fit_window.hi}},
    };

    const std::string stem = detail::file_stem(scenario.kind);
    const auto out_path = [&](const std::string& tail) {
        return (fs::path(scenario.out_dir) / (stem + tail)).string();
    };
    auto emit = [&](const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& columns) {
        io::write_csv(path, header, columns);
        result.files.push_back(path);
    };

    const GridSpec& grid = scenario.grid;
    const std::vector<double>& sweep = scenario.r12_sweep;
    const std::array<Branch, 2> branches{Branch::upper, Branch::lower};

    std::vector<double> time_axis(grid.steps + 1);
    for (std::size_t i = 0; i <= grid.steps; ++i)
        time_axis[i] = grid.t_max * static_cast<double>(i) / static_cast<double>(grid.steps);

    switch (scenario.kind) {
        case ScenarioKind::gamma_single:
        case ScenarioKind::gamma_two:
        case ScenarioKind::decay_rates: {
            const bool two_qubit = scenario.kind != ScenarioKind::gamma_single;
            const bool rates = scenario.kind == ScenarioKind::decay_rates;
            const std::vector<GammaKind> kinds =
                two_qubit ? std::vector<GammaKind>{GammaKind::gamma1, GammaKind::gamma2}
                          : std::vector<GammaKind>{GammaKind::gamma0};

            struct Job { Branch branch; GammaKind kind; double r12; };
            std::vector<Job> tasks;
            for (Branch b : branches)
                for (GammaKind k : kinds)
                    for (double r : sweep) tasks.push_back({b, k, r});
            std::vector<GammaTrajectory> done(tasks.size());
            detail::parallel_for(tasks.size(), scenario.jobs, [&](std::size_t i) {
                const Job& job = tasks[i];
                done[i] = gamma_trajectory(detail::with_r12(scenario.config, job.r12), job.branch,
                                           job.kind, grid.t_max, grid.steps,
                                           scenario.config.temperature);
            });

            std::size_t idx = 0;
            for (Branch b : branches)
                for (GammaKind k : kinds) {
                    std::vector<std::string> header{"t"};
                    std::vector<std::vector<double>> columns{time_axis};
                    for (double r : sweep) {
                        header.push_back(std::string(rates ? "rate" : "gamma") + "(r12=" +
                                         io::format_double_short(r) + ")");
                        columns.push_back(rates ? done[idx].rate : done[idx].gamma);
                        ++idx;
                    }
                    std::string tail = "_" + std::string(to_string(b));
                    if (two_qubit) tail += "_" + std::string(to_string(k));
                    emit(out_path(tail + ".csv"), header, columns);
                }
            break;
        }

        case ScenarioKind::nonmarkov_single: {
            struct Job { Branch branch; double r12; };
            std::vector<Job> tasks;
            for (Branch b : branches)
                for (double r : sweep) tasks.push_back({b, r});
            std::vector<BackflowReport> done(tasks.size());
            detail::parallel_for(tasks.size(), scenario.jobs, [&](std::size_t i) {
                const Job& job = tasks[i];
                const auto traj =
                    gamma_trajectory(detail::with_r12(scenario.config, job.r12), job.branch,
                                     GammaKind::gamma0, grid.t_max, grid.steps,
                                     scenario.config.temperature);
                done[i] = blp_measure(traj);
            });
            std::vector<double> n_upper, n_lower, raw_upper, raw_lower;
            for (std::size_t i = 0; i < sweep.size(); ++i) {
                n_upper.push_back(done[i].measure);
                raw_upper.push_back(done[i].raw_measure);
                n_lower.push_back(done[sweep.size() + i].measure);
                raw_lower.push_back(done[sweep.size() + i].raw_measure);
            }
            emit(out_path(".csv"), {"r12", "N_upper", "N_lower", "raw_upper", "raw_lower"},
                 {sweep, n_upper, n_lower, raw_upper, raw_lower});
            break;
        }

        case ScenarioKind::sdf_single:
        case ScenarioKind::sdf_two: {
            const bool two_qubit = scenario.kind == ScenarioKind::sdf_two;
            const std::vector<std::pair<std::string, CouplingKind>> kinds =
                two_qubit ? std::vector<std::pair<std::string, CouplingKind>>{
                                {"j1", CouplingKind::pair_sum}, {"j2", CouplingKind::pair_diff}}
                          : std::vector<std::pair<std::string, CouplingKind>>{
                                {"", CouplingKind::single}};
            const std::vector<double> omega_axis =
                geometric_grid(grid.omega_min, grid.omega_max, grid.omega_points);

            struct Job { Branch branch; CouplingKind kind; double r12; };
            std::vector<Job> tasks;
            for (Branch b : branches)
                for (const auto& [label, ck] : kinds)
                    for (double r : sweep) tasks.push_back({b, ck, r});
            std::vector<SpectralSample> done(tasks.size());
            detail::parallel_for(tasks.size(), scenario.jobs, [&](std::size_t i) {
                const Job& job = tasks[i];
                const DispersionModel model(detail::with_r12(scenario.config, job.r12));
                done[i] = sample_spectral_density(model, job.branch, job.kind, omega_axis,
                                                  grid.fit_window);
            });

            nlohmann::ordered_json ohmicity;
            std::size_t idx = 0;
            for (Branch b : branches)
                for (const auto& [label, ck] : kinds) {
                    std::vector<std::string> header{"omega"};
                    std::vector<std::vector<double>> columns{omega_axis};
                    nlohmann::ordered_json slopes;
                    for (double r : sweep) {
                        const std::string name =
                            std::string(label.empty() ? "J" : "J" + label.substr(1)) + "(r12=" +
                            io::format_double_short(r) + ")";
                        header.push_back(name);
                        columns.push_back(done[idx].values);
                        slopes[io::format_double_short(r)] = done[idx].ohmicity_s;
                        ++idx;
                    }
                    std::string tail = "_" + std::string(to_string(b));
                    if (!label.empty()) tail += "_" + label;
                    emit(out_path(tail + ".csv"), header, columns);
                    ohmicity[std::string(to_string(b)) + (label.empty() ? "" : "_" + label)] =
                        slopes;
                }
            manifest["ohmicity_s"] = ohmicity;
            break;
        }

        case ScenarioKind::induced_coupling:
        case ScenarioKind::concurrence: {
            const bool with_concurrence = scenario.kind == ScenarioKind::concurrence;
            struct Job { Branch branch; double r12; };
            std::vector<Job> tasks;
            for (Branch b : branches)
                for (double r : sweep) tasks.push_back({b, r});
            std::vector<std::vector<double>> couplings(tasks.size());
            std::vector<std::vector<double>> concurrences(tasks.size());
            detail::parallel_for(tasks.size(), scenario.jobs, [&](std::size_t i) {
                const Job& job = tasks[i];
                const ReservoirConfig cfg = detail::with_r12(scenario.config, job.r12);
                couplings[i] =
                    induced_coupling_trajectory(cfg, job.branch, grid.t_max, grid.steps).values;
                if (with_concurrence) {
                    std::vector<double> c;
                    c.reserve(grid.steps + 1);
                    for (const auto& [t, value] : concurrence_trajectory(
                             cfg, job.branch, grid.t_max, grid.steps, cfg.temperature))
                        c.push_back(value);
                    concurrences[i] = std::move(c);
                }
            });

            std::size_t idx = 0;
            for (Branch b : branches) {
                std::vector<std::string> jheader{"t"}, cheader{"t"};
                std::vector<std::vector<double>> jcols{time_axis}, ccols{time_axis};
                for (double r : sweep) {
                    jheader.push_back("J(r12=" + io::format_double_short(r) + ")");
                    jcols.push_back(couplings[idx]);
                    if (with_concurrence) {
                        cheader.push_back("C(r12=" + io::format_double_short(r) + ")");
                        ccols.push_back(concurrences[idx]);
                    }
                    ++idx;
                }
                if (with_concurrence) {
                    emit(out_path("_" + std::string(to_string(b)) + ".csv"), cheader, ccols);
                    emit(out_path("_coupling_" + std::string(to_string(b)) + ".csv"), jheader,
                         jcols);
                } else {
                    emit(out_path("_" + std::string(to_string(b)) + ".csv"), jheader, jcols);
                }
            }
            break;
        }
    }

    manifest["outputs"] = result.files;
    manifest["warnings"] = scenario.warnings;
    const auto stop = std::chrono::steady_clock::now();
    result.wall_seconds = std::chrono::duration<double>(stop - start).count();
    manifest["wall_clock_seconds"] = result.wall_seconds;

    result.manifest_file = out_path("_manifest.json");
    std::ofstream mout(result.manifest_file, std::ios::binary);
    if (!mout) throw Error("run: cannot open " + result.manifest_file);
    mout << manifest.dump(2) << '\n';
    return result;
}

}  // namespace bosemix
