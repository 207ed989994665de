#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bosemix/scenario.hpp"

using namespace bosemix;
namespace fs = std::filesystem;

namespace {

std::vector<io::IniEntry> entries_from(const std::string& text) {
    std::istringstream in(text);
    return io::parse_ini(in);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("bosemix_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

ScenarioOverrides fast_overrides(const std::string& out_dir) {
    ScenarioOverrides ov;
    ov.r12 = std::vector<double>{0.2};
    ov.t_max = 2.0;
    ov.steps = 64;
    ov.out_dir = out_dir;
    ov.jobs = 1;
    return ov;
}

}  // namespace

TEST_CASE("empty config resolves to the canonical defaults") {
    const auto scenario = validate(ScenarioKind::gamma_single, entries_from(""), {});
    CHECK(scenario.config.alpha == doctest::Approx(0.76).epsilon(0.005));
    CHECK(scenario.config.p == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(scenario.config.well_half_sep == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(scenario.config.trap_half_dist == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(scenario.r12_sweep == std::vector<double>{0.2, 1.0, 3.0});
    CHECK(scenario.grid.t_max == 20.0);
    CHECK(scenario.grid.steps == 512);
    // the built-in sweep crosses the miscibility point and is pre-authorized
    CHECK(scenario.allow_immiscible);
    CHECK(scenario.warnings.size() == 2);
}

TEST_CASE("wide-geometry scenarios default to L = 7.5, 2d = 4L") {
    const auto scenario = validate(ScenarioKind::concurrence, entries_from(""), {});
    CHECK(scenario.config.well_half_sep == doctest::Approx(7.5));
    CHECK(scenario.config.trap_half_dist == doctest::Approx(15.0));
    CHECK(scenario.grid.t_max == 50.0);
}

TEST_CASE("unknown keys produce line-anchored suggestions") {
    try {
        validate(ScenarioKind::gamma_single, entries_from("\n alpa = 0.8\n"), {});
        FAIL("expected ConfigError");
    } catch (const ConfigError& err) {
        REQUIRE(err.issues().size() == 1);
        CHECK(err.issues()[0].find("line 2") != std::string::npos);
        CHECK(err.issues()[0].find("alpa") != std::string::npos);
        CHECK(err.issues()[0].find("alpha") != std::string::npos);
    }
}

TEST_CASE("user-specified immiscible sweeps need the explicit flag") {
    ScenarioOverrides ov;
    ov.r12 = std::vector<double>{1.5};
    try {
        validate(ScenarioKind::gamma_single, entries_from(""), ov);
        FAIL("expected ConfigError");
    } catch (const ConfigError& err) {
        REQUIRE(!err.issues().empty());
        CHECK(err.issues()[0].find("allow-immiscible") != std::string::npos);
    }
    ov.allow_immiscible = true;
    const auto scenario = validate(ScenarioKind::gamma_single, entries_from(""), ov);
    CHECK(scenario.allow_immiscible);
    REQUIRE(scenario.warnings.size() == 1);
    CHECK(scenario.warnings[0].find("miscibility") != std::string::npos);
}

TEST_CASE("config file values are overridden by the command line") {
    const auto entries = entries_from("L = 1.25\nt_max = 7\nsteps = 128\n");
    ScenarioOverrides ov;
    ov.t_max = 9.0;
    const auto scenario = validate(ScenarioKind::gamma_two, entries, ov);
    CHECK(scenario.config.well_half_sep == doctest::Approx(1.25));
    CHECK(scenario.config.trap_half_dist == doctest::Approx(2.5));  // follows 2d = 4L
    CHECK(scenario.grid.t_max == 9.0);
    CHECK(scenario.grid.steps == 128);
}

TEST_CASE("physical-parameter config reduces through the SI interface") {
    std::ostringstream text;
    const auto phys = canonical_physical_params();
    text << "reservoir_mass = " << io::format_double(phys.reservoir_mass) << "\n"
         << "impurity_mass = " << io::format_double(phys.impurity_mass) << "\n"
         << "density = " << io::format_double(phys.density) << "\n"
         << "intra_scattering = " << io::format_double(phys.intra_scattering) << "\n"
         << "inter_scattering = " << io::format_double(phys.inter_scattering) << "\n"
         << "impurity_scattering = " << io::format_double(phys.impurity_scattering) << "\n"
         << "transverse_freq = " << io::format_double(phys.transverse_freq) << "\n"
         << "impurity_trap_freq = " << io::format_double(phys.impurity_trap_freq) << "\n"
         << "well_half_separation = " << io::format_double(phys.well_half_separation) << "\n"
         << "trap_half_distance = " << io::format_double(phys.trap_half_distance) << "\n";
    const auto scenario = validate(ScenarioKind::gamma_single, entries_from(text.str()), {});
    CHECK(scenario.config.alpha == doctest::Approx(0.7632).epsilon(1e-9));
    CHECK(scenario.config.p == doctest::Approx(0.5).epsilon(1e-9));

    SUBCASE("asymmetric species-2 values are rejected") {
        auto bad = text.str() + "density_2 = 1.0e7\n";
        CHECK_THROWS_AS(validate(ScenarioKind::gamma_single, entries_from(bad), {}),
                        NonSymmetricMixture);
    }
}

TEST_CASE("gamma-single writes one CSV per branch, byte-identical across reruns") {
    TempDir dir("gamma");
    const auto scenario =
        validate(ScenarioKind::gamma_single, entries_from(""), fast_overrides(dir.path.string()));
    const auto result = run(scenario);
    REQUIRE(result.files.size() == 2);
    CHECK(result.files[0].find("gamma_single_upper.csv") != std::string::npos);
    CHECK(result.files[1].find("gamma_single_lower.csv") != std::string::npos);

    const std::string first = slurp(result.files[0]);
    CHECK(first.rfind("t,gamma(r12=0.2)", 0) == 0);
    CHECK(first.find("\r") == std::string::npos);

    // 65 sample rows + header
    std::size_t lines = 0;
    for (char c : first)
        if (c == '\n') ++lines;
    CHECK(lines == 66);

    const auto rerun = run(scenario);
    CHECK(slurp(rerun.files[0]) == first);
    CHECK(slurp(rerun.files[1]) == slurp(result.files[1]));
}

TEST_CASE("manifest reproduces the run") {
    TempDir dir("manifest");
    auto ov = fast_overrides((dir.path / "a").string());
    const auto scenario = validate(ScenarioKind::gamma_single, entries_from(""), ov);
    const auto result = run(scenario);

    ScenarioOverrides replay;
    replay.out_dir = (dir.path / "b").string();
    replay.jobs = 1;
    const auto replayed =
        validate(ScenarioKind::gamma_single, result.manifest_file, replay);
    const auto second = run(replayed);
    REQUIRE(second.files.size() == result.files.size());
    for (std::size_t i = 0; i < result.files.size(); ++i)
        CHECK(slurp(second.files[i]) == slurp(result.files[i]));
}

TEST_CASE("nonmarkov scenario emits the sweep table") {
    TempDir dir("nonmarkov");
    auto ov = fast_overrides(dir.path.string());
    ov.t_max = 6.0;
    ov.steps = 64;
    ov.r12 = std::vector<double>{0.2, 0.5};
    const auto result = run(validate(ScenarioKind::nonmarkov_single, entries_from(""), ov));
    REQUIRE(result.files.size() == 1);
    const std::string text = slurp(result.files[0]);
    CHECK(text.rfind("r12,N_upper,N_lower,raw_upper,raw_lower", 0) == 0);
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 3);
}

TEST_CASE("sdf scenario records ohmicity exponents in the manifest") {
    TempDir dir("sdf");
    ScenarioOverrides ov;
    ov.r12 = std::vector<double>{0.2};
    ov.out_dir = dir.path.string();
    ov.jobs = 1;
    auto scenario = validate(ScenarioKind::sdf_single, entries_from("omega_points = 64\n"), ov);
    const auto result = run(scenario);
    REQUIRE(result.files.size() == 2);
    const auto manifest = nlohmann::json::parse(slurp(result.manifest_file));
    CHECK(manifest.at("ohmicity_s").at("upper").contains("0.2"));
    CHECK(manifest.at("scenario") == "sdf-single");
    CHECK(manifest.at("config").at("pair_convention") == "coherent_sum");
}

TEST_CASE("concurrence scenario writes concurrence and coupling tables") {
    TempDir dir("concurrence");
    auto ov = fast_overrides(dir.path.string());
    const auto result = run(validate(ScenarioKind::concurrence, entries_from(""), ov));
    REQUIRE(result.files.size() == 4);
    CHECK(result.files[0].find("concurrence_upper.csv") != std::string::npos);
    CHECK(result.files[1].find("concurrence_coupling_upper.csv") != std::string::npos);
    const std::string text = slurp(result.files[0]);
    CHECK(text.rfind("t,C(r12=0.2)", 0) == 0);
}

TEST_CASE("decay-rates scenario covers both pair kinds") {
    TempDir dir("rates");
    const auto result = run(
        validate(ScenarioKind::decay_rates, entries_from(""), fast_overrides(dir.path.string())));
    REQUIRE(result.files.size() == 4);
    CHECK(result.files[0].find("decay_rates_upper_gamma1.csv") != std::string::npos);
    CHECK(result.files[3].find("decay_rates_lower_gamma2.csv") != std::string::npos);
    CHECK(slurp(result.files[0]).rfind("t,rate(r12=0.2)", 0) == 0);
}
