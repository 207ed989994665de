#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bosemix/params.hpp"

using namespace bosemix;

TEST_CASE("reference experimental inputs reduce to the canonical gas parameter") {
    const auto cfg = to_dimensionless(canonical_physical_params());
    CHECK(std::abs(cfg.alpha - 0.7632) <= 1e-12);
    CHECK(std::abs(cfg.alpha / 0.76 - 1.0) <= 0.005);
    CHECK(cfg.p == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(cfg.r12 - 0.2) <= 1e-12);
    CHECK(cfg.temperature == 0.0);
    CHECK(cfg.coupling_prefactor == doctest::Approx(0.17453972100096055).epsilon(1e-9));
}

TEST_CASE("transverse oscillator width matches the quoted value") {
    const double l0 = oscillator_length(canonical_physical_params());
    CHECK(std::abs(l0 / 3.4e-7 - 1.0) <= 0.005);
}

TEST_CASE("dimensionless outputs depend only on dimensionless groups") {
    PhysicalParams phys = canonical_physical_params();
    const auto base = to_dimensionless(phys);

    // scale lengths by lam, masses by mu, frequencies by 1/(mu lam^2),
    // density by 1/lam, temperature accordingly: all ratios are unchanged
    const double lam = 2.0, mu = 3.0;
    PhysicalParams scaled = phys;
    scaled.reservoir_mass *= mu;
    scaled.impurity_mass *= mu;
    scaled.density /= lam;
    scaled.intra_scattering *= lam;
    scaled.inter_scattering *= lam;
    scaled.impurity_scattering *= lam;
    scaled.transverse_freq /= mu * lam * lam;
    scaled.impurity_trap_freq /= mu * lam * lam;
    scaled.well_half_separation *= lam;
    scaled.trap_half_distance *= lam;
    const auto rescaled = to_dimensionless(scaled);

    CHECK(rescaled.alpha == doctest::Approx(base.alpha).epsilon(1e-12));
    CHECK(rescaled.p == doctest::Approx(base.p).epsilon(1e-12));
    CHECK(rescaled.r12 == doctest::Approx(base.r12).epsilon(1e-12));
    CHECK(rescaled.coupling_prefactor ==
          doctest::Approx(base.coupling_prefactor).epsilon(1e-12));
    CHECK(rescaled.well_half_sep == doctest::Approx(base.well_half_sep).epsilon(1e-12));
    CHECK(rescaled.trap_half_dist == doctest::Approx(base.trap_half_dist).epsilon(1e-12));
}

TEST_CASE("stability boundary is rejected at the physical interface") {
    PhysicalParams phys = canonical_physical_params();
    phys.inter_scattering = phys.intra_scattering;  // r12 = 1
    CHECK_THROWS_AS(to_dimensionless(phys), StabilityViolation);
    phys.inter_scattering = 1.5 * phys.intra_scattering;
    CHECK_THROWS_AS(to_dimensionless(phys), StabilityViolation);
}

TEST_CASE("dimensionless validation guards the miscible window") {
    ReservoirConfig cfg = canonical_config();
    cfg.r12 = 1.0;
    CHECK_THROWS_AS(validate_config(cfg), StabilityViolation);
    CHECK_NOTHROW(validate_config(cfg, true));
    cfg.r12 = -1.0;
    CHECK_THROWS_AS(validate_config(cfg, true), StabilityViolation);
}

TEST_CASE("nonpositive physical inputs are rejected") {
    PhysicalParams phys = canonical_physical_params();
    phys.density = 0.0;
    CHECK_THROWS_AS(to_dimensionless(phys), OutOfRange);
    phys = canonical_physical_params();
    phys.temperature = -1.0;
    CHECK_THROWS_AS(to_dimensionless(phys), OutOfRange);
    ReservoirConfig cfg = canonical_config();
    cfg.p = 0.0;
    CHECK_THROWS_AS(validate_config(cfg), OutOfRange);
}
