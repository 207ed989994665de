// params.hpp — physical inputs and their reduction to the dimensionless
// scenario parameters used by every other module.
//
// Unit system: energies in units of hbar*omega_perp, lengths in units of the
// transverse oscillator width l0 = sqrt(hbar/(m*omega_perp)), momenta in 1/l0,
// times in 1/omega_perp, temperatures in hbar*omega_perp/kB.

#pragma once

#include <cmath>
#include <string>

#include "bosemix/errors.hpp"

namespace bosemix {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;              // J s
inline constexpr double boltzmann = 1.380649e-23;            // J/K
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
}  // namespace constants

// Pair-coupling convention for the two-qubit amplitudes. The coherent-sum
// convention carries the factor 2 required for the large-separation limit
// Gamma^{1,2} -> 2 Gamma^0; the alternative keeps the bare cos/sin multipliers.
enum class PairConvention { coherent_sum, as_printed };

inline const char* to_string(PairConvention c) {
    return c == PairConvention::coherent_sum ? "coherent_sum" : "as_printed";
}

// SI inputs for a symmetric two-component reservoir plus pinned impurities.
struct PhysicalParams {
    double reservoir_mass{0.0};       // kg, equal for both species
    double impurity_mass{0.0};        // kg
    double density{0.0};              // 1/m, per species
    double intra_scattering{0.0};     // m, a1 = a2 = a
    double inter_scattering{0.0};     // m, a12
    double impurity_scattering{0.0};  // m, aI
    double transverse_freq{0.0};      // rad/s, both species
    double impurity_trap_freq{0.0};   // rad/s
    double well_half_separation{0.0};  // m, L
    double trap_half_distance{0.0};    // m, d
    double temperature{0.0};           // K
};

// Dimensionless scenario parameters.
struct ReservoirConfig {
    double alpha{0.0};               // gas parameter, 4 n a
    double p{0.0};                   // impurity-to-bath oscillator length ratio l_I/l0
    double r12{0.0};                 // interaction ratio a12/a
    double coupling_prefactor{0.0};  // kappa, scaled g_I sqrt(n) combination
    double well_half_sep{0.0};       // L, in l0
    double trap_half_dist{0.0};      // d, in l0
    double temperature{0.0};         // in hbar*omega_perp/kB
    PairConvention pair_convention{PairConvention::coherent_sum};
};

inline void validate_physical(const PhysicalParams& phys) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw OutOfRange(std::string("physical parameter must be positive: ") + name);
    };
    positive(phys.reservoir_mass, "reservoir_mass");
    positive(phys.impurity_mass, "impurity_mass");
    positive(phys.density, "density");
    positive(phys.intra_scattering, "intra_scattering");
    positive(phys.inter_scattering, "inter_scattering");
    positive(phys.impurity_scattering, "impurity_scattering");
    positive(phys.transverse_freq, "transverse_freq");
    positive(phys.impurity_trap_freq, "impurity_trap_freq");
    if (phys.well_half_separation < 0.0) throw OutOfRange("well_half_separation must be >= 0");
    if (phys.trap_half_distance < 0.0) throw OutOfRange("trap_half_distance must be >= 0");
    if (phys.temperature < 0.0) throw OutOfRange("temperature must be >= 0");
}

// Validated construction for dimensionless configs. The stability condition
// g1 g2 > g12^2 specializes to r12^2 < 1 for a symmetric mixture; configs on or
// beyond the boundary are accepted only when explicitly requested.
inline ReservoirConfig validate_config(ReservoirConfig cfg, bool allow_immiscible = false) {
    if (!(cfg.alpha > 0.0)) throw OutOfRange("alpha must be positive");
    if (!(cfg.p > 0.0)) throw OutOfRange("p must be positive");
    if (!(cfg.coupling_prefactor > 0.0)) throw OutOfRange("coupling_prefactor must be positive");
    if (cfg.well_half_sep < 0.0) throw OutOfRange("well_half_sep must be >= 0");
    if (cfg.trap_half_dist < 0.0) throw OutOfRange("trap_half_dist must be >= 0");
    if (cfg.temperature < 0.0) throw OutOfRange("temperature must be >= 0");
    if (cfg.r12 <= -1.0)
        throw StabilityViolation("r12 <= -1 makes the upper branch unstable");
    if (cfg.r12 >= 1.0 && !allow_immiscible)
        throw StabilityViolation("r12 >= 1 violates g1*g2 > g12^2 for a symmetric mixture");
    return cfg;
}

/// Reduce SI inputs to the dimensionless scenario. Energies are scaled by
/// hbar*omega_perp, lengths by l0, times by 1/omega_perp. The condensate size
/// cancels in the continuum limit and never appears.
inline ReservoirConfig to_dimensionless(const PhysicalParams& phys) {
    validate_physical(phys);
    // symmetric mixture: g12^2 >= g1*g2 reduces to a12^2 >= a^2
    if (phys.inter_scattering * phys.inter_scattering >=
        phys.intra_scattering * phys.intra_scattering)
        throw StabilityViolation("a12^2 >= a1*a2: mixture is not miscible");

    const double l0 = std::sqrt(constants::hbar / (phys.reservoir_mass * phys.transverse_freq));
    const double l_i = std::sqrt(constants::hbar / (phys.impurity_mass * phys.impurity_trap_freq));
    const double p = l_i / l0;
    const double mass_ratio = phys.reservoir_mass / phys.impurity_mass;

    ReservoirConfig cfg;
    cfg.alpha = 4.0 * phys.density * phys.intra_scattering;
    cfg.p = p;
    cfg.r12 = phys.inter_scattering / phys.intra_scattering;
    // kappa = g_I sqrt(n) / (hbar omega_perp sqrt(l0)) with
    // g_I = 2 hbar^2 a_I (m_I + m) / (m_I m (l_I^2 + l0^2))
    cfg.coupling_prefactor = 2.0 * phys.impurity_scattering * (1.0 + mass_ratio) *
                             std::sqrt(phys.density / l0) / (1.0 + p * p);
    cfg.well_half_sep = phys.well_half_separation / l0;
    cfg.trap_half_dist = phys.trap_half_distance / l0;
    cfg.temperature = constants::boltzmann * phys.temperature /
                      (constants::hbar * phys.transverse_freq);
    return validate_config(cfg);
}

inline double oscillator_length(const PhysicalParams& phys) {
    return std::sqrt(constants::hbar / (phys.reservoir_mass * phys.transverse_freq));
}

// Reference experimental set: K impurities in a two-state Rb mixture.
// The impurity trap frequency is chosen so that p = l_I/l0 = 0.5, which is the
// primary input; only the ratio enters the dimensionless model.
inline PhysicalParams canonical_physical_params() {
    PhysicalParams phys;
    phys.reservoir_mass = 87.0 * constants::atomic_mass_unit;
    phys.impurity_mass = 41.0 * constants::atomic_mass_unit;
    phys.density = 3.6e7;
    phys.intra_scattering = 5.3e-9;
    phys.inter_scattering = 0.2 * 5.3e-9;  // r12 = 0.2 baseline
    phys.impurity_scattering = 3.4e-9;
    phys.transverse_freq = 2.0 * 3.14159265358979323846 * 1000.0;
    const double l0 = oscillator_length(phys);
    const double l_i = 0.5 * l0;
    phys.impurity_trap_freq = constants::hbar / (phys.impurity_mass * l_i * l_i);
    phys.well_half_separation = 0.75 * l0;
    phys.trap_half_distance = 1.5 * l0;  // default two-qubit geometry 2d = 4L
    phys.temperature = 0.0;
    return phys;
}

/// Canonical dimensionless scenario (alpha ~ 0.76, p = 0.5, L = 0.75, d = 2L,
/// T = 0), derived from canonical_physical_params(). The geometry is pinned to
/// the exact canonical values rather than the round-tripped SI quotients.
inline ReservoirConfig canonical_config() {
    ReservoirConfig cfg = to_dimensionless(canonical_physical_params());
    cfg.well_half_sep = 0.75;
    cfg.trap_half_dist = 1.5;
    return cfg;
}

}  // namespace bosemix
