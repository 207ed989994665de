// dephasing.hpp — single- and two-qubit decoherence exponents Gamma^0, Gamma^1,
// Gamma^2 per branch, their analytic time derivatives (decay rates), and
// batched trajectory evaluation.

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "bosemix/errors.hpp"
#include "bosemix/params.hpp"
#include "bosemix/reservoir.hpp"

namespace bosemix {

// Gamma^0: one qubit. Gamma^1/Gamma^2: two-qubit coherences between states
// with the atoms on the same / opposite sides of the double wells.
enum class GammaKind { gamma0, gamma1, gamma2 };

inline const char* to_string(GammaKind k) {
    switch (k) {
        case GammaKind::gamma0: return "gamma0";
        case GammaKind::gamma1: return "gamma1";
        default: return "gamma2";
    }
}

inline CouplingKind coupling_kind_for(GammaKind kind) {
    switch (kind) {
        case GammaKind::gamma0: return CouplingKind::single;
        case GammaKind::gamma1: return CouplingKind::pair_sum;
        default: return CouplingKind::pair_diff;
    }
}

namespace detail {

// coth(omega / (2 T)), with the T = 0 limit equal to 1.
inline double thermal_factor(double omega, double temperature) {
    if (temperature <= 0.0) return 1.0;
    const double x = omega / temperature;  // = 2 * (omega / (2T))
    if (x > 700.0) return 1.0;
    return 1.0 + 2.0 / std::expm1(x);
}

inline void check_gamma_args(const ReservoirConfig& cfg, GammaKind kind, double t,
                             double temperature) {
    if (t < 0.0) throw OutOfRange("gamma: t must be >= 0");
    if (temperature < 0.0) throw OutOfRange("gamma: temperature must be >= 0");
    if (kind != GammaKind::gamma0 && !(cfg.trap_half_dist > 0.0))
        throw OutOfRange("gamma1/gamma2 require trap_half_dist > 0");
}

// Shortest oscillation period of the mode integrand: the sin(omega t) factor
// sweeps with the phonon phase speed, sin(kL) with the well separation, and one
// of cos^2(kd)/sin^2(kd) with the trap distance (pair kinds only).
inline double oscillation_scale(const ReservoirConfig& cfg, Branch branch, bool pair_kind,
                                double t) {
    const double w = interaction_weight(cfg, branch);
    const double speed = w > 0.0 ? std::sqrt(0.5 * w) : 0.0;
    double fastest = std::max({speed * std::abs(t), cfg.well_half_sep, 1.0});
    if (pair_kind) fastest = std::max(fastest, 2.0 * cfg.trap_half_dist);
    return std::numbers::pi / fastest;
}

}  // namespace detail

/// Decoherence exponent
///   Gamma(t) = (1/pi) Int dk  g^2(k) (1 - cos(omega t)) coth(omega/(2T)) / omega^2,
/// with g selected by `kind`. Finite temperature is rejected past the
/// miscibility point (the thermal occupation of the soft threshold modes
/// diverges there).
inline double gamma_exponent(const ReservoirConfig& cfg, Branch branch, GammaKind kind, double t,
                             double temperature) {
    detail::check_gamma_args(cfg, kind, t, temperature);
    if (t == 0.0) return 0.0;
    if (temperature > 0.0 && mode_threshold(cfg, branch) > 0.0)
        throw OutOfRange("gamma: finite temperature is unsupported beyond the miscibility point");

    const CouplingKind ck = coupling_kind_for(kind);
    const double osc = detail::oscillation_scale(cfg, branch, kind != GammaKind::gamma0, t);
    const double value = integrate_over_modes(cfg, branch, osc, [&](double k) {
        const double e = free_energy(k);
        const double omega = dispersion_raw(cfg, branch, k);
        const double g2 = detail::coupling_envelope_sq(cfg, ck, k) * e / omega;
        return g2 * (1.0 - std::cos(omega * t)) *
               detail::thermal_factor(omega, temperature) / (omega * omega);
    });
    return value / std::numbers::pi;
}

inline double gamma_exponent(const ReservoirConfig& cfg, Branch branch, GammaKind kind,
                             double t) {
    return gamma_exponent(cfg, branch, kind, t, cfg.temperature);
}

/// Analytic decay rate gamma(t) = dGamma/dt, term-by-term derivative of the
/// mode integral (no finite differencing):
///   (1/pi) Int dk  g^2(k) sin(omega t) coth(omega/(2T)) / omega.
inline double decay_rate(const ReservoirConfig& cfg, Branch branch, GammaKind kind, double t,
                         double temperature) {
    detail::check_gamma_args(cfg, kind, t, temperature);
    if (t == 0.0) return 0.0;
    if (temperature > 0.0 && mode_threshold(cfg, branch) > 0.0)
        throw OutOfRange("decay_rate: finite temperature is unsupported beyond the miscibility point");

    const CouplingKind ck = coupling_kind_for(kind);
    const double osc = detail::oscillation_scale(cfg, branch, kind != GammaKind::gamma0, t);
    const double value = integrate_over_modes(cfg, branch, osc, [&](double k) {
        const double e = free_energy(k);
        const double omega = dispersion_raw(cfg, branch, k);
        const double g2 = detail::coupling_envelope_sq(cfg, ck, k) * e / omega;
        return g2 * std::sin(omega * t) * detail::thermal_factor(omega, temperature) / omega;
    });
    return value / std::numbers::pi;
}

inline double decay_rate(const ReservoirConfig& cfg, Branch branch, GammaKind kind, double t) {
    return decay_rate(cfg, branch, kind, t, cfg.temperature);
}

// Sampled decoherence exponent with its analytic derivative on a uniform grid.
// The stored config carries the temperature actually used.
struct GammaTrajectory {
    std::vector<double> time_grid;
    std::vector<double> gamma;
    std::vector<double> rate;
    Branch branch{Branch::upper};
    GammaKind kind{GammaKind::gamma0};
    ReservoirConfig config{};
};

/// Pointwise recomputation on t_i = i * t_max / n_steps, i = 0..n_steps; no
/// interpolation, so refining the grid leaves shared samples unchanged.
inline GammaTrajectory gamma_trajectory(const ReservoirConfig& cfg, Branch branch, GammaKind kind,
                                        double t_max, std::size_t n_steps, double temperature) {
    if (!(t_max > 0.0)) throw OutOfRange("gamma_trajectory: t_max must be > 0");
    if (n_steps < 64) throw OutOfRange("gamma_trajectory: n_steps must be >= 64");

    GammaTrajectory traj;
    traj.branch = branch;
    traj.kind = kind;
    traj.config = cfg;
    traj.config.temperature = temperature;
    traj.time_grid.resize(n_steps + 1);
    traj.gamma.resize(n_steps + 1);
    traj.rate.resize(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i) {
        const double t = t_max * static_cast<double>(i) / static_cast<double>(n_steps);
        traj.time_grid[i] = t;
        traj.gamma[i] = gamma_exponent(cfg, branch, kind, t, temperature);
        traj.rate[i] = decay_rate(cfg, branch, kind, t, temperature);
    }
    return traj;
}

inline GammaTrajectory gamma_trajectory(const ReservoirConfig& cfg, Branch branch, GammaKind kind,
                                        double t_max, std::size_t n_steps) {
    return gamma_trajectory(cfg, branch, kind, t_max, n_steps, cfg.temperature);
}

/// Saturated value of Gamma, reported as Gamma(t_plateau) with t_plateau = 50
/// unless overridden.
inline double plateau_gamma(const ReservoirConfig& cfg, Branch branch, GammaKind kind,
                            double temperature, double t_plateau = 50.0) {
    return gamma_exponent(cfg, branch, kind, t_plateau, temperature);
}

}  // namespace bosemix
