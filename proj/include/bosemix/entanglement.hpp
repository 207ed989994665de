// entanglement.hpp — environment-induced qubit-qubit coupling, the two-qubit
// density matrix it generates from |++>, and Wootters concurrence.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "bosemix/dephasing.hpp"
#include "bosemix/errors.hpp"
#include "bosemix/numerics/eig4.hpp"
#include "bosemix/params.hpp"
#include "bosemix/reservoir.hpp"

namespace bosemix {

namespace detail {

// x - sin(x), series below 0.5 to avoid catastrophic cancellation.
inline double x_minus_sin(double x) {
    if (std::abs(x) < 0.5) {
        const double x2 = x * x;
        return x * x2 / 6.0 *
               (1.0 - x2 / 20.0 *
                          (1.0 - x2 / 42.0 *
                                     (1.0 - x2 / 72.0 * (1.0 - x2 / 110.0 * (1.0 - x2 / 156.0)))));
    }
    return x - std::sin(x);
}

}  // namespace detail

/// Induced coupling strength
///   J(t) = (2/pi) Int dk (omega t - sin(omega t)) g^2(k) cos(2 k d) / omega^2,
/// with the single-qubit coupling g of the selected branch.
inline double induced_coupling(const ReservoirConfig& cfg, Branch branch, double t) {
    if (t < 0.0) throw OutOfRange("induced_coupling: t must be >= 0");
    if (!(cfg.trap_half_dist > 0.0))
        throw OutOfRange("induced_coupling: requires trap_half_dist > 0");
    if (t == 0.0) return 0.0;

    const double w = interaction_weight(cfg, branch);
    const double speed = w > 0.0 ? std::sqrt(0.5 * w) : 0.0;
    const double osc = std::numbers::pi / std::max({speed * t, cfg.well_half_sep,
                                                    2.0 * cfg.trap_half_dist, 1.0});
    const double value = integrate_over_modes(cfg, branch, osc, [&](double k) {
        const double e = free_energy(k);
        const double omega = dispersion_raw(cfg, branch, k);
        const double g2 = detail::coupling_envelope_sq(cfg, CouplingKind::single, k) * e / omega;
        return detail::x_minus_sin(omega * t) * g2 * std::cos(2.0 * k * cfg.trap_half_dist) /
               (omega * omega);
    });
    return 2.0 * value / std::numbers::pi;
}

struct InducedCoupling {
    std::vector<double> time_grid;
    std::vector<double> values;
    Branch branch{Branch::upper};
};

inline InducedCoupling induced_coupling_trajectory(const ReservoirConfig& cfg, Branch branch,
                                                   double t_max, std::size_t n_steps) {
    if (!(t_max > 0.0)) throw OutOfRange("induced_coupling_trajectory: t_max must be > 0");
    if (n_steps < 64) throw OutOfRange("induced_coupling_trajectory: n_steps must be >= 64");
    InducedCoupling traj;
    traj.branch = branch;
    traj.time_grid.resize(n_steps + 1);
    traj.values.resize(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i) {
        const double t = t_max * static_cast<double>(i) / static_cast<double>(n_steps);
        traj.time_grid[i] = t;
        traj.values[i] = induced_coupling(cfg, branch, t);
    }
    return traj;
}

// 4x4 density matrix in the basis {|00>, |01>, |10>, |11>}.
struct TwoQubitState {
    Complex4x4 matrix{};
};

inline Complex state_entry(const TwoQubitState& s, int i, int j) {
    return detail::at(s.matrix, i, j);
}

inline double min_eigenvalue(const TwoQubitState& s) {
    double lo = 0.0;
    bool first = true;
    for (const Complex& lambda : eig4(s.matrix)) {
        const double re = lambda.real();
        if (first || re < lo) lo = re;
        first = false;
    }
    return lo;
}

/// Two-qubit state of the dephasing model from the equal superposition, assembled
/// from the three decoherence exponents and the induced coupling:
/// off-diagonals carry r = e^{2 i J} e^{-Gamma0}, e^{-Gamma1}, e^{-Gamma2};
/// conjugate pairs are placed structurally, never symmetrized numerically.
inline TwoQubitState assemble_two_qubit_state(double gamma0, double gamma1, double gamma2,
                                              double coupling) {
    const Complex r = std::polar(std::exp(-gamma0), 2.0 * coupling);
    const Complex rc = std::conj(r);
    const Complex e1{std::exp(-gamma1), 0.0};
    const Complex e2{std::exp(-gamma2), 0.0};
    const Complex one{1.0, 0.0};

    TwoQubitState state;
    Complex4x4& m = state.matrix;
    m = {one, r,  r,  e1,   //
         rc,  one, e2, rc,  //
         rc,  e2, one, rc,  //
         e1,  r,  r,  one};
    for (Complex& z : m) z *= 0.25;

    const double floor = min_eigenvalue(state);
    if (floor < -1e-8)
        throw PositivityViolation("assemble_two_qubit_state: eigenvalue below -1e-8");
    return state;
}

/// Full dephasing-model state at time t: Gamma^{0,1,2} and J(t) evaluated for
/// the given branch, then assembled per the closed form above.
inline TwoQubitState density_matrix(const ReservoirConfig& cfg, Branch branch, double t,
                                    double temperature) {
    const double g0 = gamma_exponent(cfg, branch, GammaKind::gamma0, t, temperature);
    const double g1 = gamma_exponent(cfg, branch, GammaKind::gamma1, t, temperature);
    const double g2 = gamma_exponent(cfg, branch, GammaKind::gamma2, t, temperature);
    const double jc = induced_coupling(cfg, branch, t);
    return assemble_two_qubit_state(g0, g1, g2, jc);
}

inline TwoQubitState density_matrix(const ReservoirConfig& cfg, Branch branch, double t) {
    return density_matrix(cfg, branch, t, cfg.temperature);
}

struct ConcurrenceResult {
    double value{0.0};
    std::array<double, 4> eigenvalues{};  // of rho * rho_tilde, decreasing
};

/// Wootters concurrence: spin-flip rho_tilde = (sy ⊗ sy) rho* (sy ⊗ sy),
/// eigenvalues of rho rho_tilde through the dense 4x4 solver, then
/// C = max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)).
inline ConcurrenceResult concurrence(const TwoQubitState& state) {
    using detail::at;
    // (sy ⊗ sy) rho* (sy ⊗ sy): entry (i,j) -> sign * conj(rho(3-i, 3-j))
    static constexpr std::array<double, 4> sign{-1.0, 1.0, 1.0, -1.0};
    Complex4x4 flipped{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            at(flipped, i, j) = sign[static_cast<std::size_t>(i)] *
                                sign[static_cast<std::size_t>(j)] *
                                std::conj(at(state.matrix, 3 - i, 3 - j));

    Complex4x4 product{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Complex sum{0.0, 0.0};
            for (int l = 0; l < 4; ++l) sum += at(state.matrix, i, l) * at(flipped, l, j);
            at(product, i, j) = sum;
        }

    ConcurrenceResult result;
    const auto lambdas = eig4(product);
    for (std::size_t i = 0; i < 4; ++i) {
        if (std::abs(lambdas[i].imag()) >= 1e-9)
            throw EigenFailure("concurrence: eigenvalue of rho*rho_tilde is not real");
        double re = lambdas[i].real();
        if (re < -1e-9)
            throw EigenFailure("concurrence: eigenvalue of rho*rho_tilde below -1e-9");
        result.eigenvalues[i] = std::max(re, 0.0);
    }
    std::sort(result.eigenvalues.begin(), result.eigenvalues.end(), std::greater<>());
    // structurally zero eigenvalues come back as O(eps) noise; flooring them
    // keeps the square roots below from inflating that noise to sqrt(eps)
    for (double& lambda : result.eigenvalues)
        if (lambda < 1e-12 * result.eigenvalues[0]) lambda = 0.0;

    double c = std::sqrt(result.eigenvalues[0]);
    for (std::size_t i = 1; i < 4; ++i) c -= std::sqrt(result.eigenvalues[i]);
    result.value = std::max(0.0, c);
    return result;
}

/// Pointwise density_matrix + concurrence on a uniform grid.
inline std::vector<std::pair<double, double>> concurrence_trajectory(
    const ReservoirConfig& cfg, Branch branch, double t_max, std::size_t n_steps,
    double temperature) {
    if (!(t_max > 0.0)) throw OutOfRange("concurrence_trajectory: t_max must be > 0");
    if (n_steps < 64) throw OutOfRange("concurrence_trajectory: n_steps must be >= 64");
    std::vector<std::pair<double, double>> out;
    out.reserve(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i) {
        const double t = t_max * static_cast<double>(i) / static_cast<double>(n_steps);
        out.emplace_back(t, concurrence(density_matrix(cfg, branch, t, temperature)).value);
    }
    return out;
}

}  // namespace bosemix
