// reservoir.hpp — Bogoliubov branches of the symmetric two-component
// reservoir: dispersion, sound speeds, qubit-bath coupling amplitudes and
// spectral density functions (numeric and analytic low-frequency form).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "bosemix/errors.hpp"
#include "bosemix/numerics/loglog_fit.hpp"
#include "bosemix/numerics/quadrature.hpp"
#include "bosemix/params.hpp"

namespace bosemix {

// Upper (+) branch has density character, lower (-) branch spin character.
enum class Branch { upper, lower };

inline const char* to_string(Branch b) { return b == Branch::upper ? "upper" : "lower"; }

enum class CouplingKind { single, pair_sum, pair_diff };

// Free-particle energy in oscillator units, E_k = k^2/2.
inline double free_energy(double k) { return 0.5 * k * k; }

// Branch interaction weight b = alpha (1 +- r12); the symmetric dispersion is
// omega^2 = E (E + b).
inline double interaction_weight(const ReservoirConfig& cfg, Branch branch) {
    return cfg.alpha * (branch == Branch::upper ? 1.0 + cfg.r12 : 1.0 - cfg.r12);
}

// The coupling's Gaussian envelope sets the UV scale: k_max = 12/p puts the
// envelope below e^-36 at the cut.
inline double mode_cutoff(const ReservoirConfig& cfg) { return 12.0 / cfg.p; }

// First momentum with a real lower-branch mode when the mixture is driven past
// the miscibility point (r12 > 1); zero otherwise.
inline double mode_threshold(const ReservoirConfig& cfg, Branch branch) {
    const double w = interaction_weight(cfg, branch);
    return w < 0.0 ? std::sqrt(-2.0 * w) : 0.0;
}

inline double dispersion_raw(const ReservoirConfig& cfg, Branch branch, double k) {
    const double e = free_energy(k);
    return std::sqrt(std::max(e * (e + interaction_weight(cfg, branch)), 0.0));
}

inline double dispersion_slope(const ReservoirConfig& cfg, Branch branch, double k,
                               double omega) {
    const double e = free_energy(k);
    return k * (2.0 * e + interaction_weight(cfg, branch)) / (2.0 * omega);
}

/// Phonon speed c = sqrt(b/2). Requires a stable (miscible) branch.
inline double sound_speed(const ReservoirConfig& cfg, Branch branch) {
    const double w = interaction_weight(cfg, branch);
    if (w < 0.0)
        throw StabilityViolation("sound_speed: branch has no phonon regime beyond the miscibility point");
    return std::sqrt(0.5 * w);
}

struct GeneralBranchEnergies {
    double upper{0.0};
    double lower{0.0};
};

// General two-component Bogoliubov energies from per-species free energies and
// interaction strengths (all dimensionless): eps_nu^2 = E_nu (E_nu + 2 gn_nu),
// coupled through g12_sq_n1n2 = (g12)^2 n1 n2. Retained as a cross-check for
// the symmetric closed form; asymmetric inputs are not validated elsewhere.
inline GeneralBranchEnergies bogoliubov_general(double e1, double e2, double gn1, double gn2,
                                                double g12_sq_n1n2) {
    const double eps1_sq = e1 * (e1 + 2.0 * gn1);
    const double eps2_sq = e2 * (e2 + 2.0 * gn2);
    const double mean = 0.5 * (eps1_sq + eps2_sq);
    const double half_diff = 0.5 * (eps1_sq - eps2_sq);
    const double root = std::sqrt(half_diff * half_diff + 4.0 * g12_sq_n1n2 * e1 * e2);
    GeneralBranchEnergies out;
    out.upper = std::sqrt(mean + root);
    out.lower = std::sqrt(std::max(mean - root, 0.0));
    return out;
}

// Immutable dispersion evaluator with a cached monotone bracket table per
// branch (256 geometric knots) used for derivative-free inversion.
class DispersionModel {
public:
    explicit DispersionModel(ReservoirConfig cfg) : cfg_(validate_config(cfg, true)) {
        for (Branch branch : {Branch::upper, Branch::lower}) build_table(branch);
    }

    const ReservoirConfig& config() const noexcept { return cfg_; }
    double k_max() const { return mode_cutoff(cfg_); }
    double k_threshold(Branch branch) const { return mode_threshold(cfg_, branch); }

    double omega(Branch branch, double k) const {
        if (k < 0.0) throw OutOfRange("dispersion: k must be >= 0");
        return dispersion_raw(cfg_, branch, k);
    }

    double omega_max(Branch branch) const { return table(branch).ws.back(); }

    /// Unique k with omega(k) = w, by bisection inside the cached bracket, to
    /// relative tolerance 1e-12 in k.
    double invert(Branch branch, double w) const {
        if (w < 0.0) throw OutOfRange("invert_dispersion: omega must be >= 0");
        const Table& tab = table(branch);
        if (w == 0.0) return tab.ks.front();
        if (w > tab.ws.back() * (1.0 + 1e-12))
            throw OutOfRange("invert_dispersion: omega exceeds the tabulated dispersion range");

        const auto it = std::lower_bound(tab.ws.begin(), tab.ws.end(), w);
        std::size_t hi_idx = static_cast<std::size_t>(it - tab.ws.begin());
        hi_idx = std::min(hi_idx, tab.ws.size() - 1);
        double lo = hi_idx == 0 ? tab.ks.front() : tab.ks[hi_idx - 1];
        double hi = tab.ks[hi_idx];
        for (int iter = 0; iter < 200 && (hi - lo) > 1e-12 * std::max(1.0, hi); ++iter) {
            const double mid = 0.5 * (lo + hi);
            (dispersion_raw(cfg_, branch, mid) < w ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

private:
    struct Table {
        std::vector<double> ks, ws;
    };

    const Table& table(Branch branch) const {
        return tables_[branch == Branch::upper ? 0 : 1];
    }

    void build_table(Branch branch) {
        Table& tab = tables_[branch == Branch::upper ? 0 : 1];
        const double kth = mode_threshold(cfg_, branch);
        const double kmax = mode_cutoff(cfg_);
        const double start = std::max(1e-8, kth * (1.0 + 1e-10) + (kth > 0.0 ? 1e-10 : 0.0));
        constexpr std::size_t knots = 256;
        tab.ks.reserve(knots + 1);
        tab.ws.reserve(knots + 1);
        tab.ks.push_back(kth);
        tab.ws.push_back(0.0);
        const double ratio = std::log(kmax / start) / static_cast<double>(knots - 1);
        for (std::size_t i = 0; i < knots; ++i) {
            const double k = start * std::exp(ratio * static_cast<double>(i));
            tab.ks.push_back(k);
            tab.ws.push_back(dispersion_raw(cfg_, branch, k));
        }
        for (std::size_t i = 1; i < tab.ws.size(); ++i)
            if (!(tab.ws[i] > tab.ws[i - 1]))
                throw Error("DispersionModel: dispersion is not strictly increasing");
    }

    ReservoirConfig cfg_;
    std::array<Table, 2> tables_;
};

inline double dispersion(const DispersionModel& model, Branch branch, double k) {
    return model.omega(branch, k);
}

inline double sound_speed(const DispersionModel& model, Branch branch) {
    return sound_speed(model.config(), branch);
}

inline double invert_dispersion(const DispersionModel& model, Branch branch, double omega) {
    return model.invert(branch, omega);
}

namespace detail {

// Kind multiplier applied to the single-qubit amplitude. The coherent-sum
// convention carries the interference factor 2.
inline double kind_multiplier(const ReservoirConfig& cfg, CouplingKind kind, double k) {
    if (kind == CouplingKind::single) return 1.0;
    if (!(cfg.trap_half_dist > 0.0))
        throw OutOfRange("pair couplings require trap_half_dist > 0");
    const double factor = cfg.pair_convention == PairConvention::coherent_sum ? 2.0 : 1.0;
    const double phase = k * cfg.trap_half_dist;
    return factor * (kind == CouplingKind::pair_sum ? std::cos(phase) : std::sin(phase));
}

// |g|^2 with the 1/omega factor cancelled out:
//   g^2 = kappa^2 (E/omega) exp(-k^2 p^2/2) sin^2(kL) mult^2 = envelope_sq * E/omega.
inline double coupling_envelope_sq(const ReservoirConfig& cfg, CouplingKind kind, double k) {
    const double mult = kind_multiplier(cfg, kind, k);
    const double shape = std::exp(-0.25 * k * k * cfg.p * cfg.p) * std::sin(k * cfg.well_half_sep);
    const double amp = cfg.coupling_prefactor * shape * mult;
    return amp * amp;
}

}  // namespace detail

/// Scaled coupling amplitude ghat = kappa sqrt(E/omega) e^{-(kp/2)^2} sin(kL)
/// times the kind multiplier (1, 2cos(kd), 2sin(kd) in the coherent-sum
/// convention).
inline double coupling_amplitude(const ReservoirConfig& cfg, Branch branch, CouplingKind kind,
                                 double k) {
    if (!(k > 0.0)) throw OutOfRange("coupling: k must be > 0");
    const double omega = dispersion_raw(cfg, branch, k);
    if (!(omega > 0.0))
        throw OutOfRange("coupling: mode below the real-dispersion threshold");
    const double mult = detail::kind_multiplier(cfg, kind, k);
    return cfg.coupling_prefactor * std::sqrt(free_energy(k) / omega) *
           std::exp(-0.25 * k * k * cfg.p * cfg.p) * std::sin(k * cfg.well_half_sep) * mult;
}

inline double coupling(const DispersionModel& model, Branch branch, CouplingKind kind, double k) {
    return coupling_amplitude(model.config(), branch, kind, k);
}

// Integrate kernel(k) over the branch mode domain [~0, 12/p]. Beyond the
// miscibility point the lower branch starts at the real-dispersion threshold
// with an integrable inverse-square-root edge, removed by k = kth + u^2.
template <class F>
inline double integrate_over_modes(const ReservoirConfig& cfg, Branch branch,
                                   double oscillation_scale, F&& kernel) {
    QuadratureSpec spec;
    spec.k_max = mode_cutoff(cfg);
    spec.oscillation_scale = oscillation_scale;
    const double kth = mode_threshold(cfg, branch);
    if (kth == 0.0) return integrate(kernel, spec).value;

    const double u_max = std::sqrt(spec.k_max - kth);
    QuadratureSpec uspec = spec;
    uspec.k_min = 1e-8;
    uspec.k_max = u_max;
    uspec.oscillation_scale = oscillation_scale / (2.0 * u_max);
    return integrate([&](double u) { return kernel(kth + u * u) * 2.0 * u; }, uspec).value;
}

/// Numeric spectral density J(omega) = |ghat(k(omega))|^2 / (pi domega/dk),
/// evaluated through the cancelled closed form
///   J = kappa^2/pi * e^{-k^2 p^2/2} sin^2(kL) mult^2 * 2E / (k (2E + b)).
inline double spectral_density_numeric(const DispersionModel& model, Branch branch,
                                       CouplingKind kind, double omega) {
    const ReservoirConfig& cfg = model.config();
    if (omega < 0.0) throw OutOfRange("spectral_density_numeric: omega must be >= 0");
    const double kth = model.k_threshold(branch);
    if (omega == 0.0 && kth == 0.0) return 0.0;
    const double k = omega == 0.0 ? kth : model.invert(branch, omega);
    if (k == 0.0) return 0.0;
    const double e = free_energy(k);
    const double w = interaction_weight(cfg, branch);
    return detail::coupling_envelope_sq(cfg, kind, k) * 2.0 * e /
           (std::numbers::pi * k * (2.0 * e + w));
}

// ---------------------------- analytic low-frequency form ----------------------------

// Parameters of the closed Ohmic-type spectrum J = eta w sin(sqrt(2) gamma L
// w/wc) exp(-w^2/wc^2); gamma is fixed to l0/l_I = 1/p by matching the phonon
// reduction of the coupling, and eta is the bracket prefactor, which reduces
// to sqrt(2) kappa^2 / (pi alpha^{3/2}) in oscillator units.
struct AnalyticSDF {
    double eta{0.0};
    double cutoff{0.0};          // omega_c = sqrt(2) c / l_I, branch dependent
    double geometry_gamma{0.0};  // 1/p
    double well_half_sep{0.0};   // L
};

inline AnalyticSDF make_analytic_sdf(const ReservoirConfig& cfg, Branch branch) {
    AnalyticSDF sdf;
    sdf.eta = std::numbers::sqrt2 * cfg.coupling_prefactor * cfg.coupling_prefactor /
              (std::numbers::pi * std::pow(cfg.alpha, 1.5));
    const double w = interaction_weight(cfg, branch);
    sdf.cutoff = w >= 0.0 ? std::numbers::sqrt2 * std::sqrt(0.5 * w) / cfg.p : 0.0;
    sdf.geometry_gamma = 1.0 / cfg.p;
    sdf.well_half_sep = cfg.well_half_sep;
    return sdf;
}

inline double analytic_sdf(const AnalyticSDF& sdf, double omega) {
    if (omega < 0.0) throw OutOfRange("analytic_sdf: omega must be >= 0");
    if (omega == 0.0) return 0.0;
    if (!(sdf.cutoff > 0.0)) return 0.0;  // cutoff collapses at the miscibility boundary
    const double x = omega / sdf.cutoff;
    return sdf.eta * omega *
           std::sin(std::numbers::sqrt2 * sdf.geometry_gamma * sdf.well_half_sep * x) *
           std::exp(-x * x);
}

// ---------------------------- Ohmicity classification ----------------------------

struct FitWindow {
    double lo{0.01};
    double hi{0.1};
};

struct SpectralSample {
    std::vector<double> omega_grid;  // strictly increasing
    std::vector<double> values;
    FitWindow fit_window{};
    double ohmicity_s{0.0};
    double fit_residual{0.0};
};

enum class Ohmicity { sub_ohmic, ohmic, super_ohmic };

inline Ohmicity classify_ohmicity(double s, double tau = 0.1) {
    if (s < 1.0 - tau) return Ohmicity::sub_ohmic;
    if (s > 1.0 + tau) return Ohmicity::super_ohmic;
    return Ohmicity::ohmic;
}

inline const char* to_string(Ohmicity o) {
    switch (o) {
        case Ohmicity::sub_ohmic: return "sub-ohmic";
        case Ohmicity::super_ohmic: return "super-ohmic";
        default: return "ohmic";
    }
}

/// Least-squares slope of log J vs log omega over the sample's fit window.
/// Requires >= 8 strictly positive samples and a window of at least half a
/// decade.
inline double ohmicity_fit(const SpectralSample& sample) {
    if (!(sample.fit_window.lo > 0.0) ||
        sample.fit_window.hi / sample.fit_window.lo < std::sqrt(10.0))
        throw DegenerateFit("ohmicity_fit: window must span at least half a decade");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < sample.omega_grid.size(); ++i) {
        const double w = sample.omega_grid[i];
        if (w < sample.fit_window.lo || w > sample.fit_window.hi) continue;
        if (!(sample.values[i] > 0.0))
            throw DegenerateFit("ohmicity_fit: nonpositive sample inside the fit window");
        xs.push_back(w);
        ys.push_back(sample.values[i]);
    }
    return fit_loglog(xs, ys).slope;
}

inline SpectralSample sample_spectral_density(const DispersionModel& model, Branch branch,
                                              CouplingKind kind, std::vector<double> omega_grid,
                                              FitWindow window) {
    SpectralSample sample;
    sample.fit_window = window;
    sample.omega_grid = std::move(omega_grid);
    for (std::size_t i = 1; i < sample.omega_grid.size(); ++i)
        if (!(sample.omega_grid[i] > sample.omega_grid[i - 1]))
            throw OutOfRange("sample_spectral_density: grid must be strictly increasing");
    sample.values.reserve(sample.omega_grid.size());
    for (double w : sample.omega_grid)
        sample.values.push_back(spectral_density_numeric(model, branch, kind, w));
    sample.ohmicity_s = ohmicity_fit(sample);

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < sample.omega_grid.size(); ++i) {
        const double w = sample.omega_grid[i];
        if (w >= window.lo && w <= window.hi && sample.values[i] > 0.0) {
            xs.push_back(w);
            ys.push_back(sample.values[i]);
        }
    }
    sample.fit_residual = fit_loglog(xs, ys).residual;
    return sample;
}

/// Geometric frequency grid, handy for spectral sampling.
inline std::vector<double> geometric_grid(double lo, double hi, std::size_t points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2)
        throw OutOfRange("geometric_grid: need 0 < lo < hi and at least 2 points");
    std::vector<double> grid(points);
    const double step = std::log(hi / lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = lo * std::exp(step * static_cast<double>(i));
    grid.back() = hi;
    return grid;
}

}  // namespace bosemix
