// nonmarkov.hpp — information backflow from a dephasing trajectory via the
// trace-distance construction D(t) = e^{-Gamma(t)}.

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "bosemix/dephasing.hpp"
#include "bosemix/errors.hpp"

namespace bosemix {

struct BackflowReport {
    double measure{0.0};      // N = total increase of D over backflow intervals, >= 0
    double raw_measure{0.0};  // plain integral of Gamma' over Gamma' < 0 (<= 0)
    std::vector<std::pair<double, double>> intervals;  // (t_start, t_end), disjoint, ordered
    std::vector<double> trace_distance;                // D(t) on the trajectory grid
};

namespace detail {

using ScalarFn = std::function<double(double)>;

inline double interp(const std::vector<double>& ts, const std::vector<double>& vs, double t) {
    if (t <= ts.front()) return vs.front();
    if (t >= ts.back()) return vs.back();
    std::size_t hi = 1;
    while (ts[hi] < t) ++hi;
    const double f = (t - ts[hi - 1]) / (ts[hi] - ts[hi - 1]);
    return vs[hi - 1] + f * (vs[hi] - vs[hi - 1]);
}

// Bisection for the sign change of `rate` inside [a, b], to 1e-8 in the
// crossing time (relative for large times).
inline double refine_crossing(const ScalarFn& rate, double a, double b, double ra, double rb) {
    const double tol = 1e-8 * std::max(1.0, std::abs(b));
    for (int iter = 0; iter < 80 && b - a > tol; ++iter) {
        const double mid = 0.5 * (a + b);
        const double rm = rate(mid);
        if ((ra < 0.0) == (rm < 0.0)) {
            a = mid;
            ra = rm;
        } else {
            b = mid;
            rb = rm;
        }
    }
    (void)rb;
    return 0.5 * (a + b);
}

// Locate every sign change of `rate` in [a, b]; the grid is assumed fine
// enough for one crossing per step, with local refinement when the sampled
// step is inconsistent with the Gamma increment across it.
// Locate crossings in [a, b]. Steps flagged as suspicious (same-sign endpoint
// rates inconsistent with the sampled Gamma increment) are split recursively,
// up to the 20-level local refinement budget.
inline void collect_crossings(const ScalarFn& rate, double a, double b, double ra, double rb,
                              bool suspicious, int depth, std::vector<double>& out) {
    if ((ra < 0.0) != (rb < 0.0)) {
        out.push_back(refine_crossing(rate, a, b, ra, rb));
        return;
    }
    if (!suspicious) return;
    if (depth > 20) throw GridTooCoarse("blp_measure: local refinement exceeded 20 levels");
    const double mid = 0.5 * (a + b);
    const double rm = rate(mid);
    if ((ra < 0.0) == (rm < 0.0) && (rm < 0.0) == (rb < 0.0)) return;  // settled
    collect_crossings(rate, a, mid, ra, rm, true, depth + 1, out);
    collect_crossings(rate, mid, b, rm, rb, true, depth + 1, out);
}

inline BackflowReport backflow(const std::vector<double>& ts, const std::vector<double>& gs,
                               const std::vector<double>& rs, const ScalarFn& rate_fn,
                               const ScalarFn& gamma_fn) {
    if (ts.size() < 2 || ts.size() != gs.size() || ts.size() != rs.size())
        throw OutOfRange("blp_measure: inconsistent trajectory arrays");
    if (gs.front() != 0.0 || rs.front() != 0.0)
        throw OutOfRange("blp_measure: trajectory must start at Gamma = rate = 0");

    BackflowReport report;
    report.trace_distance.reserve(gs.size());
    for (double g : gs) report.trace_distance.push_back(std::exp(-g));

    const ScalarFn rate = rate_fn ? rate_fn : [&](double t) { return interp(ts, rs, t); };
    const ScalarFn gamma = gamma_fn ? gamma_fn : [&](double t) { return interp(ts, gs, t); };

    // boundaries where the rate changes sign
    std::vector<double> marks;
    marks.push_back(ts.front());
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        bool suspicious = false;
        if (rate_fn) {
            // a step whose endpoint rates disagree in sign with the sampled
            // Gamma increment hides at least two crossings
            const double dg = gs[i + 1] - gs[i];
            const double trapz = 0.5 * (rs[i] + rs[i + 1]) * (ts[i + 1] - ts[i]);
            suspicious = (rs[i] < 0.0) == (rs[i + 1] < 0.0) && (dg < 0.0) != (trapz < 0.0) &&
                         std::abs(dg - trapz) > 1e-14;
        }
        collect_crossings(rate, ts[i], ts[i + 1], rs[i], rs[i + 1], suspicious, 0, marks);
    }
    marks.push_back(ts.back());

    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
        const double a = marks[i], b = marks[i + 1];
        if (!(b > a)) continue;
        const double probe = rate(0.5 * (a + b));
        if (probe >= 0.0) continue;
        const double ga = gamma(a), gb = gamma(b);
        report.intervals.emplace_back(a, b);
        report.measure += std::exp(-gb) - std::exp(-ga);
        report.raw_measure += gb - ga;
    }
    if (report.measure < 0.0) report.measure = 0.0;  // guard against roundoff
    return report;
}

}  // namespace detail

/// BLP measure for pure dephasing: N accumulates the increase of the trace
/// distance D(t) = e^{-Gamma(t)} over the intervals where the analytic decay
/// rate is negative. Crossing times are recomputed from the trajectory's
/// config; Gamma at refined endpoints is recomputed as well.
inline BackflowReport blp_measure(const GammaTrajectory& traj) {
    const ReservoirConfig cfg = traj.config;
    const Branch branch = traj.branch;
    const GammaKind kind = traj.kind;
    detail::ScalarFn rate = [=](double t) {
        return decay_rate(cfg, branch, kind, t, cfg.temperature);
    };
    detail::ScalarFn gamma = [=](double t) {
        return gamma_exponent(cfg, branch, kind, t, cfg.temperature);
    };
    return detail::backflow(traj.time_grid, traj.gamma, traj.rate, rate, gamma);
}

/// Sample-only variant for synthetic trajectories: crossings and endpoint
/// values come from linear interpolation of the provided samples.
inline BackflowReport blp_from_samples(const std::vector<double>& times,
                                       const std::vector<double>& gamma,
                                       const std::vector<double>& rate) {
    return detail::backflow(times, gamma, rate, nullptr, nullptr);
}

}  // namespace bosemix
