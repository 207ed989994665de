// quadrature.hpp — adaptive composite Gauss-Legendre quadrature for oscillatory mode integrals

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "bosemix/errors.hpp"

namespace bosemix {

// Integration request over [k_min, k_max]. `oscillation_scale` is the shortest
// oscillation period of the integrand along k; the initial uniform paneling
// places at least 8 panels per period so the error estimator never aliases a
// fast oscillation into a spuriously small panel estimate.
struct QuadratureSpec {
    double k_min{1e-8};
    double k_max{0.0};
    double rel_tol{1e-9};
    double abs_tol{1e-12};
    double oscillation_scale{1.0};
};

struct IntegralResult {
    double value{0.0};
    double error{0.0};  // estimated absolute error
    std::size_t evaluations{0};
};

namespace detail {

struct GaussRule {
    std::vector<double> node;    // on (-1, 1)
    std::vector<double> weight;
};

// Legendre nodes by Newton iteration on the three-term recurrence. Pure
// arithmetic after the initial cosine guess, so the converged doubles are a
// fixed point independent of the libm that produced the guess.
inline GaussRule make_gauss_rule(int n) {
    GaussRule rule;
    rule.node.resize(static_cast<std::size_t>(n));
    rule.weight.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double x_next = x - p1 / dp;
            if (x_next == x) break;
            x = x_next;
        }
        rule.node[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weight[static_cast<std::size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

inline const GaussRule& gauss15() {
    static const GaussRule rule = make_gauss_rule(15);
    return rule;
}

inline const GaussRule& gauss7() {
    static const GaussRule rule = make_gauss_rule(7);
    return rule;
}

template <class F>
inline double apply_rule(F& f, const GaussRule& rule, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.node.size(); ++i)
        sum += rule.weight[i] * f(mid + half * rule.node[i]);
    return sum * half;
}

// Deterministic pairwise summation over a position-ordered panel list.
inline double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 4) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

struct Panel {
    double a{}, b{};
    double value{}, error{};
    int depth{};
};

struct PanelWorse {
    bool operator()(const Panel& p, const Panel& q) const {
        if (p.error != q.error) return p.error < q.error;
        return p.a > q.a;  // stable tie-break: leftmost panel splits first
    }
};

}  // namespace detail

// Composite 15-point Gauss-Legendre with a 7-point embedded estimate and
// global adaptive bisection of the worst panel. Fails after 18 refinement
// levels if the tolerance is still unmet.
template <class F>
IntegralResult integrate(F&& f, const QuadratureSpec& spec) {
    if (!(spec.k_min < spec.k_max))
        throw QuadratureFailure("integrate: empty interval");
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0))
        throw QuadratureFailure("integrate: tolerances must be positive");
    if (!(spec.oscillation_scale > 0.0))
        throw QuadratureFailure("integrate: oscillation_scale must be positive");

    const double range = spec.k_max - spec.k_min;
    const double target_width = spec.oscillation_scale / 8.0;
    std::size_t n0 = static_cast<std::size_t>(std::ceil(range / target_width));
    n0 = std::clamp<std::size_t>(n0, 4, 1u << 16);

    IntegralResult result;
    auto evaluate = [&](double a, double b, int depth) {
        detail::Panel p;
        p.a = a;
        p.b = b;
        p.depth = depth;
        p.value = detail::apply_rule(f, detail::gauss15(), a, b);
        const double coarse = detail::apply_rule(f, detail::gauss7(), a, b);
        p.error = std::abs(p.value - coarse);
        result.evaluations += 22;
        if (!std::isfinite(p.value) || !std::isfinite(p.error))
            throw QuadratureFailure("integrate: non-finite integrand");
        return p;
    };

    std::priority_queue<detail::Panel, std::vector<detail::Panel>, detail::PanelWorse> heap;
    double total_value = 0.0;
    double total_error = 0.0;
    const double w0 = range / static_cast<double>(n0);
    for (std::size_t i = 0; i < n0; ++i) {
        const double a = spec.k_min + w0 * static_cast<double>(i);
        const double b = (i + 1 == n0) ? spec.k_max : a + w0;
        detail::Panel p = evaluate(a, b, 0);
        total_value += p.value;
        total_error += p.error;
        heap.push(p);
    }

    constexpr int max_depth = 18;
    while (total_error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total_value))) {
        detail::Panel worst = heap.top();
        if (worst.depth >= max_depth)
            throw QuadratureFailure("integrate: tolerance unmet after 18 refinement levels");
        if (worst.error == 0.0)
            throw QuadratureFailure("integrate: tolerance unreachable (flat error estimates)");
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        detail::Panel left = evaluate(worst.a, mid, worst.depth + 1);
        detail::Panel right = evaluate(mid, worst.b, worst.depth + 1);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-accumulate in spatial order so the result does not depend on the
    // refinement history bookkeeping above.
    std::vector<detail::Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const detail::Panel& p, const detail::Panel& q) { return p.a < q.a; });
    std::vector<double> values(panels.size()), errors(panels.size());
    for (std::size_t i = 0; i < panels.size(); ++i) {
        values[i] = panels[i].value;
        errors[i] = panels[i].error;
    }
    result.value = detail::pairwise_sum(values, 0, values.size());
    result.error = detail::pairwise_sum(errors, 0, errors.size());
    return result;
}

}  // namespace bosemix
