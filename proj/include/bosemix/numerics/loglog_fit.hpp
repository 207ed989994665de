// loglog_fit.hpp — ordinary least squares on (log x, log y)

#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "bosemix/errors.hpp"

namespace bosemix {

struct LogLogFit {
    double slope{0.0};
    double intercept{0.0};  // in log space
    double residual{0.0};   // RMS of log-residuals
};

inline LogLogFit fit_loglog(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    if (n != ys.size() || n < 8)
        throw DegenerateFit("fit_loglog: need at least 8 paired samples");
    for (std::size_t i = 0; i < n; ++i)
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw DegenerateFit("fit_loglog: samples must be strictly positive");

    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += std::log(xs[i]);
        sy += std::log(ys[i]);
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(xs[i]) - mx;
        const double dy = std::log(ys[i]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    if (sxx == 0.0)
        throw DegenerateFit("fit_loglog: abscissae are all equal");

    LogLogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::log(ys[i]) - (fit.intercept + fit.slope * std::log(xs[i]));
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

}  // namespace bosemix
