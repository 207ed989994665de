// eig4.hpp — dense 4x4 complex eigensolver: Householder Hessenberg reduction
// followed by shifted QR iteration (Wilkinson shift, Givens rotations).

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "bosemix/errors.hpp"

namespace bosemix {

using Complex = std::complex<double>;
using Complex4x4 = std::array<Complex, 16>;  // row-major

namespace detail {

inline Complex& at(Complex4x4& m, int i, int j) { return m[static_cast<std::size_t>(4 * i + j)]; }
inline const Complex& at(const Complex4x4& m, int i, int j) {
    return m[static_cast<std::size_t>(4 * i + j)];
}

inline double frobenius(const Complex4x4& m) {
    double s = 0.0;
    for (const Complex& z : m) s += std::norm(z);
    return std::sqrt(s);
}

// Determinant via LU with partial pivoting; used for the residual check.
inline Complex det4(Complex4x4 m) {
    Complex det{1.0, 0.0};
    for (int c = 0; c < 4; ++c) {
        int pivot = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(at(m, r, c)) > std::abs(at(m, pivot, c))) pivot = r;
        if (pivot != c) {
            for (int j = 0; j < 4; ++j) std::swap(at(m, c, j), at(m, pivot, j));
            det = -det;
        }
        const Complex piv = at(m, c, c);
        if (piv == Complex{0.0, 0.0}) return {0.0, 0.0};
        det *= piv;
        for (int r = c + 1; r < 4; ++r) {
            const Complex factor = at(m, r, c) / piv;
            for (int j = c; j < 4; ++j) at(m, r, j) -= factor * at(m, c, j);
        }
    }
    return det;
}

// Reduce to upper Hessenberg form by two Householder reflectors.
inline void hessenberg(Complex4x4& a) {
    for (int c = 0; c < 2; ++c) {
        double tail = 0.0;
        for (int r = c + 2; r < 4; ++r) tail += std::norm(at(a, r, c));
        if (tail == 0.0) continue;

        const int m = 4 - (c + 1);
        std::array<Complex, 3> v{};
        double xnorm = std::sqrt(std::norm(at(a, c + 1, c)) + tail);
        Complex x0 = at(a, c + 1, c);
        Complex alpha = (std::abs(x0) == 0.0) ? Complex{-xnorm, 0.0}
                                              : -(x0 / std::abs(x0)) * xnorm;
        for (int r = 0; r < m; ++r) v[static_cast<std::size_t>(r)] = at(a, c + 1 + r, c);
        v[0] -= alpha;
        double vv = 0.0;
        for (int r = 0; r < m; ++r) vv += std::norm(v[static_cast<std::size_t>(r)]);
        if (vv == 0.0) continue;
        const double beta = 2.0 / vv;

        // a <- P a with P = I - beta v v^dagger acting on rows c+1..3
        for (int j = 0; j < 4; ++j) {
            Complex dot{0.0, 0.0};
            for (int r = 0; r < m; ++r) dot += std::conj(v[static_cast<std::size_t>(r)]) * at(a, c + 1 + r, j);
            dot *= beta;
            for (int r = 0; r < m; ++r) at(a, c + 1 + r, j) -= dot * v[static_cast<std::size_t>(r)];
        }
        // a <- a P acting on columns c+1..3
        for (int i = 0; i < 4; ++i) {
            Complex dot{0.0, 0.0};
            for (int r = 0; r < m; ++r) dot += at(a, i, c + 1 + r) * v[static_cast<std::size_t>(r)];
            dot *= beta;
            for (int r = 0; r < m; ++r) at(a, i, c + 1 + r) -= dot * std::conj(v[static_cast<std::size_t>(r)]);
        }
    }
}

struct Givens {
    double c{1.0};
    Complex s{0.0, 0.0};
};

inline Givens make_givens(Complex f, Complex g) {
    Givens rot;
    if (std::abs(g) == 0.0) return rot;
    if (std::abs(f) == 0.0) {
        rot.c = 0.0;
        rot.s = std::conj(g) / std::abs(g);
        return rot;
    }
    const double denom = std::hypot(std::abs(f), std::abs(g));
    rot.c = std::abs(f) / denom;
    rot.s = (f / std::abs(f)) * std::conj(g) / denom;
    return rot;
}

// Eigenvalues of the 2x2 block [[a, b], [c, d]].
inline std::array<Complex, 2> eig2(Complex a, Complex b, Complex c, Complex d) {
    const Complex tr = a + d;
    const Complex disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
    return {0.5 * (tr + disc), 0.5 * (tr - disc)};
}

}  // namespace detail

// Eigenvalues of a general complex 4x4 matrix. Throws EigenFailure when the QR
// iteration does not converge within 200 steps or when any eigenvalue fails the
// determinant residual check |det(m - lambda I)| <= 1e-10 * (||m||_F + |lambda|)^4.
inline std::array<Complex, 4> eig4(const Complex4x4& m) {
    using detail::at;
    Complex4x4 a = m;
    const double fro = detail::frobenius(m);
    detail::hessenberg(a);

    std::array<Complex, 4> lambdas{};
    int found = 0;
    int hi = 3;
    int iterations = 0;
    int since_deflation = 0;
    constexpr double eps = 2.220446049250313e-16;

    while (hi >= 0) {
        // knock out negligible subdiagonals: small relative to the local
        // diagonals, or norm-wise negligible (perturbs eigenvalues by <= eps*fro)
        for (int i = 1; i <= hi; ++i) {
            const double thr = std::max(
                eps * (std::abs(at(a, i - 1, i - 1)) + std::abs(at(a, i, i))), eps * fro);
            if (std::abs(at(a, i, i - 1)) <= thr) at(a, i, i - 1) = Complex{0.0, 0.0};
        }

        if (hi == 0 || at(a, hi, hi - 1) == Complex{0.0, 0.0}) {
            lambdas[static_cast<std::size_t>(found++)] = at(a, hi, hi);
            --hi;
            since_deflation = 0;
            continue;
        }

        int lo = hi;
        while (lo > 0 && at(a, lo, lo - 1) != Complex{0.0, 0.0}) --lo;

        if (hi - lo == 1) {
            const auto pair = detail::eig2(at(a, lo, lo), at(a, lo, hi), at(a, hi, lo), at(a, hi, hi));
            lambdas[static_cast<std::size_t>(found++)] = pair[0];
            lambdas[static_cast<std::size_t>(found++)] = pair[1];
            hi = lo - 1;
            since_deflation = 0;
            continue;
        }

        if (++iterations > 200)
            throw EigenFailure("eig4: QR iteration did not converge within 200 steps");

        // Wilkinson shift from the trailing 2x2; exceptional shift if stalled.
        const auto pair = detail::eig2(at(a, hi - 1, hi - 1), at(a, hi - 1, hi),
                                       at(a, hi, hi - 1), at(a, hi, hi));
        Complex mu = (std::abs(pair[0] - at(a, hi, hi)) <= std::abs(pair[1] - at(a, hi, hi)))
                         ? pair[0]
                         : pair[1];
        if (++since_deflation > 15) {
            mu = at(a, hi, hi) + Complex{1.5 * std::abs(at(a, hi, hi - 1)), 0.0};
            since_deflation = 0;
        }

        for (int i = lo; i <= hi; ++i) at(a, i, i) -= mu;
        std::array<detail::Givens, 3> rots{};
        for (int i = lo; i < hi; ++i) {
            const detail::Givens rot = detail::make_givens(at(a, i, i), at(a, i + 1, i));
            rots[static_cast<std::size_t>(i - lo)] = rot;
            for (int j = i; j <= hi; ++j) {
                const Complex top = at(a, i, j), bot = at(a, i + 1, j);
                at(a, i, j) = rot.c * top + rot.s * bot;
                at(a, i + 1, j) = -std::conj(rot.s) * top + rot.c * bot;
            }
        }
        for (int i = lo; i < hi; ++i) {
            const detail::Givens rot = rots[static_cast<std::size_t>(i - lo)];
            for (int r = lo; r <= hi; ++r) {
                const Complex left = at(a, r, i), right = at(a, r, i + 1);
                at(a, r, i) = rot.c * left + std::conj(rot.s) * right;
                at(a, r, i + 1) = -rot.s * left + rot.c * right;
            }
        }
        for (int i = lo; i <= hi; ++i) at(a, i, i) += mu;
    }

    for (const Complex& lambda : lambdas) {
        Complex4x4 shifted = m;
        for (int i = 0; i < 4; ++i) at(shifted, i, i) -= lambda;
        const double scale = std::max(std::pow(fro + std::abs(lambda), 4.0), 1e-300);
        if (std::abs(detail::det4(shifted)) / scale > 1e-10)
            throw EigenFailure("eig4: eigenvalue failed the determinant residual check");
    }
    return lambdas;
}

}  // namespace bosemix
