#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "bosemix/numerics/eig4.hpp"
#include "bosemix/numerics/loglog_fit.hpp"
#include "bosemix/numerics/quadrature.hpp"
#include "oracles.hpp"

using namespace bosemix;

TEST_CASE("gauss-legendre panels are exact for polynomials up to degree 29") {
    std::vector<double> coeff(30);
    for (std::size_t i = 0; i < coeff.size(); ++i)
        coeff[i] = static_cast<double>((7 * i) % 5) - 2.0;
    auto poly = [&](double x) {
        double acc = 0.0;
        for (std::size_t i = coeff.size(); i-- > 0;) acc = acc * x + coeff[i];
        return acc;
    };
    double exact = 0.0;
    for (std::size_t i = 0; i < coeff.size(); ++i)
        exact += coeff[i] / static_cast<double>(i + 1);

    QuadratureSpec spec;
    spec.k_min = 0.0;
    spec.k_max = 1.0;
    spec.oscillation_scale = 100.0;  // forces the minimum panel count
    const auto result = integrate(poly, spec);
    CHECK(std::abs(result.value - exact) <= 1e-13 * std::abs(exact));
}

TEST_CASE("gaussian integral to 1e-12") {
    QuadratureSpec spec;
    spec.k_min = 0.0;
    spec.k_max = 40.0;
    spec.rel_tol = 1e-13;
    const auto result = integrate([](double k) { return std::exp(-k * k); }, spec);
    const double exact = 0.5 * std::sqrt(std::numbers::pi);
    CHECK(std::abs(result.value - exact) <= 1e-12);
}

TEST_CASE("oscillatory gaussian against the cosine-transform closed form") {
    QuadratureSpec spec;
    spec.k_min = 0.0;
    spec.k_max = 40.0;
    spec.rel_tol = 1e-12;
    spec.oscillation_scale = std::numbers::pi / 10.0;
    const auto result = integrate(
        [](double k) {
            const double s = std::sin(10.0 * k);
            return std::exp(-k * k) * s * s;
        },
        spec);
    const double exact = 0.25 * std::sqrt(std::numbers::pi) * (1.0 - std::exp(-100.0));
    CHECK(std::abs(result.value - exact) <= 1e-10);
}

TEST_CASE("halving rel_tol never increases the returned error estimate") {
    auto f = [](double k) {
        const double s = std::sin(10.0 * k);
        return std::exp(-k * k) * s * s;
    };
    double previous = std::numeric_limits<double>::infinity();
    for (double tol : {1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 1e-11, 1e-12}) {
        QuadratureSpec spec;
        spec.k_min = 0.0;
        spec.k_max = 40.0;
        spec.rel_tol = tol;
        spec.oscillation_scale = std::numbers::pi / 10.0;
        const auto result = integrate(f, spec);
        CHECK(result.error <= previous);
        previous = result.error;
    }
}

TEST_CASE("refinement budget exhausts on a discontinuity") {
    QuadratureSpec spec;
    spec.k_min = 0.0;
    spec.k_max = 1.0;
    spec.rel_tol = 1e-12;
    spec.abs_tol = 1e-14;
    // jump placed off every dyadic panel boundary
    CHECK_THROWS_AS(integrate([](double k) { return k < 0.53742961 ? 0.0 : 1.0; }, spec),
                    QuadratureFailure);
}

TEST_CASE("fit_loglog recovers exponents") {
    std::vector<double> xs, ys;
    for (int i = 0; i < 16; ++i) xs.push_back(0.01 * std::pow(10.0, i / 5.0));

    SUBCASE("linear") {
        for (double x : xs) ys.push_back(3.0 * x);
        const auto fit = fit_loglog(xs, ys);
        CHECK(std::abs(fit.slope - 1.0) <= 1e-6);
        CHECK(std::abs(fit.intercept - std::log(3.0)) <= 1e-6);
    }
    SUBCASE("quadratic") {
        for (double x : xs) ys.push_back(x * x);
        CHECK(std::abs(fit_loglog(xs, ys).slope - 2.0) <= 1e-6);
    }
    SUBCASE("noisy three-halves") {
        for (std::size_t i = 0; i < xs.size(); ++i)
            ys.push_back(std::pow(xs[i], 1.5) *
                         (1.0 + 1e-3 * std::sin(static_cast<double>(i))));
        CHECK(std::abs(fit_loglog(xs, ys).slope - 1.5) <= 0.01);
    }
    SUBCASE("nonpositive data is rejected") {
        for (double x : xs) ys.push_back(x);
        ys[3] = 0.0;
        CHECK_THROWS_AS(fit_loglog(xs, ys), DegenerateFit);
    }
    SUBCASE("short data is rejected") {
        std::vector<double> sx(xs.begin(), xs.begin() + 4), sy(4, 1.0);
        CHECK_THROWS_AS(fit_loglog(sx, sy), DegenerateFit);
    }
}

namespace {

Complex4x4 random_matrix(std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Complex4x4 m{};
    for (Complex& z : m) z = Complex{uni(rng), uni(rng)};
    return m;
}

// Random density matrix (PSD, unit trace) and its spin flip, multiplied.
Complex4x4 random_psd_product(std::mt19937& rng) {
    using detail::at;
    const Complex4x4 a = random_matrix(rng);
    Complex4x4 rho{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Complex s{0.0, 0.0};
            for (int l = 0; l < 4; ++l) s += at(a, i, l) * std::conj(at(a, j, l));
            at(rho, i, j) = s;
        }
    Complex trace{0.0, 0.0};
    for (int i = 0; i < 4; ++i) trace += at(rho, i, i);
    for (Complex& z : rho) z /= trace;

    static constexpr std::array<double, 4> sign{-1.0, 1.0, 1.0, -1.0};
    Complex4x4 flipped{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            at(flipped, i, j) = sign[static_cast<std::size_t>(i)] *
                                sign[static_cast<std::size_t>(j)] *
                                std::conj(at(rho, 3 - i, 3 - j));
    Complex4x4 product{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Complex s{0.0, 0.0};
            for (int l = 0; l < 4; ++l) s += at(rho, i, l) * at(flipped, l, j);
            at(product, i, j) = s;
        }
    return product;
}

double match_distance(std::array<Complex, 4> a, std::array<Complex, 4> b) {
    // greedy nearest matching, adequate at the tolerances tested here
    double worst = 0.0;
    std::vector<Complex> pool(b.begin(), b.end());
    for (const Complex& za : a) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < pool.size(); ++i)
            if (std::abs(za - pool[i]) < std::abs(za - pool[best])) best = i;
        worst = std::max(worst, std::abs(za - pool[best]));
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return worst;
}

}  // namespace

TEST_CASE("eig4 on diagonal matrices") {
    Complex4x4 m{};
    for (int i = 0; i < 4; ++i) detail::at(m, i, i) = Complex{1.0, 0.0};
    auto lambdas = eig4(m);
    for (const Complex& l : lambdas) CHECK(std::abs(l - Complex{1.0, 0.0}) <= 1e-12);

    Complex4x4 d{};
    for (int i = 0; i < 4; ++i) detail::at(d, i, i) = Complex{4.0 - i, 0.0};
    auto sorted = eig4(d);
    std::sort(sorted.begin(), sorted.end(),
              [](Complex a, Complex b) { return a.real() > b.real(); });
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(sorted[static_cast<std::size_t>(i)] - Complex{4.0 - i, 0.0}) <= 1e-12);
}

TEST_CASE("eig4 eigenvalue sum and product match trace and determinant") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
        const Complex4x4 m = random_matrix(rng);
        const auto lambdas = eig4(m);
        Complex sum{0.0, 0.0}, product{1.0, 0.0};
        for (const Complex& l : lambdas) {
            sum += l;
            product *= l;
        }
        Complex trace{0.0, 0.0};
        for (int i = 0; i < 4; ++i) trace += detail::at(m, i, i);
        const Complex det = detail::det4(m);
        CHECK(std::abs(sum - trace) <= 1e-11 * std::max(1.0, std::abs(trace)));
        CHECK(std::abs(product - det) <= 1e-10 * std::max(1.0, std::abs(det)));
    }
}

TEST_CASE("eig4 spectrum is invariant under similarity permutations") {
    std::mt19937 rng(777);
    const Complex4x4 m = random_matrix(rng);
    const std::array<int, 4> perm{2, 0, 3, 1};
    Complex4x4 permuted{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            detail::at(permuted, i, j) =
                detail::at(m, perm[static_cast<std::size_t>(i)],
                           perm[static_cast<std::size_t>(j)]);
    CHECK(match_distance(eig4(m), eig4(permuted)) <= 1e-10);
}

TEST_CASE("eig4 matches the characteristic-polynomial quartic oracle on 100 PSD products") {
    std::mt19937 rng(20240801);
    for (int trial = 0; trial < 100; ++trial) {
        const Complex4x4 m = random_psd_product(rng);
        const auto mine = eig4(m);
        oracles::Mat copy;
        std::copy(m.begin(), m.end(), copy.begin());
        const auto reference = oracles::eigenvalues_reference(copy);
        std::array<Complex, 4> ref;
        for (std::size_t i = 0; i < 4; ++i) ref[i] = reference[i];
        CHECK(match_distance(mine, ref) <= 1e-8);
    }
}
