// errors.hpp — exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bosemix {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// g12^2 >= g1*g2: the mixture is outside the miscible window.
struct StabilityViolation : Error { using Error::Error; };

// Species parameters differ where the symmetric-mixture restriction applies.
struct NonSymmetricMixture : Error { using Error::Error; };

// Adaptive quadrature could not reach the requested tolerance.
struct QuadratureFailure : Error { using Error::Error; };

// Argument outside the tabulated or physically meaningful domain.
struct OutOfRange : Error { using Error::Error; };

// Power-law fit attempted on unusable data (nonpositive samples, narrow window).
struct DegenerateFit : Error { using Error::Error; };

// 4x4 eigensolver failed to converge or produced an unacceptable residual.
struct EigenFailure : Error { using Error::Error; };

// Backflow interval search exceeded the local refinement budget.
struct GridTooCoarse : Error { using Error::Error; };

// Assembled density matrix has an eigenvalue below the tolerance floor.
struct PositivityViolation : Error { using Error::Error; };

// Aggregated configuration problems, one message per entry.
struct ConfigError : Error {
    explicit ConfigError(std::vector<std::string> issues)
        : Error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string all;
        for (std::size_t i = 0; i < issues.size(); ++i) {
            if (i) all += '\n';
            all += issues[i];
        }
        return all;
    }

    std::vector<std::string> issues_;
};

}  // namespace bosemix
