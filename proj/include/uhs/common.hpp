#pragma once

// Shared vocabulary for the ultrahyperbolic scattering library: scalar types,
// the error hierarchy, and a few small numerical helpers (pairwise sums,
// least-squares slopes, deterministic parallel loops).

#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace uhs {

using Complex = std::complex<double>;
using RealVector = std::vector<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex I{0.0, 1.0};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unsupported spatial dimension (only 1, 2, 3 are implemented).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Invalid parameters, mismatched rules, or evaluation outside a configured radius.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// A point outside the mathematical domain of an operation (e.g. r = 0).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input rejected because it fails the hypothesis of the estimate being checked.
class RejectedInput : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature did not reach its target; carries the achieved estimate.
class ToleranceError : public Error {
public:
    ToleranceError(const std::string& what, double achieved)
        : Error(what + " (achieved error estimate " + std::to_string(achieved) + ")"),
          achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// Pairwise (cascade) summation; fixed order, so results are reproducible.
template <class T>
T pairwise_sum(std::span<const T> values) {
    const std::size_t n = values.size();
    if (n == 0) return T{};
    if (n <= 8) {
        T acc = values[0];
        for (std::size_t i = 1; i < n; ++i) acc += values[i];
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

/// Ordinary least-squares slope of ys against xs.
double least_squares_slope(std::span<const double> xs, std::span<const double> ys);

/// Slope and intercept of the least-squares line.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};
LineFit least_squares_line(std::span<const double> xs, std::span<const double> ys);

/// `count` log-spaced points from lo to hi inclusive.
RealVector log_space(double lo, double hi, std::size_t count);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
RealVector negated(std::span<const double> a);

/// Worker count: UHS_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, count) on worker_count() threads. Each index is
/// processed exactly once; callers write results to slot i, so the assembled
/// output does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace uhs
