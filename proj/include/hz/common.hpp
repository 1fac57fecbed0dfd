#ifndef HZ_COMMON_HPP
#define HZ_COMMON_HPP

#include <complex>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hz {

using Complex = std::complex<double>;

// Value with an explicit log-magnitude carried separately, value = mantissa * exp(log_scale).
// Used where partition functions overflow double (large trees).
struct ScaledComplex {
    Complex mantissa{0.0, 0.0};
    double log_scale = 0.0;

    double log_abs() const { return std::log(std::abs(mantissa)) + log_scale; }
    bool is_zero() const { return mantissa == Complex(0.0, 0.0); }
    Complex value() const { return mantissa * std::exp(log_scale); }
};

inline ScaledComplex normalized(Complex m, double s) {
    double a = std::abs(m);
    if (a > 0.0 && std::isfinite(a)) {
        return ScaledComplex{m / a, s + std::log(a)};
    }
    return ScaledComplex{m, s};
}

inline ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
    return normalized(a.mantissa * b.mantissa, a.log_scale + b.log_scale);
}

// Distance from z to the real segment [a, b], a <= b.
inline double segment_distance(Complex z, double a, double b) {
    double x = std::min(std::max(z.real(), a), b);
    return std::hypot(z.real() - x, z.imag());
}

struct ParseError : std::runtime_error {
    int line;
    ParseError(const std::string& msg, int line_no)
        : std::runtime_error(msg), line(line_no) {}
};

struct ZeroDenominator : std::runtime_error {
    explicit ZeroDenominator(const std::string& msg) : std::runtime_error(msg) {}
};

struct PoleHit : std::runtime_error {
    int step;
    explicit PoleHit(int at_step)
        : std::runtime_error("orbit hit the pole x = -1 at step " + std::to_string(at_step)),
          step(at_step) {}
};

struct BranchViolation : std::runtime_error {
    explicit BranchViolation(const std::string& msg) : std::runtime_error(msg) {}
};

struct RootFindingError : std::runtime_error {
    explicit RootFindingError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SearchFailed : std::runtime_error {
    explicit SearchFailed(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoZeroFound : std::runtime_error {
    int k_max;
    explicit NoZeroFound(int kmax)
        : std::runtime_error("no tree zero found up to depth " + std::to_string(kmax)),
          k_max(kmax) {}
};

struct ConstructionFailed : std::runtime_error {
    double width;
    explicit ConstructionFailed(double w)
        : std::runtime_error("counterexample construction failed for tube width " + std::to_string(w)),
          width(w) {}
};

struct TreeTooLarge : std::runtime_error {
    explicit TreeTooLarge(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace hz

#endif
