#ifndef HZ_DYNAMICS_HPP
#define HZ_DYNAMICS_HPP

#include <gmpxx.h>
#include <optional>
#include <vector>

#include "hz/common.hpp"

namespace hz {

/// The rational map x -> lambda / (1+x)^d on the extended plane.
struct HardcoreMap {
    int d = 1; // degree parameter, one less than the graph degree bound
    Complex lambda{0.0, 0.0};
};

// Infinity is carried as a complex with infinite parts: the pole x = -1 maps
// there, and infinity maps to 0.
bool is_infinite(Complex x);
Complex infinity_marker();
Complex hardcore_apply(const HardcoreMap& m, Complex x);

// (delta-1)^(delta-1) / (delta-2)^delta, the critical activity.
double lambda_critical(int delta);
mpq_class lambda_critical_exact(int delta);

// 1/(delta-2), the parabolic fixed point at the critical activity.
double x_critical(int delta);
mpq_class x_critical_exact(int delta);

// (delta-1)^(delta-1) / delta^delta, radius of the classical zero-free disk.
double shearer_point(int delta);
mpq_class shearer_point_exact(int delta);

enum class FixedPointClass { attracting, neutral, repelling };

struct FixedPoint {
    Complex x;
    Complex multiplier; // -d x / (1+x)
    FixedPointClass cls;
};

struct FixedPointReport {
    std::vector<FixedPoint> points;
    std::optional<FixedPoint> attracting() const;
};

// All d+1 solutions of x (1+x)^d = lambda with their multipliers. Neutral
// band: | |multiplier| - 1 | <= 1e-9.
FixedPointReport fixed_points(const HardcoreMap& m);

// The activity whose fixed point -alpha/(d+alpha) has multiplier alpha:
// lambda = -alpha d^d / (d+alpha)^(d+1). |alpha| < 1 sweeps the attracting
// parameter region, |alpha| = 1 its boundary.
Complex u_d_lambda(int d, Complex alpha);

// True iff some fixed point is strictly attracting (|mult| < 1 - 1e-12).
bool in_attracting_region(int d, Complex lambda);

struct OrbitResult {
    std::vector<Complex> points; // x0, x1, ..., possibly truncated
    std::optional<int> pole_hit; // step index where |x+1| < 1e-14 stopped it
};

OrbitResult orbit(const HardcoreMap& m, Complex x0, int steps);

// Distance from lambda to the boundary curve of the attracting region,
// by dense sampling of alpha = e^{i theta} plus local refinement.
double boundary_distance(int d, Complex lambda, int coarse_samples = 4096);

} // namespace hz

#endif
