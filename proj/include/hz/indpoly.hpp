#ifndef HZ_INDPOLY_HPP
#define HZ_INDPOLY_HPP

#include <gmpxx.h>
#include <optional>
#include <vector>

#include "hz/common.hpp"
#include "hz/graph.hpp"

namespace hz {

/// Per-vertex complex activities. Real rational values may be attached so
/// evaluations can run exactly instead of in floating point.
class LambdaAssignment {
public:
    LambdaAssignment() = default;
    explicit LambdaAssignment(std::vector<Complex> values) : values_(std::move(values)) {}

    static LambdaAssignment uniform(int n, Complex value);
    static LambdaAssignment uniform_rational(int n, const mpq_class& value);

    int size() const { return static_cast<int>(values_.size()); }
    Complex operator[](int v) const { return values_[v]; }
    const std::vector<Complex>& values() const { return values_; }

    bool has_exact() const { return exact_.has_value(); }
    const std::vector<mpq_class>& exact() const { return *exact_; }
    void set_exact(std::vector<mpq_class> q);

    // restriction to a vertex list (for component splits)
    LambdaAssignment restricted(const std::vector<int>& verts) const;

private:
    std::vector<Complex> values_;
    std::optional<std::vector<mpq_class>> exact_;
};

/// Exact integer coefficients c_0..c_m of the univariate independence
/// polynomial; c_0 = 1, c_1 = n, m = independence number.
struct PolyCoeffs {
    std::vector<mpz_class> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    Complex eval(Complex lambda) const;
    mpq_class eval(const mpq_class& lambda) const;
};

// Sum over independent sets by subset enumeration. Independent oracle for
// z_eval; capped at 30 vertices.
Complex z_brute_force(const Graph& g, const LambdaAssignment& lambda);
mpq_class z_brute_force_rational(const Graph& g, const std::vector<mpq_class>& lambda);

// Z via the vertex-elimination recurrence Z_G = lambda_v Z_{G\N[v]} + Z_{G-v},
// memoized on subset masks (n <= 64); tree components use the equivalent
// linear two-state recursion. Every call owns its cache, so concurrent
// evaluations are independent and scheduling cannot change results.
Complex z_eval(const Graph& g, const LambdaAssignment& lambda);
mpq_class z_eval_rational(const Graph& g, const std::vector<mpq_class>& lambda);

// Same value with the magnitude carried in log scale; usable on trees far
// beyond double range.
ScaledComplex z_eval_scaled(const Graph& g, const LambdaAssignment& lambda);

// Exact univariate coefficients by the same recurrence over Z[lambda].
PolyCoeffs z_coeffs(const Graph& g);

// All roots of the univariate polynomial (degree >= 1), residual-checked.
std::vector<Complex> roots_univariate(const PolyCoeffs& p);

// Memo budget for the mask caches, in bytes (shared default for new runs).
void set_memo_budget(std::size_t bytes);
std::size_t memo_budget();

} // namespace hz

#endif
