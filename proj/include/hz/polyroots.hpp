#ifndef HZ_POLYROOTS_HPP
#define HZ_POLYROOTS_HPP

#include <vector>
#include "hz/common.hpp"

namespace hz {

// All roots of c[0] + c[1] x + ... + c[m] x^m, complex coefficients.
// Aberth-Ehrlich simultaneous iteration with Newton polishing; chosen over
// companion-matrix eigenvalues to stay dependency-free at these degrees.
// Throws RootFindingError when the residual target is missed.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs,
                                      double residual_tol = 1e-10,
                                      int max_iter = 400);

// Horner evaluation of p and p'.
std::pair<Complex, Complex> poly_eval_deriv(const std::vector<Complex>& coeffs, Complex x);

} // namespace hz

#endif
