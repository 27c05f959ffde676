#pragma once

#include <functional>

#include "nhqg/two_level.hpp"

namespace nhqg {

// Adaptive Gauss-Kronrod quadrature of a complex-valued integrand over a
// real interval. rel_tol is relative to the integral's L1 norm; err_out,
// when given, receives the error estimate.
Complex integrate_gk(const std::function<Complex(double)>& f, double a,
                     double b, double rel_tol = 1e-12,
                     double* err_out = nullptr, int max_depth = 15);

}  // namespace nhqg
