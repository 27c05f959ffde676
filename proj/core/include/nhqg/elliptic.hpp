#pragma once

#include "nhqg/errors.hpp"
#include "nhqg/two_level.hpp"

namespace nhqg {

struct EllipticResult {
    Complex value{};
    int iterations{0};
    bool converged{false};
};

// Carlson symmetric integral R_F(x, y, z) by duplication, principal square
// roots throughout. Arguments must avoid the negative real axis (the branch
// cut); at most one may be zero. Symmetric in its arguments.
// Throws BranchCutError, DomainError, NonConvergenceError (64-iteration cap).
EllipticResult carlson_rf(Complex x, Complex y, Complex z);

// Carlson symmetric integral R_D(x, y, z) (degenerate third-kind; z is the
// repeated argument). Same argument restrictions; z must be nonzero.
EllipticResult carlson_rd(Complex x, Complex y, Complex z);

// Complete elliptic integrals in the MODULUS convention:
//   K(k) = R_F(0, 1-k^2, 1)
//   E(k) = R_F(0, 1-k^2, 1) - (k^2/3) R_D(0, 1-k^2, 1)
// Throws SingularModulusError at k^2 = 1.
Complex complete_k(Complex k);
Complex complete_e(Complex k);

// Same, parameterized by kc2 = 1 - k^2 directly. Callers that know the
// complementary parameter exactly avoid the cancellation in forming 1 - k^2
// when k^2 is close to 1.
Complex complete_k_from_kc2(Complex kc2);
Complex complete_e_from_kc2(Complex kc2);

}  // namespace nhqg
