#pragma once

#include <array>
#include <complex>

#include "nhqg/errors.hpp"

namespace nhqg {

using Complex = std::complex<double>;
using State2 = std::array<Complex, 2>;  // right vector or left covector

// Contraction of a left covector with a right vector. Biorthogonal pairing:
// components multiply linearly, no conjugation.
inline Complex braket(const State2& bra, const State2& ket) {
    return bra[0] * ket[0] + bra[1] * ket[1];
}

// Complex 3-vector (X, Y, Z) parameterizing a two-level Hamiltonian
// lambda0*1 + X*sx + Y*sy + Z*sz. Components carry energy units.
struct ComplexVec3 {
    Complex x{};
    Complex y{};
    Complex z{};

    // max component magnitude; 0 only for the zero vector
    double scale() const;
    bool finite() const;
};

struct TwoLevelHamiltonian {
    Complex lambda0{};
    ComplexVec3 r_vec{};

    // Row-major 2x2 matrix lambda0*1 + r_vec . sigma. Assembly is exact:
    // {l0+Z, X-iY, X+iY, l0-Z}.
    std::array<Complex, 4> matrix() const;
};

// Complex spherical angles of a ComplexVec3:
//   (X, Y, Z) = R (sin t cos p, sin t sin p, cos t),
// with R the branch-fixed complex radius.
struct ComplexAngles {
    Complex theta{};
    Complex phi{};
};

enum class DegeneracyKind { NonDegenerate, DiabolicPoint, ExceptionalPoint };

struct DegeneracyClass {
    DegeneracyKind kind{DegeneracyKind::NonDegenerate};
    double residual{0.0};  // |R|/scale for EP/non-degenerate, max component for DP
};

// Thrown when an operation needs a non-degenerate vector; carries the
// classification that triggered it.
class DegeneracyError : public Error {
public:
    DegeneracyError(const std::string& msg, DegeneracyClass cls)
        : Error(msg), degeneracy(cls) {}
    DegeneracyClass degeneracy;
};

// Eigensystem of a two-level Hamiltonian in the fixed half-angle gauge:
//   u_-  = (-e^{-ip} sin(t/2), cos(t/2))^T      ut_- = (-e^{ip} sin(t/2), cos(t/2))
//   u_+  = ( e^{-ip} cos(t/2), sin(t/2))^T      ut_+ = ( e^{ip} cos(t/2), sin(t/2))
// with E_-/+ = lambda0 -/+ R. u_minus is the ground level (lower real part
// of the energy under the Re R >= 0 branch). ut_m . u_n = delta_mn.
struct BiorthogonalEigensystem {
    Complex e_minus{};
    Complex e_plus{};
    State2 u_minus{};
    State2 u_plus{};
    State2 ut_minus{};
    State2 ut_plus{};
    Complex radius{};
};

// R = sqrt(X^2 + Y^2 + Z^2), branch fixed to Re R >= 0; when Re R == 0,
// the branch with Im R >= 0. R == 0 is a valid return.
Complex complex_radius(const ComplexVec3& v);

// cos(theta) = Z/R; phi from the phase of (X + iY)/(R sin theta), chosen so
// the reconstruction above reproduces (X, Y, Z) to roundoff. phi = 0 by
// convention at the poles (sin theta == 0).
// Throws DegeneracyError when |R| <= tol_degeneracy * scale,
// StringProximityError when |1 + cos theta| <= tol_string.
ComplexAngles spherical_angles(const ComplexVec3& v,
                               double tol_degeneracy = 1e-10,
                               double tol_string = 1e-8);

// Eigensystem in the gauge above. Throws DegeneracyError near R = 0 (the
// thrown error carries the classification); StringProximityError near the
// south pole where the gauge is singular.
BiorthogonalEigensystem eigensystem(const TwoLevelHamiltonian& h,
                                    double tol_degeneracy = 1e-10,
                                    double tol_string = 1e-8);

// DiabolicPoint: all three components below tol (absolute, J-scaled units);
// ExceptionalPoint: |R| <= tol * max-component while some component is not;
// otherwise NonDegenerate. residual is the magnitude that was compared.
//
// The occupation-number rewrite (lambda0 - R)*1 + 2R C^dag C is a formal
// identity of the same matrix and carries no extra data; it is not
// represented here.
DegeneracyClass classify_degeneracy(const ComplexVec3& v, double tol);

}  // namespace nhqg
