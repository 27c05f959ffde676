#include "nhqg/two_level.hpp"

#include <cmath>

namespace nhqg {

namespace {

// Principal sqrt normalized to the Re >= 0 / (Re == 0, Im >= 0) branch.
// std::sqrt already returns Re >= 0; the tie-break matters on the negative
// real axis where the sign of Im(w) = +/-0 would otherwise pick the side.
Complex branch_sqrt(Complex w) {
    Complex s = std::sqrt(w);
    if (s.real() == 0.0 && s.imag() < 0.0) s = -s;
    if (s.real() == 0.0) s = Complex(0.0, s.imag());  // drop -0 real part
    return s;
}

}  // namespace

double ComplexVec3::scale() const {
    return std::max({std::abs(x), std::abs(y), std::abs(z)});
}

bool ComplexVec3::finite() const {
    return std::isfinite(x.real()) && std::isfinite(x.imag()) &&
           std::isfinite(y.real()) && std::isfinite(y.imag()) &&
           std::isfinite(z.real()) && std::isfinite(z.imag());
}

std::array<Complex, 4> TwoLevelHamiltonian::matrix() const {
    const Complex i(0.0, 1.0);
    return {lambda0 + r_vec.z, r_vec.x - i * r_vec.y,
            r_vec.x + i * r_vec.y, lambda0 - r_vec.z};
}

Complex complex_radius(const ComplexVec3& v) {
    return branch_sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
}

DegeneracyClass classify_degeneracy(const ComplexVec3& v, double tol) {
    const double sc = v.scale();
    if (sc <= tol) return {DegeneracyKind::DiabolicPoint, sc};
    const double r = std::abs(complex_radius(v));
    if (r <= tol * sc) return {DegeneracyKind::ExceptionalPoint, r / sc};
    return {DegeneracyKind::NonDegenerate, r / sc};
}

ComplexAngles spherical_angles(const ComplexVec3& v, double tol_degeneracy,
                               double tol_string) {
    const Complex r = complex_radius(v);
    const double sc = v.scale();
    if (std::abs(r) <= tol_degeneracy * sc || sc == 0.0) {
        throw DegeneracyError("spherical_angles: degenerate vector (R ~ 0)",
                              classify_degeneracy(v, tol_degeneracy));
    }
    const Complex ct = v.z / r;
    if (std::abs(1.0 + ct) <= tol_string) {
        throw StringProximityError(
            "spherical_angles: too close to the south pole, phi ill-defined");
    }
    ComplexAngles ang;
    ang.theta = std::acos(ct);
    const Complex st = std::sin(ang.theta);
    if (st == Complex(0.0, 0.0)) {
        ang.phi = 0.0;  // pole convention
    } else {
        const Complex i(0.0, 1.0);
        ang.phi = -i * std::log((v.x + i * v.y) / (r * st));
    }
    return ang;
}

BiorthogonalEigensystem eigensystem(const TwoLevelHamiltonian& h,
                                    double tol_degeneracy, double tol_string) {
    const ComplexAngles ang = spherical_angles(h.r_vec, tol_degeneracy, tol_string);
    const Complex r = complex_radius(h.r_vec);
    const Complex i(0.0, 1.0);
    const Complex s = std::sin(0.5 * ang.theta);
    const Complex c = std::cos(0.5 * ang.theta);
    const Complex em = std::exp(-i * ang.phi);
    const Complex ep = std::exp(i * ang.phi);

    BiorthogonalEigensystem es;
    es.radius = r;
    es.e_minus = h.lambda0 - r;
    es.e_plus = h.lambda0 + r;
    es.u_minus = {-em * s, c};
    es.ut_minus = {-ep * s, c};
    es.u_plus = {em * c, s};
    es.ut_plus = {ep * c, s};
    return es;
}

}  // namespace nhqg
