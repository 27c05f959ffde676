#include "nhqg/elliptic.hpp"

#include <cmath>

namespace nhqg {

namespace {

constexpr int kMaxIter = 64;
constexpr double kEps = 1e-15;  // duplication convergence threshold

bool on_cut(Complex w) { return w.imag() == 0.0 && w.real() < 0.0; }

void check_args(Complex x, Complex y, Complex z, bool z_special) {
    if (on_cut(x) || on_cut(y) || on_cut(z)) {
        throw BranchCutError(
            "carlson: argument on the negative real axis (principal sqrt cut)");
    }
    const int zeros = (x == Complex{}) + (y == Complex{}) + (z == Complex{});
    if (zeros > 1) throw DomainError("carlson: more than one zero argument");
    if (z_special && z == Complex{}) {
        throw DomainError("carlson_rd: repeated argument z must be nonzero");
    }
}

}  // namespace

EllipticResult carlson_rf(Complex x, Complex y, Complex z) {
    check_args(x, y, z, false);
    const Complex a0 = (x + y + z) / 3.0;
    double q = std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
    q /= std::pow(3.0 * kEps, 1.0 / 6.0);

    Complex a = a0;
    double f = 1.0;
    int m = 0;
    while (q * f > std::abs(a)) {
        if (++m > kMaxIter) {
            throw NonConvergenceError("carlson_rf: duplication did not converge");
        }
        const Complex sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const Complex lam = sx * sy + sy * sz + sz * sx;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        a = 0.25 * (a + lam);
        f *= 0.25;
    }
    // X = (a0 - x0)/(4^m A) = 1 - x/A on the final iterates
    const Complex X = 1.0 - x / a;
    const Complex Y = 1.0 - y / a;
    const Complex Z = -X - Y;
    const Complex e2 = X * Y - Z * Z;
    const Complex e3 = X * Y * Z;
    const Complex series =
        1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0;
    EllipticResult res;
    res.value = series / std::sqrt(a);
    res.iterations = m;
    res.converged = true;
    return res;
}

EllipticResult carlson_rd(Complex x, Complex y, Complex z) {
    check_args(x, y, z, true);
    const Complex a0 = (x + y + 3.0 * z) / 5.0;
    double q = std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
    q /= std::pow(0.25 * kEps, 1.0 / 6.0);

    Complex a = a0;
    Complex sum = 0.0;
    double f = 1.0;
    int m = 0;
    while (q * f > std::abs(a)) {
        if (++m > kMaxIter) {
            throw NonConvergenceError("carlson_rd: duplication did not converge");
        }
        const Complex sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const Complex lam = sx * sy + sy * sz + sz * sx;
        sum += f / (sz * (z + lam));
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        a = 0.25 * (a + lam);
        f *= 0.25;
    }
    const Complex Xf = 1.0 - x / a;
    const Complex Yf = 1.0 - y / a;
    const Complex Zf = -(Xf + Yf) / 3.0;
    const Complex z2 = Zf * Zf;
    const Complex e2 = Xf * Yf - 6.0 * z2;
    const Complex e3 = (3.0 * Xf * Yf - 8.0 * z2) * Zf;
    const Complex e4 = 3.0 * (Xf * Yf - z2) * z2;
    const Complex e5 = Xf * Yf * Zf * z2;
    const Complex series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 +
                           9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 -
                           9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
    EllipticResult res;
    res.value = f * series / (a * std::sqrt(a)) + 3.0 * sum;
    res.iterations = m;
    res.converged = true;
    return res;
}

Complex complete_k_from_kc2(Complex kc2) {
    if (std::abs(kc2) < 1e-300) {
        throw SingularModulusError("complete_k: k^2 = 1 (logarithmic singularity)");
    }
    return carlson_rf(0.0, kc2, 1.0).value;
}

Complex complete_e_from_kc2(Complex kc2) {
    if (std::abs(kc2) < 1e-300) {
        throw SingularModulusError("complete_e: k^2 = 1");
    }
    const Complex k2 = 1.0 - kc2;
    return carlson_rf(0.0, kc2, 1.0).value -
           (k2 / 3.0) * carlson_rd(0.0, kc2, 1.0).value;
}

Complex complete_k(Complex k) { return complete_k_from_kc2(1.0 - k * k); }

Complex complete_e(Complex k) { return complete_e_from_kc2(1.0 - k * k); }

}  // namespace nhqg
