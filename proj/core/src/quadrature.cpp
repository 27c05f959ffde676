#include "nhqg/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace nhqg {

Complex integrate_gk(const std::function<Complex(double)>& f, double a,
                     double b, double rel_tol, double* err_out, int max_depth) {
    double err = 0.0;
    const Complex v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, static_cast<unsigned>(max_depth), rel_tol, &err);
    if (err_out) *err_out = err;
    return v;
}

}  // namespace nhqg
