#include "nhqg/ising.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nhqg/elliptic.hpp"
#include "nhqg/quadrature.hpp"

namespace nhqg {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

Complex sqrt_w(Complex g, double cx) {
    Complex s = std::sqrt(g * g - 2.0 * g * cx + 1.0);
    if (s.real() == 0.0 && s.imag() < 0.0) s = -s;
    return s;
}

bool in_flip_region(Complex g) {
    return std::abs(g.real()) < 1.0 && g.imag() != 0.0 && std::norm(g) > 1.0;
}

Complex one_minus_m2(Complex g) {
    const Complex r = (1.0 - g) / (1.0 + g);
    return r * r;
}

}  // namespace

void IsingParams::validate() const {
    if (j_coupling <= 0.0) throw DomainError("IsingParams: J must be positive");
    if (h_field < 0.0) throw DomainError("IsingParams: h must be >= 0");
    if (delta < 0.0) throw DomainError("IsingParams: delta must be >= 0");
    if (phi < 0.0 || phi >= 2.0 * kPi) {
        throw DomainError("IsingParams: phi must lie in [0, 2pi)");
    }
    if (n_sites < 2 || n_sites % 2) {
        throw DomainError("IsingParams: N must be a positive even integer");
    }
    if (lattice_a <= 0.0) throw DomainError("IsingParams: lattice spacing must be positive");
}

TwoLevelHamiltonian mode_hamiltonian(const IsingParams& p, double k) {
    p.validate();
    if (k <= 0.0 || k >= kPi / p.lattice_a) {
        throw DomainError("mode_hamiltonian: k must lie in (0, pi/a)");
    }
    const double ka = k * p.lattice_a;
    const double tj = 2.0 * p.j_coupling;
    TwoLevelHamiltonian h;
    h.lambda0 = -kI * p.j_coupling * p.delta;
    h.r_vec = {tj * std::sin(ka) * std::cos(p.phi),
               tj * std::sin(ka) * std::sin(p.phi),
               tj * (p.g() - std::cos(ka))};
    return h;
}

Complex bogoliubov_angle(const IsingParams& p, double k) {
    const TwoLevelHamiltonian h = mode_hamiltonian(p, k);
    const Complex r = complex_radius(h.r_vec);
    if (std::abs(r) <= 1e-10 * h.r_vec.scale() || h.r_vec.scale() == 0.0) {
        std::ostringstream msg;
        msg << "bogoliubov_angle: degenerate mode at k = " << k;
        throw DegeneracyError(msg.str(), classify_degeneracy(h.r_vec, 1e-10));
    }
    return h.r_vec.z / r;
}

ModeSpectrum mode_spectrum(const IsingParams& p) {
    p.validate();
    ModeSpectrum sp;
    sp.epsilon0 = -kI * p.j_coupling * p.delta;
    const int half = p.n_sites / 2;
    sp.momenta.reserve(half);
    sp.energies.reserve(half);
    sp.cos_theta.reserve(half);
    for (int j = 1; j <= half; ++j) {
        const double k = (2.0 * j - 1.0) * kPi / (p.n_sites * p.lattice_a);
        const TwoLevelHamiltonian h = mode_hamiltonian(p, k);
        sp.momenta.push_back(k);
        sp.energies.push_back(complex_radius(h.r_vec));
        sp.cos_theta.push_back(bogoliubov_angle(p, k));
    }
    return sp;
}

Complex ground_phase_finite(const IsingParams& p) {
    p.validate();
    Complex sum = 0.0;
    const int half = p.n_sites / 2;
    for (int j = 1; j <= half; ++j) {
        const double k = (2.0 * j - 1.0) * kPi / (p.n_sites * p.lattice_a);
        sum += kPi * (1.0 - bogoliubov_angle(p, k));
    }
    return sum;
}

Complex overall_phase_finite(const IsingParams& p) {
    p.validate();
    Complex sum = 0.0;
    const int half = p.n_sites / 2;
    for (int j = 1; j <= half; ++j) {
        const double k = (2.0 * j - 1.0) * kPi / (p.n_sites * p.lattice_a);
        sum += 1.0 - bogoliubov_angle(p, k);
    }
    return (2.0 * kPi / p.n_sites) * sum;
}

Complex overall_phase_thermo(Complex g, const ThermoOptions& opts) {
    const double circle = std::abs(std::norm(g) - 1.0);
    if (circle <= opts.circle_tol) {
        throw ExceptionalCircleError(
            "overall_phase_thermo: g on the exceptional circle (integrand pole)");
    }
    const double tol = (circle < opts.band) ? opts.relaxed_tol : opts.rel_tol;
    const auto cos_theta = [g](double x) {
        const double cx = std::cos(x);
        return (g - cx) / sqrt_w(g, cx);
    };

    // split at the sqrt-argument's closest approach to the cut; inside the
    // flip region the continued branch is minus the principal one on (0, x*)
    if (std::abs(g.real()) < 1.0) {
        const double xs = std::acos(g.real());
        const double sgn = in_flip_region(g) ? +1.0 : -1.0;
        return kPi + sgn * integrate_gk(cos_theta, 0.0, xs, tol) -
               integrate_gk(cos_theta, xs, kPi, tol);
    }
    return kPi - integrate_gk(cos_theta, 0.0, kPi, tol);
}

Complex overall_phase_closed(Complex g) {
    if (std::abs(g + 1.0) < 1e-14) {
        throw SingularArgumentError("overall_phase_closed: g = -1");
    }
    if (std::abs(g) < 1e-3) {
        const Complex g2 = g * g;
        return kPi - kPi / 2.0 * g - kPi / 16.0 * g * g2 -
               3.0 * kPi / 128.0 * g * g2 * g2;
    }
    const Complex omm = one_minus_m2(g);
    if (std::abs(omm) < 1e-14) {
        throw SingularArgumentError("overall_phase_closed: g = 1 (K diverges)");
    }
    if (omm.imag() == 0.0 && omm.real() < 0.0) {
        throw ExceptionalCircleError("overall_phase_closed: g on the exceptional circle");
    }
    const Complex kk = complete_k_from_kc2(omm);
    const Complex ee = complete_e_from_kc2(omm);
    return kPi + (1.0 - g) / g * kk - (1.0 + g) / g * ee;
}

Complex ground_energy(Complex g, double delta, double j) {
    if (std::abs(g + 1.0) < 1e-14) {
        throw SingularArgumentError("ground_energy: g = -1");
    }
    const Complex omm = one_minus_m2(g);
    if (std::abs(omm) < 1e-14) {
        throw SingularArgumentError("ground_energy: g = 1");
    }
    if (omm.imag() == 0.0 && omm.real() < 0.0) {
        throw ExceptionalCircleError("ground_energy: g on the exceptional circle");
    }
    const Complex ee = complete_e_from_kc2(omm);
    return -kI * j * delta - (2.0 * j / kPi) * (1.0 + g) * ee;
}

QptDiagnosis exceptional_point(double delta, double a) {
    if (delta < 0.0 || delta > 1.0) {
        throw DomainError("exceptional_point: delta must lie in [0, 1]");
    }
    if (a <= 0.0) throw DomainError("exceptional_point: lattice spacing must be positive");

    QptDiagnosis d;
    d.h_c = std::sqrt(1.0 - delta * delta);
    d.k_c = std::asin(delta) / a;
    d.order = (delta > 0.0) ? QptOrder::First : QptOrder::Second;
    d.jump = 0.0;
    if (delta > 0.0 && d.h_c > 1e-3) {
        // sqrt-eta Richardson of the two-sided difference
        const double eta1 = std::min(0.02, 0.25 * d.h_c);
        const double eta2 = 0.25 * eta1;
        const auto two_sided = [&](double eta) {
            return overall_phase_thermo(Complex(d.h_c - eta, -delta)) -
                   overall_phase_thermo(Complex(d.h_c + eta, -delta));
        };
        d.jump = 2.0 * two_sided(eta2) - two_sided(eta1);
    }
    return d;
}

Complex magnetization_from_phase(Complex g) {
    return overall_phase_closed(g) / kPi - 1.0;
}

bool near_exceptional_circle(Complex g, double band) {
    return std::abs(std::norm(g) - 1.0) < band;
}

}  // namespace nhqg
