#pragma once

#include <vector>

#include "nhqg/two_level.hpp"

namespace nhqg {

// Dissipative transverse-field chain parameters. The reduced per-mode field
// parameter g = h - i*delta is always derived, never stored.
struct IsingParams {
    double j_coupling{1.0};   // J > 0
    double h_field{0.0};      // transverse field, units of J
    double delta{0.0};        // decay rate, >= 0
    double phi{0.0};          // rotation angle of the field family, [0, 2pi)
    int n_sites{1024};        // even N
    double lattice_a{1.0};    // lattice spacing

    Complex g() const { return {h_field, -delta}; }
    void validate() const;
};

// Per-mode derived quantities on the half-integer momentum grid
// k_j = (2j-1) pi / (N a), j = 1 .. N/2.
struct ModeSpectrum {
    std::vector<double> momenta;
    std::vector<Complex> energies;   // eps(k) = 2J sqrt(g^2 - 2g cos(ka) + 1)
    std::vector<Complex> cos_theta;  // (g - cos ka)/sqrt(...), nhq-core branch
    Complex epsilon0;                // -i J delta
};

enum class QptOrder { First, Second };

struct QptDiagnosis {
    double h_c{0.0};
    double k_c{0.0};
    QptOrder order{QptOrder::Second};
    Complex jump{};  // discontinuity of the overall phase across h_c, 0 for Second
};

// H(k) = -iJ delta * 1 + R(k).sigma with
// R(k) = 2J (sin(ka) cos phi, sin(ka) sin phi, g - cos(ka)).
TwoLevelHamiltonian mode_hamiltonian(const IsingParams& p, double k);

// cos(theta_k) = (g - cos ka) / sqrt(g^2 - 2g cos(ka) + 1), the z/R of the
// mode Hamiltonian on the same branch as complex_radius.
// Throws DegeneracyError at an exceptional mode.
Complex bogoliubov_angle(const IsingParams& p, double k);

ModeSpectrum mode_spectrum(const IsingParams& p);

// Ground-state phase at finite N: sum over k > 0 of pi (1 - cos theta_k).
Complex ground_phase_finite(const IsingParams& p);

// Overall (per-spin) phase at finite N: (2 pi / N) sum_{k>0} (1 - cos theta_k).
// Converges to overall_phase_thermo as N grows wherever the per-mode
// principal branch agrees with the analytic continuation (everywhere except
// the region 0 < h < 1, h^2 + delta^2 > 1; see overall_phase_thermo).
Complex overall_phase_finite(const IsingParams& p);

struct ThermoOptions {
    double rel_tol{1e-10};     // quadrature tolerance
    double band{1e-3};         // |h^2+delta^2-1| band with relaxed tolerance
    double relaxed_tol{1e-6};  // tolerance inside the band
    double circle_tol{1e-12};  // hard-error distance to the circle
};

// Thermodynamic-limit overall phase,
//   gamma_g = int_0^pi (1 - (g - cos x)/sqrt(g^2 - 2g cos x + 1)) dx,
// evaluated as the analytic continuation across the h = 1 line: inside the
// region |Re g| < 1, |g| > 1 the sqrt argument crosses the negative real
// axis at x* = arccos(Re g) (its value there is 1 - |g|^2 < 0), and the
// continued branch is minus the principal one on (0, x*). This matches the
// closed form for all g off the circle |g| = 1 and has the finite jump
// across it. Throws ExceptionalCircleError on the circle.
Complex overall_phase_thermo(Complex g, const ThermoOptions& opts = {});

// Closed form of the same quantity:
//   gamma_g = pi + ((1-g)/g) K(m) - ((1+g)/g) E(m),  m = 2 sqrt(g)/(1+g),
// modulus convention, principal branches; |g| < 1e-3 switches to the series
// pi - (pi/2) g - (pi/16) g^3 - (3 pi/128) g^5 + O(g^7).
// Throws SingularArgumentError at g = -1, g = 1; ExceptionalCircleError on
// |g| = 1 elsewhere.
Complex overall_phase_closed(Complex g);

// Ground energy per spin, E_g = -iJ delta - (2J/pi)(1+g) E(2 sqrt(g)/(1+g)).
// The 1/pi factor makes gamma_g = pi (1 + dE_g/dh) hold identically.
Complex ground_energy(Complex g, double delta, double j = 1.0);

// Exceptional-point locator: h_c = sqrt(1 - delta^2), k_c = arcsin(delta)/a.
// order is First for delta > 0 (finite jump of the overall phase), Second
// at delta = 0. The jump is extrapolated from two-sided thermo values at
// eta and eta/4 (sqrt-eta Richardson); it is set to 0 for delta = 0 and at
// the delta = 1 endpoint where no interior two-sided limit exists.
QptDiagnosis exceptional_point(double delta, double a = 1.0);

// gamma_g / pi - 1: the per-spin magnetization the phase encodes.
Complex magnetization_from_phase(Complex g);

// true when | |g|^2 - 1 | < band (the relaxed-tolerance zone of the scans)
bool near_exceptional_circle(Complex g, double band = 1e-3);

}  // namespace nhqg
