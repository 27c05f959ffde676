#pragma once

#include <Eigen/Core>
#include <functional>
#include <utility>
#include <vector>

#include "nhqg/two_level.hpp"

namespace nhqg {

// Point in the (possibly complex) parameter space of a Hamiltonian family.
using ParamPoint = std::vector<Complex>;

// User-supplied Hamiltonian family. Must return an N x N complex matrix,
// N <= 8, N constant over the family, and must be safe to evaluate from
// several threads at once.
using HamiltonianMap = std::function<Eigen::MatrixXcd(const ParamPoint&)>;

// Closed contour in parameter space, parameterized by s in [0, 1].
// sample() reduces s modulo 1 before calling the user function, so
// sample(0) == sample(1) holds exactly by construction.
class LoopPath {
public:
    LoopPath(int dimension, std::function<ParamPoint(double)> fn, int n_segments);

    ParamPoint sample(double s) const;
    int dimension() const { return dimension_; }
    int n_segments() const { return n_segments_; }
    bool closed() const { return true; }

private:
    int dimension_;
    std::function<ParamPoint(double)> fn_;
    int n_segments_;
};

enum class PhaseMethod { Analytic, WilsonLoop, Adiabatic, Curvature };

struct PhaseResult {
    Complex gamma{};
    PhaseMethod method{PhaseMethod::Analytic};
    int resolution{0};
    double error_estimate{0.0};  // 0 for analytic results
};

enum class Level { Ground, Excited };

enum class ZSign { Plus, Minus };

// Closed-form phase of a theta = const loop around the complex monopole:
//   ground:  gamma = q * pi * (1 - Z/R)
//   excited: gamma = q * pi * (1 + Z/R)
// The two levels sum to 2*pi*q exactly. q is the monopole charge (default 1).
PhaseResult monopole_phase(const ComplexVec3& v, Level level = Level::Ground,
                           double q = 1.0, double tol_degeneracy = 1e-10);

// Real part of the ground phase on the z = 0 section as z -> +/- 0:
//   pi                                    if r > eps
//   pi * (1 -/+ eps / sqrt(eps^2 - r^2))  if r < eps, sign by z_sign
double phase_limits_re(double r, ZSign z_sign, double eps);

// Imaginary part on the z = 0 section:
//   0                            if r < eps
//   pi * eps / sqrt(r^2 - eps^2) if r > eps
// Diverges as (r - eps)^(-1/2) at the exceptional ring.
double phase_limits_im(double r, double eps);

// Biorthogonal eigensystem of a general N x N complex matrix (N <= 8).
// left.row(i) * right.col(j) = delta_ij; levels sorted by (Re E, Im E).
struct NLevelEigensystem {
    Eigen::VectorXcd energies;
    Eigen::MatrixXcd right;  // columns are right eigenvectors
    Eigen::MatrixXcd left;   // rows are left eigenvectors
};

NLevelEigensystem nlevel_eigensystem(const Eigen::MatrixXcd& h);

// Discretized contour integral of the biorthogonal connection for one
// tracked level: the loop is sampled at n_segments points, the level is
// followed by maximal-overlap matching, and the phase is accumulated as the
// symmetric Pancharatnam quotient
//   gamma_n = (i/2) sum_j log( <u~_j|u_{j+1}> / <u~_{j+1}|u_j> ),
// each segment log in (-pi, pi]. The returned gamma is Richardson-
// extrapolated against the half-resolution value; error_estimate is
// |gamma_n - gamma_{n/2}| / 3.
//
// Throws LevelCrossingError if the spectral gap of the tracked level falls
// below gap_tol (relative to the local energy scale) or if tracking does
// not return to the starting branch on closure; NonConvergenceError if a
// segment phase exceeds pi/2, or if requested_tol > 0 and the error
// estimate exceeds it.
PhaseResult wilson_loop_phase(const HamiltonianMap& map, const LoopPath& loop,
                              int level, double gap_tol = 1e-8,
                              double requested_tol = 0.0);

// Sum of the per-level Wilson-loop phases over all N levels: the phase of
// the determinant line of the full eigenframe (the product-state phase).
PhaseResult ground_phase_sum(const HamiltonianMap& map, const LoopPath& loop,
                             double gap_tol = 1e-8, double requested_tol = 0.0);

// Curvature two-form component for the plane spanned by two parameter
// directions, by second-order perturbation theory with central-difference
// Hamiltonian derivatives:
//   F_ab = i sum_{m != l} [ <u~_l|dH_a|u_m><u~_m|dH_b|u_l> - (a <-> b) ]
//                          / (E_m - E_l)^2
// Antisymmetric in (a, b). step is the central-difference step along each
// direction.
Complex curvature_fd(const HamiltonianMap& map, const ParamPoint& point,
                     int level, const std::pair<ParamPoint, ParamPoint>& plane,
                     double step = 1e-5, double gap_tol = 1e-10);

// Two-level reduction of an N-level family near the (n, n+1) level pair:
// the biorthogonal projection onto their invariant subspace, written as
// lambda0*1 + r.sigma. Its complex radius equals (E_{n+1} - E_n)/2 with the
// levels ordered by real part. Throws AmbiguousPairError if another level
// is closer to the pair than the pair gap.
struct EffectiveTwoLevel {
    TwoLevelHamiltonian h_eff;
    int level_low{0};
    double pair_gap{0.0};
    double next_gap{0.0};
};

EffectiveTwoLevel effective_two_level(const HamiltonianMap& map,
                                      const ParamPoint& point, int n);

// Residual of the two-level reduction over a loop: the summed Wilson-loop
// phases of every level except the (n, n+1) pair.
PhaseResult residual_phase(const HamiltonianMap& map, const LoopPath& loop,
                           int n, double gap_tol = 1e-8);

// Convenience adapters.
HamiltonianMap two_level_map(std::function<TwoLevelHamiltonian(const ParamPoint&)> fn);

// theta = const field loop: s -> (r cos 2pi s, r sin 2pi s, z - i eps).
LoopPath field_circle_loop(double r, Complex z_complex, int n_segments);

}  // namespace nhqg
