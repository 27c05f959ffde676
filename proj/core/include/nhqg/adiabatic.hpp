#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "nhqg/geom_phase.hpp"
#include "nhqg/two_level.hpp"

namespace nhqg {

using TimeHamiltonian = std::function<TwoLevelHamiltonian(double)>;

enum class Ramp { Linear };

// Slow traversal of a closed parameter loop: s = t / total_time.
struct Schedule {
    LoopPath loop;
    double total_time{0.0};
    Ramp ramp{Ramp::Linear};
};

// Solution of the paired state/adjoint equations
//   i d/dt |psi>   = H(t) |psi>
//  -i d/dt <psit|  = <psit| H(t)
// sampled at every accepted integrator step. psit . psi is an exact
// invariant of the pair; its numerical drift is bounded by the integrator.
struct Trajectory {
    std::vector<double> times;          // strictly increasing, t0 = 0, tN = T
    std::vector<State2> psi;
    std::vector<State2> psi_tilde;
    std::vector<Complex> dyn_phase;     // cumulative int_0^t E_tracked dt'
    std::vector<Complex> acc_phase;     // accumulated geometric log (running gamma)
    Complex overlap_log{};              // final accumulated log increment sum
    double invariant_drift{0.0};        // max |psit.psi - 1| over the run
};

// Integrate the pair with an embedded Dormand-Prince 5(4) stepper. Local
// error is controlled at tol per unit time (per-component, relative to its
// own vector's scale), and each step's change of the psit.psi invariant is
// budgeted so the total drift stays below 10*tol.
// Initial state: the instantaneous ground biorthogonal pair at t = 0.
// Throws StiffnessError when the step size underflows (e.g. when the loop
// runs into an exceptional point), ToleranceError if the invariant drift
// exceeds its budget anyway.
Trajectory evolve_pair(const TimeHamiltonian& h_of_t, const Schedule& schedule,
                       double tol = 1e-10);

// Dynamical-phase-compensated overlap log, unwrapped across the stored
// steps:  gamma = -i log<u~(0)|psi(T)> + int_0^T E_-(t) dt.
// The followed level is the one continuously connected to the t = 0 ground
// level by maximal overlap. Throws UnwrapError if any per-step increment
// exceeds pi/2 in phase.
PhaseResult extract_geometric_phase(const Trajectory& traj,
                                    const TimeHamiltonian& h_of_t);

// CSV dump: t, Re/Im of both components of psi and psi_tilde, Re/Im of the
// accumulated phase.
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

// Hamiltonian family traversing a 3-component field loop once in time T,
// with the linear ramp s = t/T.
TimeHamiltonian loop_hamiltonian(const LoopPath& loop, double total_time,
                                 Complex lambda0 = Complex{});

}  // namespace nhqg
