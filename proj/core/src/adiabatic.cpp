#include "nhqg/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace nhqg {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

struct PairState {
    State2 psi{};
    State2 psit{};
};

PairState operator+(const PairState& a, const PairState& b) {
    return {{a.psi[0] + b.psi[0], a.psi[1] + b.psi[1]},
            {a.psit[0] + b.psit[0], a.psit[1] + b.psit[1]}};
}

PairState operator*(double c, const PairState& a) {
    return {{c * a.psi[0], c * a.psi[1]}, {c * a.psit[0], c * a.psit[1]}};
}

PairState rhs(const TwoLevelHamiltonian& h, const PairState& y) {
    const auto m = h.matrix();
    PairState d;
    d.psi[0] = -kI * (m[0] * y.psi[0] + m[1] * y.psi[1]);
    d.psi[1] = -kI * (m[2] * y.psi[0] + m[3] * y.psi[1]);
    d.psit[0] = kI * (y.psit[0] * m[0] + y.psit[1] * m[2]);
    d.psit[1] = kI * (y.psit[0] * m[1] + y.psit[1] * m[3]);
    return d;
}

Complex invariant(const PairState& y) { return braket(y.psit, y.psi); }

// Dormand-Prince 5(4) coefficients
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640,
                 e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

struct StepResult {
    PairState y;
    PairState k_last;  // FSAL stage, rhs at (t + h, y)
    double err_rel;    // scaled error estimate
    Complex inv_new;
};

StepResult dp_step(const TimeHamiltonian& h_of_t, double t, double h,
                   const PairState& y, const PairState& k1) {
    const PairState k2 = rhs(h_of_t(t + c2 * h), y + (h * a21) * k1);
    const PairState k3 =
        rhs(h_of_t(t + c3 * h), y + (h * a31) * k1 + (h * a32) * k2);
    const PairState k4 = rhs(h_of_t(t + c4 * h),
                             y + (h * a41) * k1 + (h * a42) * k2 + (h * a43) * k3);
    const PairState k5 =
        rhs(h_of_t(t + c5 * h), y + (h * a51) * k1 + (h * a52) * k2 +
                                    (h * a53) * k3 + (h * a54) * k4);
    const PairState k6 =
        rhs(h_of_t(t + h), y + (h * a61) * k1 + (h * a62) * k2 + (h * a63) * k3 +
                               (h * a64) * k4 + (h * a65) * k5);
    StepResult res;
    res.y = y + (h * b1) * k1 + (h * b3) * k3 + (h * b4) * k4 + (h * b5) * k5 +
            (h * b6) * k6;
    res.k_last = rhs(h_of_t(t + h), res.y);
    const PairState diff = (h * e1) * k1 + (h * e3) * k3 + (h * e4) * k4 +
                           (h * e5) * k5 + (h * e6) * k6 + (h * e7) * res.k_last;

    const double sc_psi = std::max({std::abs(y.psi[0]), std::abs(y.psi[1]),
                                    std::abs(res.y.psi[0]), std::abs(res.y.psi[1]),
                                    1e-300});
    const double sc_psit =
        std::max({std::abs(y.psit[0]), std::abs(y.psit[1]),
                  std::abs(res.y.psit[0]), std::abs(res.y.psit[1]), 1e-300});
    res.err_rel = std::max(
        {std::abs(diff.psi[0]) / sc_psi, std::abs(diff.psi[1]) / sc_psi,
         std::abs(diff.psit[0]) / sc_psit, std::abs(diff.psit[1]) / sc_psit});
    res.inv_new = invariant(res.y);
    return res;
}

// Tracked-level eigensystem bookkeeping: which of the two branches is
// continuously connected to the reference right eigenvector.
struct TrackedLevel {
    Complex energy;
    State2 u;
    State2 ut;
};

TrackedLevel pick_level(const BiorthogonalEigensystem& es, const State2& u_ref) {
    const double om = std::abs(braket(es.ut_minus, u_ref));
    const double op = std::abs(braket(es.ut_plus, u_ref));
    if (om >= op) return {es.e_minus, es.u_minus, es.ut_minus};
    return {es.e_plus, es.u_plus, es.ut_plus};
}

}  // namespace

Trajectory evolve_pair(const TimeHamiltonian& h_of_t, const Schedule& schedule,
                       double tol) {
    if (schedule.total_time <= 0.0) {
        throw DomainError("evolve_pair: total_time must be positive");
    }
    if (tol <= 0.0) throw DomainError("evolve_pair: tol must be positive");
    const double T = schedule.total_time;
    const double drift_budget = 10.0 * tol;
    const double h_min = 1e-12 * T;
    const long max_steps = 50'000'000;

    const BiorthogonalEigensystem es0 = eigensystem(h_of_t(0.0));
    PairState y{es0.u_minus, es0.ut_minus};
    State2 u_ref = es0.u_minus;
    Complex e_tracked = es0.e_minus;

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.psi.push_back(y.psi);
    traj.psi_tilde.push_back(y.psit);
    traj.dyn_phase.push_back(0.0);
    traj.acc_phase.push_back(0.0);

    Complex dyn = 0.0;
    Complex acc_log = 0.0;
    Complex v_prev = braket(es0.ut_minus, y.psi);  // = 1 by construction
    double drift_used = 0.0;

    double t = 0.0;
    double h = std::min(1e-3 * T, 0.1);
    PairState k1 = rhs(h_of_t(0.0), y);
    long steps = 0;

    while (t < T) {
        if (++steps > max_steps) {
            throw StiffnessError("evolve_pair: step count exceeded");
        }
        h = std::min(h, T - t);
        const StepResult st = dp_step(h_of_t, t, h, y, k1);

        // per-step budgets: local error tol*h (per unit time) and an equal
        // share of the invariant budget
        const double inv_change = std::abs(st.inv_new - 1.0) - drift_used;
        const bool ok_err = st.err_rel <= tol * h;
        const bool ok_inv = inv_change <= 0.5 * drift_budget * (h / T);
        if (ok_err && ok_inv) {
            const double t_new = t + h;
            // cumulative Simpson of the tracked energy on the accepted step
            const BiorthogonalEigensystem es_mid = eigensystem(h_of_t(t + 0.5 * h));
            const TrackedLevel mid = pick_level(es_mid, u_ref);
            const BiorthogonalEigensystem es_end = eigensystem(h_of_t(t_new));
            const TrackedLevel end = pick_level(es_end, u_ref);
            dyn += (h / 6.0) * (e_tracked + 4.0 * mid.energy + end.energy);

            // accumulated geometric log, dynamical part removed
            const Complex v_new = braket(end.ut, st.y.psi) * std::exp(kI * dyn);
            acc_log += -kI * std::log(v_new / v_prev);
            v_prev = v_new;

            u_ref = end.u;
            e_tracked = end.energy;
            y = st.y;
            k1 = st.k_last;
            t = t_new;
            drift_used = std::max(drift_used, std::abs(st.inv_new - 1.0));

            traj.times.push_back(t);
            traj.psi.push_back(y.psi);
            traj.psi_tilde.push_back(y.psit);
            traj.dyn_phase.push_back(dyn);
            traj.acc_phase.push_back(acc_log);

            if (drift_used > drift_budget) {
                throw ToleranceError("evolve_pair: invariant drift exceeded budget");
            }
        }
        // step-size update from the dominant violated (or satisfied) budget
        double fac = 0.9 * std::pow(tol * h / std::max(st.err_rel, 1e-300), 0.2);
        if (!ok_inv) fac = std::min(fac, 0.5);
        h *= std::clamp(fac, 0.2, 5.0);
        if (h < h_min) {
            throw StiffnessError(
                "evolve_pair: step size underflow (exceptional point nearby?)");
        }
    }
    traj.overlap_log = acc_log;
    traj.invariant_drift = drift_used;
    return traj;
}

PhaseResult extract_geometric_phase(const Trajectory& traj,
                                    const TimeHamiltonian& h_of_t) {
    if (traj.times.size() < 2 || traj.times.front() != 0.0) {
        throw DomainError("extract_geometric_phase: empty or malformed trajectory");
    }
    const std::size_t n = traj.times.size();

    // follow the level connected to the t = 0 ground branch
    State2 u_ref = eigensystem(h_of_t(0.0)).u_minus;
    Complex acc = 0.0;
    Complex v_prev = braket(eigensystem(h_of_t(0.0)).ut_minus, traj.psi[0]);
    for (std::size_t j = 1; j < n; ++j) {
        const BiorthogonalEigensystem es = eigensystem(h_of_t(traj.times[j]));
        const TrackedLevel lvl = pick_level(es, u_ref);
        const Complex v =
            braket(lvl.ut, traj.psi[j]) * std::exp(kI * traj.dyn_phase[j]);
        const Complex inc = std::log(v / v_prev);
        if (std::abs(inc.imag()) > 0.5 * kPi) {
            throw UnwrapError(
                "extract_geometric_phase: phase increment exceeds pi/2");
        }
        acc += inc;
        v_prev = v;
        u_ref = lvl.u;
    }

    PhaseResult res;
    res.method = PhaseMethod::Adiabatic;
    res.resolution = static_cast<int>(n - 1);
    res.gamma = -kI * acc;
    res.error_estimate = 0.0;
    return res;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
    os << "t,re_psi0,im_psi0,re_psi1,im_psi1,"
          "re_psit0,im_psit0,re_psit1,im_psit1,re_phase,im_phase\n";
    for (std::size_t j = 0; j < traj.times.size(); ++j) {
        os << traj.times[j];
        const auto& p = traj.psi[j];
        const auto& q = traj.psi_tilde[j];
        os << ',' << p[0].real() << ',' << p[0].imag() << ',' << p[1].real()
           << ',' << p[1].imag() << ',' << q[0].real() << ',' << q[0].imag()
           << ',' << q[1].real() << ',' << q[1].imag() << ','
           << traj.acc_phase[j].real() << ',' << traj.acc_phase[j].imag() << '\n';
    }
}

TimeHamiltonian loop_hamiltonian(const LoopPath& loop, double total_time,
                                 Complex lambda0) {
    if (loop.dimension() != 3) {
        throw DomainError("loop_hamiltonian: loop must have 3 field components");
    }
    return [loop, total_time, lambda0](double t) {
        const ParamPoint p = loop.sample(t / total_time);
        TwoLevelHamiltonian h;
        h.lambda0 = lambda0;
        h.r_vec = {p[0], p[1], p[2]};
        return h;
    };
}

}  // namespace nhqg
