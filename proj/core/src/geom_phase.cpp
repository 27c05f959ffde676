#include "nhqg/geom_phase.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace nhqg {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

ParamPoint axpy(const ParamPoint& p, const ParamPoint& dir, double a) {
    ParamPoint q = p;
    for (std::size_t i = 0; i < q.size() && i < dir.size(); ++i) {
        q[i] += a * dir[i];
    }
    return q;
}

}  // namespace

LoopPath::LoopPath(int dimension, std::function<ParamPoint(double)> fn,
                   int n_segments)
    : dimension_(dimension), fn_(std::move(fn)), n_segments_(n_segments) {
    if (dimension_ < 1) throw DomainError("LoopPath: dimension must be >= 1");
    if (n_segments_ < 16) throw DomainError("LoopPath: n_segments must be >= 16");
    if (!fn_) throw DomainError("LoopPath: empty sample function");
}

ParamPoint LoopPath::sample(double s) const {
    s -= std::floor(s);  // [0, 1); sample(1) == sample(0) exactly
    return fn_(s);
}

NLevelEigensystem nlevel_eigensystem(const Eigen::MatrixXcd& h) {
    const auto n = h.rows();
    if (n < 1 || n > 8 || h.cols() != n) {
        throw DomainError("nlevel_eigensystem: matrix must be N x N with N <= 8");
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(h, true);
    if (solver.info() != Eigen::Success) {
        throw NonConvergenceError("nlevel_eigensystem: eigensolver failed");
    }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    const auto& ev = solver.eigenvalues();
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (ev(a).real() != ev(b).real()) return ev(a).real() < ev(b).real();
        return ev(a).imag() < ev(b).imag();
    });

    NLevelEigensystem es;
    es.energies.resize(n);
    es.right.resize(n, n);
    for (int i = 0; i < n; ++i) {
        es.energies(i) = ev(order[i]);
        es.right.col(i) = solver.eigenvectors().col(order[i]);
    }
    // rows of the inverse are the left eigenvectors, already normalized so
    // that left.row(i) * right.col(j) = delta_ij
    es.left = es.right.inverse();
    return es;
}

PhaseResult monopole_phase(const ComplexVec3& v, Level level, double q,
                           double tol_degeneracy) {
    const Complex r = complex_radius(v);
    if (std::abs(r) <= tol_degeneracy * v.scale() || v.scale() == 0.0) {
        throw DegeneracyError("monopole_phase: degenerate field (R ~ 0)",
                              classify_degeneracy(v, tol_degeneracy));
    }
    const Complex ct = v.z / r;
    PhaseResult res;
    res.method = PhaseMethod::Analytic;
    res.gamma = (level == Level::Ground) ? q * kPi * (1.0 - ct)
                                         : q * kPi * (1.0 + ct);
    return res;
}

double phase_limits_re(double r, ZSign z_sign, double eps) {
    if (r < 0.0 || eps < 0.0) throw DomainError("phase_limits_re: r, eps >= 0");
    if (std::abs(r - eps) <= 1e-12 * std::max(r, eps)) {
        throw ExceptionalPointError("phase_limits_re: r = eps");
    }
    if (r > eps) return kPi;
    const double root = eps / std::sqrt(eps * eps - r * r);
    return (z_sign == ZSign::Plus) ? kPi * (1.0 - root) : kPi * (1.0 + root);
}

double phase_limits_im(double r, double eps) {
    if (r < 0.0 || eps < 0.0) throw DomainError("phase_limits_im: r, eps >= 0");
    if (eps == 0.0) return 0.0;
    if (std::abs(r - eps) <= 1e-12 * std::max(r, eps)) {
        throw ExceptionalPointError("phase_limits_im: r = eps");
    }
    if (r < eps) return 0.0;
    return kPi * eps / std::sqrt(r * r - eps * eps);
}

namespace {

struct LoopCache {
    int n{0};
    std::vector<NLevelEigensystem> es;
};

LoopCache sample_loop(const HamiltonianMap& map, const LoopPath& loop, int n) {
    LoopCache cache;
    cache.n = n;
    cache.es.reserve(n);
    for (int j = 0; j < n; ++j) {
        cache.es.push_back(nlevel_eigensystem(map(loop.sample(double(j) / n))));
    }
    return cache;
}

// Follow one level around the cached loop by maximal-overlap matching.
// Returns the per-sample level index; throws if the gap closes or the
// tracking fails to return to its starting branch.
std::vector<int> track_level(const LoopCache& cache, int level, double gap_tol) {
    const int n = cache.n;
    const auto dim = cache.es[0].energies.size();
    if (level < 0 || level >= dim) {
        throw DomainError("wilson_loop_phase: level index out of range");
    }
    std::vector<int> idx(n);
    idx[0] = level;
    for (int j = 0; j < n; ++j) {
        const auto& cur = cache.es[j];
        // gap of the tracked level at this sample
        const Complex e = cur.energies(idx[j]);
        double scale = 0.0, gap = std::numeric_limits<double>::infinity();
        for (int m = 0; m < dim; ++m) {
            scale = std::max(scale, std::abs(cur.energies(m)));
            if (m != idx[j]) gap = std::min(gap, std::abs(cur.energies(m) - e));
        }
        if (gap <= gap_tol * std::max(scale, 1e-300)) {
            throw LevelCrossingError("wilson_loop_phase: gap below tolerance along loop");
        }
        if (j + 1 == n) break;
        const auto& nxt = cache.es[j + 1];
        int best = 0;
        double best_ov = -1.0;
        for (int m = 0; m < dim; ++m) {
            const double ov = std::abs((nxt.left.row(m) * cur.right.col(idx[j])).value());
            if (ov > best_ov) {
                best_ov = ov;
                best = m;
            }
        }
        idx[j + 1] = best;
    }
    // closure: tracking from the last sample must land back on the start
    const auto& last = cache.es[n - 1];
    const auto& first = cache.es[0];
    int best = 0;
    double best_ov = -1.0;
    for (int m = 0; m < dim; ++m) {
        const double ov =
            std::abs((first.left.row(m) * last.right.col(idx[n - 1])).value());
        if (ov > best_ov) {
            best_ov = ov;
            best = m;
        }
    }
    if (best != idx[0]) {
        throw LevelCrossingError(
            "wilson_loop_phase: tracking did not return to the starting level "
            "(branch monodromy around a degeneracy?)");
    }
    return idx;
}

// Symmetric Pancharatnam quotient over the tracked samples with the given
// stride (stride 2 gives the half-resolution phase on the same cache).
Complex quotient_phase(const LoopCache& cache, const std::vector<int>& idx,
                       int stride) {
    const int n = cache.n;
    Complex acc = 0.0;
    for (int j = 0; j < n; j += stride) {
        const int k = (j + stride) % n;
        const auto& a = cache.es[j];
        const auto& b = cache.es[k];
        const Complex of = (a.left.row(idx[j]) * b.right.col(idx[k])).value();
        const Complex ob = (b.left.row(idx[k]) * a.right.col(idx[j])).value();
        if (of == Complex{} || ob == Complex{}) {
            throw NonConvergenceError("wilson_loop_phase: vanishing segment overlap");
        }
        const Complex seg = std::log(of / ob);
        if (std::abs(seg.imag()) > 0.5 * kPi) {
            throw NonConvergenceError(
                "wilson_loop_phase: segment phase exceeds pi/2, raise n_segments");
        }
        acc += seg;
    }
    return 0.5 * kI * acc;
}

struct TrackedPhase {
    Complex fine;
    Complex coarse;
};

TrackedPhase tracked_phase(const LoopCache& cache, int level, double gap_tol) {
    const std::vector<int> idx = track_level(cache, level, gap_tol);
    TrackedPhase tp;
    tp.fine = quotient_phase(cache, idx, 1);
    tp.coarse = quotient_phase(cache, idx, 2);
    return tp;
}

PhaseResult richardson(const TrackedPhase& tp, int n) {
    PhaseResult res;
    res.method = PhaseMethod::WilsonLoop;
    res.resolution = n;
    res.gamma = tp.fine + (tp.fine - tp.coarse) / 3.0;
    res.error_estimate = std::abs(tp.fine - tp.coarse) / 3.0;
    return res;
}

}  // namespace

PhaseResult wilson_loop_phase(const HamiltonianMap& map, const LoopPath& loop,
                              int level, double gap_tol, double requested_tol) {
    int n = loop.n_segments();
    if (n % 2) ++n;  // even count so the half-resolution pass reuses samples
    const LoopCache cache = sample_loop(map, loop, n);
    const PhaseResult res = richardson(tracked_phase(cache, level, gap_tol), n);
    if (requested_tol > 0.0 && res.error_estimate > requested_tol) {
        throw NonConvergenceError(
            "wilson_loop_phase: error estimate above requested tolerance");
    }
    return res;
}

PhaseResult ground_phase_sum(const HamiltonianMap& map, const LoopPath& loop,
                             double gap_tol, double requested_tol) {
    int n = loop.n_segments();
    if (n % 2) ++n;
    const LoopCache cache = sample_loop(map, loop, n);
    const auto dim = cache.es[0].energies.size();

    PhaseResult res;
    res.method = PhaseMethod::WilsonLoop;
    res.resolution = n;
    for (int lvl = 0; lvl < dim; ++lvl) {
        const PhaseResult one = richardson(tracked_phase(cache, lvl, gap_tol), n);
        res.gamma += one.gamma;
        res.error_estimate += one.error_estimate;
    }
    if (requested_tol > 0.0 && res.error_estimate > requested_tol) {
        throw NonConvergenceError(
            "ground_phase_sum: error estimate above requested tolerance");
    }
    return res;
}

Complex curvature_fd(const HamiltonianMap& map, const ParamPoint& point,
                     int level, const std::pair<ParamPoint, ParamPoint>& plane,
                     double step, double gap_tol) {
    if (step <= 0.0) throw DomainError("curvature_fd: step must be positive");
    const NLevelEigensystem es = nlevel_eigensystem(map(point));
    const auto dim = es.energies.size();
    if (level < 0 || level >= dim) {
        throw DomainError("curvature_fd: level index out of range");
    }

    double scale = 0.0, gap = std::numeric_limits<double>::infinity();
    for (int m = 0; m < dim; ++m) {
        scale = std::max(scale, std::abs(es.energies(m)));
        if (m != level) {
            gap = std::min(gap, std::abs(es.energies(m) - es.energies(level)));
        }
    }
    if (gap <= gap_tol * std::max(scale, 1e-300)) {
        throw DegeneracyError("curvature_fd: degenerate at evaluation point",
                              {DegeneracyKind::ExceptionalPoint, gap / scale});
    }

    const Eigen::MatrixXcd da =
        (map(axpy(point, plane.first, step)) - map(axpy(point, plane.first, -step))) /
        (2.0 * step);
    const Eigen::MatrixXcd db =
        (map(axpy(point, plane.second, step)) - map(axpy(point, plane.second, -step))) /
        (2.0 * step);

    Complex f = 0.0;
    for (int m = 0; m < dim; ++m) {
        if (m == level) continue;
        const Complex de = es.energies(m) - es.energies(level);
        const Complex am = (es.left.row(level) * da * es.right.col(m)).value();
        const Complex bm = (es.left.row(m) * db * es.right.col(level)).value();
        const Complex bm2 = (es.left.row(level) * db * es.right.col(m)).value();
        const Complex am2 = (es.left.row(m) * da * es.right.col(level)).value();
        f += (am * bm - bm2 * am2) / (de * de);
    }
    return kI * f;
}

EffectiveTwoLevel effective_two_level(const HamiltonianMap& map,
                                      const ParamPoint& point, int n) {
    const NLevelEigensystem es = nlevel_eigensystem(map(point));
    const auto dim = es.energies.size();
    if (n < 0 || n + 1 >= dim) {
        throw DomainError("effective_two_level: level pair out of range");
    }
    const Complex e_lo = es.energies(n);
    const Complex e_hi = es.energies(n + 1);
    const double pair_gap = std::abs(e_hi - e_lo);

    double next_gap = std::numeric_limits<double>::infinity();
    for (int m = 0; m < dim; ++m) {
        if (m == n || m == n + 1) continue;
        next_gap = std::min(next_gap, std::abs(es.energies(m) - e_lo));
        next_gap = std::min(next_gap, std::abs(es.energies(m) - e_hi));
    }
    if (next_gap < pair_gap) {
        throw AmbiguousPairError(
            "effective_two_level: another level is closer than the pair gap");
    }

    EffectiveTwoLevel red;
    red.level_low = n;
    red.pair_gap = pair_gap;
    red.next_gap = std::isfinite(next_gap) ? next_gap : 0.0;
    // biorthogonal projection onto span{u_n, u_{n+1}} is diagonal in the
    // eigenbasis; (E_n - E_{n+1})/2 sits on the z axis
    red.h_eff.lambda0 = 0.5 * (e_lo + e_hi);
    red.h_eff.r_vec = {0.0, 0.0, 0.5 * (e_lo - e_hi)};
    return red;
}

PhaseResult residual_phase(const HamiltonianMap& map, const LoopPath& loop,
                           int n, double gap_tol) {
    int nn = loop.n_segments();
    if (nn % 2) ++nn;
    const LoopCache cache = sample_loop(map, loop, nn);
    const auto dim = cache.es[0].energies.size();
    if (n < 0 || n + 1 >= dim) {
        throw DomainError("residual_phase: level pair out of range");
    }

    PhaseResult res;
    res.method = PhaseMethod::WilsonLoop;
    res.resolution = nn;
    for (int lvl = 0; lvl < dim; ++lvl) {
        if (lvl == n || lvl == n + 1) continue;
        const PhaseResult one = richardson(tracked_phase(cache, lvl, gap_tol), nn);
        res.gamma += one.gamma;
        res.error_estimate += one.error_estimate;
    }
    return res;
}

HamiltonianMap two_level_map(std::function<TwoLevelHamiltonian(const ParamPoint&)> fn) {
    return [fn = std::move(fn)](const ParamPoint& p) {
        const auto m = fn(p).matrix();
        Eigen::MatrixXcd h(2, 2);
        h << m[0], m[1], m[2], m[3];
        return h;
    };
}

LoopPath field_circle_loop(double r, Complex z_complex, int n_segments) {
    return LoopPath(
        3,
        [r, z_complex](double s) {
            const double phi = 2.0 * kPi * s;
            return ParamPoint{r * std::cos(phi), r * std::sin(phi), z_complex};
        },
        n_segments);
}

}  // namespace nhqg
