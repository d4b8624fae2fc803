#pragma once

// Observables of a discrete solution stored in the rescaled representation:
// moments, stress-energy tensor, classical/quantum entropy, entropy
// dissipation, lp norms, residuals and relaxation errors.  Every quadrature
// is the xi-variable form of the physical rectangle sum
//   dv * sum_j w(v_j) f_j   with   f = mu (pi omega / L)^d G,
// so values agree with direct physical-space sums to rounding error.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "bne/common.hpp"
#include "bne/frame.hpp"
#include "bne/grid.hpp"
#include "bne/quantum.hpp"

namespace bne {

struct Moments {
    double rho = 0.0;
    std::array<double, 3> u{0.0, 0.0, 0.0};
    double e = 0.0;   ///< internal energy per unit mass, centered
    double Ec = 0.0;  ///< kinetic energy, uncentered second moment
};

/// Macroscopic moments of G.  The measured u folds the frame drift back in
/// (lambda u + stretched first moment); the centered energy weight uses the
/// (lambda - 1) shift, so a frame-following grid is centered automatically
/// and a static grid centers on the measured u.  A zero field reports u = 0.
inline Moments moments(const real_vec& G, const FrameState& fr, const GridSpec& g) {
    if (G.size() != g.size()) throw config_error("moments: field size mismatch");
    Moments m;
    const double stretch = fr.stretch();
    const int n = g.n;
    const int dim = g.dim;
    const double wq = g.dxi() * fr.mu;

    double s0 = 0.0;
    std::array<double, 3> s1{0.0, 0.0, 0.0};
    int jc[3] = {0, 0, 0};
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        const double gv = G[flat];
        s0 += gv;
        for (int ax = 0; ax < dim; ++ax) s1[ax] += g.xi_node(signed_of(jc[ax], n)) * gv;
        for (int d = dim - 1; d >= 0; --d) {
            if (++jc[d] < n) break;
            jc[d] = 0;
        }
    }
    m.rho = wq * s0;
    if (m.rho == 0.0) return m;
    for (int ax = 0; ax < dim; ++ax) m.u[ax] = fr.lambda * fr.u[ax] + stretch * s1[ax] / s0;

    double se = 0.0, sc = 0.0;
    jc[0] = jc[1] = jc[2] = 0;
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        const double gv = G[flat];
        double w2c = 0.0, w2k = 0.0;
        for (int ax = 0; ax < dim; ++ax) {
            const double xi = g.xi_node(signed_of(jc[ax], n));
            const double vkin = stretch * xi + fr.lambda * fr.u[ax];
            const double vcen = stretch * xi + (fr.lambda - 1.0) * m.u[ax];
            w2k += vkin * vkin;
            w2c += vcen * vcen;
        }
        sc += w2c * gv;
        se += w2k * gv;
        for (int d = dim - 1; d >= 0; --d) {
            if (++jc[d] < n) break;
            jc[d] = 0;
        }
    }
    m.Ec = wq * se;
    m.e = 0.5 * wq * sc / m.rho;
    return m;
}

using StressMatrix = std::array<std::array<double, 3>, 3>;

/// Stress-energy tensor (1/rho) dv sum (v_d - u_d)(v_d' - u_d') f, centered
/// like the internal energy; its half-trace equals e.
inline StressMatrix stress_tensor(const real_vec& G, const FrameState& fr, const GridSpec& g) {
    StressMatrix t{};
    const Moments m = moments(G, fr, g);
    if (m.rho == 0.0) return t;
    const double stretch = fr.stretch();
    const int n = g.n;
    const int dim = g.dim;
    int jc[3] = {0, 0, 0};
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        const double gv = G[flat];
        double w[3] = {0.0, 0.0, 0.0};
        for (int ax = 0; ax < dim; ++ax)
            w[ax] = stretch * g.xi_node(signed_of(jc[ax], n)) + (fr.lambda - 1.0) * m.u[ax];
        for (int a = 0; a < dim; ++a)
            for (int b = a; b < dim; ++b) t[a][b] += w[a] * w[b] * gv;
        for (int d = dim - 1; d >= 0; --d) {
            if (++jc[d] < n) break;
            jc[d] = 0;
        }
    }
    const double wq = g.dxi() * fr.mu / m.rho;
    for (int a = 0; a < dim; ++a)
        for (int b = a; b < dim; ++b) {
            t[a][b] *= wq;
            t[b][a] = t[a][b];
        }
    return t;
}

/// Entropy sums can lose meaning mid-run; that is reported, not thrown,
/// because such runs continue.  Two kinds of trouble are distinguished:
/// slightly negative nodes are unavoidable truncation noise around sharp
/// data, so their terms are clamped to the x ln x limit and only counted,
/// while a Fermi node beyond the exclusion bound (f > hbar^{-d}) breaks the
/// meaning of the functional itself and clears `defined`.  The value is
/// always the sum of the admissible terms, so curves stay plottable across
/// an undefined stretch.
struct EntropyReport {
    double value = 0.0;
    bool defined = true;        ///< false iff the exclusion bound was broken
    std::size_t bad_nodes = 0;  ///< nodes where a logarithm had no argument
};

namespace detail {

/// x ln x extended by continuity to x = 0.
inline double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

}  // namespace detail

/// dv sum f ln f.  This sum is the negative of the physical entropy and is
/// nonincreasing along relaxation.  Negative nodes are clamped (counted in
/// bad_nodes); there is no exclusion bound, so the report is always defined.
inline EntropyReport entropy_classical(const real_vec& G, const FrameState& fr,
                                       const GridSpec& g) {
    if (G.size() != g.size()) throw config_error("entropy_classical: field size mismatch");
    EntropyReport r;
    const double scale = fr.phys_scale();
    double s = 0.0;
    for (std::size_t j = 0; j < G.size(); ++j) {
        const double f = scale * G[j];
        if (f < 0.0) {
            ++r.bad_nodes;
            continue;
        }
        s += detail::xlogx(f);
    }
    r.value = g.dxi() * fr.mu * s / scale;
    return r;
}

/// dv sum [ f ln f + ((1 - alpha f)/alpha) ln(1 - alpha f) ].  A saturated
/// Fermi node (f exactly hbar^{-d}) contributes zero by the x ln x limit.
/// Negative nodes are clamped; a Fermi node beyond the exclusion bound keeps
/// its f ln f part, loses its exclusion term, and clears `defined` (the
/// "maximum assumption" no longer holds, so the functional has no meaning).
inline EntropyReport entropy_quantum(const real_vec& G, const FrameState& fr, const GridSpec& g,
                                     const ParticleStatistics& stats) {
    if (G.size() != g.size()) throw config_error("entropy_quantum: field size mismatch");
    if (stats.kind == StatsKind::Classical)
        throw config_error("entropy_quantum: statistics carry no exclusion term");
    EntropyReport r;
    const double scale = fr.phys_scale();
    const double alpha = stats.alpha();
    double s = 0.0;
    for (std::size_t j = 0; j < G.size(); ++j) {
        const double f = scale * G[j];
        if (f < 0.0) {
            ++r.bad_nodes;
            continue;
        }
        const double q = 1.0 - alpha * f;
        if (q < 0.0) {
            ++r.bad_nodes;
            r.defined = false;
            s += detail::xlogx(f);
            continue;
        }
        s += detail::xlogx(f) + detail::xlogx(q) / alpha;
    }
    r.value = g.dxi() * fr.mu * s / scale;
    return r;
}

/// dv sum Q psi with psi = ln(f / (1 - alpha f)), the functional whose sign
/// drives the entropy decay.  Q_pre is the collision output in the rescaled
/// representation with the time-scale prefactor already applied, so physical
/// units only need one phys_scale (folded into dv * scale = dxi * mu).
/// Nodes where psi has no argument (f <= 0 or saturated) are skipped.
inline double entropy_dissipation(const real_vec& Q_pre, const real_vec& G, const FrameState& fr,
                                  const GridSpec& g, const ParticleStatistics& stats) {
    if (Q_pre.size() != g.size() || G.size() != g.size())
        throw config_error("entropy_dissipation: field size mismatch");
    const double scale = fr.phys_scale();
    const double alpha = stats.alpha();
    double s = 0.0;
    for (std::size_t j = 0; j < G.size(); ++j) {
        const double f = scale * G[j];
        const double q = 1.0 - alpha * f;
        if (f <= 0.0 || q <= 0.0) continue;
        s += Q_pre[j] * std::log(f / q);
    }
    return g.dxi() * fr.mu * s;
}

/// (dv sum |f|^p)^{1/p}, p in [1, inf).
inline double lp_norm(const real_vec& G, const FrameState& fr, const GridSpec& g, double p) {
    if (G.size() != g.size()) throw config_error("lp_norm: field size mismatch");
    if (!(p >= 1.0)) throw config_error("lp_norm: p must be >= 1");
    const double scale = fr.phys_scale();
    double s = 0.0;
    for (std::size_t j = 0; j < G.size(); ++j) s += std::pow(std::abs(scale * G[j]), p);
    return std::pow(fr.dv(g.n) * s, 1.0 / p);
}

/// max_j |Q_j| in physical units, the residual reported by the accuracy
/// tables.  Q_pre follows the assemble_Q convention.
inline double linf_residual(const real_vec& Q_pre, const FrameState& fr) {
    double m = 0.0;
    for (const double q : Q_pre) m = std::max(m, std::abs(q));
    return fr.phys_scale() * m;
}

/// Largest physical density on the grid — the condensation observable.
inline double max_density(const real_vec& G, const FrameState& fr) {
    double m = -std::numeric_limits<double>::infinity();
    for (const double gv : G) m = std::max(m, gv);
    return fr.phys_scale() * m;
}

/// dv sum |f - f_limit|: the l1 distance to a limit state sampled on the
/// same frame.
inline double relaxation_error(const real_vec& G, const real_vec& G_limit, const FrameState& fr,
                               const GridSpec& g) {
    if (G.size() != g.size() || G_limit.size() != g.size())
        throw config_error("relaxation_error: field size mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < G.size(); ++j) s += std::abs(G[j] - G_limit[j]);
    return g.dxi() * fr.mu * s;
}

}  // namespace bne
