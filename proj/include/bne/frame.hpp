#pragma once

#include <array>
#include <cmath>

#include "bne/common.hpp"
#include "bne/grid.hpp"
#include "bne/quantum.hpp"

// Rescaling-velocity change of variables. The physical density f on the
// moving/stretching domain u + [-L/omega, L/omega]^d is stored as the
// rescaled density G on the fixed box [-pi,pi)^d:
//
//   f(v) = mu (pi omega / L)^d G(xi),   v = lambda u + L xi / (pi omega).
//
// The classical (non-rescaled) method is the frame (lambda, omega, mu) =
// (0, 1, (L/pi)^d), which makes f and G coincide pointwise; the rescaled
// method uses (lambda, mu) = (1, 1) with omega tracking sqrt(T).

namespace bne {

struct FrameState {
    int dim = 2;
    double half_width_L = 0.0;
    int lambda = 0;  // 0: fixed frame, 1: frame follows the bulk velocity
    double omega = 1.0;
    double mu = 1.0;
    std::array<double, 3> u{0.0, 0.0, 0.0};

    /// mu (pi omega / L)^d, the pointwise ratio f/G.
    double phys_scale() const { return mu * std::pow(pi * omega / half_width_L, dim); }
    /// Velocity-space cell volume (2L/(n omega))^d for an n-point grid.
    double dv(int n) const { return std::pow(2.0 * half_width_L / (n * omega), dim); }
    /// L / (pi omega): the xi -> v stretching factor.
    double stretch() const { return half_width_L / (pi * omega); }
};

inline FrameState classical_frame(int dim, double half_width_L) {
    if (dim != 2 && dim != 3) throw config_error("frame: dim must be 2 or 3");
    if (!(half_width_L > 0.0)) throw config_error("frame: L must be positive");
    FrameState fr;
    fr.dim = dim;
    fr.half_width_L = half_width_L;
    fr.lambda = 0;
    fr.omega = 1.0;
    fr.mu = std::pow(half_width_L / pi, dim);
    return fr;
}

inline FrameState rescaled_frame(int dim, double half_width_L, const std::array<double, 3>& u,
                                 double omega = 1.0) {
    if (dim != 2 && dim != 3) throw config_error("frame: dim must be 2 or 3");
    if (!(half_width_L > 0.0)) throw config_error("frame: L must be positive");
    if (!(omega > 0.0)) throw config_error("frame: omega must be positive");
    FrameState fr;
    fr.dim = dim;
    fr.half_width_L = half_width_L;
    fr.lambda = 1;
    fr.omega = omega;
    fr.mu = 1.0;
    fr.u = u;
    return fr;
}

/// Physical node v_j = lambda u + L xi_j / (pi omega) for flat row-major j.
inline std::array<double, 3> node_velocity(const FrameState& fr, const GridSpec& g,
                                           std::size_t flat) {
    std::array<double, 3> v{0.0, 0.0, 0.0};
    const double s = fr.stretch();
    for (int ax = g.dim - 1; ax >= 0; --ax) {
        const int j = signed_of(int(flat % g.n), g.n);
        v[ax] = fr.lambda * fr.u[ax] + s * g.xi_node(j);
        flat /= g.n;
    }
    return v;
}

inline void to_rescaled(const real_vec& f_values, const FrameState& fr, real_vec& G) {
    G.resize(f_values.size());
    const double s = 1.0 / fr.phys_scale();
    for (std::size_t i = 0; i < f_values.size(); ++i) G[i] = s * f_values[i];
}

inline void from_rescaled(const real_vec& G, const FrameState& fr, real_vec& f_values) {
    f_values.resize(G.size());
    const double s = fr.phys_scale();
    for (std::size_t i = 0; i < G.size(); ++i) f_values[i] = s * G[i];
}

// ---------------------------------------------------------------------------
// Scale factors of the rescaled collision operator: G evolves under
// Q_{alpha_eff} with a time prefactor c_pre,
//   alpha_eff = alpha mu (pi omega / L)^d,
//   c_pre    = c mu (pi omega / L)^{-gamma},
// where gamma is the homogeneity degree of the kernel's radial factor.
// ---------------------------------------------------------------------------
struct ScaleFactors {
    double alpha_eff = 0.0;
    double c_pre = 1.0;
};

inline ScaleFactors scale_factors(const FrameState& fr, const ParticleStatistics& stats,
                                  double gamma, double c) {
    ScaleFactors s;
    s.alpha_eff = stats.alpha() * fr.phys_scale();
    s.c_pre = c * fr.mu * std::pow(pi * fr.omega / fr.half_width_L, -gamma);
    return s;
}

// ---------------------------------------------------------------------------
// Moment rates of (rho, rho u, rho e) under a collision output. Q_pre must
// already carry the c_pre prefactor (assemble_Q does this); the quadrature
// weights then reduce to dxi * mu * sum w(xi_j) Q_j with
//   w = 1            for  d(rho)/dt,
//   w = v_j          for  d(rho u)/dt,
//   w = |v_j - u|^2/2 for  d(rho e)/dt,
// written in xi-variables, the energy weight using the (lambda-1) shift so
// that it is centered for a frame-following grid.
// ---------------------------------------------------------------------------
struct MomentRates {
    double drho = 0.0;
    std::array<double, 3> dmom{0.0, 0.0, 0.0};
    double dE = 0.0;  // d(rho e)/dt
};

inline MomentRates moment_rates(const real_vec& Q_pre, const FrameState& fr, const GridSpec& g,
                                const std::array<double, 3>& u_n) {
    if (Q_pre.size() != g.size()) throw config_error("moment_rates: field size mismatch");
    MomentRates r;
    const double stretch = fr.stretch();
    const int n = g.n;
    const int dim = g.dim;
    int jc[3] = {0, 0, 0};
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        const double q = Q_pre[flat];
        double w2 = 0.0;
        for (int ax = 0; ax < dim; ++ax) {
            const double xi = g.xi_node(signed_of(jc[ax], n));
            const double vmom = stretch * xi + fr.lambda * u_n[ax];
            const double vcen = stretch * xi + (fr.lambda - 1.0) * u_n[ax];
            r.dmom[ax] += vmom * q;
            w2 += vcen * vcen;
        }
        r.drho += q;
        r.dE += 0.5 * w2 * q;
        for (int d = dim - 1; d >= 0; --d) {
            if (++jc[d] < n) break;
            jc[d] = 0;
        }
    }
    const double wq = g.dxi() * fr.mu;
    r.drho *= wq;
    r.dE *= wq;
    for (int ax = 0; ax < dim; ++ax) r.dmom[ax] *= wq;
    return r;
}

// ---------------------------------------------------------------------------
// Velocity-scale update from fresh moments. Quantum statistics take
// omega = sqrt(T) with T from the mass/energy classification; the classical
// gas uses the full kinetic energy sqrt(T + |u|^2/d). The condensate branch
// recomputes T from the gas closure at z = 1,
//   T = [ 2 |alpha| rho e / (3 zeta(5/2) (2 pi)^{3/2}) ]^{2/5},
// which attributes the measured energy to the regular part.
// ---------------------------------------------------------------------------
struct OmegaUpdate {
    double omega = 1.0;
    double T = 0.0;
    double z = std::numeric_limits<double>::quiet_NaN();
    double m0 = 0.0;
    DegeneracyClass cls = DegeneracyClass::Regular;
    bool floored = false;       // T hit zero (saturation); omega clamped
    bool undetermined = false;  // super-critical Fermi state; omega kept
};

inline constexpr double omega_floor = 1e-6;

inline OmegaUpdate update_omega(const ParticleStatistics& stats, double rho,
                                const std::array<double, 3>& u, double e, double prev_omega) {
    OmegaUpdate out;
    if (stats.kind == StatsKind::Classical) {
        out.T = 2.0 * e / stats.dim;
        double u2 = 0.0;
        for (int ax = 0; ax < stats.dim; ++ax) u2 += u[ax] * u[ax];
        out.omega = std::sqrt(out.T + u2 / stats.dim);
        return out;
    }
    const DegeneracyReport rep = solve_from_mass_energy(stats, rho, e);
    out.cls = rep.cls;
    out.z = rep.z;
    switch (rep.cls) {
        case DegeneracyClass::Regular:
            out.T = rep.T;
            break;
        case DegeneracyClass::CondensateBE3D: {
            out.T = std::pow(2.0 * stats.abs_alpha() * rho * e /
                                 (3.0 * zeta(2.5) * std::pow(2.0 * pi, 1.5)),
                             0.4);
            out.m0 = rho - std::pow(2.0 * pi * out.T, 1.5) * zeta(1.5) / stats.abs_alpha();
            break;
        }
        case DegeneracyClass::SaturatedFD:
            out.T = 0.0;
            break;
        case DegeneracyClass::UndeterminedFD:
            out.undetermined = true;
            out.omega = prev_omega;
            return out;
    }
    out.omega = std::sqrt(out.T);
    if (!(out.omega >= omega_floor)) {
        out.omega = omega_floor;
        out.floored = true;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Divergence term of the rescaled equation: nabla_xi . (a(xi) G) with
//   a(xi) = (d omega/dt / omega) xi - lambda (pi omega / L) (du/dt),
// evaluated by forming the d physical-space products a_i(xi_j) G_j and
// applying the spectral derivative along each axis.
// ---------------------------------------------------------------------------
inline SpectralField divergence_term(const SpectralField& G, const FrameState& fr,
                                     double omega_rate, const std::array<double, 3>& u_rate) {
    if (!G.phys_ok) throw numeric_error("divergence_term: G has no physical values");
    const GridSpec& g = G.grid;
    const int n = g.n;
    const int dim = g.dim;
    const double c1 = omega_rate / fr.omega;
    std::array<double, 3> c2{0.0, 0.0, 0.0};
    for (int ax = 0; ax < dim; ++ax)
        c2[ax] = fr.lambda * (pi * fr.omega / fr.half_width_L) * u_rate[ax];

    SpectralField out = SpectralField::zeros(g, G.fft);
    SpectralField work(g, G.fft);
    for (int ax = 0; ax < dim; ++ax) {
        if (c1 == 0.0 && c2[ax] == 0.0) continue;
        int jc[3] = {0, 0, 0};
        for (std::size_t flat = 0; flat < g.size(); ++flat) {
            const double xi = g.xi_node(signed_of(jc[ax], n));
            work.phys[flat] = (c1 * xi - c2[ax]) * G.phys[flat];
            for (int d = dim - 1; d >= 0; --d) {
                if (++jc[d] < n) break;
                jc[d] = 0;
            }
        }
        work.mark_phys();
        SpectralField der = fourier_derivative(work, ax);
        der.inverse();
        for (std::size_t i = 0; i < g.size(); ++i) out.phys[i] += der.phys[i];
    }
    out.mark_phys();
    return out;
}

}  // namespace bne
