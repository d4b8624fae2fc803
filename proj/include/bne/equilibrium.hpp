#pragma once

// Predicted large-time limit states of the relaxation dynamics: classical and
// quantum Maxwellians, the 3D Bose condensate (regular part plus a recorded
// point mass at the flow velocity), and the saturated Fermi indicator.  A
// state is classified from macroscopic moments, evaluated pointwise in
// velocity, or sampled onto a grid in the rescaled representation.

#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <variant>

#include "bne/common.hpp"
#include "bne/frame.hpp"
#include "bne/grid.hpp"
#include "bne/quantum.hpp"

namespace bne {

/// rho (2 pi T)^{-d/2} exp(-|v - u|^2 / (2T)).
struct ClassicalMaxwellian {
    int dim = 2;
    double rho = 1.0;
    std::array<double, 3> u{0.0, 0.0, 0.0};
    double T = 1.0;
};

/// (1/|alpha|) / (z^{-1} exp(|v - u|^2 / (2T)) + sgn alpha).
struct QuantumMaxwellian {
    ParticleStatistics stats;
    double z = 0.0;
    double T = 1.0;
    std::array<double, 3> u{0.0, 0.0, 0.0};
};

/// 3D Bose condensate: the z = 1 regular part plus a Dirac mass m0 at u.
/// The point mass is metadata only — a grid delta would be representation-
/// dependent, so discretizations sample just the regular part and the blow-up
/// of max f is the observable that tracks condensation instead.
struct CondensateState {
    ParticleStatistics stats;
    double m0 = 0.0;
    double T = 1.0;
    std::array<double, 3> u{0.0, 0.0, 0.0};
};

/// Saturated Fermi state: hbar^{-d} on the ball B(u, A), zero outside.
/// A = sqrt(2 e (d+2) / d) makes the indicator carry exactly (rho, u, e).
struct SaturatedState {
    ParticleStatistics stats;
    double rho = 1.0;
    std::array<double, 3> u{0.0, 0.0, 0.0};
    double A = 1.0;
};

/// Fermi moments beyond saturation: no limit state is predicted.  Kept as a
/// value (not an error) so callers can report it.
struct UndeterminedState {
    ParticleStatistics stats;
    double rho = 1.0;
    double e = 1.0;
    std::array<double, 3> u{0.0, 0.0, 0.0};
};

using EquilibriumState = std::variant<ClassicalMaxwellian, QuantumMaxwellian, CondensateState,
                                      SaturatedState, UndeterminedState>;

inline int state_dim(const EquilibriumState& s) {
    if (const auto* c = std::get_if<ClassicalMaxwellian>(&s)) return c->dim;
    if (const auto* q = std::get_if<QuantumMaxwellian>(&s)) return q->stats.dim;
    if (const auto* b = std::get_if<CondensateState>(&s)) return b->stats.dim;
    if (const auto* f = std::get_if<SaturatedState>(&s)) return f->stats.dim;
    return std::get<UndeterminedState>(s).stats.dim;
}

inline const char* state_label(const EquilibriumState& s) {
    if (std::holds_alternative<ClassicalMaxwellian>(s)) return "classical";
    if (std::holds_alternative<QuantumMaxwellian>(s)) return "quantum";
    if (std::holds_alternative<CondensateState>(s)) return "condensate";
    if (std::holds_alternative<SaturatedState>(s)) return "saturated";
    return "undetermined";
}

/// Pick the limit state predicted for moments (rho, u, e) under the given
/// statistics: classical -> Maxwellian with T = 2e/d; otherwise dispatch on
/// the degeneracy class of (rho, e).
inline EquilibriumState classify(const ParticleStatistics& stats, double rho,
                                 const std::array<double, 3>& u, double e) {
    if (!(rho > 0.0) || !(e > 0.0))
        throw config_error("classify: rho and e must be positive");
    if (stats.kind == StatsKind::Classical)
        return ClassicalMaxwellian{stats.dim, rho, u, 2.0 * e / stats.dim};
    const DegeneracyReport rep = solve_from_mass_energy(stats, rho, e);
    switch (rep.cls) {
        case DegeneracyClass::Regular:
            return QuantumMaxwellian{stats, rep.z, rep.T, u};
        case DegeneracyClass::CondensateBE3D:
            return CondensateState{stats, rep.m0, rep.T, u};
        case DegeneracyClass::SaturatedFD:
            return SaturatedState{stats, rho, u,
                                  std::sqrt(2.0 * e * (stats.dim + 2.0) / stats.dim)};
        default:
            return UndeterminedState{stats, rho, e, u};
    }
}

struct EvalResult {
    double value = 0.0;       ///< regular density at v (+inf at a z = 1 singular point)
    double point_mass = 0.0;  ///< Dirac weight sitting exactly at v (condensate center)
};

namespace detail {

inline double dist2(const std::array<double, 3>& v, const std::array<double, 3>& u, int dim) {
    double s = 0.0;
    for (int ax = 0; ax < dim; ++ax) s += sq(v[ax] - u[ax]);
    return s;
}

// (1/|alpha|) / (z^{-1} e^s + sgn alpha) rewritten as z / (expm1(s) + 1 + sgn z)
// so the Bose z -> 1 singularity at s = 0 divides by an exact zero and yields
// +inf rather than NaN, and nearby nodes keep full precision.
inline double quantum_density(const ParticleStatistics& stats, double z, double T, double s2) {
    const double sgn = stats.kind == StatsKind::FermiDirac ? 1.0 : -1.0;
    const double s = s2 / (2.0 * T);
    return (z / stats.abs_alpha()) / (std::expm1(s) + 1.0 + sgn * z);
}

}  // namespace detail

/// Closed-form density of a limit state at velocity v.  The condensate's
/// Dirac weight is reported separately and only when v coincides with u.
inline EvalResult eval(const EquilibriumState& state, const std::array<double, 3>& v) {
    EvalResult out;
    if (const auto* c = std::get_if<ClassicalMaxwellian>(&state)) {
        const double s2 = detail::dist2(v, c->u, c->dim);
        out.value =
            c->rho * std::pow(2.0 * pi * c->T, -0.5 * c->dim) * std::exp(-s2 / (2.0 * c->T));
        return out;
    }
    if (const auto* q = std::get_if<QuantumMaxwellian>(&state)) {
        out.value = detail::quantum_density(q->stats, q->z, q->T,
                                            detail::dist2(v, q->u, q->stats.dim));
        return out;
    }
    if (const auto* b = std::get_if<CondensateState>(&state)) {
        out.value =
            detail::quantum_density(b->stats, 1.0, b->T, detail::dist2(v, b->u, b->stats.dim));
        bool at_center = true;
        for (int ax = 0; ax < b->stats.dim; ++ax) at_center = at_center && v[ax] == b->u[ax];
        if (at_center) out.point_mass = b->m0;
        return out;
    }
    if (const auto* f = std::get_if<SaturatedState>(&state)) {
        const double s2 = detail::dist2(v, f->u, f->stats.dim);
        out.value = s2 <= sq(f->A) ? std::pow(f->stats.hbar, -f->stats.dim) : 0.0;
        return out;
    }
    throw config_error("eval: no closed-form density for an undetermined limit state");
}

/// A limit state sampled onto a grid, stored in the rescaled representation
/// (divide samples by the frame's phys_scale).
struct DiscreteEquilibrium {
    SpectralField field;
    double point_mass = 0.0;      ///< condensate Dirac weight, NOT added to the samples
    bool singular_node = false;   ///< a node hit a z = 1 singularity: samples contain +inf
    std::size_t singular_index = 0;
};

inline DiscreteEquilibrium discretize(const EquilibriumState& state, const GridSpec& g,
                                      std::shared_ptr<Fft> fft, const FrameState& fr) {
    if (fr.dim != g.dim) throw config_error("discretize: frame/grid dimension mismatch");
    if (state_dim(state) != g.dim) throw config_error("discretize: state/grid dimension mismatch");
    DiscreteEquilibrium out{SpectralField(g, std::move(fft))};
    const double inv_scale = 1.0 / fr.phys_scale();
    for (std::size_t j = 0; j < g.size(); ++j) {
        const EvalResult r = eval(state, node_velocity(fr, g, j));
        if (std::isinf(r.value) && !out.singular_node) {
            out.singular_node = true;  // downstream transforms of this field produce NaN
            out.singular_index = j;
        }
        out.field.phys[j] = r.value * inv_scale;
    }
    out.field.mark_phys();
    if (const auto* b = std::get_if<CondensateState>(&state)) out.point_mass = b->m0;
    return out;
}

}  // namespace bne
