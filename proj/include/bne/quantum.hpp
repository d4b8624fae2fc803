#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <optional>

#include "bne/common.hpp"

// Special functions and thermodynamic solves for classical, Fermi-Dirac and
// Bose-Einstein gases: zeta, the complete quantum integrals
//   F_nu(z) = -Li_nu(-z),   B_nu(z) = Li_nu(z),
// Brent's root finder, fugacity/temperature solves from macroscopic moments,
// degeneracy classification and the onset threshold hbar*.

namespace bne {

enum class StatsKind { Classical, FermiDirac, BoseEinstein };

struct ParticleStatistics {
    StatsKind kind = StatsKind::Classical;
    double hbar = 0.0;  // unused for Classical
    int dim = 2;

    double alpha() const noexcept {
        switch (kind) {
            case StatsKind::FermiDirac: return std::pow(hbar, dim);
            case StatsKind::BoseEinstein: return -std::pow(hbar, dim);
            default: return 0.0;
        }
    }
    double abs_alpha() const noexcept { return std::abs(alpha()); }
};

inline double gamma_fn(double nu) {
    if (nu <= 0.0) throw config_error("gamma_fn: argument must be positive");
    return std::tgamma(nu);
}

// ---------------------------------------------------------------------------
// Riemann zeta via Euler-Maclaurin, valid for s > -1 (s != 1); arguments
// below that are mapped through the functional equation.
// ---------------------------------------------------------------------------
inline double zeta(double s) {
    if (s == 1.0) throw config_error("zeta: pole at s = 1");
    if (s < -1.0) {
        if (s == 2.0 * std::round(s / 2.0)) return 0.0;  // trivial zeros
        // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
        return std::pow(2.0, s) * std::pow(pi, s - 1.0) * std::sin(pi * s / 2.0) *
               std::tgamma(1.0 - s) * zeta(1.0 - s);
    }
    const int N = 50;
    double sum = 0.0;
    for (int k = 1; k < N; ++k) sum += std::pow(static_cast<double>(k), -s);
    const double Ns = std::pow(static_cast<double>(N), -s);
    sum += Ns * N / (s - 1.0) + Ns / 2.0;
    // Bernoulli correction terms B_2, B_4, ... B_12
    static constexpr std::array<double, 6> bern = {1.0 / 6, -1.0 / 30, 1.0 / 42,
                                                   -1.0 / 30, 5.0 / 66, -691.0 / 2730};
    double poch = s;              // (s)(s+1)...(s+2j-2), built incrementally
    double npow = Ns / N;         // N^{-s-1}
    double fact = 2.0;            // (2j)!
    for (std::size_t j = 0; j < bern.size(); ++j) {
        sum += bern[j] * poch * npow / fact;
        poch *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
        npow /= static_cast<double>(N) * N;
        fact *= (2.0 * j + 3.0) * (2.0 * j + 4.0);
    }
    return sum;
}

namespace detail {

/// Direct series Li_nu(x) = sum x^k / k^nu (x in (-1,1]; caller bounds terms).
inline double polylog_series(double nu, double x, std::size_t max_terms) {
    double sum = 0.0, term;
    double xk = 1.0;
    for (std::size_t k = 1; k <= max_terms; ++k) {
        xk *= x;
        term = xk / std::pow(static_cast<double>(k), nu);
        sum += term;
        if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum))) return sum;
    }
    return sum;
}

/// Li_2 on (0, 1) via series below 1/2 and Euler reflection above.
inline double dilog_pos(double z) {
    if (z <= 0.5) return polylog_series(2.0, z, 1000);
    return pi * pi / 6.0 - std::log(z) * std::log1p(-z) - polylog_series(2.0, 1.0 - z, 1000);
}

/// Expansion of Li_nu(e^{-beta}) about beta = 0 for non-integer nu
/// (used for nu = 3/2, 5/2): Gamma(1-nu) beta^{nu-1} + sum zeta(nu-k)(-beta)^k/k!.
/// Converges for |beta| < 2*pi; we use it only for beta <= ~0.12.
inline double polylog_near_one(double nu, double beta) {
    double sum = (beta > 0.0) ? std::tgamma(1.0 - nu) * std::pow(beta, nu - 1.0) : 0.0;
    double bk = 1.0;  // (-beta)^k / k!
    for (int k = 0; k <= 30; ++k) {
        const double term = zeta(nu - k) * bk;
        sum += term;
        if (k > 2 && std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum))) break;
        bk *= -beta / (k + 1.0);
    }
    return sum;
}

/// Composite Gauss-Legendre quadrature of the defining integral after t = u^2:
///   F_nu(z) = (1/Gamma(nu)) \int_0^inf 2 u^{2nu-1} / (e^{u^2}/z + 1) du
/// (smooth for every z > 0; the Fermi edge at u ~ sqrt(mu) has O(1) width in t).
inline double fermi_quadrature(double nu, double z) {
    static constexpr std::array<double, 20> gl_x = {
        0.003435700407452558, 0.018014036361043095, 0.043882785874337027,
        0.080441514088890588, 0.126834046769924603, 0.181973159636742488,
        0.244566499024586381, 0.313146955642290220, 0.386107074429177466,
        0.461736739433251331, 0.538263260566748669, 0.613892925570822534,
        0.686853044357709780, 0.755433500975413619, 0.818026840363257512,
        0.873165953230075397, 0.919558485911109412, 0.956117214125662973,
        0.981985963638956905, 0.996564299592547442};
    static constexpr std::array<double, 20> gl_w = {
        0.008807003569576103, 0.020300714900193556, 0.031336024167054569,
        0.041638370788352433, 0.050965059908620318, 0.059097265980759248,
        0.065844319224588346, 0.071048054659191187, 0.074586493236301996,
        0.076376693565362925, 0.076376693565362925, 0.074586493236301996,
        0.071048054659191187, 0.065844319224588346, 0.059097265980759248,
        0.050965059908620318, 0.041638370788352433, 0.031336024167054569,
        0.020300714900193556, 0.008807003569576103};
    const double mu = std::log(z);
    const double umax = std::sqrt(std::max(mu, 0.0) + 45.0);
    const int panels = std::max(16, static_cast<int>(std::ceil(umax / 0.5)));
    const double h = umax / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = p * h;
        for (std::size_t q = 0; q < gl_x.size(); ++q) {
            const double u = a + h * gl_x[q];
            const double t = u * u;
            // e^{t - mu} + 1 evaluated stably for large t
            const double denom = (t - mu > 500.0) ? std::exp(t - mu)
                                                  : std::exp(t) / z + 1.0;
            sum += gl_w[q] * 2.0 * std::pow(u, 2.0 * nu - 1.0) / denom;
        }
    }
    return sum * h / std::tgamma(nu);
}

/// Sommerfeld expansion of F_nu(e^mu) for large mu, terms through mu^{-6}.
inline double fermi_sommerfeld(double nu, double mu) {
    static constexpr double c2 = pi * pi / 6.0;
    static constexpr double c4 = 7.0 * pi * pi * pi * pi / 360.0;
    static constexpr double c6 = 31.0 * pi * pi * pi * pi * pi * pi / 15120.0;
    auto falling = [&](int m) {
        double p = 1.0;
        for (int i = 0; i < m; ++i) p *= (nu - i);
        return p;
    };
    const double mu2 = mu * mu;
    const double corr = 1.0 + c2 * falling(2) / mu2 + c4 * falling(4) / (mu2 * mu2) +
                        c6 * falling(6) / (mu2 * mu2 * mu2);
    return std::pow(mu, nu) / std::tgamma(nu + 1.0) * corr;
}

}  // namespace detail

inline constexpr double fermi_sommerfeld_switch_mu = 40.0;

/// Complete Fermi-Dirac integral F_nu(z) = -Li_nu(-z), z > 0.
inline double fermi_integral(double nu, double z) {
    if (!(z > 0.0)) throw config_error("fermi_integral: z must be positive");
    if (nu == 1.0) return std::log1p(z);
    if (nu == 2.0) {
        if (z <= 0.5) return -detail::polylog_series(2.0, -z, 1000);
        if (z <= 2.0)  // Landen: -Li_2(-z) = Li_2(z/(1+z)) + ln^2(1+z)/2
            return detail::dilog_pos(z / (1.0 + z)) + 0.5 * sq(std::log1p(z));
        // inversion: -Li_2(-z) = pi^2/6 + ln^2(z)/2 - Li_2(-1/z)
        return pi * pi / 6.0 + 0.5 * sq(std::log(z)) + detail::polylog_series(2.0, -1.0 / z, 1000);
    }
    if (z <= 0.5) return -detail::polylog_series(nu, -z, 1000);
    const double mu = std::log(z);
    if (mu >= fermi_sommerfeld_switch_mu) return detail::fermi_sommerfeld(nu, mu);
    return detail::fermi_quadrature(nu, z);
}

/// Complete Bose-Einstein integral B_nu(z) = Li_nu(z), 0 < z < 1
/// (z = 1 allowed for nu > 1).
inline double bose_integral(double nu, double z) {
    if (!(z > 0.0)) throw config_error("bose_integral: z must be positive");
    if (nu <= 1.0) {
        if (z >= 1.0) throw config_error("bose_integral: z must be < 1 for nu <= 1");
    } else if (z > 1.0) {
        throw config_error("bose_integral: z must be <= 1");
    }
    if (nu == 1.0) return -std::log1p(-z);
    if (nu == 2.0) return detail::dilog_pos(z);
    if (z <= 0.9) return detail::polylog_series(nu, z, 1u << 20);
    // boundary layer ~ sqrt(1-z): use the expansion about z = 1, which is
    // exact at z = 1 (a quadrature of the defining integral cannot resolve
    // the layer cheaply to 1e-12)
    return detail::polylog_near_one(nu, -std::log(z));
}

/// F_nu(e^mu) without forming e^mu, so chemical potentials past the overflow
/// point of exp stay usable.
inline double fermi_integral_mu(double nu, double mu) {
    if (mu >= fermi_sommerfeld_switch_mu) return detail::fermi_sommerfeld(nu, mu);
    return fermi_integral(nu, std::exp(mu));
}

/// K_nu for the configured statistics: F_nu (Fermi) or B_nu (Bose).
inline double quantum_integral(StatsKind kind, double nu, double z) {
    return kind == StatsKind::FermiDirac ? fermi_integral(nu, z) : bose_integral(nu, z);
}

// ---------------------------------------------------------------------------
// Brent's method.
// ---------------------------------------------------------------------------
inline double brent(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa * fb > 0.0) throw numeric_error("brent: no sign change on bracket");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                            0.5 * tol * std::max(1.0, std::abs(b));
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0 || std::abs(fb) <= tol) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {  // secant
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {  // inverse quadratic
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    throw numeric_error("brent: iteration cap reached");
}

// ---------------------------------------------------------------------------
// Degeneracy machinery.
// ---------------------------------------------------------------------------
enum class DegeneracyClass { Regular, CondensateBE3D, SaturatedFD, UndeterminedFD };

struct DegeneracyReport {
    double eta = 0.0;
    DegeneracyClass cls = DegeneracyClass::Regular;
    double z = std::numeric_limits<double>::quiet_NaN();
    double T = std::numeric_limits<double>::quiet_NaN();
    double m0 = 0.0;  // condensate mass (CondensateBE3D only)
};

/// sup of the admissible degeneracy interval; +infinity for 2D Bose.
inline double i_eq_upper(const ParticleStatistics& stats) {
    if (stats.kind == StatsKind::FermiDirac)
        return stats.dim == 2 ? 2.0 : (5.0 / 3.0) * std::sqrt(10.0 / pi);
    if (stats.kind == StatsKind::BoseEinstein) {
        if (stats.dim == 2) return std::numeric_limits<double>::infinity();
        return std::pow(zeta(1.5), 2.5) / std::pow(zeta(2.5), 1.5);
    }
    throw config_error("i_eq_upper: classical statistics have no degeneracy bound");
}

struct MassTemperatureSolve {
    double z = std::numeric_limits<double>::quiet_NaN();
    double e = 0.0;
    bool condensate = false;
};

namespace detail {

/// Solve g(mu) = 0 on the chemical-potential scale, bracket [-40, 200]
/// expanded geometrically on failure.
inline double solve_fermi_mu(const std::function<double(double)>& g) {
    double lo = -40.0, hi = 200.0;
    for (int tries = 0; tries < 8 && g(lo) * g(hi) > 0.0; ++tries) {
        lo *= 2.0;
        hi *= 2.0;
    }
    return brent(g, lo, hi, 1e-13);
}

}  // namespace detail

/// Given mass density and temperature, solve for the fugacity and specific
/// internal energy. 3D Bose states with more mass than the z=1 bound carry
/// the excess in a condensate: the returned z is 1 and e refers to the
/// regular (gas) part.
inline MassTemperatureSolve solve_from_mass_temperature(const ParticleStatistics& stats,
                                                        double rho, double T) {
    if (!(rho > 0.0) || !(T > 0.0))
        throw config_error("solve_from_mass_temperature: rho and T must be positive");
    MassTemperatureSolve out;
    const double nu = stats.dim / 2.0;
    if (stats.kind == StatsKind::Classical) {
        out.e = nu * T;
        return out;
    }
    const double target = rho * stats.abs_alpha() / std::pow(2.0 * pi * T, nu);
    if (stats.kind == StatsKind::BoseEinstein && stats.dim == 3 && target >= zeta(1.5)) {
        out.z = 1.0;
        out.condensate = true;
        out.e = nu * T * bose_integral(nu + 1.0, 1.0) / bose_integral(nu, 1.0);
        return out;
    }
    if (stats.kind == StatsKind::FermiDirac) {
        const double mu =
            detail::solve_fermi_mu([&](double m) { return fermi_integral_mu(nu, m) - target; });
        out.z = std::exp(mu);
        out.e = nu * T * fermi_integral_mu(nu + 1.0, mu) / fermi_integral_mu(nu, mu);
    } else {
        out.z = brent([&](double z) { return bose_integral(nu, z) - target; }, 1e-14,
                      1.0 - 1e-14, 1e-13);
        out.e = nu * T * bose_integral(nu + 1.0, out.z) / bose_integral(nu, out.z);
    }
    return out;
}

/// Given mass density and specific internal energy, classify the state and
/// solve for (z, T) where a regular equilibrium exists.
inline DegeneracyReport solve_from_mass_energy(const ParticleStatistics& stats, double rho,
                                               double e) {
    if (!(rho > 0.0) || !(e > 0.0))
        throw config_error("solve_from_mass_energy: rho and e must be positive");
    DegeneracyReport rep;
    const double d = stats.dim;
    const double nu = d / 2.0;
    if (stats.kind == StatsKind::Classical) {
        rep.eta = 0.0;
        rep.T = 2.0 * e / d;
        return rep;
    }
    rep.eta = stats.abs_alpha() * rho * std::pow(d / (4.0 * pi * e), nu);
    const double sup = i_eq_upper(stats);

    if (stats.kind == StatsKind::FermiDirac && std::abs(rep.eta - sup) <= 1e-9) {
        rep.cls = DegeneracyClass::SaturatedFD;
        rep.z = std::numeric_limits<double>::infinity();
        rep.T = 0.0;
        return rep;
    }
    if (rep.eta < sup) {
        // ratio map R(z) = K_nu(z)^{nu+1} / K_{nu+1}(z)^nu is increasing with
        // R -> 0 as z -> 0, so the bracketed solve below always applies
        const double target = stats.abs_alpha() * rho * std::pow(nu / (2.0 * pi * e), nu);
        double knu_at_root;
        if (stats.kind == StatsKind::FermiDirac) {
            auto g = [&](double mu) {
                return std::pow(fermi_integral_mu(nu, mu), nu + 1.0) /
                           std::pow(fermi_integral_mu(nu + 1.0, mu), nu) -
                       target;
            };
            const double mu = detail::solve_fermi_mu(g);
            rep.z = std::exp(mu);
            knu_at_root = fermi_integral_mu(nu, mu);
        } else {
            auto g = [&](double z) {
                return std::pow(bose_integral(nu, z), nu + 1.0) /
                           std::pow(bose_integral(nu + 1.0, z), nu) -
                       target;
            };
            rep.z = brent(g, 1e-14, 1.0 - 1e-14, 1e-13);
            knu_at_root = bose_integral(nu, rep.z);
        }
        rep.T = std::pow(stats.abs_alpha() * rho / knu_at_root, 1.0 / nu) / (2.0 * pi);
        rep.cls = DegeneracyClass::Regular;
        return rep;
    }
    if (stats.kind == StatsKind::BoseEinstein) {  // dim == 3 (2D sup is infinite)
        rep.cls = DegeneracyClass::CondensateBE3D;
        rep.z = 1.0;
        rep.T = 2.0 * e * zeta(1.5) / (3.0 * zeta(2.5));
        rep.m0 = rho - std::pow(2.0 * pi * rep.T, 1.5) * zeta(1.5) / stats.abs_alpha();
        return rep;
    }
    rep.cls = DegeneracyClass::UndeterminedFD;
    return rep;
}

/// Degeneracy-onset threshold: the hbar at which eta reaches sup I_eq.
/// nullopt for 2D Bose (no finite threshold) and classical statistics.
inline std::optional<double> hbar_star(StatsKind kind, int dim, double rho, double e) {
    if (!(rho > 0.0) || !(e > 0.0)) throw config_error("hbar_star: rho and e must be positive");
    if (kind == StatsKind::Classical) return std::nullopt;
    if (kind == StatsKind::BoseEinstein && dim == 2) return std::nullopt;
    ParticleStatistics probe{kind, 1.0, dim};
    const double kup = i_eq_upper(probe);
    return std::pow(kup * std::pow(4.0 * pi * e / dim, dim / 2.0) / rho, 1.0 / dim);
}

}  // namespace bne
