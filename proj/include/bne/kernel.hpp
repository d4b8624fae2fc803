#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "bne/common.hpp"
#include "bne/grid.hpp"

// Separable decomposition of the truncated collision kernel modes,
//   beta(k,l) ~= C sum_p alpha_p(k) alpha'_p(l),
// over quadrature directions: closed forms for 2D Maxwellian molecules and 3D
// hard spheres, a Gauss-Legendre path for general VHS kernels, a brute-force
// reference quadrature, and a binary table cache.

namespace bne {

struct KernelTable {
    GridSpec grid;
    std::string kernel_id;
    int count_P = 0;
    double weight_C = 0.0;
    // row-major [count_P][n^d]; the k index is FFT storage order
    std::vector<double> alpha;
    std::vector<double> alpha_prime;
    std::vector<double> beta_diag;  // [n^d], = weight_C * sum_p alpha*alpha_prime

    const double* alpha_row(int p) const { return alpha.data() + std::size_t(p) * grid.size(); }
    const double* alpha_prime_row(int p) const {
        return alpha_prime.data() + std::size_t(p) * grid.size();
    }

    /// beta(k,l) reconstructed from the stored decomposition; flat storage indices.
    double beta(std::size_t flat_k, std::size_t flat_l) const {
        double s = 0.0;
        const std::size_t sz = grid.size();
        for (int p = 0; p < count_P; ++p)
            s += alpha[std::size_t(p) * sz + flat_k] * alpha_prime[std::size_t(p) * sz + flat_l];
        return weight_C * s;
    }
};

namespace detail {

/// phi^2_R(s) = 2R Sinc(Rs): transform of the unit radial profile in 2D.
inline double phi2(double R, double s) { return 2.0 * R * sinc(R * s); }
/// phi^3_R(s) = R^2 (2 Sinc(sR) - Sinc^2(sR/2)).
inline double phi3(double R, double s) {
    return R * R * (2.0 * sinc(s * R) - sq(sinc(s * R / 2.0)));
}
/// psi^3_R(s) = 2R^2 Sinc^2(Rs/2).
inline double psi3(double R, double s) { return 2.0 * R * R * sq(sinc(R * s / 2.0)); }

/// |l - (l.e)e| for an integer mode l, guarded against tiny negative rounding.
inline double perp_norm(const std::array<double, 3>& l, const std::array<double, 3>& e) {
    const double le = l[0] * e[0] + l[1] * e[1] + l[2] * e[2];
    const double l2 = l[0] * l[0] + l[1] * l[1] + l[2] * l[2];
    return std::sqrt(std::max(0.0, l2 - le * le));
}

/// Gauss-Legendre nodes/weights on [-1,1], cached per order.
inline const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n / 2 + n % 2; ++i) {
        double t = std::cos(pi * (i + 0.75) / (n + 0.5));  // Chebyshev initial guess
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / pp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * pp * pp);
    }
    return cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first->second;
}

/// Signed mode vector of a flat storage index (row-major).
template <int D>
inline std::array<double, D> signed_mode(const GridSpec& g, std::size_t flat) {
    std::array<double, D> k{};
    for (int ax = D - 1; ax >= 0; --ax) {
        k[ax] = signed_of(int(flat % g.n), g.n);
        flat /= g.n;
    }
    return k;
}

}  // namespace detail

/// VHS radial factor: a(rho) = 2^{d-1} C_Phi rho^{gamma+2-d}; with b == 1 this
/// reproduces 2D Maxwellian molecules (gamma = 0) and 3D hard spheres (gamma = 1).
inline std::function<double(double)> make_vhs_a(int dim, double gamma, double c_phi) {
    if (gamma < 0.0 || gamma > 1.0) throw config_error("vhs: gamma must lie in [0,1]");
    if (!(c_phi > 0.0)) throw config_error("vhs: C_Phi must be positive");
    const double pref = std::pow(2.0, dim - 1) * c_phi;
    const double expo = gamma + 2.0 - dim;
    return [pref, expo](double rho) { return pref * std::pow(rho, expo); };
}

/// 2D Maxwellian molecules: closed-form table with M rectangle-rule directions.
inline KernelTable build_maxwell2d(const GridSpec& grid, int M, double c_phi) {
    if (grid.dim != 2) throw config_error("build_maxwell2d: grid must be 2D");
    if (M <= 0) throw config_error("build_maxwell2d: M must be positive");
    KernelTable t;
    t.grid = grid;
    t.kernel_id = "maxwell2d";
    t.count_P = M;
    t.weight_C = pi / M;
    const std::size_t sz = grid.size();
    t.alpha.resize(std::size_t(M) * sz);
    t.alpha_prime.resize(std::size_t(M) * sz);
    const double R = grid.trunc_R;
    for (int p = 0; p < M; ++p) {
        const double th = p * pi / M;
        const double e[2] = {std::cos(th), std::sin(th)};
        const double ep[2] = {-e[1], e[0]};  // e_{theta + pi/2}
        for (std::size_t f = 0; f < sz; ++f) {
            const auto k = detail::signed_mode<2>(grid, f);
            t.alpha[std::size_t(p) * sz + f] =
                2.0 * c_phi * detail::phi2(R, k[0] * e[0] + k[1] * e[1]);
            t.alpha_prime[std::size_t(p) * sz + f] =
                detail::phi2(R, k[0] * ep[0] + k[1] * ep[1]);
        }
    }
    t.beta_diag.resize(sz);
    for (std::size_t f = 0; f < sz; ++f) t.beta_diag[f] = t.beta(f, f);
    return t;
}

/// 2D Maxwellian table exploiting the a ~ b symmetry: the 2M-direction plain
/// rule regrouped as M distinct angles carrying both orderings (e, e_perp) and
/// (e_perp, e), so only M angles are evaluated. Values match build_maxwell2d(2M).
inline KernelTable build_maxwell2d_symmetric(const GridSpec& grid, int M, double c_phi) {
    if (grid.dim != 2) throw config_error("build_maxwell2d_symmetric: grid must be 2D");
    if (M <= 0) throw config_error("build_maxwell2d_symmetric: M must be positive");
    KernelTable t;
    t.grid = grid;
    t.kernel_id = "maxwell2d-sym";
    t.count_P = 2 * M;
    t.weight_C = pi / (2 * M);
    const std::size_t sz = grid.size();
    t.alpha.resize(std::size_t(2 * M) * sz);
    t.alpha_prime.resize(std::size_t(2 * M) * sz);
    const double R = grid.trunc_R;
    for (int p = 0; p < M; ++p) {
        const double th = p * pi / (2 * M);
        const double e[2] = {std::cos(th), std::sin(th)};
        const double ep[2] = {-e[1], e[0]};
        double* a_lo = t.alpha.data() + std::size_t(p) * sz;
        double* ap_lo = t.alpha_prime.data() + std::size_t(p) * sz;
        double* a_hi = t.alpha.data() + std::size_t(M + p) * sz;
        double* ap_hi = t.alpha_prime.data() + std::size_t(M + p) * sz;
        for (std::size_t f = 0; f < sz; ++f) {
            const auto k = detail::signed_mode<2>(grid, f);
            const double fe = detail::phi2(R, k[0] * e[0] + k[1] * e[1]);
            const double fp = detail::phi2(R, k[0] * ep[0] + k[1] * ep[1]);
            a_lo[f] = 2.0 * c_phi * fe;
            ap_lo[f] = fp;
            a_hi[f] = 2.0 * c_phi * fp;
            ap_hi[f] = fe;
        }
    }
    t.beta_diag.resize(sz);
    for (std::size_t f = 0; f < sz; ++f) t.beta_diag[f] = t.beta(f, f);
    return t;
}

/// 3D hard spheres: closed-form table on the M1 x M2 rectangle rule in (theta, phi).
inline KernelTable build_hardsphere3d(const GridSpec& grid, int M1, int M2, double c_phi) {
    if (grid.dim != 3) throw config_error("build_hardsphere3d: grid must be 3D");
    if (M1 <= 0 || M2 <= 0) throw config_error("build_hardsphere3d: M1, M2 must be positive");
    KernelTable t;
    t.grid = grid;
    t.kernel_id = "hardsphere3d";
    t.count_P = M1 * M2;
    t.weight_C = pi * pi / (M1 * M2);
    const std::size_t sz = grid.size();
    t.alpha.resize(std::size_t(t.count_P) * sz);
    t.alpha_prime.resize(std::size_t(t.count_P) * sz);
    const double R = grid.trunc_R;
    for (int p = 0; p < M1; ++p) {
        const double th = p * pi / M1;
        const double sth = std::sin(th), cth = std::cos(th);
        for (int q = 0; q < M2; ++q) {
            const double ph = q * pi / M2;
            const std::array<double, 3> e = {sth * std::cos(ph), sth * std::sin(ph), cth};
            double* a = t.alpha.data() + std::size_t(q + M2 * p) * sz;
            double* ap = t.alpha_prime.data() + std::size_t(q + M2 * p) * sz;
            for (std::size_t f = 0; f < sz; ++f) {
                const auto k = detail::signed_mode<3>(grid, f);
                a[f] = 4.0 * c_phi * sth *
                       detail::phi3(R, k[0] * e[0] + k[1] * e[1] + k[2] * e[2]);
                ap[f] = detail::psi3(R, detail::perp_norm(k, e));
            }
        }
    }
    t.beta_diag.resize(sz);
    for (std::size_t f = 0; f < sz; ++f) t.beta_diag[f] = t.beta(f, f);
    return t;
}

namespace detail {

/// int_{-R}^{R} w(|rho|) rho^{d-2} e^{i rho s} drho by Gauss-Legendre, folded
/// onto [0, R] where the integrand 2 w(rho) rho^{d-2} cos(rho s) is smooth
/// (|rho| kinks the unfolded form at the origin and stalls the quadrature).
inline double radial_transform(const std::function<double(double)>& w, int dim, double R,
                               double s, int order) {
    const auto& [gx, gw] = gauss_legendre(order);
    double acc = 0.0;
    for (int i = 0; i < order; ++i) {
        const double rho = R * 0.5 * (gx[i] + 1.0);
        const double fac = (dim == 3) ? rho : 1.0;
        acc += gw[i] * w(rho) * fac * std::cos(rho * s);
    }
    return acc * R;  // 2 * (R/2) from folding and the affine map
}

/// psi for a general angular factor b: int_0^pi sin(t) phi3_{R,b}(s cos t) dt,
/// the form whose b == 1 limit is the hard-sphere closed form psi3.
inline double psi3_transform(const std::function<double(double)>& b, double R, double s,
                             int order) {
    const auto& [gx, gw] = gauss_legendre(order);
    double acc = 0.0;
    for (int i = 0; i < order; ++i) {
        const double t = pi * 0.5 * (gx[i] + 1.0);
        acc += gw[i] * std::sin(t) * radial_transform(b, 3, R, s * std::cos(t), order);
    }
    return acc * pi * 0.5;
}

inline KernelTable build_vhs_once(const GridSpec& grid, const std::function<double(double)>& a_fn,
                                  const std::function<double(double)>& b_fn, int order, int M1,
                                  int M2) {
    KernelTable t;
    t.grid = grid;
    t.kernel_id = "vhs";
    const std::size_t sz = grid.size();
    const double R = grid.trunc_R;
    if (grid.dim == 2) {
        t.count_P = M1;
        t.weight_C = pi / M1;
        t.alpha.resize(std::size_t(M1) * sz);
        t.alpha_prime.resize(std::size_t(M1) * sz);
        for (int p = 0; p < M1; ++p) {
            const double th = p * pi / M1;
            const double e[2] = {std::cos(th), std::sin(th)};
            const double ep[2] = {-e[1], e[0]};
            for (std::size_t f = 0; f < sz; ++f) {
                const auto k = signed_mode<2>(grid, f);
                t.alpha[std::size_t(p) * sz + f] =
                    radial_transform(a_fn, 2, R, k[0] * e[0] + k[1] * e[1], order);
                t.alpha_prime[std::size_t(p) * sz + f] =
                    radial_transform(b_fn, 2, R, k[0] * ep[0] + k[1] * ep[1], order);
            }
        }
    } else {
        t.count_P = M1 * M2;
        t.weight_C = pi * pi / (M1 * M2);
        t.alpha.resize(std::size_t(t.count_P) * sz);
        t.alpha_prime.resize(std::size_t(t.count_P) * sz);
        for (int p = 0; p < M1; ++p) {
            const double th = p * pi / M1;
            const double sth = std::sin(th), cth = std::cos(th);
            for (int q = 0; q < M2; ++q) {
                const double ph = q * pi / M2;
                const std::array<double, 3> e = {sth * std::cos(ph), sth * std::sin(ph), cth};
                double* a = t.alpha.data() + std::size_t(q + M2 * p) * sz;
                double* ap = t.alpha_prime.data() + std::size_t(q + M2 * p) * sz;
                for (std::size_t f = 0; f < sz; ++f) {
                    const auto k = signed_mode<3>(grid, f);
                    a[f] = sth * radial_transform(a_fn, 3, R,
                                                  k[0] * e[0] + k[1] * e[1] + k[2] * e[2], order);
                    ap[f] = psi3_transform(b_fn, R, perp_norm(k, e), order);
                }
            }
        }
    }
    t.beta_diag.resize(sz);
    for (std::size_t f = 0; f < sz; ++f) t.beta_diag[f] = t.beta(f, f);
    return t;
}

}  // namespace detail

inline constexpr int kernel_default_M_2d = 8;
inline constexpr int kernel_default_M_3d = 4;

/// General VHS kernel table via Gauss-Legendre quadrature of the radial (and,
/// in 3D, angular) transforms. Convergence is checked by doubling the order.
inline KernelTable build_vhs_quadrature(const GridSpec& grid,
                                        const std::function<double(double)>& a_fn,
                                        const std::function<double(double)>& b_fn,
                                        int quad_order = 64, int M1 = 0, int M2 = 0) {
    if (quad_order < 8) throw config_error("build_vhs_quadrature: quad_order must be >= 8");
    if (M1 <= 0) M1 = (grid.dim == 2) ? kernel_default_M_2d : kernel_default_M_3d;
    if (M2 <= 0) M2 = kernel_default_M_3d;
    KernelTable t = detail::build_vhs_once(grid, a_fn, b_fn, quad_order, M1, M2);
    const KernelTable check = detail::build_vhs_once(grid, a_fn, b_fn, 2 * quad_order, M1, M2);
    for (std::size_t i = 0; i < t.alpha.size(); ++i) {
        if (std::abs(t.alpha[i] - check.alpha[i]) > 1e-8 ||
            std::abs(t.alpha_prime[i] - check.alpha_prime[i]) > 1e-8)
            throw numeric_error("build_vhs_quadrature: quadrature not converged at this order");
    }
    return t;
}

/// Brute-force kernel mode, independent of the separable tables: nested
/// Gauss-Legendre over the direction angles and the radial transforms.
/// k/l are signed mode vectors (dim entries used).
inline double beta_reference(const GridSpec& grid, const std::function<double(double)>& a_fn,
                             const std::function<double(double)>& b_fn,
                             const std::array<double, 3>& k, const std::array<double, 3>& l,
                             int quad_order = 64) {
    const auto& [gx, gw] = detail::gauss_legendre(quad_order);
    const double R = grid.trunc_R;
    double acc = 0.0;
    if (grid.dim == 2) {
        for (int i = 0; i < quad_order; ++i) {
            const double th = pi * 0.5 * (gx[i] + 1.0);
            const double e[2] = {std::cos(th), std::sin(th)};
            acc += gw[i] * detail::radial_transform(a_fn, 2, R, k[0] * e[0] + k[1] * e[1],
                                                    quad_order) *
                   detail::radial_transform(b_fn, 2, R, -l[0] * e[1] + l[1] * e[0], quad_order);
        }
        return acc * pi * 0.5;
    }
    for (int i = 0; i < quad_order; ++i) {
        const double th = pi * 0.5 * (gx[i] + 1.0);
        const double sth = std::sin(th), cth = std::cos(th);
        for (int j = 0; j < quad_order; ++j) {
            const double ph = pi * 0.5 * (gx[j] + 1.0);
            const std::array<double, 3> e = {sth * std::cos(ph), sth * std::sin(ph), cth};
            acc += gw[i] * gw[j] * sth *
                   detail::radial_transform(a_fn, 3, R, k[0] * e[0] + k[1] * e[1] + k[2] * e[2],
                                            quad_order) *
                   detail::psi3_transform(b_fn, R, detail::perp_norm(l, e), quad_order);
        }
    }
    return acc * pi * pi * 0.25;
}

// ---------------------------------------------------------------------------
// Binary table cache: little-endian header + raw arrays.
// ---------------------------------------------------------------------------
namespace detail {
inline constexpr std::uint32_t kernel_cache_magic = 0x4B454E42;  // "BNEK"
inline constexpr std::uint32_t kernel_cache_version = 1;

template <typename T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
T get(std::istream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}
}  // namespace detail

inline void save_kernel_table(const KernelTable& t, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw config_error("cannot open kernel cache file for writing: " + path);
    detail::put(os, detail::kernel_cache_magic);
    detail::put(os, detail::kernel_cache_version);
    detail::put(os, std::int32_t(t.grid.dim));
    detail::put(os, std::int32_t(t.grid.n));
    detail::put(os, t.grid.half_width_L);
    detail::put(os, t.grid.support_S);
    detail::put(os, t.grid.trunc_R);
    detail::put(os, std::uint32_t(t.kernel_id.size()));
    os.write(t.kernel_id.data(), std::streamsize(t.kernel_id.size()));
    detail::put(os, std::int32_t(t.count_P));
    detail::put(os, t.weight_C);
    auto dump = [&](const std::vector<double>& v) {
        os.write(reinterpret_cast<const char*>(v.data()), std::streamsize(v.size() * 8));
    };
    dump(t.alpha);
    dump(t.alpha_prime);
    dump(t.beta_diag);
    if (!os) throw config_error("short write to kernel cache file: " + path);
}

inline KernelTable load_kernel_table(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw config_error("cannot open kernel cache file: " + path);
    if (detail::get<std::uint32_t>(is) != detail::kernel_cache_magic)
        throw config_error("not a kernel cache file: " + path);
    if (detail::get<std::uint32_t>(is) != detail::kernel_cache_version)
        throw config_error("unsupported kernel cache version: " + path);
    KernelTable t;
    t.grid.dim = detail::get<std::int32_t>(is);
    t.grid.n = detail::get<std::int32_t>(is);
    t.grid.half_width_L = detail::get<double>(is);
    t.grid.support_S = detail::get<double>(is);
    t.grid.trunc_R = detail::get<double>(is);
    t.grid.pow2 = (t.grid.n & (t.grid.n - 1)) == 0;
    const auto idlen = detail::get<std::uint32_t>(is);
    t.kernel_id.resize(idlen);
    is.read(t.kernel_id.data(), idlen);
    t.count_P = detail::get<std::int32_t>(is);
    t.weight_C = detail::get<double>(is);
    if (!is || t.grid.dim < 2 || t.grid.dim > 3 || t.grid.n <= 0 || t.count_P <= 0)
        throw config_error("corrupt kernel cache header: " + path);
    const std::size_t sz = t.grid.size();
    auto slurp = [&](std::vector<double>& v, std::size_t count) {
        v.resize(count);
        is.read(reinterpret_cast<char*>(v.data()), std::streamsize(count * 8));
    };
    slurp(t.alpha, std::size_t(t.count_P) * sz);
    slurp(t.alpha_prime, std::size_t(t.count_P) * sz);
    slurp(t.beta_diag, sz);
    if (!is) throw config_error("truncated kernel cache file: " + path);
    return t;
}

}  // namespace bne
