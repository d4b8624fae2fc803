#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <memory>
#include <random>

#include "bne/equilibrium.hpp"

using namespace bne;
using Catch::Approx;

namespace {

struct RawMoments {
    double rho = 0.0;
    std::array<double, 3> u{0.0, 0.0, 0.0};
    double e = 0.0;
};

/// Direct physical-space moments of a sampled state: rectangle sums of
/// (1, v, |v - u|^2/2) f over the frame's nodes.
RawMoments measure(const DiscreteEquilibrium& de, const FrameState& fr, const GridSpec& g) {
    const double dv = fr.dv(g.n);
    const double scale = fr.phys_scale();
    RawMoments m;
    std::array<double, 3> mom{0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double f = de.field.phys[j] * scale;
        const auto v = node_velocity(fr, g, j);
        m.rho += f;
        for (int ax = 0; ax < g.dim; ++ax) mom[ax] += v[ax] * f;
    }
    m.rho *= dv;
    for (int ax = 0; ax < g.dim; ++ax) m.u[ax] = mom[ax] * dv / m.rho;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double f = de.field.phys[j] * scale;
        const auto v = node_velocity(fr, g, j);
        double s2 = 0.0;
        for (int ax = 0; ax < g.dim; ++ax) s2 += sq(v[ax] - m.u[ax]);
        m.e += 0.5 * s2 * f;
    }
    m.e *= dv / m.rho;
    return m;
}

}  // namespace

TEST_CASE("classification from moments") {
    const std::array<double, 3> u0{0.0, 0.0, 0.0};

    SECTION("classical moments give a maxwellian with T = 2e/d") {
        const ParticleStatistics cls2{StatsKind::Classical, 0.0, 2};
        const auto s2 = classify(cls2, 1.0, {0.3, -0.1, 0.0}, 1.0);
        const auto* c2 = std::get_if<ClassicalMaxwellian>(&s2);
        REQUIRE(c2 != nullptr);
        REQUIRE(c2->T == Approx(1.0).epsilon(1e-15));
        REQUIRE(c2->rho == 1.0);
        REQUIRE(c2->u[0] == 0.3);

        const ParticleStatistics cls3{StatsKind::Classical, 0.0, 3};
        const auto s3 = classify(cls3, 2.0, u0, 1.5);
        REQUIRE(std::get<ClassicalMaxwellian>(s3).T == Approx(1.0).epsilon(1e-15));
    }

    SECTION("sub-threshold fermi moments give a regular quantum maxwellian") {
        const double hs = *hbar_star(StatsKind::FermiDirac, 2, 1.0, 1.0);
        const ParticleStatistics fermi{StatsKind::FermiDirac, 0.5 * hs, 2};
        const auto s = classify(fermi, 1.0, u0, 1.0);
        const auto* q = std::get_if<QuantumMaxwellian>(&s);
        REQUIRE(q != nullptr);
        REQUIRE(std::isfinite(q->z));
        REQUIRE(q->z > 0.0);
        REQUIRE(q->T > 0.0);
    }

    SECTION("super-threshold 3D bose moments give a condensate") {
        const double hs = *hbar_star(StatsKind::BoseEinstein, 3, 1.0, 1.0);
        const ParticleStatistics bose{StatsKind::BoseEinstein, 1.05 * hs, 3};
        const auto s = classify(bose, 1.0, u0, 1.0);
        const auto* b = std::get_if<CondensateState>(&s);
        REQUIRE(b != nullptr);
        REQUIRE(b->m0 > 0.0);
        REQUIRE(b->T == Approx(2.0 * zeta(1.5) / (3.0 * zeta(2.5))).epsilon(1e-12));
    }

    SECTION("critical fermi moments saturate with the mass/energy-consistent radius") {
        const double hs = *hbar_star(StatsKind::FermiDirac, 2, 1.0, 1.0);
        const ParticleStatistics fermi{StatsKind::FermiDirac, hs, 2};
        const auto s = classify(fermi, 1.0, u0, 1.0);
        const auto* f = std::get_if<SaturatedState>(&s);
        REQUIRE(f != nullptr);
        REQUIRE(f->A == Approx(2.0).epsilon(1e-12));  // sqrt(2 e (d+2)/d), e = 1, d = 2
        REQUIRE(f->rho == 1.0);
    }

    SECTION("super-threshold fermi moments are undetermined") {
        const double hs = *hbar_star(StatsKind::FermiDirac, 2, 1.0, 1.0);
        const ParticleStatistics fermi{StatsKind::FermiDirac, 1.2 * hs, 2};
        const auto s = classify(fermi, 1.0, u0, 1.0);
        REQUIRE(std::holds_alternative<UndeterminedState>(s));
        REQUIRE(std::string(state_label(s)) == "undetermined");
    }
}

TEST_CASE("pointwise evaluation") {
    SECTION("classical maxwellian closed form") {
        const EquilibriumState s = ClassicalMaxwellian{2, 1.0, {0.0, 0.0, 0.0}, 1.0};
        REQUIRE(eval(s, {0.0, 0.0, 0.0}).value == Approx(1.0 / (2.0 * pi)).epsilon(1e-14));
        REQUIRE(eval(s, {1.0, 0.0, 0.0}).value ==
                Approx(std::exp(-0.5) / (2.0 * pi)).epsilon(1e-14));
        REQUIRE(eval(s, {0.0, 0.0, 0.0}).point_mass == 0.0);
    }

    SECTION("fermi quantum maxwellian at the center") {
        const ParticleStatistics fermi{StatsKind::FermiDirac, 3.0, 2};
        const double z = 16.5454;
        const EquilibriumState s = QuantumMaxwellian{fermi, z, 0.5, {0.0, 0.0, 0.0}};
        REQUIRE(eval(s, {0.0, 0.0, 0.0}).value ==
                Approx((1.0 / 9.0) * z / (1.0 + z)).epsilon(1e-12));
        REQUIRE(eval(s, {0.0, 0.0, 0.0}).value == Approx(0.10477).margin(1e-5));
    }

    SECTION("fermi density is bounded by hbar^{-d}") {
        std::mt19937_64 rng(77u);
        std::uniform_real_distribution<double> pick(-3.0, 3.0);
        for (double r : {0.3, 0.7, 0.95}) {
            const double hs = *hbar_star(StatsKind::FermiDirac, 2, 1.0, 1.0);
            const ParticleStatistics fermi{StatsKind::FermiDirac, r * hs, 2};
            const auto s = classify(fermi, 1.0, {0.0, 0.0, 0.0}, 1.0);
            const double bound = std::pow(fermi.hbar, -2);
            for (int trial = 0; trial < 200; ++trial) {
                const std::array<double, 3> v{pick(rng), pick(rng), 0.0};
                REQUIRE(eval(s, v).value < bound);
            }
        }
    }

    SECTION("saturated state is a two-valued indicator") {
        const ParticleStatistics fermi{StatsKind::FermiDirac, 3.0, 2};
        const EquilibriumState s = SaturatedState{fermi, 1.0, {0.5, 0.0, 0.0}, 2.0};
        REQUIRE(eval(s, {0.5, 0.0, 0.0}).value == std::pow(3.0, -2));
        REQUIRE(eval(s, {0.5, 1.9, 0.0}).value == std::pow(3.0, -2));
        REQUIRE(eval(s, {0.5, 2.1, 0.0}).value == 0.0);
        REQUIRE(eval(s, {-3.0, 0.0, 0.0}).value == 0.0);
    }

    SECTION("condensate regular part is singular at u but never NaN") {
        const ParticleStatistics bose{StatsKind::BoseEinstein, 3.0, 3};
        const std::array<double, 3> u{0.25, 0.0, -0.5};
        const EquilibriumState s = CondensateState{bose, 0.125, 1.0, u};
        const auto at_u = eval(s, u);
        REQUIRE(std::isinf(at_u.value));
        REQUIRE(at_u.value > 0.0);
        REQUIRE_FALSE(std::isnan(at_u.value));
        REQUIRE(at_u.point_mass == 0.125);
        const auto off = eval(s, {0.25, 0.1, -0.5});
        REQUIRE(std::isfinite(off.value));
        REQUIRE(off.value > 0.0);
        REQUIRE(off.point_mass == 0.0);
    }

    SECTION("undetermined states cannot be evaluated") {
        const ParticleStatistics fermi{StatsKind::FermiDirac, 5.0, 2};
        const EquilibriumState s = UndeterminedState{fermi, 1.0, 1.0, {0.0, 0.0, 0.0}};
        REQUIRE_THROWS_AS(eval(s, {0.0, 0.0, 0.0}), config_error);
    }
}

TEST_CASE("classical limit of the quantum maxwellian") {
    const std::array<double, 3> u0{0.0, 0.0, 0.0};
    const struct {
        StatsKind kind;
        int dim;
        double e;
    } cases[] = {
        {StatsKind::FermiDirac, 2, 1.0},
        {StatsKind::BoseEinstein, 2, 1.0},
        {StatsKind::FermiDirac, 3, 1.5},
        {StatsKind::BoseEinstein, 3, 1.5},
    };
    for (const auto& c : cases) {
        const ParticleStatistics cls{StatsKind::Classical, 0.0, c.dim};
        const auto limit = classify(cls, 1.0, u0, c.e);
        for (double hbar : {1e-2, 1e-3}) {
            const ParticleStatistics qs{c.kind, hbar, c.dim};
            const auto s = classify(qs, 1.0, u0, c.e);
            REQUIRE(std::holds_alternative<QuantumMaxwellian>(s));
            for (double r : {0.0, 0.5, 1.0, 2.0}) {
                const std::array<double, 3> v{r, 0.0, 0.0};
                const double got = eval(s, v).value;
                const double want = eval(limit, v).value;
                REQUIRE(got == Approx(want).epsilon(1e-3));
            }
        }
    }
}

TEST_CASE("grid discretization") {
    SECTION("classical maxwellian mass on a wide box") {
        const GridSpec g = build_grid(2, 64, 8.0, 1.0);
        auto fft = std::make_shared<Fft>(g);
        const FrameState fr = classical_frame(2, 8.0);
        const EquilibriumState s = ClassicalMaxwellian{2, 1.0, {0.0, 0.0, 0.0}, 1.0};
        const auto de = discretize(s, g, fft, fr);
        REQUIRE_FALSE(de.singular_node);
        REQUIRE(de.point_mass == 0.0);
        double mass = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) mass += de.field.phys[j];
        mass *= fr.phys_scale() * fr.dv(g.n);
        REQUIRE(mass == Approx(1.0).margin(1e-12));
    }

    SECTION("saturated samples take exactly two values") {
        const GridSpec g = build_grid(2, 32, 6.0, 1.0);
        auto fft = std::make_shared<Fft>(g);
        const FrameState fr = classical_frame(2, 6.0);
        const ParticleStatistics fermi{StatsKind::FermiDirac, 3.0, 2};
        const EquilibriumState s = SaturatedState{fermi, 1.0, {0.3, -0.2, 0.0}, 2.0};
        const auto de = discretize(s, g, fft, fr);
        const double level = std::pow(3.0, -2);
        std::size_t inside = 0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            const double f = de.field.phys[j] * fr.phys_scale();
            REQUIRE((f == 0.0 || f == level));
            inside += f != 0.0;
        }
        REQUIRE(inside > 0);
        REQUIRE(inside < g.size());
    }

    SECTION("quantum samples are mirror-symmetric about u on paired nodes") {
        const GridSpec g = build_grid(2, 16, 6.0, 1.0);
        auto fft = std::make_shared<Fft>(g);
        const FrameState fr = classical_frame(2, 6.0);
        const ParticleStatistics fermi{StatsKind::FermiDirac, 3.0, 2};
        const EquilibriumState s = QuantumMaxwellian{fermi, 2.0, 1.0, {0.0, 0.0, 0.0}};
        const auto de = discretize(s, g, fft, fr);
        const int n = g.n;
        for (int j0 = -n / 2 + 1; j0 < n / 2; ++j0)
            for (int j1 = -n / 2 + 1; j1 < n / 2; ++j1) {
                const std::size_t a = std::size_t(storage_of(j0, n)) * n + storage_of(j1, n);
                const std::size_t b = std::size_t(storage_of(-j0, n)) * n + storage_of(-j1, n);
                REQUIRE(de.field.phys[a] == Approx(de.field.phys[b]).epsilon(1e-14));
            }
    }

    SECTION("discretized moments reproduce the construction moments") {
        // Classical state in a drifting rescaled frame.
        {
            const GridSpec g = build_grid(2, 64, 7.0, 1.0);
            auto fft = std::make_shared<Fft>(g);
            const std::array<double, 3> u{0.3, -0.2, 0.0};
            const FrameState fr = rescaled_frame(2, 7.0, u, 1.0);
            const auto s = classify(ParticleStatistics{StatsKind::Classical, 0.0, 2}, 1.0, u, 1.0);
            const auto m = measure(discretize(s, g, fft, fr), fr, g);
            REQUIRE(m.rho == Approx(1.0).epsilon(1e-8));
            REQUIRE(m.u[0] == Approx(u[0]).margin(1e-8));
            REQUIRE(m.u[1] == Approx(u[1]).margin(1e-8));
            REQUIRE(m.e == Approx(1.0).epsilon(1e-8));
        }
        // Degenerate 2D Fermi gas, resting box.
        {
            const GridSpec g = build_grid(2, 64, 6.0, 1.0);
            auto fft = std::make_shared<Fft>(g);
            const FrameState fr = classical_frame(2, 6.0);
            const ParticleStatistics fermi{StatsKind::FermiDirac, 3.0, 2};
            const auto solve = solve_from_mass_temperature(fermi, 1.0, 0.5);
            const EquilibriumState s = QuantumMaxwellian{fermi, solve.z, 0.5, {0.0, 0.0, 0.0}};
            const auto m = measure(discretize(s, g, fft, fr), fr, g);
            REQUIRE(m.rho == Approx(1.0).epsilon(1e-8));
            REQUIRE(m.u[0] == Approx(0.0).margin(1e-8));
            REQUIRE(m.e == Approx(solve.e).epsilon(1e-8));
        }
        // 3D Bose gas below criticality.
        {
            const GridSpec g = build_grid(3, 64, 7.0, 1.0);
            auto fft = std::make_shared<Fft>(g);
            const FrameState fr = classical_frame(3, 7.0);
            const ParticleStatistics bose{StatsKind::BoseEinstein, 3.0, 3};
            const auto solve = solve_from_mass_temperature(bose, 0.5, 1.0);
            REQUIRE_FALSE(solve.condensate);
            const EquilibriumState s = QuantumMaxwellian{bose, solve.z, 1.0, {0.0, 0.0, 0.0}};
            const auto m = measure(discretize(s, g, fft, fr), fr, g);
            REQUIRE(m.rho == Approx(0.5).epsilon(1e-8));
            REQUIRE(m.e == Approx(solve.e).epsilon(1e-8));
        }
    }

    SECTION("condensate sampling reports the singular-node hazard") {
        const GridSpec g = build_grid(3, 8, 6.0, 1.0);
        auto fft = std::make_shared<Fft>(g);
        const FrameState fr = classical_frame(3, 6.0);
        const double hs = *hbar_star(StatsKind::BoseEinstein, 3, 1.0, 1.0);
        const ParticleStatistics bose{StatsKind::BoseEinstein, 1.05 * hs, 3};
        const auto s = classify(bose, 1.0, {0.0, 0.0, 0.0}, 1.0);
        REQUIRE(std::holds_alternative<CondensateState>(s));
        const auto de = discretize(s, g, fft, fr);
        REQUIRE(de.singular_node);
        REQUIRE(de.singular_index == 0);  // the origin is always a node
        REQUIRE(std::isinf(de.field.phys[0]));
        REQUIRE(de.point_mass == std::get<CondensateState>(s).m0);
        REQUIRE(de.point_mass > 0.0);
    }
}
