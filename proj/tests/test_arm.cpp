#include <cmath>
#include <random>

#include "doctest.h"

#include "aeroarm/arm.hpp"
#include "aeroarm/errors.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace aeroarm;

namespace {
constexpr double kPi = 3.141592653589793;

ArmParams unit_arm() {
    ArmParams p;
    p.l1 = 1.0;
    p.l2 = 1.0;
    p.lc1 = 0.5;
    p.lc2 = 0.5;
    p.m1 = 1.0;
    p.m2 = 1.0;
    p.i1 = 1.0 / 3.0;
    p.i2 = 1.0 / 3.0;
    p.g = 9.81;
    p.q1_limits = {-1e9, 1e9};
    p.q2_limits = {-1e9, 1e9};
    p.tau_max = 10.0;
    return p;
}
}  // namespace

TEST_CASE("forward kinematics, straight configurations") {
    const ArmParams p = unit_arm();

    const Vec2 up = forward_kinematics(p, 0.0, 0.0);
    CHECK(up.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(up.y == doctest::Approx(2.0).epsilon(1e-15));

    const Vec2 flat = forward_kinematics(p, kPi / 2.0, 0.0);
    CHECK(flat.x == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(flat.y == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("forward kinematics matches the vector-chain oracle") {
    ArmParams p = unit_arm();
    p.l1 = 0.5;
    p.l2 = 0.3;

    const Vec2 got = forward_kinematics(p, 0.7, -0.4);
    const Vec2 want = oracles::fk_vector_chain(p, 0.7, -0.4);
    CHECK(got.x == doctest::Approx(want.x).epsilon(1e-14));
    CHECK(got.y == doctest::Approx(want.y).epsilon(1e-14));

    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const ArmParams q = testutil::random_arm(rng);
        const JointState s = testutil::random_state(rng);
        const Vec2 a = forward_kinematics(q, s.q1, s.q2);
        const Vec2 b = oracles::fk_vector_chain(q, s.q1, s.q2);
        CHECK((a - b).norm() < 1e-12);
    }
}

TEST_CASE("inverse kinematics, exact configurations") {
    const ArmParams p = unit_arm();

    const auto full = inverse_kinematics(p, {0.0, 2.0});
    REQUIRE(full.has_value());
    CHECK(full->q1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(full->q2 == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_FALSE(inverse_kinematics(p, {0.0, 3.0}).has_value());
}

TEST_CASE("inverse kinematics round trip") {
    ArmParams p = unit_arm();
    p.l1 = 0.5;
    p.l2 = 0.3;

    const Vec2 target = forward_kinematics(p, 0.9, 0.6);
    const auto sol = inverse_kinematics(p, target);
    REQUIRE(sol.has_value());
    CHECK((forward_kinematics(p, sol->q1, sol->q2) - target).norm() < 1e-9);
}

TEST_CASE("FK/IK round trip across the reachable annulus") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const ArmParams p = testutil::random_arm(rng);
        for (int i = 0; i < 500; ++i) {
            const double r = p.inner_reach() + unit(rng) * (p.reach() - p.inner_reach());
            const double phi = 2.0 * kPi * unit(rng);
            const Vec2 target{r * std::sin(phi), r * std::cos(phi)};
            const auto sol = inverse_kinematics(p, target);
            REQUIRE(sol.has_value());
            CHECK((forward_kinematics(p, sol->q1, sol->q2) - target).norm() < 1e-9);
        }
    }
}

TEST_CASE("IK is unreachable exactly outside the annulus") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double eps = 1e-12;
    for (int trial = 0; trial < 2000; ++trial) {
        const ArmParams p = testutil::random_arm(rng);
        // Radii straddling both annulus boundaries, excluding the eps band
        // in which either answer is acceptable.
        const double inner = p.inner_reach();
        const double outer = p.reach();
        const double r = unit(rng) * 1.5 * outer;
        if (std::abs(r - inner) < 10 * eps || std::abs(r - outer) < 10 * eps) continue;
        const double phi = 2.0 * kPi * unit(rng);
        const Vec2 target{r * std::sin(phi), r * std::cos(phi)};
        const bool reachable = r >= inner && r <= outer;
        CHECK(inverse_kinematics(p, target).has_value() == reachable);
    }
}

TEST_CASE("elbow branch selection prefers q2 >= 0 and falls back to the mirror") {
    ArmParams p = unit_arm();
    p.l1 = 0.5;
    p.l2 = 0.4;
    const Vec2 target = forward_kinematics(p, 0.4, 0.9);

    SUBCASE("unconstrained: elbow-positive") {
        const auto sol = inverse_kinematics(p, target);
        REQUIRE(sol.has_value());
        CHECK(sol->q2 >= 0.0);
    }
    SUBCASE("elbow-positive branch excluded by limits: mirror solution") {
        p.q2_limits = {-3.0, 0.0};
        const auto sol = inverse_kinematics(p, target);
        REQUIRE(sol.has_value());
        CHECK(sol->q2 <= 0.0);
        CHECK((forward_kinematics(p, sol->q1, sol->q2) - target).norm() < 1e-9);
    }
    SUBCASE("both branches outside limits: unreachable") {
        p.q1_limits = {2.0, 3.0};  // target needs q1 well below 2
        const auto sol = inverse_kinematics(p, target);
        CHECK_FALSE(sol.has_value());
    }
}

TEST_CASE("mass matrix at q2 = pi/2") {
    const ArmParams p = unit_arm();
    const ArmMatrices mats = arm_matrices(p, {0.3, kPi / 2.0, 0.0, 0.0});
    // c2 = 0 removes every coupling term.
    CHECK(mats.m.a11 == doctest::Approx(p.i1 + p.i2 + p.m2 * p.l1 * p.l1).epsilon(1e-14));
    CHECK(mats.m.a12 == doctest::Approx(p.i2).epsilon(1e-14));
    CHECK(mats.m.a21 == doctest::Approx(p.i2).epsilon(1e-14));
    CHECK(mats.m.a22 == doctest::Approx(p.i2).epsilon(1e-14));
}

TEST_CASE("gravity torque vanishes in the vertical configuration") {
    const ArmParams p = unit_arm();
    const ArmMatrices mats = arm_matrices(p, {0.0, 0.0, 0.0, 0.0});
    CHECK(mats.grav.x == 0.0);
    CHECK(mats.grav.y == 0.0);
}

TEST_CASE("gravity torque vanishes when g = 0") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        const ArmParams p = testutil::random_arm(rng, /*gravity=*/false);
        const JointState s = testutil::random_state(rng);
        const ArmMatrices mats = arm_matrices(p, s);
        CHECK(mats.grav.x == 0.0);
        CHECK(mats.grav.y == 0.0);
    }
}

TEST_CASE("mass matrix is symmetric positive definite") {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 10000; ++i) {
        const ArmParams p = testutil::random_arm(rng);
        const JointState s = testutil::random_state(rng);
        const ArmMatrices mats = arm_matrices(p, s);
        CHECK(mats.m.a12 == mats.m.a21);  // exact
        double lo, hi;
        mats.m.symmetric_eigenvalues(lo, hi);
        CHECK(lo > 0.0);
    }
}

TEST_CASE("dM/dt - 2C is skew-symmetric (finite-difference oracle)") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 500; ++i) {
        const ArmParams p = testutil::random_arm(rng);
        const JointState s = testutil::random_state(rng);
        const ArmMatrices mats = arm_matrices(p, s);
        const Mat2 dm = oracles::mass_matrix_time_derivative_fd(p, s);
        const Mat2 skew = dm - mats.c * 2.0;
        // Skew-symmetric: S + S^T == 0.
        CHECK(std::abs(skew.a11) < 1e-4);
        CHECK(std::abs(skew.a22) < 1e-4);
        CHECK(std::abs(skew.a12 + skew.a21) < 1e-4);
    }
}

TEST_CASE("kinetic energy matches the velocity-chain oracle") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 1000; ++i) {
        const ArmParams p = testutil::random_arm(rng);
        const JointState s = testutil::random_state(rng);
        const Energy e = mechanical_energy(p, s);
        const double want = oracles::kinetic_energy_velocity_chain(p, s);
        CHECK(e.kinetic == doctest::Approx(want).epsilon(1e-9));
        CHECK(e.potential ==
              doctest::Approx(oracles::potential_energy_heights(p, s)).epsilon(1e-12));
    }
}

TEST_CASE("mechanical energy edge cases") {
    std::mt19937_64 rng(31);
    const ArmParams p = testutil::random_arm(rng);
    CHECK(mechanical_energy(p, {0.7, -0.3, 0.0, 0.0}).kinetic == 0.0);

    const ArmParams p0 = testutil::random_arm(rng, /*gravity=*/false);
    CHECK(mechanical_energy(p0, {0.7, -0.3, 1.0, 2.0}).potential == 0.0);
}

TEST_CASE("arm_step holds static equilibrium under exact gravity compensation") {
    ArmParams p = unit_arm();
    p.tau_max = 50.0;  // compensation must not be clamped
    const JointState s{0.8, -0.5, 0.0, 0.0};
    const Vec2 tau = arm_matrices(p, s).grav;
    JointState cur = s;
    for (int i = 0; i < 1000; ++i) cur = arm_step(p, cur, tau, {0.0, 0.0}, 1e-3);
    CHECK(std::abs(cur.q1 - s.q1) < 1e-9);
    CHECK(std::abs(cur.q2 - s.q2) < 1e-9);
    CHECK(std::abs(cur.dq1) < 1e-9);
    CHECK(std::abs(cur.dq2) < 1e-9);
}

TEST_CASE("arm_step is exactly inert without forces") {
    std::mt19937_64 rng(37);
    ArmParams p = testutil::random_arm(rng, /*gravity=*/false);
    const JointState s{1.1, 0.4, 0.0, 0.0};
    const JointState next = arm_step(p, s, {0.0, 0.0}, {0.0, 0.0}, 1e-3);
    CHECK(next.q1 == s.q1);
    CHECK(next.q2 == s.q2);
    CHECK(next.dq1 == 0.0);
    CHECK(next.dq2 == 0.0);
}

TEST_CASE("passive dynamics conserve mechanical energy") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> ang(-2.5, 2.5);
    for (int trial = 0; trial < 20; ++trial) {
        const ArmParams p = testutil::random_arm(rng);
        JointState s{ang(rng), ang(rng), 0.0, 0.0};
        const double e0 = mechanical_energy(p, s).total();
        const double scale =
            std::max(std::abs(e0), p.g * (p.m1 * p.lc1 + p.m2 * (p.l1 + p.lc2)));
        for (int i = 0; i < 1000; ++i) s = arm_step(p, s, {0.0, 0.0}, {0.0, 0.0}, 1e-3);
        const double e1 = mechanical_energy(p, s).total();
        CHECK(std::abs(e1 - e0) / scale < 1e-5);
    }
}

TEST_CASE("arm_step is deterministic") {
    const ArmParams p = unit_arm();
    const JointState s{0.3, 0.9, -0.2, 0.4};
    const JointState a = arm_step(p, s, {0.7, -0.3}, {0.1, -0.2}, 1e-3);
    const JointState b = arm_step(p, s, {0.7, -0.3}, {0.1, -0.2}, 1e-3);
    CHECK(a.q1 == b.q1);
    CHECK(a.q2 == b.q2);
    CHECK(a.dq1 == b.dq1);
    CHECK(a.dq2 == b.dq2);
}

TEST_CASE("arm_step clamps torque to tau_max") {
    ArmParams p = unit_arm();
    p.g = 0.0;
    const JointState s{0.0, 1.0, 0.0, 0.0};
    const JointState huge = arm_step(p, s, {1e9, -1e9}, {0.0, 0.0}, 1e-3);
    const JointState capped = arm_step(p, s, {p.tau_max, -p.tau_max}, {0.0, 0.0}, 1e-3);
    CHECK(huge.q1 == capped.q1);
    CHECK(huge.q2 == capped.q2);
    CHECK(huge.dq1 == capped.dq1);
    CHECK(huge.dq2 == capped.dq2);
}

TEST_CASE("arm_step clamps to joint limits and zeroes the rate") {
    ArmParams p = unit_arm();
    p.q1_limits = {-0.5, 0.5};
    p.q2_limits = {-0.5, 0.5};
    // Strong torque pushes q1 into the limit.
    JointState s{0.49, 0.0, 2.0, 0.0};
    s = arm_step(p, s, {p.tau_max, 0.0}, {0.0, 0.0}, 1e-2);
    CHECK(s.q1 == 0.5);
    CHECK(s.dq1 == 0.0);
}

TEST_CASE("base acceleration along -y acts like extra gravity") {
    // Accelerating the base downward at g in a g-field cancels gravity: the
    // disturbance torque must equal the gravity torque vector.
    std::mt19937_64 rng(43);
    for (int i = 0; i < 200; ++i) {
        const ArmParams p = testutil::random_arm(rng);
        const JointState s = testutil::random_state(rng);
        const Vec2 tau_d = base_disturbance_torque(p, s.q1, s.q2, {0.0, -p.g});
        const Vec2 grav = arm_matrices(p, s).grav;
        CHECK(tau_d.x == doctest::Approx(grav.x).epsilon(1e-12));
        CHECK(tau_d.y == doctest::Approx(grav.y).epsilon(1e-12));
    }
}

TEST_CASE("free fall of the base reproduces zero-g dynamics") {
    std::mt19937_64 rng(47);
    ArmParams p = testutil::random_arm(rng);
    ArmParams p0 = p;
    p0.g = 0.0;
    JointState a{0.9, -0.7, 0.5, -0.1};
    JointState b = a;
    for (int i = 0; i < 500; ++i) {
        a = arm_step(p, a, {0.2, 0.1}, {0.0, -p.g}, 1e-3);
        b = arm_step(p0, b, {0.2, 0.1}, {0.0, 0.0}, 1e-3);
    }
    CHECK(a.q1 == doctest::Approx(b.q1).epsilon(1e-12));
    CHECK(a.q2 == doctest::Approx(b.q2).epsilon(1e-12));
}

TEST_CASE("invalid parameters are rejected") {
    ArmParams p = unit_arm();
    p.l1 = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);

    p = unit_arm();
    p.lc1 = p.l1 * 1.5;
    CHECK_THROWS_AS(p.validate(), ConfigError);

    p = unit_arm();
    p.q1_limits = {1.0, -1.0};
    CHECK_THROWS_AS(p.validate(), ConfigError);

    CHECK_NOTHROW(unit_arm().validate());
}
