#include "aeroarm/arm.hpp"

#include <algorithm>
#include <cmath>

#include "aeroarm/errors.hpp"

namespace aeroarm {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kAnnulusEps = 1e-12;

double wrap_pi(double a) {
    a = std::fmod(a + kPi, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a - kPi;
}

struct Accel {
    double ddq1;
    double ddq2;
};

// qdd = M^{-1} (tau - C qd - grav)
Accel joint_accel(const ArmParams& p, const JointState& s, const Vec2& tau) {
    const ArmMatrices mats = arm_matrices(p, s);
    const Vec2 qd{s.dq1, s.dq2};
    const Vec2 rhs = tau - mats.c * qd - mats.grav;
    const Vec2 qdd = mats.m.solve(rhs);
    return {qdd.x, qdd.y};
}

}  // namespace

void ArmParams::validate() const {
    const auto fail = [](const char* what) { throw ConfigError(std::string("arm: ") + what); };
    if (!(l1 > 0.0) || !(l2 > 0.0)) fail("link lengths must be positive");
    if (!(lc1 > 0.0) || lc1 > l1) fail("lc1 must lie in (0, l1]");
    if (!(lc2 > 0.0) || lc2 > l2) fail("lc2 must lie in (0, l2]");
    if (!(m1 > 0.0) || !(m2 > 0.0)) fail("masses must be positive");
    if (!(i1 > 0.0) || !(i2 > 0.0)) fail("inertias must be positive");
    if (!(g >= 0.0) || !std::isfinite(g)) fail("g must be finite and non-negative");
    if (!(tau_max > 0.0)) fail("tau_max must be positive");
    if (!(q1_limits.lo <= q1_limits.hi)) fail("q1 limits interval is empty");
    if (!(q2_limits.lo <= q2_limits.hi)) fail("q2 limits interval is empty");
}

Vec2 forward_kinematics(const ArmParams& params, double q1, double q2) {
    const double a2 = q1 + q2;
    return {params.l1 * std::sin(q1) + params.l2 * std::sin(a2),
            params.l1 * std::cos(q1) + params.l2 * std::cos(a2)};
}

namespace {

std::optional<JointAngles> solve_ik(const ArmParams& p, const Vec2& target, bool check_limits) {
    const double r2 = target.norm_sq();
    const double r = std::sqrt(r2);
    if (r < p.inner_reach() - kAnnulusEps || r > p.reach() + kAnnulusEps) return std::nullopt;

    double c2 = (r2 - p.l1 * p.l1 - p.l2 * p.l2) / (2.0 * p.l1 * p.l2);
    c2 = std::clamp(c2, -1.0, 1.0);
    const double elbow = std::acos(c2);  // in [0, pi]
    const double phi = std::atan2(target.x, target.y);  // angle from vertical

    // Elbow-positive branch first, then its mirror.
    for (const double q2 : {elbow, -elbow}) {
        const double psi = std::atan2(p.l2 * std::sin(q2), p.l1 + p.l2 * std::cos(q2));
        const double q1 = wrap_pi(phi - psi);
        if (!check_limits) return JointAngles{q1, q2};
        if (p.q1_limits.contains(q1) && p.q2_limits.contains(q2)) return JointAngles{q1, q2};
    }
    return std::nullopt;
}

}  // namespace

std::optional<JointAngles> inverse_kinematics(const ArmParams& params, const Vec2& target) {
    return solve_ik(params, target, /*check_limits=*/true);
}

std::optional<JointAngles> inverse_kinematics_unlimited(const ArmParams& params,
                                                        const Vec2& target) {
    return solve_ik(params, target, /*check_limits=*/false);
}

ArmMatrices arm_matrices(const ArmParams& params, const JointState& state) {
    const double s1 = std::sin(state.q1);
    const double s2 = std::sin(state.q2);
    const double c2 = std::cos(state.q2);
    const double s12 = std::sin(state.q1 + state.q2);
    const double a = params.m2 * params.l1 * params.lc2;  // coupling inertia

    ArmMatrices out;
    out.m.a11 = params.i1 + params.i2 + params.m2 * params.l1 * params.l1 + 2.0 * a * c2;
    out.m.a12 = params.i2 + a * c2;
    out.m.a21 = out.m.a12;
    out.m.a22 = params.i2;

    // Christoffel form; satisfies the dM/dt - 2C skew-symmetry identity.
    out.c.a11 = -a * s2 * state.dq2;
    out.c.a12 = -a * s2 * (state.dq1 + state.dq2);
    out.c.a21 = a * s2 * state.dq1;
    out.c.a22 = 0.0;

    // Gradient of V = m1 g lc1 cos q1 + m2 g (l1 cos q1 + lc2 cos(q1+q2)).
    const double g2 = -params.m2 * params.g * params.lc2 * s12;
    out.grav.x = -(params.m1 * params.lc1 + params.m2 * params.l1) * params.g * s1 + g2;
    out.grav.y = g2;
    return out;
}

Energy mechanical_energy(const ArmParams& params, const JointState& state) {
    const ArmMatrices mats = arm_matrices(params, state);
    const Vec2 qd{state.dq1, state.dq2};
    Energy e;
    e.kinetic = 0.5 * qd.dot(mats.m * qd);
    e.potential = params.m1 * params.g * params.lc1 * std::cos(state.q1) +
                  params.m2 * params.g *
                      (params.l1 * std::cos(state.q1) +
                       params.lc2 * std::cos(state.q1 + state.q2));
    return e;
}

Vec2 base_disturbance_torque(const ArmParams& params, double q1, double q2,
                             const Vec2& base_accel) {
    const double c1 = std::cos(q1);
    const double s1 = std::sin(q1);
    const double c12 = std::cos(q1 + q2);
    const double s12 = std::sin(q1 + q2);

    // Pseudo-forces -m_k * a at each center of mass, mapped through the CoM
    // Jacobians (columns are d p_com / d q_j with u(q) = (sin q, cos q)).
    const Vec2 f1 = base_accel * -params.m1;
    const Vec2 f2 = base_accel * -params.m2;

    const Vec2 j1_q1{params.lc1 * c1, -params.lc1 * s1};
    const Vec2 j2_q1{params.l1 * c1 + params.lc2 * c12, -params.l1 * s1 - params.lc2 * s12};
    const Vec2 j2_q2{params.lc2 * c12, -params.lc2 * s12};

    return {j1_q1.dot(f1) + j2_q1.dot(f2), j2_q2.dot(f2)};
}

JointState arm_step(const ArmParams& params, const JointState& state, const Vec2& torque,
                    const Vec2& base_accel_disturbance, double dt) {
    const Vec2 tau_applied{std::clamp(torque.x, -params.tau_max, params.tau_max),
                           std::clamp(torque.y, -params.tau_max, params.tau_max)};

    const auto deriv = [&](const JointState& s) {
        const Vec2 tau =
            tau_applied + base_disturbance_torque(params, s.q1, s.q2, base_accel_disturbance);
        const Accel a = joint_accel(params, s, tau);
        return JointState{s.dq1, s.dq2, a.ddq1, a.ddq2};
    };
    const auto advance = [](const JointState& s, const JointState& d, double h) {
        return JointState{s.q1 + d.q1 * h, s.q2 + d.q2 * h, s.dq1 + d.dq1 * h,
                          s.dq2 + d.dq2 * h};
    };

    const JointState k1 = deriv(state);
    const JointState k2 = deriv(advance(state, k1, dt / 2.0));
    const JointState k3 = deriv(advance(state, k2, dt / 2.0));
    const JointState k4 = deriv(advance(state, k3, dt));

    JointState next{
        state.q1 + dt / 6.0 * (k1.q1 + 2.0 * k2.q1 + 2.0 * k3.q1 + k4.q1),
        state.q2 + dt / 6.0 * (k1.q2 + 2.0 * k2.q2 + 2.0 * k3.q2 + k4.q2),
        state.dq1 + dt / 6.0 * (k1.dq1 + 2.0 * k2.dq1 + 2.0 * k3.dq1 + k4.dq1),
        state.dq2 + dt / 6.0 * (k1.dq2 + 2.0 * k2.dq2 + 2.0 * k3.dq2 + k4.dq2)};

    if (next.q1 < params.q1_limits.lo || next.q1 > params.q1_limits.hi) {
        next.q1 = params.q1_limits.clamp(next.q1);
        next.dq1 = 0.0;
    }
    if (next.q2 < params.q2_limits.lo || next.q2 > params.q2_limits.hi) {
        next.q2 = params.q2_limits.clamp(next.q2);
        next.dq2 = 0.0;
    }

    if (!next.finite()) throw NumericalBlowup("arm_step produced a non-finite state");
    return next;
}

}  // namespace aeroarm
