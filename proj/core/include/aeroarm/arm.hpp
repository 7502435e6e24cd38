#pragma once

#include <optional>

#include "aeroarm/geometry.hpp"

namespace aeroarm {

// Closed angle interval [lo, hi], radians.
struct AngleLimits {
    double lo = -3.141592653589793;
    double hi = 3.141592653589793;

    constexpr bool contains(double q) const { return q >= lo && q <= hi; }
    constexpr double clamp(double q) const { return q < lo ? lo : (q > hi ? hi : q); }
    constexpr double width() const { return hi - lo; }
};

// Physical constants of the two-link overhead manipulator.
//
// Angles are measured from the body-vertical (up) axis; q2 is relative to
// link 1. Link inertias i1, i2 are taken about the link's own joint.
struct ArmParams {
    double l1 = 0.5;    // link lengths (m)
    double l2 = 0.4;
    double lc1 = 0.25;  // joint-to-center-of-mass distances (m)
    double lc2 = 0.2;
    double m1 = 1.2;    // link masses (kg)
    double m2 = 1.0;
    double i1 = 0.1;    // link inertias about their joints (kg m^2)
    double i2 = 0.053;
    double g = 9.81;    // gravitational acceleration (m/s^2)
    AngleLimits q1_limits{-1.2, 1.2};
    AngleLimits q2_limits{0.0, 2.8};
    double tau_max = 2.0;  // per-joint torque magnitude bound (N m)

    double reach() const { return l1 + l2; }
    double inner_reach() const { return std::abs(l1 - l2); }

    // Throws ConfigError when any invariant is violated.
    void validate() const;
};

// Joint angles (rad) and rates (rad/s).
struct JointState {
    double q1 = 0.0;
    double q2 = 0.0;
    double dq1 = 0.0;
    double dq2 = 0.0;

    bool finite() const {
        return std::isfinite(q1) && std::isfinite(q2) && std::isfinite(dq1) && std::isfinite(dq2);
    }
};

// Manipulator equation terms at one state: M(q) qdd + C(q,qd) qd + grav(q) = tau.
// grav is the configuration-space gradient of the potential energy, so the
// passive system (tau = 0) conserves T + V.
struct ArmMatrices {
    Mat2 m;      // mass matrix (kg m^2)
    Mat2 c;      // Coriolis matrix, Christoffel form (kg m^2 / s)
    Vec2 grav;   // gravity torque vector (N m)
};

struct JointAngles {
    double q1 = 0.0;
    double q2 = 0.0;
};

struct Energy {
    double kinetic = 0.0;    // J
    double potential = 0.0;  // J
    double total() const { return kinetic + potential; }
};

// End-effector position relative to the arm base:
//   x = l1 sin q1 + l2 sin(q1 + q2),  y = l1 cos q1 + l2 cos(q1 + q2).
Vec2 forward_kinematics(const ArmParams& params, double q1, double q2);

// Two-argument-arctangent geometric solution. Prefers the elbow-positive
// branch (q2 >= 0); falls back to the mirror solution when that violates the
// joint limits. Returns nullopt when the target is outside the reachable
// annulus or both branches violate the limits. q1 is normalized to (-pi, pi].
std::optional<JointAngles> inverse_kinematics(const ArmParams& params, const Vec2& target);

// Same solver with the joint-limit filter disabled; used when the caller only
// cares about geometric reachability.
std::optional<JointAngles> inverse_kinematics_unlimited(const ArmParams& params,
                                                        const Vec2& target);

ArmMatrices arm_matrices(const ArmParams& params, const JointState& state);

// Kinetic energy 0.5 qd^T M qd and potential
//   V = m1 g lc1 cos q1 + m2 g (l1 cos q1 + lc2 cos(q1+q2)).
Energy mechanical_energy(const ArmParams& params, const JointState& state);

// Inertial joint torques induced by a linear acceleration of the arm base
// (d'Alembert pseudo-forces -m_k * a_base applied at each link's center of
// mass, mapped through the center-of-mass Jacobians).
Vec2 base_disturbance_torque(const ArmParams& params, double q1, double q2,
                             const Vec2& base_accel);

// One fixed-step RK4 step of length dt of
//   M(q) qdd + C(q,qd) qd + grav(q) = tau_clamped + tau_disturbance.
// Torques are clamped to +-tau_max before integration. Angles leaving the
// joint limits are clamped with the corresponding rate zeroed.
// Throws NumericalBlowup if the resulting state is not finite.
JointState arm_step(const ArmParams& params, const JointState& state, const Vec2& torque,
                    const Vec2& base_accel_disturbance, double dt);

}  // namespace aeroarm
