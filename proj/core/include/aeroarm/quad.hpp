#pragma once

#include <cstddef>
#include <vector>

#include "aeroarm/arm.hpp"
#include "aeroarm/geometry.hpp"

namespace aeroarm {

// Planar quadrotor rigid body.
struct QuadParams {
    double m_o = 1.6;      // body mass (kg)
    double i_o = 0.03;     // body inertia (kg m^2)
    double r_arm = 0.2;    // center-of-mass to propeller distance (m)
    double g = 9.81;       // m/s^2
    double u_max = 40.0;   // per-propeller thrust bound (N)
    double alpha_max = 0.6;  // angle-of-attack magnitude limit (rad)

    double hover_thrust() const { return m_o * g / 2.0; }  // per propeller

    void validate() const;  // throws ConfigError
};

struct QuadState {
    double x = 0.0;       // m
    double y = 0.0;       // m
    double vx = 0.0;      // m/s
    double vy = 0.0;      // m/s
    double alpha = 0.0;   // angle of attack (rad)
    double dalpha = 0.0;  // rad/s

    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(vx) &&
               std::isfinite(vy) && std::isfinite(alpha) && std::isfinite(dalpha);
    }
    // Angle-of-attack violations are reportable, never clamped.
    bool alpha_exceeded(const QuadParams& p) const { return std::abs(alpha) > p.alpha_max; }
};

// Arm-induced moments on the body.
struct MomentReport {
    double m_static = 0.0;   // N m
    double m_dynamic = 0.0;  // N m
    double m_total = 0.0;    // N m; always m_static + m_dynamic
};

// One RK4 step of
//   m_o x'' = -(u1 + u2) sin(alpha)
//   m_o y'' =  (u1 + u2) cos(alpha) - m_o g
//   i_o alpha'' = r_arm (u1 - u2) + external_moment.
// Thrusts are clamped to [0, u_max]. Throws NumericalBlowup on a non-finite
// result.
QuadState quad_step(const QuadParams& params, const QuadState& state, double u1, double u2,
                    double external_moment, double dt);

// Moment from the links' weight:
//   -(l1/2) m1 g sin(q1 - alpha) + (l2/2) m2 g sin(q1 + q2 - alpha).
double static_moment(const ArmParams& arm, double q1, double q2, double alpha);

// Moment from the links' angular acceleration: -i1 ddq1 + i2 (ddq1 + ddq2).
double dynamic_moment(const ArmParams& arm, double ddq1, double ddq2);

MomentReport total_moment(const ArmParams& arm, double q1, double q2, double alpha,
                          double ddq1, double ddq2);

// PD gains of the reactive thrust controller.
struct PdGains {
    double kp_pos = 4.0;
    double kd_pos = 4.0;
    double kp_att = 64.0;
    double kd_att = 16.0;

    // Critically damped loops (kd = 2 sqrt(kp)) at the given natural
    // frequencies.
    static PdGains critically_damped(double omega_pos, double omega_att);
};

// Position + heading reference for the controller.
struct PoseRef {
    double x = 0.0;
    double y = 0.0;
    double alpha = 0.0;
};

struct ThrustCommand {
    double u1 = 0.0;
    double u2 = 0.0;
};

// PD law on position and angle-of-attack error evaluated on `observed` (the
// caller supplies the delayed state). Hover feed-forward m_o g / 2 per rotor;
// outputs clamped to [0, u_max]. At zero error and zero rates the command is
// exactly (m_o g / 2, m_o g / 2).
ThrustCommand reactive_thrust_control(const QuadParams& params, const QuadState& observed,
                                      const PoseRef& reference, const PdGains& gains);

// Fixed-delay measurement line, a plain value owned by the caller. push()
// returns the state observed `delay_steps` control ticks ago (the oldest
// entry while the line is still filling).
class DelayLine {
  public:
    explicit DelayLine(std::size_t delay_steps) : delay_steps_(delay_steps) {}

    const QuadState& push(const QuadState& s) {
        buf_.push_back(s);
        const std::size_t newest = buf_.size() - 1;
        const std::size_t idx = newest >= delay_steps_ ? newest - delay_steps_ : 0;
        return buf_[idx];
    }

    std::size_t delay_steps() const { return delay_steps_; }

  private:
    std::size_t delay_steps_;
    std::vector<QuadState> buf_;
};

}  // namespace aeroarm
