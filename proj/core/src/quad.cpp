#include "aeroarm/quad.hpp"

#include <algorithm>
#include <cmath>

#include "aeroarm/errors.hpp"

namespace aeroarm {

void QuadParams::validate() const {
    const auto fail = [](const char* what) { throw ConfigError(std::string("quad: ") + what); };
    if (!(m_o > 0.0)) fail("m_o must be positive");
    if (!(i_o > 0.0)) fail("i_o must be positive");
    if (!(r_arm > 0.0)) fail("r_arm must be positive");
    if (!(g > 0.0)) fail("g must be positive");
    if (!(u_max > 0.0)) fail("u_max must be positive");
    if (!(alpha_max > 0.0) || alpha_max >= 1.5707963267948966)
        fail("alpha_max must lie in (0, pi/2)");
}

QuadState quad_step(const QuadParams& params, const QuadState& state, double u1, double u2,
                    double external_moment, double dt) {
    u1 = std::clamp(u1, 0.0, params.u_max);
    u2 = std::clamp(u2, 0.0, params.u_max);
    const double thrust = u1 + u2;
    // alpha'' is constant over the step, so only the translational part
    // depends on the evolving state.
    const double ddalpha = (params.r_arm * (u1 - u2) + external_moment) / params.i_o;

    const auto deriv = [&](const QuadState& s) {
        QuadState d;
        d.x = s.vx;
        d.y = s.vy;
        d.vx = -thrust * std::sin(s.alpha) / params.m_o;
        d.vy = thrust * std::cos(s.alpha) / params.m_o - params.g;
        d.alpha = s.dalpha;
        d.dalpha = ddalpha;
        return d;
    };
    const auto advance = [](const QuadState& s, const QuadState& d, double h) {
        return QuadState{s.x + d.x * h,   s.y + d.y * h,         s.vx + d.vx * h,
                         s.vy + d.vy * h, s.alpha + d.alpha * h, s.dalpha + d.dalpha * h};
    };

    const QuadState k1 = deriv(state);
    const QuadState k2 = deriv(advance(state, k1, dt / 2.0));
    const QuadState k3 = deriv(advance(state, k2, dt / 2.0));
    const QuadState k4 = deriv(advance(state, k3, dt));

    const auto combine = [&](double s, double a, double b, double c, double d) {
        return s + dt / 6.0 * (a + 2.0 * b + 2.0 * c + d);
    };
    QuadState next{combine(state.x, k1.x, k2.x, k3.x, k4.x),
                   combine(state.y, k1.y, k2.y, k3.y, k4.y),
                   combine(state.vx, k1.vx, k2.vx, k3.vx, k4.vx),
                   combine(state.vy, k1.vy, k2.vy, k3.vy, k4.vy),
                   combine(state.alpha, k1.alpha, k2.alpha, k3.alpha, k4.alpha),
                   combine(state.dalpha, k1.dalpha, k2.dalpha, k3.dalpha, k4.dalpha)};

    if (!next.finite()) throw NumericalBlowup("quad_step produced a non-finite state");
    return next;
}

double static_moment(const ArmParams& arm, double q1, double q2, double alpha) {
    return -(arm.l1 / 2.0) * arm.m1 * arm.g * std::sin(q1 - alpha) +
           (arm.l2 / 2.0) * arm.m2 * arm.g * std::sin(q1 + q2 - alpha);
}

double dynamic_moment(const ArmParams& arm, double ddq1, double ddq2) {
    return -arm.i1 * ddq1 + arm.i2 * (ddq1 + ddq2);
}

MomentReport total_moment(const ArmParams& arm, double q1, double q2, double alpha,
                          double ddq1, double ddq2) {
    MomentReport r;
    r.m_static = static_moment(arm, q1, q2, alpha);
    r.m_dynamic = dynamic_moment(arm, ddq1, ddq2);
    r.m_total = r.m_static + r.m_dynamic;
    return r;
}

PdGains PdGains::critically_damped(double omega_pos, double omega_att) {
    return {omega_pos * omega_pos, 2.0 * omega_pos, omega_att * omega_att, 2.0 * omega_att};
}

ThrustCommand reactive_thrust_control(const QuadParams& params, const QuadState& observed,
                                      const PoseRef& reference, const PdGains& gains) {
    const double ex = reference.x - observed.x;
    const double ey = reference.y - observed.y;
    const double ax_des = gains.kp_pos * ex - gains.kd_pos * observed.vx;
    const double ay_des = gains.kp_pos * ey - gains.kd_pos * observed.vy;

    double thrust = params.m_o * (params.g + ay_des);
    if (thrust < 0.0) thrust = 0.0;

    // x'' = -T sin(alpha) / m_o: tilt toward -alpha to accelerate along +x.
    double alpha_des = reference.alpha;
    if (thrust > 1e-9) {
        const double s = std::clamp(-params.m_o * ax_des / thrust, -1.0, 1.0);
        alpha_des += std::asin(s);
    }
    alpha_des = std::clamp(alpha_des, -0.8 * params.alpha_max, 0.8 * params.alpha_max);

    const double ddalpha_des =
        gains.kp_att * (alpha_des - observed.alpha) - gains.kd_att * observed.dalpha;
    const double differential = params.i_o * ddalpha_des / params.r_arm;

    ThrustCommand cmd{thrust / 2.0 + differential / 2.0, thrust / 2.0 - differential / 2.0};
    cmd.u1 = std::clamp(cmd.u1, 0.0, params.u_max);
    cmd.u2 = std::clamp(cmd.u2, 0.0, params.u_max);
    return cmd;
}

}  // namespace aeroarm
