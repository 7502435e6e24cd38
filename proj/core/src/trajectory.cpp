#include "aeroarm/trajectory.hpp"

#include <cmath>

#include "aeroarm/errors.hpp"

namespace aeroarm {

void Trajectory::validate() const {
    if (samples.size() < 2) throw ConfigError("trajectory: needs at least 2 samples");
    if (!(uniform_dt > 0.0)) throw ConfigError("trajectory: uniform_dt must be positive");
    const double tol = 1e-9 * std::max(1.0, uniform_dt);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!std::isfinite(s.t) || !std::isfinite(s.x) || !std::isfinite(s.y))
            throw ConfigError("trajectory: non-finite sample");
        if (i > 0) {
            const double gap = s.t - samples[i - 1].t;
            if (gap <= 0.0) throw ConfigError("trajectory: time stamps must increase");
            if (std::abs(gap - uniform_dt) > tol)
                throw ConfigError("trajectory: non-uniform sample spacing");
        }
    }
}

namespace {

constexpr double kPi = 3.141592653589793;

template <typename F>
Trajectory sample_shape(const TargetShape& shape, F&& y_of_progress) {
    if (!(shape.dt > 0.0) || !(shape.duration > 0.0))
        throw ConfigError("target: duration and dt must be positive");
    const int n = static_cast<int>(std::llround(shape.duration / shape.dt)) + 1;
    if (n < 2) throw ConfigError("target: duration must cover at least one step");

    Trajectory traj;
    traj.uniform_dt = shape.dt;
    traj.samples.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double s = static_cast<double>(i) / (n - 1);
        traj.samples.push_back(
            {i * shape.dt, shape.origin_x + shape.span * s, y_of_progress(s)});
    }
    traj.validate();
    return traj;
}

}  // namespace

Trajectory make_line_target(const TargetShape& shape) {
    return sample_shape(shape, [&](double) { return shape.origin_y; });
}

Trajectory make_sine_target(const TargetShape& shape) {
    return sample_shape(shape, [&](double s) {
        return shape.origin_y + shape.amplitude * std::sin(2.0 * kPi * shape.cycles * s);
    });
}

Trajectory make_arc_target(const TargetShape& shape) {
    return sample_shape(
        shape, [&](double s) { return shape.origin_y + shape.amplitude * std::sin(kPi * s); });
}

}  // namespace aeroarm
