#pragma once

#include <cstddef>
#include <vector>

#include "aeroarm/geometry.hpp"

namespace aeroarm {

struct TrajectorySample {
    double t = 0.0;  // s
    double x = 0.0;  // m
    double y = 0.0;  // m

    Vec2 position() const { return {x, y}; }
};

// Time-stamped planar path with uniform sample spacing. Used both for the
// end-effector target and for the planned base path.
struct Trajectory {
    std::vector<TrajectorySample> samples;
    double uniform_dt = 0.0;  // s

    std::size_t size() const { return samples.size(); }
    Vec2 point(std::size_t i) const { return samples[i].position(); }
    double time(std::size_t i) const { return samples[i].t; }
    double duration() const { return samples.empty() ? 0.0 : samples.back().t - samples.front().t; }

    // Throws ConfigError unless >= 2 finite samples with strictly increasing,
    // uniformly spaced timestamps.
    void validate() const;
};

// Built-in target generators. All start at (origin_x, origin_y), advance along
// +x by `span` over `duration` and are sampled every `dt`.
struct TargetShape {
    double duration = 2.0;   // s
    double dt = 0.02;        // s
    double origin_x = 0.0;   // m
    double origin_y = 0.0;   // m
    double span = 1.0;       // m traveled along x
    double amplitude = 0.1;  // m, vertical deflection (sine / arc)
    double cycles = 1.0;     // sine periods over the span
};

Trajectory make_line_target(const TargetShape& shape);
Trajectory make_sine_target(const TargetShape& shape);
Trajectory make_arc_target(const TargetShape& shape);

}  // namespace aeroarm
