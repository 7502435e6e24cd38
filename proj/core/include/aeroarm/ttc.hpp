#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "aeroarm/feasible_region.hpp"
#include "aeroarm/geometry.hpp"
#include "aeroarm/trajectory.hpp"

namespace aeroarm {

// Circular obstacle moving at constant velocity.
struct Obstacle {
    Vec2 center;
    double radius = 0.0;
    Vec2 velocity;

    Obstacle at_time(double t) const { return {center + velocity * t, radius, velocity}; }
};

struct PlannerConfig {
    double v_max = 1.5;           // base speed bound (m/s)
    double ttc_threshold = 2.0;   // s
    double dt = 0.02;             // planning timestep (s)
    int smoothing_passes = 0;
    double ttc_penalty_weight = 1.0;  // edge cost term: weight / TTC

    void validate() const;  // throws ConfigError
};

struct BasePlan {
    Trajectory trajectory;
    // Smallest finite TTC over the path; nullopt when no obstacle is ever on
    // a collision course.
    std::optional<double> min_ttc_along_path;
};

// Smallest t >= 0 with |(position - center) + t (velocity - obstacle.velocity)|
// equal to the radius, assuming constant velocities. Returns 0 when already
// inside the obstacle and nullopt when there is no nonnegative root.
std::optional<double> time_to_collision(const Vec2& position, const Vec2& velocity,
                                        const Obstacle& obstacle);

// TTC of plan point i evaluated the way the planner and the post-hoc checker
// both see it: outgoing velocity (held for the last point), obstacles advanced
// to the point's time stamp. Minimum over obstacles; nullopt if none is finite.
std::optional<double> plan_point_ttc(const Trajectory& plan, std::size_t i,
                                     const std::vector<Obstacle>& obstacles);

// A* over the time-expanded corridor grid. Node = (sample index, cell); edges
// advance one index and move at most v_max * dt; an edge is pruned when any
// obstacle's TTC at the departure point drops below the threshold. Edge cost
// is distance plus ttc_penalty_weight / TTC for the smallest finite TTC.
// Deterministic: ties broken lexicographically on (f, index, ix, iy).
// Throws InfeasibleError (no-feasible-path) with the blocking index.
BasePlan plan_base_path(const FeasibleCorridor& corridor, const Vec2& start,
                        const std::vector<Obstacle>& obstacles, const PlannerConfig& config);

// Independent post-hoc validation: re-checks corridor containment, the
// per-step speed bound and the TTC threshold directly from the definitions.
// Returns true and fills min_ttc when the plan is valid.
bool validate_plan(const Trajectory& plan, const FeasibleCorridor& corridor,
                   const std::vector<Obstacle>& obstacles, const PlannerConfig& config,
                   std::optional<double>* min_ttc = nullptr,
                   std::string* why = nullptr);

}  // namespace aeroarm
