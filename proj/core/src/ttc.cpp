#include "aeroarm/ttc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <unordered_map>

#include "aeroarm/errors.hpp"

namespace aeroarm {

void PlannerConfig::validate() const {
    if (!(v_max > 0.0)) throw ConfigError("planner: v_max must be positive");
    if (!(ttc_threshold > 0.0)) throw ConfigError("planner: ttc_threshold must be positive");
    if (!(dt > 0.0)) throw ConfigError("planner: dt must be positive");
    if (smoothing_passes < 0) throw ConfigError("planner: smoothing_passes must be >= 0");
    if (!(ttc_penalty_weight >= 0.0))
        throw ConfigError("planner: ttc_penalty_weight must be >= 0");
}

std::optional<double> time_to_collision(const Vec2& position, const Vec2& velocity,
                                        const Obstacle& obstacle) {
    const Vec2 p = position - obstacle.center;
    const double c = p.norm_sq() - obstacle.radius * obstacle.radius;
    if (c < 0.0) return 0.0;  // already colliding

    const Vec2 v = velocity - obstacle.velocity;
    const double a = v.norm_sq();
    if (a == 0.0) return std::nullopt;
    const double b = p.dot(v);
    const double disc = b * b - a * c;
    if (disc < 0.0) return std::nullopt;

    const double t = (-b - std::sqrt(disc)) / a;
    if (t >= 0.0) return t;
    return std::nullopt;  // closest approach lies in the past
}

std::optional<double> plan_point_ttc(const Trajectory& plan, std::size_t i,
                                     const std::vector<Obstacle>& obstacles) {
    const std::size_t n = plan.size();
    Vec2 vel{0.0, 0.0};
    if (n >= 2) {
        // Outgoing velocity; the last point holds its incoming one.
        const std::size_t a = (i + 1 < n) ? i : n - 2;
        vel = (plan.point(a + 1) - plan.point(a)) / plan.uniform_dt;
    }
    const double t = plan.time(i);
    std::optional<double> best;
    for (const Obstacle& obs : obstacles) {
        const auto ttc = time_to_collision(plan.point(i), vel, obs.at_time(t));
        if (ttc && (!best || *ttc < *best)) best = ttc;
    }
    return best;
}

namespace {

// Node key packing: sample index and signed cell coordinates.
std::uint64_t node_key(std::size_t index, const GridCell& c) {
    const std::uint64_t x = static_cast<std::uint32_t>(c.ix + (1 << 19)) & 0xFFFFF;
    const std::uint64_t y = static_cast<std::uint32_t>(c.iy + (1 << 19)) & 0xFFFFF;
    return (static_cast<std::uint64_t>(index) << 40) | (x << 20) | y;
}

struct OpenEntry {
    double f;
    double g;
    std::size_t index;
    GridCell cell;
};

struct OpenOrder {
    bool operator()(const OpenEntry& a, const OpenEntry& b) const {
        // min-heap on (f, index, ix, iy)
        if (a.f != b.f) return a.f > b.f;
        if (a.index != b.index) return a.index > b.index;
        if (a.cell.ix != b.cell.ix) return a.cell.ix > b.cell.ix;
        return a.cell.iy > b.cell.iy;
    }
};

struct Box {
    double min_x, max_x, min_y, max_y;

    double distance(const Vec2& p) const {
        const double dx = std::max({min_x - p.x, 0.0, p.x - max_x});
        const double dy = std::max({min_y - p.y, 0.0, p.y - max_y});
        return std::hypot(dx, dy);
    }
};

// Minimum finite TTC of a move departing `from` with velocity `vel` at time t;
// false when any obstacle violates the threshold.
bool edge_ttc_ok(const Vec2& from, const Vec2& vel, double t,
                 const std::vector<Obstacle>& obstacles, double threshold,
                 std::optional<double>& min_ttc) {
    min_ttc.reset();
    for (const Obstacle& obs : obstacles) {
        const auto ttc = time_to_collision(from, vel, obs.at_time(t));
        if (!ttc) continue;
        if (*ttc < threshold) return false;
        if (!min_ttc || *ttc < *min_ttc) min_ttc = ttc;
    }
    return true;
}

Trajectory plan_points_to_trajectory(const FeasibleCorridor& corridor,
                                     const std::vector<Vec2>& points) {
    Trajectory traj;
    traj.uniform_dt = corridor.times.size() > 1 ? corridor.times[1] - corridor.times[0] : 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        traj.samples.push_back({corridor.times[i], points[i].x, points[i].y});
    return traj;
}

void smooth_plan(std::vector<Vec2>& pts, const FeasibleCorridor& corridor,
                 const std::vector<Obstacle>& obstacles, const PlannerConfig& config) {
    const double step_max = config.v_max * config.dt + 1e-12;
    for (int pass = 0; pass < config.smoothing_passes; ++pass) {
        for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
            const Vec2 mid = (pts[i - 1] + pts[i + 1]) * 0.5;
            const GridCell cell = corridor.cell_of(mid);
            if (!corridor.contains(i, cell)) continue;
            const Vec2 cand = corridor.cell_center(cell);
            if ((cand - pts[i - 1]).norm() > step_max) continue;
            if ((pts[i + 1] - cand).norm() > step_max) continue;

            const Vec2 old = pts[i];
            pts[i] = cand;
            // Local TTC recheck around the touched point.
            Trajectory probe = plan_points_to_trajectory(corridor, pts);
            bool ok = true;
            for (std::size_t j = (i == 0 ? 0 : i - 1); j <= i + 1 && j < pts.size(); ++j) {
                const auto ttc = plan_point_ttc(probe, j, obstacles);
                if (ttc && *ttc < config.ttc_threshold) {
                    ok = false;
                    break;
                }
            }
            if (!ok) pts[i] = old;
        }
    }
}

}  // namespace

BasePlan plan_base_path(const FeasibleCorridor& corridor, const Vec2& start,
                        const std::vector<Obstacle>& obstacles, const PlannerConfig& config) {
    config.validate();
    const std::size_t n = corridor.size();
    if (n < 2) throw ConfigError("planner: corridor needs at least 2 samples");
    const double sample_dt = corridor.times[1] - corridor.times[0];
    if (std::abs(sample_dt - config.dt) > 1e-9 * std::max(1.0, config.dt))
        throw ConfigError("planner: dt must match the corridor sample spacing");

    const GridCell start_cell = corridor.cell_of(start);
    if (!corridor.contains(0, start_cell))
        throw ConfigError("planner: start is outside corridor set 0");

    const double res = corridor.resolution;
    const double step_max = config.v_max * config.dt;
    const int reach_cells = static_cast<int>(std::floor(step_max / res + 1e-9));

    // Admissible heuristic: distance to the final set's bounding box.
    Box goal_box{1e300, -1e300, 1e300, -1e300};
    for (const GridCell& c : corridor.cells[n - 1]) {
        const Vec2 p = corridor.cell_center(c);
        goal_box.min_x = std::min(goal_box.min_x, p.x);
        goal_box.max_x = std::max(goal_box.max_x, p.x);
        goal_box.min_y = std::min(goal_box.min_y, p.y);
        goal_box.max_y = std::max(goal_box.max_y, p.y);
    }

    std::unordered_map<std::uint64_t, double> best_g;
    std::unordered_map<std::uint64_t, std::uint64_t> parent;
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenOrder> open;

    const std::uint64_t start_key = node_key(0, start_cell);
    best_g[start_key] = 0.0;
    open.push({goal_box.distance(corridor.cell_center(start_cell)), 0.0, 0, start_cell});

    std::size_t deepest = 0;
    std::optional<std::uint64_t> goal_key;

    while (!open.empty()) {
        const OpenEntry cur = open.top();
        open.pop();
        const std::uint64_t cur_key = node_key(cur.index, cur.cell);
        const auto it = best_g.find(cur_key);
        if (it == best_g.end() || cur.g > it->second) continue;  // stale entry

        if (cur.index == n - 1) {
            goal_key = cur_key;
            break;
        }
        deepest = std::max(deepest, cur.index);

        const Vec2 from = corridor.cell_center(cur.cell);
        const double t_depart = corridor.times[cur.index];
        const std::size_t next_index = cur.index + 1;

        for (std::int32_t dx = -reach_cells; dx <= reach_cells; ++dx) {
            for (std::int32_t dy = -reach_cells; dy <= reach_cells; ++dy) {
                const GridCell nc{cur.cell.ix + dx, cur.cell.iy + dy};
                if (!corridor.contains(next_index, nc)) continue;
                const Vec2 to = corridor.cell_center(nc);
                const double dist = (to - from).norm();
                if (dist > step_max) continue;

                const Vec2 vel = (to - from) / config.dt;
                std::optional<double> min_ttc;
                if (!edge_ttc_ok(from, vel, t_depart, obstacles, config.ttc_threshold,
                                 min_ttc))
                    continue;
                // Final point must also be safe with its held velocity.
                if (next_index == n - 1) {
                    std::optional<double> last_ttc;
                    if (!edge_ttc_ok(to, vel, corridor.times[next_index], obstacles,
                                     config.ttc_threshold, last_ttc))
                        continue;
                }

                double cost = dist;
                if (min_ttc) cost += config.ttc_penalty_weight / std::max(*min_ttc, 1e-9);

                const double g = cur.g + cost;
                const std::uint64_t key = node_key(next_index, nc);
                const auto got = best_g.find(key);
                if (got != best_g.end() && got->second <= g) continue;
                best_g[key] = g;
                parent[key] = cur_key;
                open.push({g + goal_box.distance(to), g, next_index, nc});
            }
        }
    }

    if (!goal_key)
        throw InfeasibleError("no-feasible-path: search exhausted", deepest + 1);

    // Reconstruct cell-center path.
    std::vector<Vec2> pts(n);
    std::uint64_t key = *goal_key;
    for (std::size_t i = n; i-- > 0;) {
        const GridCell cell{
            static_cast<std::int32_t>(((key >> 20) & 0xFFFFF)) - (1 << 19),
            static_cast<std::int32_t>((key & 0xFFFFF)) - (1 << 19)};
        pts[i] = corridor.cell_center(cell);
        if (i > 0) key = parent.at(key);
    }

    if (config.smoothing_passes > 0) smooth_plan(pts, corridor, obstacles, config);

    BasePlan plan;
    plan.trajectory = plan_points_to_trajectory(corridor, pts);
    std::string why;
    if (!validate_plan(plan.trajectory, corridor, obstacles, config,
                       &plan.min_ttc_along_path, &why))
        throw InfeasibleError("planner produced an invalid plan: " + why, deepest);
    return plan;
}

bool validate_plan(const Trajectory& plan, const FeasibleCorridor& corridor,
                   const std::vector<Obstacle>& obstacles, const PlannerConfig& config,
                   std::optional<double>* min_ttc, std::string* why) {
    const auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (plan.size() != corridor.size()) return fail("plan/corridor length mismatch");

    std::optional<double> overall;
    for (std::size_t i = 0; i < plan.size(); ++i) {
        const Vec2 p = plan.point(i);
        if (!corridor.contains(i, corridor.cell_of(p)))
            return fail("point " + std::to_string(i) + " outside corridor");
        if (i + 1 < plan.size()) {
            const double d = (plan.point(i + 1) - p).norm();
            if (d > config.v_max * config.dt + 1e-12)
                return fail("speed bound violated at step " + std::to_string(i));
        }
        const auto ttc = plan_point_ttc(plan, i, obstacles);
        if (ttc) {
            if (*ttc < config.ttc_threshold)
                return fail("TTC threshold violated at step " + std::to_string(i));
            if (!overall || *ttc < *overall) overall = ttc;
        }
    }
    if (min_ttc) *min_ttc = overall;
    return true;
}

}  // namespace aeroarm
