#include "aeroarm/feasible_region.hpp"

#include <algorithm>
#include <cmath>

#include "aeroarm/errors.hpp"
#include "aeroarm/ttc.hpp"

namespace aeroarm {

bool FeasibleCorridor::contains(std::size_t index, const GridCell& c) const {
    const auto& set = cells[index];
    return std::binary_search(set.begin(), set.end(), c);
}

namespace {

bool cell_hits_obstacle(const Vec2& center, double half, const Obstacle& obs) {
    const Vec2 closest{std::clamp(obs.center.x, center.x - half, center.x + half),
                       std::clamp(obs.center.y, center.y - half, center.y + half)};
    return (closest - obs.center).norm() <= obs.radius;
}

}  // namespace

FeasibleCorridor compute_corridor(const Trajectory& target, const ArmParams& arm,
                                  double grid_resolution, double margin,
                                  const std::vector<Obstacle>& obstacles) {
    target.validate();
    arm.validate();
    if (!(grid_resolution > 0.0)) throw ConfigError("corridor: grid_resolution must be positive");
    const double band = (arm.reach() - arm.inner_reach()) / 2.0;
    if (margin < 0.0 || margin >= band)
        throw ConfigError("corridor: margin must lie in [0, (l1+l2-|l1-l2|)/2)");

    // Grid extent: target bounding box inflated by the outer reach.
    double min_x = target.samples[0].x, max_x = min_x;
    double min_y = target.samples[0].y, max_y = min_y;
    for (const auto& s : target.samples) {
        min_x = std::min(min_x, s.x);
        max_x = std::max(max_x, s.x);
        min_y = std::min(min_y, s.y);
        max_y = std::max(max_y, s.y);
    }
    const double pad = arm.reach() + grid_resolution;

    FeasibleCorridor cor;
    cor.resolution = grid_resolution;
    cor.origin = {std::floor((min_x - pad) / grid_resolution) * grid_resolution,
                  std::floor((min_y - pad) / grid_resolution) * grid_resolution};

    const double r_min = arm.inner_reach() + margin;
    const double r_max = arm.reach() - margin;
    const double half = grid_resolution / 2.0;

    cor.times.reserve(target.size());
    cor.cells.reserve(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) {
        const Vec2 tp = target.point(i);
        const double t = target.time(i);

        std::vector<Obstacle> now;
        now.reserve(obstacles.size());
        for (const Obstacle& o : obstacles) now.push_back(o.at_time(t));

        // Scan the bounding box of the outer reachability circle.
        const GridCell lo = cor.cell_of({tp.x - r_max, tp.y - r_max});
        const GridCell hi = cor.cell_of({tp.x + r_max, tp.y + r_max});

        std::vector<GridCell> set;
        for (std::int32_t ix = lo.ix; ix <= hi.ix; ++ix) {
            for (std::int32_t iy = lo.iy; iy <= hi.iy; ++iy) {
                const GridCell cell{ix, iy};
                const Vec2 center = cor.cell_center(cell);
                const double r = (tp - center).norm();
                if (r < r_min || r > r_max) continue;
                if (!inverse_kinematics(arm, tp - center).has_value()) continue;
                bool blocked = false;
                for (const Obstacle& o : now) {
                    if (cell_hits_obstacle(center, half, o)) {
                        blocked = true;
                        break;
                    }
                }
                if (!blocked) set.push_back(cell);
            }
        }
        if (set.empty()) throw InfeasibleError("corridor-empty: no feasible base cell", i);
        // Row scan already yields (ix, iy) lexicographic order.
        cor.times.push_back(t);
        cor.cells.push_back(std::move(set));
    }
    return cor;
}

}  // namespace aeroarm
