#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "aeroarm/arm.hpp"
#include "aeroarm/geometry.hpp"
#include "aeroarm/trajectory.hpp"

namespace aeroarm {

struct Obstacle;  // ttc.hpp

// Integer grid cell. Cell (ix, iy) covers the square of side `resolution`
// centered at origin + (ix + 0.5, iy + 0.5) * resolution.
struct GridCell {
    std::int32_t ix = 0;
    std::int32_t iy = 0;

    friend constexpr bool operator==(const GridCell&, const GridCell&) = default;
    friend constexpr auto operator<=>(const GridCell&, const GridCell&) = default;
};

// Time-indexed feasible corridor: for every target sample, the set of base
// grid cells from which that sample is reachable under the arm's kinematics
// and joint limits. Cell lists are kept sorted (ix, then iy).
struct FeasibleCorridor {
    Vec2 origin;              // lower-left corner of cell (0, 0)
    double resolution = 0.0;  // cell size (m)
    std::vector<double> times;                   // sample time stamps
    std::vector<std::vector<GridCell>> cells;    // one sorted set per sample

    std::size_t size() const { return cells.size(); }

    Vec2 cell_center(const GridCell& c) const {
        return {origin.x + (c.ix + 0.5) * resolution, origin.y + (c.iy + 0.5) * resolution};
    }
    GridCell cell_of(const Vec2& p) const {
        return {static_cast<std::int32_t>(std::floor((p.x - origin.x) / resolution)),
                static_cast<std::int32_t>(std::floor((p.y - origin.y) / resolution))};
    }
    bool contains(std::size_t index, const GridCell& c) const;
};

// Exhaustive grid scan: a cell belongs to set i iff its center is inside the
// margin-shrunk reachability annulus of target i, inverse kinematics from the
// cell succeeds within joint limits, and the cell does not intersect any
// obstacle (moving obstacles are evaluated at the sample's time stamp).
// Throws InfeasibleError with the first empty index (corridor-empty).
FeasibleCorridor compute_corridor(const Trajectory& target, const ArmParams& arm,
                                  double grid_resolution, double margin,
                                  const std::vector<Obstacle>& obstacles);

}  // namespace aeroarm
