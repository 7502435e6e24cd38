#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aeroarm/feasible_region.hpp"
#include "aeroarm/qlearn.hpp"
#include "aeroarm/trajectory.hpp"
#include "aeroarm/ttc.hpp"

namespace aeroarm {

// Canonical float formatting for CSV artifacts: 9 significant digits.
std::string csv_double(double v);

// Trajectory CSV: header "t,x,y".
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::string& path);

// Obstacle CSV: header "x,y,radius,vx,vy".
void write_obstacles_csv(const std::string& path, const std::vector<Obstacle>& obstacles);
std::vector<Obstacle> read_obstacles_csv(const std::string& path);

// Corridor CSV: header "index,cell_x,cell_y"; cell centers, 6 decimal places.
void write_corridor_csv(const std::string& path, const FeasibleCorridor& corridor);

// Q-table binary format: magic "AAQT", u32 version, u32 num_states,
// u32 num_actions, then row-major little-endian f64 values.
void save_qtable(const std::string& path, const QTable& table);
QTable load_qtable(const std::string& path);

// Q-table CSV export: header "state_id,action_id,value".
void write_qtable_csv(const std::string& path, const QTable& table);

void write_learning_curve_csv(const std::string& path, const std::vector<double>& curve);
void write_episode_report_csv(const std::string& path, const EpisodeReport& report);

}  // namespace aeroarm
