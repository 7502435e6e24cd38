#pragma once

#include <cstdint>
#include <string>

#include "aeroarm/arm.hpp"
#include "aeroarm/qlearn.hpp"
#include "aeroarm/quad.hpp"
#include "aeroarm/trajectory.hpp"
#include "aeroarm/ttc.hpp"

namespace aeroarm {

enum class TargetSource { Sine, Line, Arc, File };

// Everything a run needs, loadable from a flat key-value file with dotted
// section prefixes (e.g. "arm.l1 = 0.5"). Unknown keys are rejected.
struct ScenarioConfig {
    ArmParams arm;
    QuadParams quad;

    TargetSource target_source = TargetSource::Sine;
    std::string target_file = "none";
    TargetShape target_shape;

    std::string obstacles_file = "none";

    double corridor_resolution = 0.03;  // m
    double corridor_margin = 0.045;     // m, default 5% of l1+l2

    PlannerConfig planner;
    bool start_auto = true;   // pick the start cell automatically
    Vec2 start{0.0, 0.0};     // used when start_auto is false

    LearnConfig learn;
    int q1_bin_count = 25;
    int q2_bin_count = 25;
    int tau_level_count = 5;

    double physics_dt = 1e-3;  // integrator substep (s)

    double control_omega_pos = 2.0;   // rad/s, reactive controller outer loop
    double control_omega_att = 10.0;  // rad/s, attitude loop
    int control_delay_steps = 10;     // controller measurement delay (ticks)

    double mass_amplification = 4.0;  // disturbance-study mass factor

    std::string out_dir = "out";

    // Cross-field validation; also checks that referenced files exist.
    // Throws ConfigError.
    void validate() const;

    Trajectory build_target() const;
    std::vector<Obstacle> load_obstacles() const;
    Discretizer build_discretizer(std::size_t trajectory_length) const;
};

// Parse "key = value" lines ('#' comments, blank lines allowed). Every key
// must be known; every value must parse as its field type. Throws ConfigError.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);

// Canonical serialization: all keys, fixed order, round-trip exact floats.
// serialize(parse(serialize(cfg))) == serialize(cfg).
std::string serialize_config(const ScenarioConfig& config);

const char* to_string(TargetSource s);
const char* to_string(EpsilonDecay d);

}  // namespace aeroarm
