#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aeroarm/config.hpp"
#include "aeroarm/feasible_region.hpp"
#include "aeroarm/qlearn.hpp"
#include "aeroarm/quad.hpp"
#include "aeroarm/ttc.hpp"

namespace aeroarm {

// Deterministic per-cell seed: root seed mixed with a stable hash of the
// cell label, so adding cells never perturbs existing ones.
std::uint64_t mix_seed(std::uint64_t root_seed, const std::string& label);

// ---- Stage 1 + 2: corridor and base plan ------------------------------------

struct PlanArtifacts {
    FeasibleCorridor corridor;
    BasePlan plan;
    Vec2 start;
    double corridor_occupancy = 0.0;  // mean cells per sample
};

PlanArtifacts run_plan_stage(const ScenarioConfig& config);

// ---- Stage 3: training -------------------------------------------------------

struct TrainArtifacts {
    TrackingEnv env;
    TrainResult result;
    EpisodeReport greedy_report;
};

// Runs the full pipeline (plan stage included unless `plan` is supplied),
// trains, then evaluates the greedy policy once.
TrainArtifacts run_train_stage(const ScenarioConfig& config,
                               const PlanArtifacts* plan = nullptr);

EpisodeReport evaluate_greedy(const TrackingEnv& env, QTable& table, const LearnConfig& config);

// ---- Table-style hyperparameter sweep ---------------------------------------

enum class SweepAxis { LearningRate, Gamma, Samples };

struct SweepCell {
    std::string axis;
    std::string label;   // e.g. "lr=0.1" or "samples=+25%"
    double rmse = 0.0;
    double avg_reward = 0.0;
    bool failed = false;
    std::string error;
};

// Sweep cells for one axis: lr in {0.1, 0.01, 0.001}, gamma in {0.9, 0.5,
// 0.2}, samples in {+25%, -25%}; otherwise-reference settings. Cells run
// independently (parallel up to max_threads; 0 = hardware concurrency) with
// per-cell seeds; a failed cell records its error and the sweep continues.
// Row order is the fixed cell order regardless of execution order.
std::vector<SweepCell> run_sweep(const ScenarioConfig& config, SweepAxis axis,
                                 unsigned max_threads = 0);

void write_sweep_csv(const std::string& path, const std::vector<SweepCell>& cells);

// ---- Disturbance study (hybrid instability) ---------------------------------

struct DisturbRow {
    double t = 0.0;
    double planned_x = 0.0, planned_y = 0.0;
    double actual_x = 0.0, actual_y = 0.0;
    double alpha = 0.0;
    double moment = 0.0;
};

struct DisturbTrace {
    std::string label;            // e.g. "control_amplified"
    bool reactive_control = false;
    double mass_factor = 1.0;
    int delay_steps = 0;
    std::vector<DisturbRow> rows;
    double max_deviation = 0.0;   // max |actual - planned| (m)
    int alpha_violations = 0;     // samples with |alpha| > alpha_max
    bool blew_up = false;
};

// Greedy arm rollout -> moment trace (static + dynamic, Eq-style sum) ->
// quadrotor co-simulation around a hover reference, with and without the
// reactive thrust controller, at nominal and amplified arm masses.
struct DisturbArtifacts {
    std::vector<DisturbTrace> traces;  // nominal/amplified x no-control/control
};

DisturbArtifacts run_disturb(const ScenarioConfig& config,
                             const TrainArtifacts* trained = nullptr);

// Single co-simulation with explicit knobs; building block of run_disturb and
// of the delay-sensitivity comparison.
DisturbTrace simulate_disturbance(const ScenarioConfig& config, const TrainArtifacts& trained,
                                  bool reactive_control, double mass_factor, int delay_steps,
                                  const std::string& label);

void write_disturb_csv(const std::string& path, const DisturbTrace& trace);

}  // namespace aeroarm
