#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "aeroarm/arm.hpp"
#include "aeroarm/trajectory.hpp"

namespace aeroarm {

// Uniform bins over a closed interval; values outside are clamped to the
// boundary bins.
struct AxisBins {
    int count = 2;
    double lo = 0.0;
    double hi = 1.0;

    int bin_of(double v) const {
        const double s = (v - lo) / (hi - lo) * count;
        const int b = static_cast<int>(s);
        return b < 0 ? 0 : (b >= count ? count - 1 : b);
    }
    double center_of(int bin) const { return lo + (bin + 0.5) * (hi - lo) / count; }
};

// State and action discretization. State = (q1 bin, q2 bin, step-index bin);
// action = one torque level per joint from a shared ladder.
struct Discretizer {
    AxisBins q1_bins;
    AxisBins q2_bins;
    int step_index_bins = 2;
    std::vector<double> tau_levels;  // sorted, symmetric about 0, contains 0

    int num_states() const { return q1_bins.count * q2_bins.count * step_index_bins; }
    int num_actions() const {
        return static_cast<int>(tau_levels.size() * tau_levels.size());
    }
    Vec2 action_torque(int action_id) const {
        const int n = static_cast<int>(tau_levels.size());
        return {tau_levels[action_id / n], tau_levels[action_id % n]};
    }

    void validate(double tau_max) const;  // throws ConfigError
};

// Symmetric torque ladder {-tau, ..., -tau/k, 0, tau/k, ..., tau} with
// `count` levels (count odd, >= 3).
std::vector<double> symmetric_tau_levels(double tau_max, int count);

int encode_state(const Discretizer& disc, const JointState& joint, std::size_t step_index);

// Dense (state, action)-value table.
struct QTable {
    int num_states = 0;
    int num_actions = 0;
    std::vector<double> values;  // row major: [state * num_actions + action]
    Discretizer discretizer;

    QTable() = default;
    QTable(const Discretizer& disc)
        : num_states(disc.num_states()),
          num_actions(disc.num_actions()),
          values(static_cast<std::size_t>(num_states) * num_actions, 0.0),
          discretizer(disc) {}

    double& at(int s, int a) { return values[static_cast<std::size_t>(s) * num_actions + a]; }
    double at(int s, int a) const {
        return values[static_cast<std::size_t>(s) * num_actions + a];
    }
    double max_value(int s) const;
};

// Greedy action; ties broken by the lowest action id.
int argmax_action(const QTable& table, int state);

// Epsilon-greedy selection. Draws at most two variates from the generator
// (probability, then a uniform action when exploring).
int select_action(const QTable& table, int state, double epsilon, std::mt19937_64& rng);

// Q(s,a) += alpha * (reward + gamma * max_a' Q(s',a') - Q(s,a)).
void bellman_update(QTable& table, int s, int a, double reward, int s_next, double alpha,
                    double gamma);

// Distance-shaped reward: 10 * max(0, 1 - d / d_max), maximum 10 at d = 0.
double reward(const Vec2& ee_position, const Vec2& target, double d_max);

enum class EpsilonDecay { Exponential, Linear };

struct LearnConfig {
    int episodes = 15000;
    double alpha = 0.1;           // learning rate
    double gamma = 0.9;           // discount
    double epsilon_start = 1.0;
    double epsilon_end = 0.05;
    EpsilonDecay epsilon_decay = EpsilonDecay::Exponential;
    double d_max = 0.225;         // reward scale (m)
    std::uint64_t rng_seed = 1;

    void validate() const;  // throws ConfigError

    // Exploration rate for episode k of `episodes`.
    double epsilon_at(int episode) const;
};

struct EpisodeReport {
    double avg_reward = 0.0;
    double rmse = 0.0;          // m
    double ade = 0.0;           // m
    double accuracy_pct = 0.0;  // 100 * (1 - ade / reach)
    bool blew_up = false;
    Trajectory tracked_trajectory;  // end-effector positions actually obtained
};

// Episodic tracking environment: the base follows its plan while the agent
// torques the joints to keep the end effector on the target trajectory.
struct TrackingEnv {
    ArmParams arm;
    Trajectory base_plan;
    Trajectory target;
    Discretizer disc;
    double physics_dt = 1e-3;     // integrator substep (s)
    JointState initial;           // IK of the first target point, at rest
    std::vector<Vec2> base_accel; // per-step base acceleration (disturbance input)

    void validate() const;  // throws ConfigError
};

// Builds the environment; the initial joint state is the inverse-kinematics
// solution of (target[0] - base[0]) at rest. Throws InfeasibleError when that
// point is not reachable.
TrackingEnv make_tracking_env(const ArmParams& arm, const Trajectory& base_plan,
                              const Trajectory& target, const Discretizer& disc,
                              double physics_dt = 1e-3);

enum class EpisodeMode { Learn, Greedy };

// Runs one episode. Learn mode selects epsilon-greedily and applies the
// Bellman update per transition; greedy mode is side-effect-free on the table
// and ignores epsilon. A dynamics blow-up aborts the episode and records a
// -10 terminal reward.
EpisodeReport run_episode(const TrackingEnv& env, QTable& table, const LearnConfig& config,
                          EpisodeMode mode, double epsilon, std::mt19937_64& rng);

struct TrainResult {
    QTable table;
    std::vector<double> learning_curve;  // per-episode average reward
};

// config.episodes learn-mode episodes with the decaying epsilon schedule.
// Blow-ups are recorded as penalties; training always completes.
TrainResult train(const TrackingEnv& env, const LearnConfig& config);

}  // namespace aeroarm
