#include "aeroarm/qlearn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aeroarm/errors.hpp"

namespace aeroarm {

std::vector<double> symmetric_tau_levels(double tau_max, int count) {
    if (count < 3 || count % 2 == 0)
        throw ConfigError("tau levels: count must be odd and >= 3");
    if (!(tau_max > 0.0)) throw ConfigError("tau levels: tau_max must be positive");
    const int half = (count - 1) / 2;
    std::vector<double> levels(count);
    for (int k = -half; k <= half; ++k)
        levels[k + half] = tau_max * static_cast<double>(k) / half;
    levels[half] = 0.0;
    return levels;
}

void Discretizer::validate(double tau_max) const {
    const auto fail = [](const char* what) {
        throw ConfigError(std::string("discretizer: ") + what);
    };
    if (q1_bins.count < 2 || q2_bins.count < 2 || step_index_bins < 2)
        fail("bin counts must be >= 2");
    if (!(q1_bins.lo < q1_bins.hi) || !(q2_bins.lo < q2_bins.hi))
        fail("bin bounds must be non-empty intervals");
    if (tau_levels.size() < 3) fail("need at least 3 torque levels");
    bool has_zero = false;
    const std::size_t n = tau_levels.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && !(tau_levels[i] > tau_levels[i - 1])) fail("torque levels must be sorted");
        if (std::abs(tau_levels[i] + tau_levels[n - 1 - i]) > 1e-12)
            fail("torque levels must be symmetric about 0");
        if (std::abs(tau_levels[i]) > tau_max + 1e-12)
            fail("torque levels must stay within tau_max");
        if (tau_levels[i] == 0.0) has_zero = true;
    }
    if (!has_zero) fail("torque levels must include 0");
}

int encode_state(const Discretizer& disc, const JointState& joint, std::size_t step_index) {
    const int b1 = disc.q1_bins.bin_of(joint.q1);
    const int b2 = disc.q2_bins.bin_of(joint.q2);
    const int bs = std::min(static_cast<int>(step_index), disc.step_index_bins - 1);
    return (b1 * disc.q2_bins.count + b2) * disc.step_index_bins + bs;
}

double QTable::max_value(int s) const {
    const double* row = values.data() + static_cast<std::size_t>(s) * num_actions;
    double best = row[0];
    for (int a = 1; a < num_actions; ++a) best = std::max(best, row[a]);
    return best;
}

int argmax_action(const QTable& table, int state) {
    const double* row = table.values.data() + static_cast<std::size_t>(state) * table.num_actions;
    int best = 0;
    for (int a = 1; a < table.num_actions; ++a)
        if (row[a] > row[best]) best = a;
    return best;
}

int select_action(const QTable& table, int state, double epsilon, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < epsilon) {
        std::uniform_int_distribution<int> pick(0, table.num_actions - 1);
        return pick(rng);
    }
    return argmax_action(table, state);
}

void bellman_update(QTable& table, int s, int a, double reward, int s_next, double alpha,
                    double gamma) {
    double& q = table.at(s, a);
    q += alpha * (reward + gamma * table.max_value(s_next) - q);
}

double reward(const Vec2& ee_position, const Vec2& target, double d_max) {
    const double d = (ee_position - target).norm();
    return 10.0 * std::max(0.0, 1.0 - d / d_max);
}

void LearnConfig::validate() const {
    const auto fail = [](const char* what) { throw ConfigError(std::string("learn: ") + what); };
    if (episodes < 1) fail("episodes must be >= 1");
    if (!(alpha > 0.0) || alpha > 1.0) fail("alpha must lie in (0, 1]");
    if (!(gamma > 0.0) || gamma > 1.0) fail("gamma must lie in (0, 1]");
    if (epsilon_start < 0.0 || epsilon_start > 1.0) fail("epsilon_start must lie in [0, 1]");
    if (epsilon_end < 0.0 || epsilon_end > epsilon_start)
        fail("epsilon_end must lie in [0, epsilon_start]");
    if (epsilon_decay == EpsilonDecay::Exponential && epsilon_end <= 0.0)
        fail("exponential decay needs epsilon_end > 0");
    if (!(d_max > 0.0)) fail("d_max must be positive");
}

double LearnConfig::epsilon_at(int episode) const {
    if (episodes <= 1) return epsilon_start;
    const double t = static_cast<double>(episode) / (episodes - 1);
    if (epsilon_decay == EpsilonDecay::Linear)
        return epsilon_start + (epsilon_end - epsilon_start) * t;
    return epsilon_start * std::pow(epsilon_end / epsilon_start, t);
}

void TrackingEnv::validate() const {
    arm.validate();
    base_plan.validate();
    target.validate();
    disc.validate(arm.tau_max);
    if (base_plan.size() != target.size())
        throw ConfigError("env: base plan and target must have the same length");
    if (std::abs(base_plan.uniform_dt - target.uniform_dt) > 1e-9)
        throw ConfigError("env: base plan and target must share the sample spacing");
    if (!(physics_dt > 0.0) || physics_dt > target.uniform_dt + 1e-12)
        throw ConfigError("env: physics_dt must lie in (0, sample dt]");
}

TrackingEnv make_tracking_env(const ArmParams& arm, const Trajectory& base_plan,
                              const Trajectory& target, const Discretizer& disc,
                              double physics_dt) {
    TrackingEnv env;
    env.arm = arm;
    env.base_plan = base_plan;
    env.target = target;
    env.disc = disc;
    env.physics_dt = physics_dt;

    const auto ik = inverse_kinematics(arm, target.point(0) - base_plan.point(0));
    if (!ik) throw InfeasibleError("env: first target point unreachable from the base start", 0);
    env.initial = {ik->q1, ik->q2, 0.0, 0.0};

    // Per-step base acceleration from the plan's velocity differences.
    const std::size_t n = base_plan.size();
    const double dt = base_plan.uniform_dt;
    std::vector<Vec2> vel(n);
    for (std::size_t i = 0; i + 1 < n; ++i) vel[i] = (base_plan.point(i + 1) - base_plan.point(i)) / dt;
    if (n >= 2) vel[n - 1] = vel[n - 2];
    env.base_accel.assign(n, {0.0, 0.0});
    for (std::size_t i = 1; i < n; ++i) env.base_accel[i] = (vel[i] - vel[i - 1]) / dt;

    env.validate();
    return env;
}

EpisodeReport run_episode(const TrackingEnv& env, QTable& table, const LearnConfig& config,
                          EpisodeMode mode, double epsilon, std::mt19937_64& rng) {
    const std::size_t steps = env.target.size();
    const double dt = env.target.uniform_dt;
    const int substeps = std::max(1, static_cast<int>(std::llround(dt / env.physics_dt)));
    const double sub_dt = dt / substeps;

    EpisodeReport report;
    report.tracked_trajectory.uniform_dt = dt;
    report.tracked_trajectory.samples.reserve(steps);

    JointState joint = env.initial;
    {
        const Vec2 ee0 = env.base_plan.point(0) + forward_kinematics(env.arm, joint.q1, joint.q2);
        report.tracked_trajectory.samples.push_back({env.target.time(0), ee0.x, ee0.y});
    }

    double reward_sum = 0.0;
    std::size_t reward_count = 0;
    double err_sum = 0.0, err_sq_sum = 0.0;
    std::size_t err_count = 0;

    for (std::size_t i = 0; i + 1 < steps; ++i) {
        const int s = encode_state(env.disc, joint, i);
        const int a = (mode == EpisodeMode::Learn) ? select_action(table, s, epsilon, rng)
                                                   : argmax_action(table, s);
        const Vec2 torque = env.disc.action_torque(a);

        bool blew = false;
        try {
            for (int k = 0; k < substeps; ++k)
                joint = arm_step(env.arm, joint, torque, env.base_accel[i], sub_dt);
        } catch (const NumericalBlowup&) {
            blew = true;
        }

        if (blew) {
            // Terminal penalty, no bootstrap target.
            if (mode == EpisodeMode::Learn) {
                double& q = table.at(s, a);
                q += config.alpha * (-10.0 - q);
            }
            reward_sum += -10.0;
            ++reward_count;
            report.blew_up = true;
            break;
        }

        const Vec2 ee =
            env.base_plan.point(i + 1) + forward_kinematics(env.arm, joint.q1, joint.q2);
        const Vec2 tgt = env.target.point(i + 1);
        const double r = reward(ee, tgt, config.d_max);
        const int s_next = encode_state(env.disc, joint, i + 1);
        if (mode == EpisodeMode::Learn)
            bellman_update(table, s, a, r, s_next, config.alpha, config.gamma);

        reward_sum += r;
        ++reward_count;
        const double d = (ee - tgt).norm();
        err_sum += d;
        err_sq_sum += d * d;
        ++err_count;
        report.tracked_trajectory.samples.push_back({env.target.time(i + 1), ee.x, ee.y});
    }

    report.avg_reward = reward_count ? reward_sum / reward_count : 0.0;
    report.ade = err_count ? err_sum / err_count : 0.0;
    report.rmse = err_count ? std::sqrt(err_sq_sum / err_count) : 0.0;
    report.accuracy_pct = 100.0 * (1.0 - report.ade / env.arm.reach());
    return report;
}

TrainResult train(const TrackingEnv& env, const LearnConfig& config) {
    TrainResult result;
    result.table = QTable(env.disc);
    result.learning_curve.reserve(std::max(config.episodes, 0));
    if (config.episodes <= 0) return result;

    std::mt19937_64 rng(config.rng_seed);
    for (int episode = 0; episode < config.episodes; ++episode) {
        const double eps = config.epsilon_at(episode);
        const EpisodeReport rep =
            run_episode(env, result.table, config, EpisodeMode::Learn, eps, rng);
        result.learning_curve.push_back(rep.avg_reward);
    }
    return result;
}

}  // namespace aeroarm
