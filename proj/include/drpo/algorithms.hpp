#pragma once

#include "drpo/adam.hpp"
#include "drpo/dro.hpp"
#include "drpo/gaussian_policy.hpp"
#include "drpo/recsim.hpp"

#include <optional>
#include <string>
#include <vector>

namespace drpo {

enum class Algo { Drpo, DrpoExp, Bc, Apg, Awr, AsymRe, Iql, Crr, Bppo, AdaptiveBc };

Algo algo_from_string(const std::string& tag);
const char* to_string(Algo algo);
const std::vector<Algo>& all_algos();

struct AlgoConfig {
    Algo algo = Algo::Drpo;
    double lr = 3e-4;
    int batch_size = 320;
    int steps = 5000;
    int hidden_dim = 128;

    // Variance-guided filter (DRPO, DRPO-Exp, Adaptive BC).
    double top_p_init = 0.5;
    double target_ratio = 0.5;
    bool adaptive_filter = true;  // false freezes P at top_p_init

    // Algorithm-specific scalars.
    double awr_beta = 0.05;
    double exp_tau = 0.05;
    double asymre_down_weight = 0.1;
    double iql_expectile = 0.7;
    double iql_beta = 0.05;
    double crr_beta = 1.0;
    bool crr_exp = false;  // exponential variant of the CRR weight
    double bppo_clip = 0.2;
    int bppo_bc_steps = 2000;
    double weight_clip = 20.0;

    double log_std_min = -10.0;
    double log_std_max = 5.0;

    std::uint64_t seed = 0;
    int eval_every = 250;
    int eval_users = 1000;
    int metrics_every = 250;  // 1 emits one row per training step
};

struct Batch {
    DenseMatrix states;
    DenseMatrix actions;
    std::vector<double> rewards;
    std::vector<Source> sources;

    std::size_t size() const { return rewards.size(); }
};

Batch sample_batch(const Dataset& dataset, int batch_size, Rng& rng);

/// Frozen description of one step's policy objective: everything that does
/// not move with the policy parameters (selections, weights, clip branches,
/// critic outputs) is captured here. The training step differentiates this
/// object, and the finite-difference suite re-evaluates its loss at
/// perturbed parameters, so both sides see the same function.
struct PolicyObjective {
    enum class Kind { WeightedNll, PpoSurrogate };
    Kind kind = Kind::WeightedNll;
    DenseMatrix states;
    DenseMatrix actions;
    std::vector<double> weights;  // NLL coefficients (per gathered row)
    double divisor = 1.0;
    // Rewards of the gathered rows and the full-batch mean, kept for the
    // signal/noise decomposition.
    std::vector<double> row_rewards;
    double batch_mean_reward = 0.0;
    // PPO surrogate extras.
    std::vector<double> advantages;
    std::vector<double> behavior_logp;
    std::vector<double> ratios;            // at the build point
    std::vector<char> unclipped_active;    // frozen min() branch
    double clip_eps = 0.2;
};

double policy_objective_loss(const PolicyObjective& obj, const GaussianPolicy& policy);
PolicyGrads policy_objective_grads(const PolicyObjective& obj, const GaussianPolicy& policy);

/// Norms of the positive-advantage and non-positive-advantage contributions
/// to the policy gradient of `obj` (the Eq.-style signal/noise split).
struct GradSplit {
    double signal_norm = 0.0;
    double noise_norm = 0.0;
};
GradSplit split_gradient(const PolicyObjective& obj, const GaussianPolicy& policy);

struct CriticObjective {
    enum class Kind { Mse, Expectile };
    Kind kind = Kind::Mse;
    DenseMatrix inputs;  // states, or state||action rows for Q critics
    std::vector<double> targets;
    double expectile = 0.7;
};

double critic_objective_loss(const CriticObjective& obj, const MlpParams& critic);
MlpGrads critic_objective_grads(const CriticObjective& obj, const MlpParams& critic);

struct TrainerState {
    AlgoConfig config;
    GaussianPolicy policy;
    AdamState policy_opt;
    FilterState filter;
    std::optional<MlpParams> critic;  // IQL value net or CRR Q net
    std::optional<AdamState> critic_opt;
    std::optional<GaussianPolicy> behavior;  // BPPO reference policy
    long long overflow_count = 0;
    long long clamp_count = 0;
    int step = 0;
};

TrainerState make_trainer(const AlgoConfig& config, int state_dim, int action_dim,
                          Rng& init_rng);

struct StepInfo {
    double loss = 0.0;
    double nu_star = 0.0;
    double top_p = 1.0;
    double sigma_ratio = 0.0;
    int selected = 0;
    int online_selected = 0;
    bool overflow = false;
    GradSplit grads;  // filled only when requested
};

/// Builds the frozen objective for the current batch exactly as the step
/// functions do, including the filter-state mutation for filter algorithms.
/// Also performs the critic update for critic-based algorithms.
PolicyObjective build_policy_objective(TrainerState& trainer, const Batch& batch,
                                       StepInfo& info);
/// Critic regression objective for IQL/CRR (empty for the others); pure.
std::optional<CriticObjective> build_critic_objective(const TrainerState& trainer,
                                                      const Batch& batch);

/// One optimization step of the configured algorithm.
StepInfo algo_step(TrainerState& trainer, const Batch& batch, bool want_grad_split = false);

// Named entry points matching the algorithm suite; each checks that the
// trainer is configured for it and forwards to algo_step.
StepInfo drpo_step(TrainerState& trainer, const Batch& batch);
StepInfo drpo_exp_step(TrainerState& trainer, const Batch& batch);
StepInfo bc_step(TrainerState& trainer, const Batch& batch);
StepInfo apg_step(TrainerState& trainer, const Batch& batch);
StepInfo awr_step(TrainerState& trainer, const Batch& batch);
StepInfo asymre_step(TrainerState& trainer, const Batch& batch);
StepInfo iql_step(TrainerState& trainer, const Batch& batch);
StepInfo crr_step(TrainerState& trainer, const Batch& batch);
StepInfo bppo_step(TrainerState& trainer, const Batch& batch);
StepInfo adaptive_bc_step(TrainerState& trainer, const Batch& batch);

struct RunMetricsRow {
    int step = 0;
    double reward = 0.0;
    double ecpm = 0.0;
    double dist = 0.0;
    double top_p = 1.0;
    double nu_star = 0.0;
    double sigma_ratio = 0.0;
    double grad_norm_signal = 0.0;
    double grad_norm_noise = 0.0;
    double online_ratio = 0.0;
    long long overflow_count = 0;
};

struct TrainResult {
    GaussianPolicy policy;
    std::vector<RunMetricsRow> rows;
    EvalResult final_eval;
    long long overflow_count = 0;
    long long clamp_count = 0;
};

/// Offline training: `steps` iterations over batches sampled uniformly with
/// replacement, evaluation every eval_every steps, deterministic under seed.
TrainResult train(const AlgoConfig& config, const SimEnv& env, const Dataset& dataset);

struct O2oOptions {
    int offline_steps = 2500;
    int online_steps = 2500;
    double online_fraction = 0.5;
};

/// Offline phase followed by a hybrid phase where each batch mixes offline
/// samples with fresh policy-generated interactions.
TrainResult train_o2o(const AlgoConfig& config, const SimEnv& env, const Dataset& dataset,
                      const O2oOptions& options);

}  // namespace drpo
