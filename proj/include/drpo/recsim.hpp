#pragma once

#include "drpo/gaussian_policy.hpp"
#include "drpo/matrix.hpp"
#include "drpo/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace drpo {

enum class Source { Expert, Popularity, Random, Online };

const char* to_string(Source s);

/// Simulator parameters for one data scenario.
struct ScenarioConfig {
    std::string name = "medium_quality";
    int state_dim = 10;
    int action_dim = 10;
    int n_items = 500;
    int n_clusters = 5;
    double w_expert = 0.10;
    double w_popularity = 0.60;
    double w_random = 0.30;
    double reward_noise = 0.1;   // sigma of the observation noise
    double context_noise = 0.4;  // sigma of the state perturbation around u*
    double delta = 0.5;          // RBF preference width
    double expert_jitter = 0.1;  // per-dim stddev of the expert action jitter
    double zipf_exponent = 1.1;
    std::size_t dataset_size = 50000;
    std::uint64_t seed = 0;

    void validate() const;
};

ScenarioConfig medium_quality_config(std::uint64_t seed);
ScenarioConfig extreme_noisy_config(std::uint64_t seed);
/// Lookup by name ("medium_quality" | "extreme_noisy"); throws on unknown.
ScenarioConfig scenario_by_name(const std::string& name, std::uint64_t seed);

struct ItemCatalog {
    DenseMatrix embeddings;        // one row per item
    std::vector<int> cluster_id;
    std::vector<int> zipf_rank;    // 1-based, assigned by cluster then index
    std::vector<double> zipf_cum;  // cumulative rank^-s weights, catalog order

    std::size_t size() const { return embeddings.rows; }
};

struct UserModel {
    std::vector<double> interest;  // u*
    double width = 0.5;            // delta
};

struct Transition {
    std::vector<double> state;
    std::vector<double> action;
    double reward_obs = 0.0;
    Source source = Source::Random;
};

struct Dataset {
    std::vector<Transition> transitions;
    ScenarioConfig provenance;

    std::size_t size() const { return transitions.size(); }
};

/// Cluster centers drawn on the unit sphere scaled by 2.0; items are
/// center + N(0, 0.25 I). Ranks follow catalog order (cluster-major).
ItemCatalog generate_catalog(const ScenarioConfig& config, Rng& rng);

/// R_latent = exp(-(1 - cos(e_a, u*)) / (2 delta^2)), in (0, 1].
double latent_reward(const UserModel& user, std::span<const double> item_embedding);

/// R_obs = clip(R_latent + N(0, noise^2), 0, 1).
double observe_reward(double r_latent, double noise, Rng& rng);

/// One logged interaction from the mixed-strategy agent: expert picks the
/// argmax-reward item (plus jitter), popularity samples by a Zipf law over
/// item ranks, random picks uniformly.
Transition logging_agent(const ScenarioConfig& config, const UserModel& user,
                         const ItemCatalog& catalog, std::span<const double> state,
                         Rng& rng);

/// Catalog plus config; the catalog is reproducible from config.seed.
struct SimEnv {
    ScenarioConfig config;
    ItemCatalog catalog;
};

SimEnv make_env(const ScenarioConfig& config);

/// Fresh user for interaction or evaluation: u* uniform on the sphere,
/// state = u* + N(0, context_noise^2 I).
struct SampledUser {
    UserModel user;
    std::vector<double> state;
};
SampledUser sample_user(const ScenarioConfig& config, Rng& rng);

Dataset generate_dataset(const ScenarioConfig& config);

/// Index of the item with maximal cosine similarity; ties to lowest index.
std::size_t knn_retrieve(const ItemCatalog& catalog, std::span<const double> action);

struct EvalResult {
    double reward = 0.0;  // mean latent reward of the retrieved items
    double ecpm = 0.0;    // 5.0 * reward
    double dist = 0.0;    // mean L2 distance from raw action to retrieved item
    bool overflow = false;
};

/// Deterministic policy evaluation: retrieval applies to the policy mean.
EvalResult evaluate_policy(const GaussianPolicy& policy, const SimEnv& env, int n_users,
                           Rng& rng);

/// CSV exports documented in the README; header row then one line per entry.
void export_dataset_csv(const Dataset& dataset, const std::string& path);
void export_catalog_csv(const ItemCatalog& catalog, const std::string& path);

}  // namespace drpo
