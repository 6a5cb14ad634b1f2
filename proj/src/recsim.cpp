#include "drpo/recsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace drpo {

namespace {

constexpr double kEcpmScale = 5.0;
constexpr double kClusterRadius = 2.0;
constexpr double kItemSpread = 0.5;  // stddev per dimension, variance 0.25

double cosine(std::span<const double> a, std::span<const double> b) {
    const double na = norm2(a);
    const double nb = norm2(b);
    if (na < 1e-12 || nb < 1e-12)
        throw std::invalid_argument("cosine: zero-norm vector");
    return dot(a, b) / (na * nb);
}

std::size_t argmax_latent(const UserModel& user, const ItemCatalog& catalog) {
    std::size_t best = 0;
    double best_r = -1.0;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        const double r = latent_reward(user, catalog.embeddings.row(i));
        if (r > best_r) {
            best_r = r;
            best = i;
        }
    }
    return best;
}

// Cumulative Zipf weights over catalog order; rank r has mass r^-s.
std::vector<double> zipf_cumulative(const std::vector<int>& ranks, double exponent) {
    std::vector<double> cum(ranks.size());
    double total = 0.0;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        total += std::pow(static_cast<double>(ranks[i]), -exponent);
        cum[i] = total;
    }
    return cum;
}

void append_csv_doubles(std::string& line, std::span<const double> v) {
    char buf[40];
    for (double x : v) {
        std::snprintf(buf, sizeof(buf), "%.12g", x);
        line += buf;
        line += ',';
    }
}

}  // namespace

const char* to_string(Source s) {
    switch (s) {
        case Source::Expert: return "expert";
        case Source::Popularity: return "popularity";
        case Source::Random: return "random";
        case Source::Online: return "online";
    }
    return "unknown";
}

void ScenarioConfig::validate() const {
    if (state_dim < 1 || action_dim < 1 || n_items < 1 || n_clusters < 1)
        throw std::invalid_argument("ScenarioConfig: all dimensions must be >= 1");
    if (n_items < n_clusters)
        throw std::invalid_argument("ScenarioConfig: n_items must be >= n_clusters");
    if (state_dim != action_dim)
        throw std::invalid_argument(
            "ScenarioConfig: state construction requires state_dim == action_dim");
    auto in01 = [](double w) { return w >= 0.0 && w <= 1.0; };
    if (!in01(w_expert) || !in01(w_popularity) || !in01(w_random))
        throw std::invalid_argument("ScenarioConfig: mixture weights must lie in [0, 1]");
    if (std::abs(w_expert + w_popularity + w_random - 1.0) > 1e-12)
        throw std::invalid_argument("ScenarioConfig: mixture weights must sum to 1");
    if (reward_noise < 0.0 || context_noise < 0.0 || expert_jitter < 0.0)
        throw std::invalid_argument("ScenarioConfig: noise levels must be non-negative");
    if (!(delta > 0.0)) throw std::invalid_argument("ScenarioConfig: delta must be positive");
}

ScenarioConfig medium_quality_config(std::uint64_t seed) {
    ScenarioConfig c;
    c.name = "medium_quality";
    c.w_expert = 0.10;
    c.w_popularity = 0.60;
    c.w_random = 0.30;
    c.seed = seed;
    return c;
}

ScenarioConfig extreme_noisy_config(std::uint64_t seed) {
    ScenarioConfig c;
    c.name = "extreme_noisy";
    c.w_expert = 0.05;
    c.w_popularity = 0.05;
    c.w_random = 0.90;
    c.seed = seed;
    return c;
}

ScenarioConfig scenario_by_name(const std::string& name, std::uint64_t seed) {
    if (name == "medium_quality") return medium_quality_config(seed);
    if (name == "extreme_noisy") return extreme_noisy_config(seed);
    throw std::invalid_argument("unknown scenario: " + name);
}

ItemCatalog generate_catalog(const ScenarioConfig& config, Rng& rng) {
    config.validate();
    ItemCatalog catalog;
    catalog.embeddings = DenseMatrix(config.n_items, config.action_dim);
    catalog.cluster_id.resize(config.n_items);
    catalog.zipf_rank.resize(config.n_items);

    const int per_cluster = config.n_items / config.n_clusters;
    const int remainder = config.n_items % config.n_clusters;
    std::size_t item = 0;
    for (int c = 0; c < config.n_clusters; ++c) {
        std::vector<double> center = rng.unit_sphere(config.action_dim);
        for (double& x : center) x *= kClusterRadius;
        const int count = per_cluster + (c < remainder ? 1 : 0);
        for (int j = 0; j < count; ++j, ++item) {
            auto row = catalog.embeddings.row(item);
            for (int k = 0; k < config.action_dim; ++k)
                row[k] = center[k] + kItemSpread * rng.normal();
            catalog.cluster_id[item] = c;
            catalog.zipf_rank[item] = static_cast<int>(item) + 1;
        }
    }
    catalog.zipf_cum = zipf_cumulative(catalog.zipf_rank, config.zipf_exponent);
    return catalog;
}

double latent_reward(const UserModel& user, std::span<const double> item_embedding) {
    const double c = cosine(item_embedding, user.interest);
    return std::exp(-(1.0 - c) / (2.0 * user.width * user.width));
}

double observe_reward(double r_latent, double noise, Rng& rng) {
    const double r = noise > 0.0 ? r_latent + noise * rng.normal() : r_latent;
    return std::clamp(r, 0.0, 1.0);
}

Transition logging_agent(const ScenarioConfig& config, const UserModel& user,
                         const ItemCatalog& catalog, std::span<const double> state,
                         Rng& rng) {
    if (catalog.size() == 0) throw std::invalid_argument("logging_agent: empty catalog");

    Transition t;
    t.state.assign(state.begin(), state.end());

    const double x = rng.uniform01();
    std::size_t item;
    if (x < config.w_expert) {
        t.source = Source::Expert;
        item = argmax_latent(user, catalog);
    } else if (x < config.w_expert + config.w_popularity) {
        t.source = Source::Popularity;
        std::vector<double> fallback;
        if (catalog.zipf_cum.empty())
            fallback = zipf_cumulative(catalog.zipf_rank, config.zipf_exponent);
        const std::vector<double>& cum = catalog.zipf_cum.empty() ? fallback : catalog.zipf_cum;
        const double u = rng.uniform01() * cum.back();
        item = static_cast<std::size_t>(
            std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
        item = std::min(item, catalog.size() - 1);
    } else {
        t.source = Source::Random;
        item = rng.uniform_index(catalog.size());
    }

    const auto emb = catalog.embeddings.row(item);
    t.action.assign(emb.begin(), emb.end());
    if (t.source == Source::Expert && config.expert_jitter > 0.0)
        for (double& a : t.action) a += config.expert_jitter * rng.normal();

    t.reward_obs = observe_reward(latent_reward(user, t.action), config.reward_noise, rng);
    return t;
}

SimEnv make_env(const ScenarioConfig& config) {
    config.validate();
    Rng rng(derive_seed(config.seed, "catalog"));
    return SimEnv{config, generate_catalog(config, rng)};
}

SampledUser sample_user(const ScenarioConfig& config, Rng& rng) {
    SampledUser su;
    su.user.interest = rng.unit_sphere(config.state_dim);
    su.user.width = config.delta;
    su.state = su.user.interest;
    if (config.context_noise > 0.0)
        for (double& x : su.state) x += config.context_noise * rng.normal();
    return su;
}

Dataset generate_dataset(const ScenarioConfig& config) {
    config.validate();
    if (config.dataset_size == 0)
        throw std::invalid_argument("generate_dataset: dataset_size must be positive");

    SimEnv env = make_env(config);
    Rng rng(derive_seed(config.seed, "data"));
    Dataset ds;
    ds.provenance = config;
    ds.transitions.reserve(config.dataset_size);
    for (std::size_t i = 0; i < config.dataset_size; ++i) {
        SampledUser su = sample_user(config, rng);
        ds.transitions.push_back(logging_agent(config, su.user, env.catalog, su.state, rng));
    }
    return ds;
}

std::size_t knn_retrieve(const ItemCatalog& catalog, std::span<const double> action) {
    if (catalog.size() == 0) throw std::invalid_argument("knn_retrieve: empty catalog");
    if (norm2(action) < 1e-12)
        throw std::invalid_argument("knn_retrieve: zero-norm action");
    std::size_t best = 0;
    double best_cos = -2.0;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        const double c = cosine(action, catalog.embeddings.row(i));
        if (c > best_cos) {
            best_cos = c;
            best = i;
        }
    }
    return best;
}

EvalResult evaluate_policy(const GaussianPolicy& policy, const SimEnv& env, int n_users,
                           Rng& rng) {
    if (n_users < 1) throw std::invalid_argument("evaluate_policy: n_users must be >= 1");

    DenseMatrix states(n_users, env.config.state_dim);
    std::vector<UserModel> users;
    users.reserve(n_users);
    for (int i = 0; i < n_users; ++i) {
        SampledUser su = sample_user(env.config, rng);
        std::copy(su.state.begin(), su.state.end(), states.row(i).begin());
        users.push_back(std::move(su.user));
    }

    const DenseMatrix means = mlp_forward(policy.mean_net, states);
    EvalResult out;
    int valid = 0;
    for (int i = 0; i < n_users; ++i) {
        const auto a = means.row(i);
        bool finite = true;
        for (double x : a)
            if (!std::isfinite(x)) finite = false;
        if (!finite || norm2(a) < 1e-12) {
            out.overflow = true;
            continue;
        }
        const std::size_t item = knn_retrieve(env.catalog, a);
        const auto emb = env.catalog.embeddings.row(item);
        out.reward += latent_reward(users[i], emb);
        double d2 = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) d2 += (a[k] - emb[k]) * (a[k] - emb[k]);
        out.dist += std::sqrt(d2);
        ++valid;
    }
    if (valid > 0) {
        out.reward /= valid;
        out.dist /= valid;
    }
    out.ecpm = kEcpmScale * out.reward;
    return out;
}

void export_dataset_csv(const Dataset& dataset, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("export_dataset_csv: cannot open " + path);
    const int d = dataset.provenance.state_dim;
    std::string header;
    for (int k = 0; k < d; ++k) header += "state_" + std::to_string(k) + ",";
    for (int k = 0; k < dataset.provenance.action_dim; ++k)
        header += "action_" + std::to_string(k) + ",";
    header += "reward,source\n";
    f << header;
    std::string line;
    char buf[40];
    for (const Transition& t : dataset.transitions) {
        line.clear();
        append_csv_doubles(line, t.state);
        append_csv_doubles(line, t.action);
        std::snprintf(buf, sizeof(buf), "%.12g", t.reward_obs);
        line += buf;
        line += ',';
        line += to_string(t.source);
        line += '\n';
        f << line;
    }
}

void export_catalog_csv(const ItemCatalog& catalog, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("export_catalog_csv: cannot open " + path);
    std::string header = "item,cluster,zipf_rank";
    for (std::size_t k = 0; k < catalog.embeddings.cols; ++k)
        header += ",emb_" + std::to_string(k);
    f << header << '\n';
    std::string line;
    char buf[40];
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        line = std::to_string(i) + "," + std::to_string(catalog.cluster_id[i]) + "," +
               std::to_string(catalog.zipf_rank[i]);
        for (double x : catalog.embeddings.row(i)) {
            std::snprintf(buf, sizeof(buf), ",%.12g", x);
            line += buf;
        }
        line += '\n';
        f << line;
    }
}

}  // namespace drpo
