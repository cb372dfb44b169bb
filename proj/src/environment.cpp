#include "banditnet/environment.hpp"

#include <cmath>
#include <stdexcept>

namespace banditnet {

// ----------------------------------------------------------------------------
// validation
// ----------------------------------------------------------------------------

void InstanceConfig::validate() const {
    if (n_nodes < 1) throw std::invalid_argument("InstanceConfig: n_nodes must be >= 1");
    if (n_arms < 1) throw std::invalid_argument("InstanceConfig: n_arms must be >= 1");
    dims.validate();
    if (dims.n_nodes() != n_nodes)
        throw std::invalid_argument(
            "InstanceConfig: dims.d_specific must have one entry per node");
    if (!std::isfinite(noise_sigma) || noise_sigma < 0.0)
        throw std::invalid_argument("InstanceConfig: noise_sigma must be finite and >= 0");
    if (context_mean_common.size() != dims.d_common)
        throw std::invalid_argument(
            "InstanceConfig: context_mean_common must have length dims.d_common");
    if (!context_mean_common.allFinite())
        throw std::invalid_argument("InstanceConfig: context_mean_common must be finite");
    if (!std::isfinite(context_cov_scale_common) || context_cov_scale_common <= 0.0)
        throw std::invalid_argument(
            "InstanceConfig: context_cov_scale_common must be finite and > 0");
    if (static_cast<int>(context_cov_scale_specific.size()) != n_nodes)
        throw std::invalid_argument(
            "InstanceConfig: context_cov_scale_specific must have one entry per node");
    for (double s : context_cov_scale_specific)
        if (!std::isfinite(s) || s <= 0.0)
            throw std::invalid_argument(
                "InstanceConfig: context_cov_scale_specific entries must be finite and > 0");
    if (!std::isfinite(reward_gap_scale) || reward_gap_scale <= 0.0)
        throw std::invalid_argument("InstanceConfig: reward_gap_scale must be > 0");
    if (!std::isfinite(outlier_probability) || outlier_probability < 0.0 ||
        outlier_probability > 1.0)
        throw std::invalid_argument("InstanceConfig: outlier_probability must be in [0, 1]");
    if (!std::isfinite(outlier_magnitude) || outlier_magnitude < 1.0)
        throw std::invalid_argument("InstanceConfig: outlier_magnitude must be >= 1");
}

// ----------------------------------------------------------------------------
// ground truth
// ----------------------------------------------------------------------------

namespace {

Eigen::VectorXd draw_normal(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(dim);
    for (int h = 0; h < dim; ++h) v(h) = gauss(rng);
    return v;
}

Eigen::VectorXd rescaled_to(Eigen::VectorXd v, double target_norm) {
    const double norm = v.norm();
    if (norm < 1e-300) {  // practically unreachable; keep the invariant anyway
        v.setZero();
        v(0) = target_norm;
        return v;
    }
    return v * (target_norm / norm);
}

}  // namespace

Environment Environment::new_instance(const InstanceConfig& config) {
    config.validate();
    Environment env;
    env.config_ = config;

    const int n = config.n_nodes;
    const int k_arms = config.n_arms;
    const int d_c = config.dims.d_common;

    // Energy split between the shared and specific blocks follows the
    // dimension split.  The common block is drawn at a fraction of its budget
    // (headroom) so the gap transform below has room to grow arm differences;
    // every concatenated parameter has norm sqrt(headroom^2*w_c^2 + w_s^2) < 1.
    const double w_common =
        std::sqrt(static_cast<double>(d_c) / (d_c + config.dims.mean_specific_dim()));
    const double w_specific = std::sqrt(1.0 - w_common * w_common);
    const double kCommonHeadroom = 0.7;

    auto& common = env.truth_.theta_common;
    common.resize(k_arms);
    for (int k = 0; k < k_arms; ++k) {
        auto rng = make_engine(config.seed, Stream::theta_common, k);
        common[k] = rescaled_to(draw_normal(rng, d_c), kCommonHeadroom * w_common);
    }

    // Scale the best-vs-second-best reward spread: amplify each arm's common
    // parameter's deviation from the across-arm mean by g, then cap the norm
    // at the full common budget w_c.  Larger deviations mean more dispersed
    // per-context arm scores, so the top-two expected-reward gap grows with g
    // (and shrinks for g < 1).  g = 1 is the exact identity (and thanks to
    // the headroom no baseline norm exceeds the cap anyway); the cap keeps
    // every concatenated parameter inside the unit ball for any g.
    const double g = config.reward_gap_scale;
    if (g != 1.0) {
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(d_c);
        for (int k = 0; k < k_arms; ++k) mean += common[k];
        mean /= k_arms;
        for (int k = 0; k < k_arms; ++k) {
            Eigen::VectorXd q = mean + g * (common[k] - mean);
            const double norm = q.norm();
            if (norm > w_common) q *= w_common / norm;
            common[k] = q;
        }
    }

    auto& specific = env.truth_.theta_specific;
    specific.resize(n);
    for (int i = 0; i < n; ++i) {
        specific[i].resize(k_arms);
        for (int k = 0; k < k_arms; ++k) {
            auto rng = make_engine(config.seed, Stream::theta_specific, i, k);
            specific[i][k] =
                rescaled_to(draw_normal(rng, config.dims.d_specific[i]), w_specific);
        }
    }
    return env;
}

// ----------------------------------------------------------------------------
// sampling
// ----------------------------------------------------------------------------

std::vector<Context> Environment::sample_contexts(int t) const {
    if (t < 1) throw std::invalid_argument("sample_contexts: t must be >= 1");
    const int d_c = config_.dims.d_common;
    std::vector<Context> out(config_.n_nodes);
    for (int i = 0; i < config_.n_nodes; ++i) {
        auto rng = make_engine(config_.seed, Stream::context, i, t);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int d_s = config_.dims.d_specific[i];

        Eigen::VectorXd raw(d_c + d_s);
        const double sd_c = std::sqrt(config_.context_cov_scale_common);
        for (int h = 0; h < d_c; ++h)
            raw(h) = config_.context_mean_common(h) + sd_c * gauss(rng);
        const double sd_s = std::sqrt(config_.context_cov_scale_specific[i]);
        for (int h = 0; h < d_s; ++h) raw(d_c + h) = sd_s * gauss(rng);

        if (config_.outlier_probability > 0.0) {
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            if (unit(rng) < config_.outlier_probability) raw *= config_.outlier_magnitude;
        }

        const Eigen::VectorXd clamped = clamp_to_unit_ball(raw);
        out[i].common = clamped.head(d_c);
        out[i].specific = clamped.tail(d_s);
    }
    return out;
}

// ----------------------------------------------------------------------------
// rewards
// ----------------------------------------------------------------------------

double Environment::expected_reward(int node, int arm, const Context& ctx) const {
    const auto& theta_c = truth_.theta_common.at(arm);
    const auto& theta_s = truth_.theta_specific.at(node).at(arm);
    if (ctx.common.size() != theta_c.size() || ctx.specific.size() != theta_s.size())
        throw std::invalid_argument(
            "expected_reward: context block sizes do not match the node's dimensions");
    const double r = ctx.common.dot(theta_c) + ctx.specific.dot(theta_s);
    if (std::abs(r) > 1.0 + 1e-9)
        throw std::logic_error("expected_reward: |value| exceeds 1, invariant violated");
    return r;
}

double Environment::draw_reward(int node, int arm, const Context& ctx,
                                std::mt19937_64& rng) const {
    const double mean = expected_reward(node, arm, ctx);
    if (config_.noise_sigma == 0.0) return mean;
    std::normal_distribution<double> gauss(0.0, 1.0);
    return mean + config_.noise_sigma * gauss(rng);
}

int Environment::optimal_arm(int node, const Context& ctx) const {
    int best = 0;
    double best_value = expected_reward(node, 0, ctx);
    for (int k = 1; k < config_.n_arms; ++k) {
        const double v = expected_reward(node, k, ctx);
        if (v > best_value) {
            best_value = v;
            best = k;
        }
    }
    return best;
}

// ----------------------------------------------------------------------------
// presets
// ----------------------------------------------------------------------------

double preset_specific_scale(int node) {
    const double inv_golden = 0.6180339887498949;
    const double frac = std::fmod((node + 1) * inv_golden, 1.0);
    return 0.05 + 0.15 * frac;
}

void resize_nodes(InstanceConfig& config, int n_nodes) {
    if (n_nodes < 1) throw std::invalid_argument("resize_nodes: n_nodes must be >= 1");
    const int d_s = config.dims.d_specific.empty() ? 1 : config.dims.d_specific.front();
    config.n_nodes = n_nodes;
    config.dims.d_specific.assign(n_nodes, d_s);
    config.context_cov_scale_specific.resize(n_nodes);
    for (int i = 0; i < n_nodes; ++i)
        config.context_cov_scale_specific[i] = preset_specific_scale(i);
}

namespace {

InstanceConfig base_preset(int d_common, int d_specific) {
    InstanceConfig cfg;
    cfg.n_arms = 6;
    cfg.dims.d_common = d_common;
    cfg.dims.d_specific.assign(1, d_specific);
    cfg.noise_sigma = 0.1;
    cfg.context_mean_common = Eigen::VectorXd::Zero(d_common);
    cfg.context_cov_scale_common = 0.1;
    cfg.reward_gap_scale = 1.0;
    cfg.outlier_probability = 0.0;
    cfg.outlier_magnitude = 1.0;
    cfg.seed = 1;
    resize_nodes(cfg, 12);
    return cfg;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"default",      "low_shared_ratio", "high_shared_ratio",
            "outlier",      "rich_actions",     "large_gap"};
}

InstanceConfig preset(const std::string& name) {
    if (name == "default") return base_preset(2, 2);
    if (name == "low_shared_ratio") return base_preset(1, 3);
    if (name == "high_shared_ratio") return base_preset(6, 1);
    if (name == "outlier") {
        InstanceConfig cfg = base_preset(2, 2);
        cfg.outlier_probability = 0.05;
        cfg.outlier_magnitude = 50.0;
        return cfg;
    }
    if (name == "rich_actions") {
        InstanceConfig cfg = base_preset(2, 2);
        cfg.n_arms = 20;
        return cfg;
    }
    if (name == "large_gap") {
        InstanceConfig cfg = base_preset(2, 2);
        cfg.reward_gap_scale = 4.0;
        return cfg;
    }
    std::string names;
    for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
    throw std::invalid_argument("preset: unknown name \"" + name +
                                "\"; valid presets are: " + names);
}

}  // namespace banditnet
