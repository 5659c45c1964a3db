#include "lessinfer/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "lessinfer/rng.hpp"

namespace lessinfer {

namespace detail {

std::size_t draw_index(const ChoiceDistribution& dist, double u) {
    // inverse CDF over the canonical order; the last index absorbs any
    // floating-point shortfall in the cumulative sum
    double acc = 0;
    for (std::size_t i = 0; i + 1 < dist.probs.size(); ++i) {
        acc += dist.probs[i];
        if (u < acc) return i;
    }
    return dist.probs.size() - 1;
}

}  // namespace detail

namespace {

DemonstrationSet draw_from(const ChoiceDistribution& dist, const TrajectorySet& set,
                           const std::vector<double>& theta_star, double beta, ModelKind kind,
                           std::size_t n, std::uint64_t seed) {
    for (double p : dist.probs)
        if (!(p >= 0) || !std::isfinite(p))
            throw numerical_error("sample_demos: invalid choice distribution");

    DemonstrationSet out;
    out.ground_truth = theta_star;
    out.beta = beta;
    out.kind = kind;
    out.seed = seed;
    out.demos.reserve(n);
    out.indices.reserve(n);
    SeedStream stream(seed);
    for (std::size_t d = 0; d < n; ++d) {
        const std::size_t idx = detail::draw_index(dist, stream.uniform_unit());
        out.indices.push_back(idx);
        out.demos.push_back(set.trajectories[idx]);
    }
    return out;
}

}  // namespace

DemonstrationSet sample_demos(const TrajectorySet& set, const std::vector<double>& theta_star,
                              double beta, ModelKind kind, const std::optional<Kernel>& kernel,
                              std::size_t n, std::uint64_t seed) {
    set.require_features();
    if (n == 0) throw argument_error("sample_demos: n must be positive");
    if (kind == ModelKind::less && !kernel)
        throw config_error("sample_demos: the less model needs a kernel");

    const RewardModel model{theta_star, beta};
    const ChoiceDistribution dist =
        kind == ModelKind::less ? less_rule(set, model, *kernel) : boltzmann(set, model);
    return draw_from(dist, set, theta_star, beta, kind, n, seed);
}

DemonstrationSet sample_demos_misspecified(const TrajectorySet& set, const GridWorld& world,
                                           const FeatureSet& extended,
                                           const std::vector<double>& theta_star, double beta,
                                           const std::optional<Kernel>& kernel, std::size_t n,
                                           std::uint64_t seed) {
    set.require_features();
    if (n == 0) throw argument_error("sample_demos_misspecified: n must be positive");

    const auto& base = set.feature_set.descriptors;
    if (extended.descriptors.size() <= base.size() ||
        !std::equal(base.begin(), base.end(), extended.descriptors.begin()))
        throw config_error(
            "sample_demos_misspecified: extended features must start with the "
            "set's reward features and add at least one more");
    bool has_mx = false, has_my = false;
    for (const auto& d : extended.descriptors) {
        if (d.kind == FeatureDescriptor::Kind::mean_x) has_mx = true;
        if (d.kind == FeatureDescriptor::Kind::mean_y) has_my = true;
    }
    if (!has_mx || !has_my)
        throw config_error("sample_demos_misspecified: extended features must include mean-x and mean-y");
    if (theta_star.size() != base.size())
        throw argument_error("sample_demos_misspecified: theta* must match the reward features");

    // the demonstrator's similarity space: same trajectories, extra columns
    TrajectorySet extended_set = compute_features(set, world, extended);

    // reward ignores the extra attributes: zero-pad theta
    std::vector<double> theta_ext = theta_star;
    theta_ext.resize(extended.descriptors.size(), 0.0);

    const Kernel k = kernel ? *kernel : select_bandwidth(extended_set);
    const RewardModel model{theta_ext, beta};
    const ChoiceDistribution dist = less_rule(extended_set, model, k);
    DemonstrationSet out = draw_from(dist, set, theta_star, beta, ModelKind::less, n, seed);
    return out;
}

}  // namespace lessinfer
