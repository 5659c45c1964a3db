#include "lessinfer/metrics.hpp"

#include <cmath>

namespace lessinfer {

namespace detail {

std::vector<double> smooth(const std::vector<double>& p) {
    std::vector<double> out(p.size());
    double total = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] = p[i] + 1e-12;
        total += out[i];
    }
    for (double& v : out) v /= total;
    return out;
}

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
    double kl = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0 || q[i] <= 0)
            throw numerical_error("kl_divergence: zero entry survived smoothing");
        kl += p[i] * std::log(p[i] / q[i]);
    }
    return kl;
}

}  // namespace detail

int true_match(const Belief& belief, const ThetaGrid& grid, std::size_t theta_star_index) {
    if (theta_star_index >= grid.size())
        throw argument_error("true_match: theta* index out of range");
    return map_theta(belief) == theta_star_index ? 1 : 0;
}

double true_posterior(const Belief& belief, std::size_t theta_star_index) {
    if (theta_star_index >= belief.probs.size())
        throw argument_error("true_posterior: theta* index out of range");
    return belief.probs[theta_star_index];
}

double kl_aggregate(const PosteriorCollection& collection) {
    const auto& ps = collection.posteriors;
    if (ps.size() < 2) throw argument_error("kl_aggregate: need at least two posteriors");
    const std::size_t dim = ps.front().probs.size();
    for (const auto& p : ps)
        if (p.probs.size() != dim)
            throw argument_error("kl_aggregate: posteriors over different grids");

    std::vector<std::vector<double>> smoothed;
    smoothed.reserve(ps.size());
    for (const auto& p : ps) smoothed.push_back(detail::smooth(p.probs));

    double total = 0;  // ordered pairs; the a==b terms are exact zeros
    for (std::size_t a = 0; a < smoothed.size(); ++a)
        for (std::size_t b = 0; b < smoothed.size(); ++b) {
            if (a == b) continue;
            total += detail::kl_divergence(smoothed[a], smoothed[b]);
        }
    return total;
}

}  // namespace lessinfer
