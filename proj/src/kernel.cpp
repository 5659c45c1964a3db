#include "lessinfer/kernel.hpp"

#include <cmath>
#include <limits>

namespace lessinfer {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014327;  // 1/sqrt(2*pi)

double squared_distance(const FeatureVector& x, const FeatureVector& y) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return s;
}
}  // namespace

double Kernel::peak() const { return kInvSqrt2Pi / bandwidth; }

void Kernel::validate() const {
    if (!(bandwidth > 0) || !std::isfinite(bandwidth))
        throw argument_error("kernel: bandwidth must be positive and finite");
}

double kernel_eval(const FeatureVector& x, const FeatureVector& y, const Kernel& kernel) {
    kernel.validate();
    if (x.size() != y.size()) throw argument_error("kernel_eval: dimension mismatch");
    const double s2 = kernel.bandwidth * kernel.bandwidth;
    return kernel.peak() * std::exp(-squared_distance(x, y) / (2.0 * s2));
}

std::vector<double> density(const TrajectorySet& set, const Kernel& kernel) {
    set.require_features();
    kernel.validate();
    const std::size_t n = set.size();
    const double peak = kernel.peak();
    const double s2 = kernel.bandwidth * kernel.bandwidth;
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0;  // fixed j-order so parallel callers can't reorder the sum
        for (std::size_t j = 0; j < n; ++j)
            sum += peak * std::exp(-squared_distance(set.features[i], set.features[j]) / (2.0 * s2));
        out[i] = sum;
    }
    return out;
}

std::vector<double> BandwidthSearch::grid() const {
    if (fixed) return {*fixed};
    if (!(min_sigma > 0) || !(max_sigma >= min_sigma) || grid_size < 1)
        throw config_error("bandwidth search: need 0 < min <= max and a nonempty grid");
    std::vector<double> g(grid_size);
    if (grid_size == 1) {
        g[0] = min_sigma;
        return g;
    }
    const double lo = std::log(min_sigma);
    const double hi = std::log(max_sigma);
    for (std::size_t t = 0; t < grid_size; ++t)
        g[t] = std::exp(lo + (hi - lo) * static_cast<double>(t) / static_cast<double>(grid_size - 1));
    return g;
}

namespace detail {

double loo_log_likelihood(const std::vector<FeatureVector>& features, double sigma) {
    const std::size_t n = features.size();
    const Kernel k{sigma};
    const double peak = k.peak();
    const double s2 = sigma * sigma;
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            sum += peak * std::exp(-squared_distance(features[i], features[j]) / (2.0 * s2));
        }
        if (sum <= 0) return -std::numeric_limits<double>::infinity();
        total += std::log(sum / static_cast<double>(n - 1));
    }
    return total;
}

}  // namespace detail

Kernel select_bandwidth(const TrajectorySet& set, const BandwidthSearch& search) {
    set.require_features();
    if (set.size() < 2) throw argument_error("select_bandwidth: need at least two trajectories");
    if (search.fixed) {
        Kernel k{*search.fixed};
        k.validate();
        return k;
    }

    bool any_distinct = false;
    for (std::size_t i = 1; i < set.size() && !any_distinct; ++i)
        if (set.features[i] != set.features[0]) any_distinct = true;
    if (!any_distinct)
        throw degenerate_error(
            "select_bandwidth: all feature vectors identical; the leave-one-out "
            "likelihood has no finite maximizer");

    double best_sigma = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    bool have = false;
    for (double sigma : search.grid()) {  // ascending; strict '>' keeps the smaller sigma on ties
        const double value = detail::loo_log_likelihood(set.features, sigma);
        if (!have || value > best_value) {
            have = true;
            best_value = value;
            best_sigma = sigma;
        }
    }
    return Kernel{best_sigma};
}

}  // namespace lessinfer
