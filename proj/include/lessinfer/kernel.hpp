#pragma once

#include <optional>
#include <vector>

#include "lessinfer/trajectory_set.hpp"

namespace lessinfer {

// Radial basis similarity kernel with a single isotropic bandwidth.
struct Kernel {
    double bandwidth = 1.0;  // sigma, feature-space units

    // Self-similarity value 1/(sigma*sqrt(2*pi)): the kernel at distance 0.
    double peak() const;

    void validate() const;  // bandwidth > 0 and finite
};

// s(x,y) = peak * exp(-||x-y||^2 / (2 sigma^2)).  Symmetric, maximal at x=y.
// The 1-D gaussian prefactor is kept even in k dimensions: it cancels in
// choice-rule normalization and only shifts log-likelihood objectives by a
// constant.
double kernel_eval(const FeatureVector& x, const FeatureVector& y, const Kernel& kernel);

// Density of each trajectory in feature space: density[i] = sum over ALL j
// (including j == i) of kernel_eval(phi_i, phi_j).  The self-term keeps every
// entry >= peak() > 0, so downstream division needs no guard.
std::vector<double> density(const TrajectorySet& set, const Kernel& kernel);

// Bandwidth search space: either a fixed override, or a log-spaced grid.
struct BandwidthSearch {
    double min_sigma = 1e-3;
    double max_sigma = 10.0;
    std::size_t grid_size = 200;
    std::optional<double> fixed;  // skip the search entirely

    std::vector<double> grid() const;  // the searched sigma values, ascending
};

// Leave-one-out KDE maximum likelihood over the search grid: pick the sigma
// maximizing sum_i log( (1/(n-1)) * sum_{j != i} kernel_eval(phi_i, phi_j) ),
// ties broken toward smaller sigma.  (The density sum WITH the self-term is
// maximized by sigma -> 0 on any set of distinct points, so the self-term is
// excluded here and only here.)
//
// Throws degenerate_error when all feature vectors are identical (the LOO
// objective has no finite maximizer), state_error when features are missing,
// argument_error when |set| < 2.
Kernel select_bandwidth(const TrajectorySet& set, const BandwidthSearch& search = {});

namespace detail {
// LOO log-likelihood objective at one sigma; -infinity when some point's
// leave-one-out sum underflows to zero.  Exposed for property tests.
double loo_log_likelihood(const std::vector<FeatureVector>& features, double sigma);
}  // namespace detail

}  // namespace lessinfer
