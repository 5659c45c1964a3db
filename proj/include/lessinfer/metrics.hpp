#pragma once

#include <string>
#include <vector>

#include "lessinfer/inference.hpp"

namespace lessinfer {

// A group of posteriors over one shared grid, labeled by where they came
// from; the unit the divergence metric runs over.
struct PosteriorCollection {
    std::vector<Belief> posteriors;
    std::vector<std::string> provenance;  // optional parallel labels
};

// 1 if the MAP estimate (lowest-index tie-break) equals theta*, else 0.
int true_match(const Belief& belief, const ThetaGrid& grid, std::size_t theta_star_index);

// Posterior mass assigned to theta*.
double true_posterior(const Belief& belief, std::size_t theta_star_index);

// Sum over ordered pairs (P, Q) of KL(P || Q) in nats; 0 iff all posteriors
// coincide.  Lower = the posteriors agree more = inference was more robust
// to the particular sample.  Every entry is smoothed by +1e-12 and
// renormalized first, since log-space Bayes can underflow to exact zeros.
double kl_aggregate(const PosteriorCollection& collection);

namespace detail {
double kl_divergence(const std::vector<double>& p, const std::vector<double>& q);
std::vector<double> smooth(const std::vector<double>& p);  // +1e-12, renormalize
}  // namespace detail

}  // namespace lessinfer
