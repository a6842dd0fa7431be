#pragma once

#include <span>
#include <vector>

#include "coles/dense.hpp"
#include "coles/sparse.hpp"

namespace coles {

using Vec = std::vector<double>;

/// An anchor with sampled positive and negative partners.
struct ContrastiveBatch {
    Vec anchor;
    std::vector<Vec> positives;
    std::vector<Vec> negatives;
    double eta = 1.0;
};

/// log sigmoid(x) in the overflow-free form.
double log_sigmoid(double x) noexcept;
double sigmoid(double x) noexcept;

// An empty positives or negatives list contributes zero to the two
// pointwise objectives below.

/// mean_u log sigmoid(u.v) + eta * mean_u' log sigmoid(-u'.v)
double sampled_nce_sigmoid(const ContrastiveBatch& batch);

/// mean_u u.v - eta * mean_u' u'.v
double coles_pointwise(const ContrastiveBatch& batch);

struct BlockLoss {
    Vec mu_plus;
    Vec mu_minus;
    double loss = 0.0;
};

/// -v.(mu+ - mu-) with mu+/mu- the plain means of the two lists.
BlockLoss block_form(const ContrastiveBatch& batch);

/// Weighted block summaries: mu+ = sum w_u u, mu- = sum w_u' u'.
BlockLoss block_form_weighted(std::span<const double> anchor, std::span<const Vec> positives,
                              std::span<const double> pos_weights, std::span<const Vec> negatives,
                              std::span<const double> neg_weights);

/// Sum over anchors of the weighted block loss where anchor v's positive
/// block is its W+ neighbourhood and its negative block collects every
/// W_k neighbourhood weighted by eta'/kappa.
double graph_block_loss(const DenseMat& y, const SparseSym& w_pos,
                        std::span<const SparseSym> w_negs, double eta_prime);

/// Power mean M_p; p = 0 is the geometric mean.
double generalized_mean(std::span<const double> values, double p);

/// log M_p(exp(s_1), ..., exp(s_n)) evaluated with a max shift.
double log_generalized_mean_exp(std::span<const double> scores, double p);

enum class UniformityMode {
    /// log sum over N and {u} of exp(score): the SoftMax decomposition.
    softmax,
    /// log M_p over N only.
    generalized_mean,
};

struct AlignUniformOptions {
    UniformityMode mode = UniformityMode::generalized_mean;
    /// Rescale every vector to norm tau before scoring.
    bool normalize = true;
    double tau = 1.0;
};

struct AlignUniform {
    double align = 0.0;
    double uniform = 0.0;
    double total = 0.0;
};

/// Alignment / uniformity split of the contrastive loss for one anchor with
/// a single positive. p is ignored in softmax mode.
AlignUniform align_uniform(const ContrastiveBatch& batch, double p,
                           const AlignUniformOptions& options = {});

} // namespace coles
