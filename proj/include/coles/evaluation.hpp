#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "coles/dense.hpp"

namespace coles {

struct SplitSpec {
    std::size_t per_class = 20;
    std::size_t val_size = 500;
    /// Members a class must keep outside the training draw.
    std::size_t reserve = 0;
    std::uint64_t seed = 0;
    /// Split number; keys the stream so splits of one seed differ.
    std::uint64_t index = 0;
};

struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> val;
    std::vector<std::size_t> test;
};

/// per_class uniform picks from every class go to train; the shuffled
/// remainder fills val (up to val_size) and then test. Each set is sorted.
Split random_split(std::span<const int> labels, const SplitSpec& spec);

struct LogRegConfig {
    double l2 = 1e-4;
    double lr = 0.1;
    std::size_t epochs = 500;
    /// z-score columns with training statistics before fitting.
    bool standardize = true;
};

struct LogRegModel {
    std::size_t num_classes = 0;
    std::vector<double> mean;
    std::vector<double> scale;
    DenseMat weights;           ///< d x C
    std::vector<double> bias;   ///< C
    std::vector<double> loss_history;

    DenseMat probabilities(const DenseMat& x) const;
    std::vector<int> predict(const DenseMat& x) const;
};

/// Multinomial logistic regression by full-batch gradient descent on
/// mean cross-entropy + l2 * ||weights||^2 from a zero start. A step that
/// would raise the loss is retried with half the learning rate.
LogRegModel logreg_fit(const DenseMat& x, std::span<const int> labels,
                       const LogRegConfig& config = {});

std::vector<int> logreg_predict(const LogRegModel& model, const DenseMat& x);

struct KMeansConfig {
    std::size_t restarts = 10;
    std::size_t max_iterations = 300;
    std::uint64_t seed = 0;
};

struct KMeansResult {
    std::vector<int> assignment;
    DenseMat centroids;
    double inertia = 0.0;
};

/// Lloyd iterations from k-means++ seeds; keeps the restart with least inertia.
KMeansResult kmeans(const DenseMat& y, std::size_t k, const KMeansConfig& config = {});

enum class ScoreMode { classification, clustering };

struct Metrics {
    double accuracy = 0.0;
    double macro_f1 = 0.0;
    double micro_f1 = 0.0;
    double nmi = 0.0;
};

/// Metrics of pred against truth. Clustering mode relabels clusters with the
/// optimal one-to-one class assignment before computing accuracy and F1.
Metrics score(std::span<const int> pred, std::span<const int> truth, ScoreMode mode);

/// Normalised mutual information, arithmetic-mean normalisation, natural log.
double nmi(std::span<const int> a, std::span<const int> b);

/// Minimum-cost assignment for a rows x cols cost matrix (rows <= cols).
/// Returns the column chosen for each row.
std::vector<std::size_t> hungarian(const DenseMat& cost);

} // namespace coles
