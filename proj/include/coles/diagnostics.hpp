#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "coles/dense.hpp"
#include "coles/sparse.hpp"

namespace coles {

/// 1.06 * sd * n^{-1/5}; sd is the unbiased sample deviation. A constant
/// sample falls back to sd = 1e-3 * max(1, |mean|).
double silverman_bandwidth(std::span<const double> sample);

/// Mean of the two Silverman bandwidths.
double pooled_bandwidth(std::span<const double> p, std::span<const double> q);

std::vector<double> linspace(double lo, double hi, std::size_t points);

/// Gaussian Parzen estimate evaluated at each grid point. The grid must be
/// strictly increasing with at least two points.
std::vector<double> parzen_density(std::span<const double> sample, double bandwidth,
                                   std::span<const double> grid);

/// Grid shared by two samples: union of supports padded by 5 bandwidths.
std::vector<double> shared_grid(std::span<const double> p, std::span<const double> q,
                                double bandwidth, std::size_t points = 512);

/// Trapezoidal rule on a sorted grid.
double trapezoid(std::span<const double> grid, std::span<const double> values);

/// Jensen-Shannon divergence (natural log) between the Parzen densities of
/// two samples on a shared grid, clipped to [0, log 2 + 1e-6].
double js_divergence(std::span<const double> p, std::span<const double> q, double bandwidth,
                     std::size_t grid_points = 512);

/// Exact W1 between two empirical measures, integral of |F_p - F_q|.
double wasserstein1(std::span<const double> p, std::span<const double> q);

struct LipschitzCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// |u.v - u'.v| against ||v||_max * ||u - u'||_1.
LipschitzCheck lipschitz_check(std::span<const double> u, std::span<const double> u_prime,
                               std::span<const double> v);

enum class HomophilyForm {
    /// (1/n) sum_i (1/|N_i|) sum_{j in N_i} [l_i = l_j], diagonal ignored.
    neighbor_fraction,
    /// (1/n) sum_ij W_ij [l_i = l_j] using the stored weights as given.
    weighted,
};

double homophily(const SparseSym& adj, std::span<const int> labels,
                 HomophilyForm form = HomophilyForm::neighbor_fraction);

/// sum_c rho_c^2: probability that two independent nodes share a class.
double expected_negative_homophily(std::span<const double> class_probs);

/// Same quantity from class counts, computed as sum n_c^2 / N^2 in integers
/// and rounded once.
double expected_negative_homophily_counts(std::span<const std::size_t> class_counts);

/// |s(x) - s(x')| / (s(x) + s(x')) with s the logistic sigmoid.
double separation(double score_pos, double score_neg);

/// Dot products y_i . y_j over every stored off-diagonal pair i < j.
std::vector<double> pair_scores(const DenseMat& y, const SparseSym& graph);

} // namespace coles
