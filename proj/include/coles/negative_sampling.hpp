#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "coles/sparse.hpp"

namespace coles {

enum class NegativeMode { per_node, erdos_renyi };

struct NegSampleConfig {
    std::size_t kappa = 10;
    std::size_t per_node = 5;
    NegativeMode mode = NegativeMode::per_node;
    double p_prime = 0.01;
    double eta_prime = 1.0;
    std::uint64_t seed = 0;

    /// Throws InvalidArgument when the config cannot be used on n nodes.
    void validate(std::size_t n) const;
};

/// Raw (unnormalised, binary, loop-free) negative graph number k.
///
/// Per-node mode draws cfg.per_node distinct partners for each node with
/// Floyd's algorithm; the union of those pairs is symmetrised. ER mode keeps
/// every unordered pair with probability p'. The stream is Rng(seed, k).
SparseSym sample_negative_adjacency(std::size_t n, const NegSampleConfig& cfg, std::size_t k);

/// sample_negative_adjacency followed by self-loops and degree normalisation.
SparseSym sample_negative_graph(std::size_t n, const NegSampleConfig& cfg, std::size_t k);

/// All cfg.kappa normalised negative graphs, k = 0..kappa-1.
std::vector<SparseSym> sample_negative_graphs(std::size_t n, const NegSampleConfig& cfg);

/// W+ - (eta'/kappa) * sum_k W_k. Returns W+ unchanged when kappa = 0 or eta' = 0.
SparseSym build_delta_w(const SparseSym& w_pos, std::span<const SparseSym> w_negs,
                        double eta_prime);

struct EigenEstimate {
    double value = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
};

/// Smallest eigenvalue of A by power iteration on (sigma I - A), sigma a
/// Gershgorin bound. Stops when the eigen-residual falls below tol.
EigenEstimate min_eigenvalue(const SparseSym& a, double tol = 1e-6,
                             std::size_t max_iterations = 20000);

/// Smallest eigenvalue of L - (eta'/kappa) * sum_k L_k. A negative value
/// means the combined operator is indefinite.
EigenEstimate psd_margin(const SparseSym& l_pos, std::span<const SparseSym> l_negs,
                         double eta_prime, double tol = 1e-6,
                         std::size_t max_iterations = 20000);

} // namespace coles
