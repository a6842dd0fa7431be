#pragma once

#include <cstddef>
#include <cstdint>

#include "coles/graph.hpp"

namespace coles {

struct SbmSpec {
    std::size_t classes = 3;
    std::size_t per_block = 100;
    double p_in = 0.1;
    double p_out = 0.01;
    std::size_t feature_dim = 16;
    double mean_sep = 1.0;
    double noise_sigma = 2.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Stochastic block model with Gaussian class features.
///
/// Nodes are numbered block by block. Class c has mean
/// (mean_sep / sqrt 2) * e_c, so every pair of class means is mean_sep
/// apart; features add isotropic N(0, noise_sigma^2) noise. Edges and
/// features come from separate keyed streams of spec.seed.
LabeledGraph generate_sbm(const SbmSpec& spec);

} // namespace coles
