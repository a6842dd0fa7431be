#include "coles/synthetic.hpp"

#include <cmath>
#include <string>

#include "coles/error.hpp"
#include "coles/rng.hpp"

namespace coles {

void SbmSpec::validate() const
{
    if (classes < 1)
        throw InvalidArgument("sbm: need at least one class");
    if (per_block < 2)
        throw InvalidArgument("sbm: per_block must be >= 2");
    if (!(p_out >= 0.0 && p_out <= p_in && p_in <= 1.0))
        throw InvalidArgument("sbm: need 0 <= p_out <= p_in <= 1 (p_in=" + std::to_string(p_in) +
                              ", p_out=" + std::to_string(p_out) + ")");
    if (feature_dim < classes)
        throw InvalidArgument("sbm: feature_dim must be >= classes for simplex class means");
    if (!(mean_sep >= 0.0) || !(noise_sigma >= 0.0))
        throw InvalidArgument("sbm: mean_sep and noise_sigma must be non-negative");
}

LabeledGraph generate_sbm(const SbmSpec& spec)
{
    spec.validate();
    const std::size_t n = spec.classes * spec.per_block;
    LabeledGraph g;
    g.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        g.labels[i] = static_cast<int>(i / spec.per_block);

    Rng edge_rng = keyed_rng(spec.seed, StreamDomain::sbm_edges, 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double p = g.labels[i] == g.labels[j] ? spec.p_in : spec.p_out;
            if (edge_rng.uniform() < p)
                edges.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
        }
    g.adjacency = adjacency_from_edges(n, edges);

    Rng feat_rng = keyed_rng(spec.seed, StreamDomain::sbm_features, 0);
    const double offset = spec.mean_sep / std::sqrt(2.0);
    g.features = DenseMat(n, spec.feature_dim);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = g.features.row(i);
        for (std::size_t j = 0; j < spec.feature_dim; ++j)
            row[j] = spec.noise_sigma * feat_rng.normal();
        row[static_cast<std::size_t>(g.labels[i])] += offset;
    }
    return g;
}

} // namespace coles
