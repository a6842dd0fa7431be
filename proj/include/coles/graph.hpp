#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "coles/dense.hpp"
#include "coles/sparse.hpp"

namespace coles {

/// Binary graph with node features and integer class labels.
struct LabeledGraph {
    SparseSym adjacency;
    DenseMat features;
    std::vector<int> labels;

    /// Checks node counts agree and labels cover 0..C-1 contiguously.
    void validate() const;
    int num_classes() const;
};

struct EdgeListOptions {
    /// Node count; defaults to 1 + max id seen.
    std::optional<std::size_t> num_nodes;
    /// Accept nodes without edges (they get degree 1 once self-loops are added).
    bool allow_isolated = true;
};

/// Reads "u v" lines into a binary symmetric adjacency. Blank lines and
/// lines starting with '#' are skipped; repeated and reversed pairs collapse
/// into one undirected edge. Self-loops, malformed lines, and files without
/// edges raise IoError naming the file and line.
SparseSym load_edge_list(const std::filesystem::path& path, const EdgeListOptions& options = {});

/// Writes each undirected edge once as "u v" with u < v, ascending.
void save_edge_list(const SparseSym& adj, const std::filesystem::path& path);

/// Binary adjacency from an explicit edge list (pairs may repeat, no self-loops).
SparseSym adjacency_from_edges(std::size_t n,
                               std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);

/// adj + I. Throws if any diagonal entry is already stored.
SparseSym add_self_loops(const SparseSym& adj);

/// D^{-1/2} A D^{-1/2} with D the row sums of A. Throws on a zero-degree node.
SparseSym degree_normalize(const SparseSym& adj);

/// I - w.
SparseSym laplacian(const SparseSym& w);

/// Positive-graph pipeline: optional self-loops followed by degree normalisation.
SparseSym normalized_adjacency(const SparseSym& adj, bool self_loops = true);

/// Sum of coeffs[k] * mats[k], merged row by row in ascending column order.
/// Contributions to one entry are added in matrix order, so the result is
/// symmetric bit for bit. Exact zeros are dropped.
SparseSym linear_combination(std::span<const SparseSym* const> mats,
                             std::span<const double> coeffs);

/// s * x with per-row accumulation in ascending column order.
DenseMat spmm(const SparseSym& s, const DenseMat& x);

/// s * v for a single vector.
std::vector<double> spmv(const SparseSym& s, std::span<const double> v);

} // namespace coles
