#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

#include "coles/dense.hpp"
#include "coles/graph.hpp"
#include "coles/rng.hpp"
#include "coles/sparse.hpp"

namespace testutil {

inline coles::DenseMat random_dense(std::size_t r, std::size_t c, std::uint64_t seed)
{
    coles::Rng rng(seed, 77);
    coles::DenseMat m(r, c);
    for (auto& v : m.data())
        v = rng.normal();
    return m;
}

inline coles::DenseMat random_symmetric(std::size_t n, std::uint64_t seed)
{
    auto a = random_dense(n, n, seed);
    coles::DenseMat s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            s(i, j) = 0.5 * (a(i, j) + a(j, i));
    return s;
}

// Erdos-Renyi graph with a Hamiltonian path so every node has a neighbour.
inline coles::SparseSym random_graph(std::size_t n, double p, std::uint64_t seed)
{
    coles::Rng rng(seed, 1234);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i + 1 < n; ++i)
        edges.emplace_back(i, i + 1);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 2; j < n; ++j)
            if (rng.uniform() < p)
                edges.emplace_back(i, j);
    return coles::adjacency_from_edges(n, edges);
}

inline Eigen::MatrixXd to_eigen(const coles::DenseMat& m)
{
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            e(i, j) = m(i, j);
    return e;
}

inline Eigen::MatrixXd to_eigen(const coles::SparseSym& s) { return to_eigen(s.to_dense()); }

inline coles::DenseMat from_eigen(const Eigen::MatrixXd& e)
{
    coles::DenseMat m(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j)
            m(i, j) = e(i, j);
    return m;
}

inline coles::SparseSym sparse_from_dense(const coles::DenseMat& d)
{
    std::vector<coles::Triplet> t;
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (d(i, j) != 0.0)
                t.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), d(i, j)});
    return coles::SparseSym::from_triplets(d.rows(), std::move(t));
}

} // namespace testutil
