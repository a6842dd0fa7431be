#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "coles/dense.hpp"

namespace coles {

struct Triplet {
    std::uint32_t row;
    std::uint32_t col;
    double value;
};

/// Symmetric sparse matrix in compressed-row form.
///
/// Every row holds its entries in strictly ascending column order. Entry
/// (i, j) and (j, i) are stored with bit-identical values, and every value is
/// finite. Construction validates these invariants and throws
/// InvalidArgument on violation.
class SparseSym {
public:
    SparseSym() = default;

    /// Takes ownership of CSR arrays and validates them.
    SparseSym(std::size_t n, std::vector<std::size_t> row_ptr, std::vector<std::uint32_t> cols,
              std::vector<double> values);

    /// Builds from coordinate entries. Each off-diagonal entry must appear
    /// exactly once per orientation; duplicates are rejected.
    static SparseSym from_triplets(std::size_t n, std::vector<Triplet> entries);

    /// Builds from the upper triangle (i <= j) and mirrors it.
    static SparseSym from_upper(std::size_t n, std::vector<Triplet> upper);

    static SparseSym identity(std::size_t n);
    static SparseSym zero(std::size_t n);

    std::size_t n() const noexcept { return n_; }
    std::size_t nnz() const noexcept { return values_.size(); }

    std::span<const std::uint32_t> row_cols(std::size_t i) const noexcept
    {
        return {cols_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }
    std::span<const double> row_values(std::size_t i) const noexcept
    {
        return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }

    const std::vector<std::size_t>& row_ptr() const noexcept { return row_ptr_; }
    const std::vector<std::uint32_t>& cols() const noexcept { return cols_; }
    const std::vector<double>& values() const noexcept { return values_; }

    /// Value at (i, j) or 0 when not stored.
    double at(std::size_t i, std::size_t j) const;
    bool has_diagonal() const noexcept;

    /// Row sums accumulated in ascending column order.
    std::vector<double> row_sums() const;

    /// Number of stored off-diagonal undirected pairs.
    std::size_t edge_count() const noexcept;

    DenseMat to_dense() const;

    /// Drops stored entries whose value is exactly zero.
    SparseSym pruned() const;

    friend bool operator==(const SparseSym&, const SparseSym&) = default;

private:
    void validate() const;

    std::size_t n_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::uint32_t> cols_;
    std::vector<double> values_;
};

} // namespace coles
