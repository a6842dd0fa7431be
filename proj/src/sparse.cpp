#include "coles/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coles/error.hpp"

namespace coles {

SparseSym::SparseSym(std::size_t n, std::vector<std::size_t> row_ptr,
                     std::vector<std::uint32_t> cols, std::vector<double> values)
    : n_(n), row_ptr_(std::move(row_ptr)), cols_(std::move(cols)), values_(std::move(values))
{
    validate();
}

SparseSym SparseSym::from_triplets(std::size_t n, std::vector<Triplet> entries)
{
    for (const auto& t : entries)
        if (t.row >= n || t.col >= n)
            throw InvalidArgument("SparseSym: index (" + std::to_string(t.row) + ", " +
                                  std::to_string(t.col) + ") out of range for n=" +
                                  std::to_string(n));
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<std::size_t> row_ptr(n + 1, 0);
    std::vector<std::uint32_t> cols;
    std::vector<double> values;
    cols.reserve(entries.size());
    values.reserve(entries.size());
    for (const auto& t : entries) {
        ++row_ptr[t.row + 1];
        cols.push_back(t.col);
        values.push_back(t.value);
    }
    for (std::size_t i = 0; i < n; ++i)
        row_ptr[i + 1] += row_ptr[i];
    return SparseSym(n, std::move(row_ptr), std::move(cols), std::move(values));
}

SparseSym SparseSym::from_upper(std::size_t n, std::vector<Triplet> upper)
{
    std::vector<Triplet> all;
    all.reserve(upper.size() * 2);
    for (const auto& t : upper) {
        if (t.row > t.col)
            throw InvalidArgument("SparseSym::from_upper: entry below the diagonal");
        all.push_back(t);
        if (t.row != t.col)
            all.push_back({t.col, t.row, t.value});
    }
    return from_triplets(n, std::move(all));
}

SparseSym SparseSym::identity(std::size_t n)
{
    std::vector<std::size_t> row_ptr(n + 1);
    std::vector<std::uint32_t> cols(n);
    for (std::size_t i = 0; i <= n; ++i)
        row_ptr[i] = i;
    for (std::size_t i = 0; i < n; ++i)
        cols[i] = static_cast<std::uint32_t>(i);
    return SparseSym(n, std::move(row_ptr), std::move(cols), std::vector<double>(n, 1.0));
}

SparseSym SparseSym::zero(std::size_t n)
{
    return SparseSym(n, std::vector<std::size_t>(n + 1, 0), {}, {});
}

void SparseSym::validate() const
{
    if (row_ptr_.size() != n_ + 1 || row_ptr_.front() != 0 || row_ptr_.back() != cols_.size() ||
        cols_.size() != values_.size())
        throw InvalidArgument("SparseSym: inconsistent CSR arrays");
    for (std::size_t i = 0; i < n_; ++i) {
        if (row_ptr_[i] > row_ptr_[i + 1])
            throw InvalidArgument("SparseSym: row pointers not monotone");
        const auto c = row_cols(i);
        const auto v = row_values(i);
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] >= n_)
                throw InvalidArgument("SparseSym: column index out of range in row " +
                                      std::to_string(i));
            if (k > 0 && c[k] <= c[k - 1])
                throw InvalidArgument("SparseSym: duplicate or unsorted entry in row " +
                                      std::to_string(i));
            if (!std::isfinite(v[k]))
                throw InvalidArgument("SparseSym: non-finite weight at (" + std::to_string(i) +
                                      ", " + std::to_string(c[k]) + ")");
        }
    }
    for (std::size_t i = 0; i < n_; ++i) {
        const auto c = row_cols(i);
        const auto v = row_values(i);
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] == i)
                continue;
            const auto mc = row_cols(c[k]);
            const auto it = std::lower_bound(mc.begin(), mc.end(), static_cast<std::uint32_t>(i));
            if (it == mc.end() || *it != i ||
                row_values(c[k])[static_cast<std::size_t>(it - mc.begin())] != v[k])
                throw InvalidArgument("SparseSym: entry (" + std::to_string(i) + ", " +
                                      std::to_string(c[k]) + ") has no bit-equal mirror");
        }
    }
}

double SparseSym::at(std::size_t i, std::size_t j) const
{
    if (i >= n_ || j >= n_)
        throw InvalidArgument("SparseSym::at: index out of range");
    const auto c = row_cols(i);
    const auto it = std::lower_bound(c.begin(), c.end(), static_cast<std::uint32_t>(j));
    if (it == c.end() || *it != j)
        return 0.0;
    return row_values(i)[static_cast<std::size_t>(it - c.begin())];
}

bool SparseSym::has_diagonal() const noexcept
{
    for (std::size_t i = 0; i < n_; ++i)
        for (auto c : row_cols(i))
            if (c == i)
                return true;
    return false;
}

std::vector<double> SparseSym::row_sums() const
{
    std::vector<double> d(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
        for (double v : row_values(i))
            d[i] += v;
    return d;
}

std::size_t SparseSym::edge_count() const noexcept
{
    std::size_t off = 0;
    for (std::size_t i = 0; i < n_; ++i)
        for (auto c : row_cols(i))
            if (c != i)
                ++off;
    return off / 2;
}

DenseMat SparseSym::to_dense() const
{
    DenseMat m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
        const auto c = row_cols(i);
        const auto v = row_values(i);
        for (std::size_t k = 0; k < c.size(); ++k)
            m(i, c[k]) = v[k];
    }
    return m;
}

SparseSym SparseSym::pruned() const
{
    std::vector<std::size_t> row_ptr(n_ + 1, 0);
    std::vector<std::uint32_t> cols;
    std::vector<double> values;
    for (std::size_t i = 0; i < n_; ++i) {
        const auto c = row_cols(i);
        const auto v = row_values(i);
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (v[k] == 0.0)
                continue;
            cols.push_back(c[k]);
            values.push_back(v[k]);
        }
        row_ptr[i + 1] = cols.size();
    }
    return SparseSym(n_, std::move(row_ptr), std::move(cols), std::move(values));
}

} // namespace coles
