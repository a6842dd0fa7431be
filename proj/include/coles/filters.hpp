#pragma once

#include <cstddef>
#include <string>

#include "coles/dense.hpp"
#include "coles/sparse.hpp"

namespace coles {

enum class FilterKind { identity, sgc, s2gc };

struct FilterConfig {
    FilterKind kind = FilterKind::s2gc;
    std::size_t k_steps = 8;
    double alpha = 0.05;

    void validate() const;
};

FilterKind parse_filter_kind(const std::string& name);
std::string to_string(FilterKind kind);

/// W^K X by K successive propagations.
DenseMat sgc_filter(const SparseSym& w, const DenseMat& x, std::size_t k_steps);

/// alpha X + (1 - alpha) / K * sum_{k=1..K} W^k X, accumulated in ascending k.
DenseMat s2gc_filter(const SparseSym& w, const DenseMat& x, std::size_t k_steps, double alpha);

DenseMat apply_filter(const SparseSym& w, const DenseMat& x, const FilterConfig& cfg);

} // namespace coles
