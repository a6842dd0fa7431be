#pragma once

#include <cstddef>
#include <cstdint>

#include "coles/dense.hpp"

namespace coles {

/// Signed feature hashing: column j is added, with sign s(j), into bucket
/// h(j) of a width-`buckets` matrix. h and s come from a keyed stream of
/// `seed`, so the map is reproducible. Used to bring very wide feature
/// matrices into the range the dense eigensolver handles.
DenseMat hash_features(const DenseMat& x, std::size_t buckets, std::uint64_t seed);

} // namespace coles
