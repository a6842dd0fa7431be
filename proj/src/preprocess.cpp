#include "coles/preprocess.hpp"

#include <vector>

#include "coles/error.hpp"
#include "coles/rng.hpp"

namespace coles {

DenseMat hash_features(const DenseMat& x, std::size_t buckets, std::uint64_t seed)
{
    if (buckets == 0)
        throw InvalidArgument("hash_features: bucket count must be >= 1");
    Rng rng = keyed_rng(seed, StreamDomain::feature_hash, 0);
    std::vector<std::size_t> bucket(x.cols());
    std::vector<double> sign(x.cols());
    for (std::size_t j = 0; j < x.cols(); ++j) {
        bucket[j] = rng.bounded(buckets);
        sign[j] = (rng.next() >> 63) ? -1.0 : 1.0;
    }
    DenseMat out(x.rows(), buckets);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto src = x.row(i);
        auto dst = out.row(i);
        for (std::size_t j = 0; j < x.cols(); ++j)
            dst[bucket[j]] += sign[j] * src[j];
    }
    return out;
}

} // namespace coles
