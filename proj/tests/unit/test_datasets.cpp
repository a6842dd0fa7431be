#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "coles/datasets.hpp"
#include "coles/error.hpp"
#include "coles/preprocess.hpp"
#include "helpers.hpp"

using namespace coles;
namespace fs = std::filesystem;

TEST_CASE("linqs reader")
{
    const auto dir = fs::temp_directory_path() / "coles_test_linqs";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "toy.content") << "31 1 0 1 Theory\n7 0 1 0 AI\n12 1 1 0 Theory\n";
    std::ofstream(dir / "toy.cites") << "31 7\n7 12\n12 12\n999 31\n7 31\n";
    CHECK(has_linqs(dir, "toy"));
    CHECK_FALSE(has_linqs(dir, "other"));
    const auto g = load_linqs(dir, "toy");
    g.validate();
    CHECK(g.adjacency.n() == 3);
    CHECK(g.adjacency.edge_count() == 2);
    CHECK(g.adjacency.at(0, 1) == 1.0);
    CHECK(g.adjacency.at(1, 2) == 1.0);
    CHECK(g.labels == std::vector<int>{1, 0, 1});
    CHECK(g.features(0, 2) == 1.0);
    CHECK(g.features(1, 1) == 1.0);
    CHECK_THROWS_AS(load_linqs(dir, "other"), IoError);
}

TEST_CASE("feature hashing")
{
    const auto x = testutil::random_dense(5, 40, 1);
    const auto h = hash_features(x, 8, 3);
    CHECK(h.rows() == 5);
    CHECK(h.cols() == 8);
    CHECK(h == hash_features(x, 8, 3));
    CHECK_FALSE(h == hash_features(x, 8, 4));
    // Each input column lands in one bucket with sign +-1, so column sums of
    // absolute contributions are preserved for a single non-zero column.
    DenseMat one(1, 40);
    one(0, 17) = 2.5;
    const auto ho = hash_features(one, 8, 3);
    double total = 0.0;
    for (double v : ho.data())
        total += std::abs(v);
    CHECK(total == 2.5);
    CHECK_THROWS_AS(hash_features(x, 0, 1), InvalidArgument);
}
