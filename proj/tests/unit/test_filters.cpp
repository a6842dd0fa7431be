#include <doctest.h>

#include <cmath>

#include "coles/error.hpp"
#include "coles/filters.hpp"
#include "coles/graph.hpp"
#include "helpers.hpp"

using namespace coles;

namespace {

SparseSym projector()
{
    return SparseSym::from_upper(2, {{0, 0, .5}, {0, 1, .5}, {1, 1, .5}});
}

} // namespace

TEST_CASE("sgc examples")
{
    const auto x = testutil::random_dense(2, 3, 1);
    CHECK(sgc_filter(projector(), x, 0) == x);
    const auto one = sgc_filter(projector(), DenseMat::identity(2), 1);
    CHECK(one == DenseMat(2, 2, std::vector<double>{.5, .5, .5, .5}));
    const auto two = sgc_filter(projector(), DenseMat::identity(2), 2);
    CHECK(max_abs_diff(one, two) < 1e-15);
}

TEST_CASE("s2gc examples")
{
    const auto w = normalized_adjacency(testutil::random_graph(10, 0.3, 2));
    const auto x = testutil::random_dense(10, 3, 2);
    CHECK(max_abs_diff(s2gc_filter(w, x, 5, 1.0), x) < 1e-15);
    CHECK(s2gc_filter(w, x, 1, 0.0) == spmm(w, x));
    CHECK(s2gc_filter(w, x, 1, 0.0) == sgc_filter(w, x, 1));

    const auto p = projector();
    const auto x2 = testutil::random_dense(2, 2, 3);
    const auto expect = 0.5 * x2 + 0.5 * spmm(p, x2);
    CHECK(max_abs_diff(s2gc_filter(p, x2, 2, 0.5), expect) < 1e-15);
}

TEST_CASE("s2gc equals the explicit dense filter")
{
    const auto w = normalized_adjacency(testutil::random_graph(12, 0.3, 4));
    const auto x = testutil::random_dense(12, 4, 4);
    const Eigen::MatrixXd we = testutil::to_eigen(w);
    Eigen::MatrixXd f = 0.1 * Eigen::MatrixXd::Identity(12, 12);
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(12, 12);
    for (int k = 1; k <= 6; ++k) {
        power = power * we;
        f += (0.9 / 6.0) * power;
    }
    const Eigen::MatrixXd expect = f * testutil::to_eigen(x);
    CHECK(max_abs_diff(s2gc_filter(w, x, 6, 0.1), testutil::from_eigen(expect)) < 1e-12);
}

TEST_CASE("filters are linear in X")
{
    const auto w = normalized_adjacency(testutil::random_graph(20, 0.2, 5));
    const auto a = testutil::random_dense(20, 3, 6);
    const auto b = testutil::random_dense(20, 3, 7);
    for (FilterConfig cfg : {FilterConfig{FilterKind::sgc, 4, 0.0}, FilterConfig{FilterKind::s2gc, 8, 0.05},
                             FilterConfig{FilterKind::identity, 0, 0.0}}) {
        const auto lhs = apply_filter(w, a + b, cfg);
        const auto rhs = apply_filter(w, a, cfg) + apply_filter(w, b, cfg);
        CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("deep sgc aligns with the dominant eigenvector")
{
    const auto w = normalized_adjacency(testutil::random_graph(50, 0.1, 9));
    const auto x = testutil::random_dense(50, 1, 9);
    const auto y = sgc_filter(w, x, 32);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(testutil::to_eigen(w));
    const Eigen::VectorXd top = es.eigenvectors().col(49);
    const Eigen::VectorXd ye = testutil::to_eigen(y).col(0);
    const double cosine = std::abs(top.dot(ye)) / ye.norm();
    CHECK(cosine > 0.999);
}

TEST_CASE("filter config validation and names")
{
    CHECK_THROWS_AS((FilterConfig{FilterKind::sgc, 0, 0.0}.validate()), InvalidArgument);
    CHECK_THROWS_AS((FilterConfig{FilterKind::s2gc, 2, 1.5}.validate()), InvalidArgument);
    CHECK_NOTHROW((FilterConfig{FilterKind::identity, 0, 0.0}.validate()));
    CHECK(parse_filter_kind("s2gc") == FilterKind::s2gc);
    CHECK(to_string(FilterKind::sgc) == "sgc");
    CHECK_THROWS_AS(parse_filter_kind("gcn"), InvalidArgument);
    CHECK_THROWS_AS(sgc_filter(projector(), DenseMat(3, 1), 1), InvalidArgument);
}
