#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "coles/error.hpp"
#include "coles/graph.hpp"
#include "helpers.hpp"

using namespace coles;
namespace fs = std::filesystem;

namespace {

fs::path write_tmp(const std::string& name, const std::string& body)
{
    const auto dir = fs::temp_directory_path() / "coles_test_graph";
    fs::create_directories(dir);
    const auto p = dir / name;
    std::ofstream(p) << body;
    return p;
}

DenseMat mat(std::size_t r, std::size_t c, std::vector<double> v) { return DenseMat(r, c, std::move(v)); }

SparseSym edge_pair() { return adjacency_from_edges(2, std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}}); }

SparseSym triangle()
{
    return adjacency_from_edges(3, std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}, {1, 2}, {0, 2}});
}

} // namespace

TEST_CASE("load_edge_list examples")
{
    const auto path = load_edge_list(write_tmp("path.txt", "0 1\n1 2"));
    CHECK(path.n() == 3);
    CHECK(path.edge_count() == 2);
    CHECK(path.at(1, 2) == 1.0);

    const auto dup = load_edge_list(write_tmp("dup.txt", "0 1\n1 0"));
    CHECK(dup.n() == 2);
    CHECK(dup.edge_count() == 1);

    CHECK_THROWS_AS(load_edge_list(write_tmp("self.txt", "0 0")), IoError);
}

TEST_CASE("load_edge_list rejects bad input with line numbers")
{
    try {
        load_edge_list(write_tmp("bad.txt", "# header\n0 1\n2 x\n"));
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find(":3") != std::string::npos);
    }
    CHECK_THROWS_AS(load_edge_list(write_tmp("empty.txt", "# only a comment\n\n")), IoError);
    CHECK_THROWS_AS(load_edge_list(write_tmp("ovf.txt", "0 99999999999999999999\n")), IoError);
    CHECK_THROWS_AS(load_edge_list(write_tmp("neg.txt", "0 -1\n")), IoError);
    CHECK_THROWS_AS(load_edge_list(write_tmp("three.txt", "0 1 2\n")), IoError);
    CHECK_THROWS_AS(load_edge_list("/nonexistent/edges.txt"), IoError);
}

TEST_CASE("load_edge_list node count and isolated nodes")
{
    const auto p = write_tmp("iso.txt", "0 1\n");
    CHECK(load_edge_list(p, EdgeListOptions{5, true}).n() == 5);
    CHECK_THROWS_AS(load_edge_list(p, EdgeListOptions{5, false}), IoError);
    CHECK_THROWS_AS(load_edge_list(p, EdgeListOptions{1, true}), IoError);
}

TEST_CASE("edge list save/load round trip")
{
    const auto g = testutil::random_graph(30, 0.2, 11);
    const auto p = fs::temp_directory_path() / "coles_test_graph" / "rt.txt";
    save_edge_list(g, p);
    CHECK(load_edge_list(p, EdgeListOptions{g.n(), true}) == g);
}

TEST_CASE("add_self_loops examples")
{
    CHECK(add_self_loops(edge_pair()).to_dense() == mat(2, 2, {1, 1, 1, 1}));
    CHECK(add_self_loops(SparseSym::zero(1)).to_dense() == mat(1, 1, {1}));
    CHECK(add_self_loops(triangle()).to_dense() == mat(3, 3, std::vector<double>(9, 1.0)));
    const auto g = edge_pair();
    (void)add_self_loops(g);
    CHECK_FALSE(g.has_diagonal());
    CHECK_THROWS_AS(add_self_loops(add_self_loops(g)), InvalidArgument);
}

TEST_CASE("degree_normalize examples")
{
    CHECK(degree_normalize(add_self_loops(edge_pair())).to_dense() == mat(2, 2, {.5, .5, .5, .5}));
    CHECK(degree_normalize(SparseSym::identity(1)).to_dense() == mat(1, 1, {1}));
    const auto t = degree_normalize(add_self_loops(triangle())).to_dense();
    for (double v : t.data())
        CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(degree_normalize(SparseSym::zero(2)), InvalidArgument);
}

TEST_CASE("laplacian examples")
{
    const auto w = SparseSym::from_upper(2, {{0, 0, .5}, {0, 1, .5}, {1, 1, .5}});
    const auto l = laplacian(w);
    CHECK(l.to_dense() == mat(2, 2, {.5, -.5, -.5, .5}));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(testutil::to_eigen(l));
    CHECK(std::abs(es.eigenvalues()(0)) < 1e-15);
    CHECK(std::abs(es.eigenvalues()(1) - 1.0) < 1e-15);
    const auto l1 = laplacian(SparseSym::identity(1));
    CHECK(l1.to_dense() == mat(1, 1, {0}));
}

TEST_CASE("spmm examples")
{
    const auto x = testutil::random_dense(4, 3, 2);
    CHECK(spmm(SparseSym::identity(4), x) == x);
    const auto w = SparseSym::from_upper(2, {{0, 0, .5}, {0, 1, .5}, {1, 1, .5}});
    CHECK(spmm(w, DenseMat::identity(2)) == mat(2, 2, {.5, .5, .5, .5}));
    CHECK(spmm(SparseSym::zero(4), x) == DenseMat(4, 3));
    CHECK_THROWS_AS(spmm(SparseSym::identity(3), x), InvalidArgument);
}

TEST_CASE("normalized adjacency has spectral radius at most one")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = testutil::random_graph(40, 0.1, seed);
        const auto w = normalized_adjacency(g);
        std::vector<double> v(w.n(), 1.0);
        v[0] = 2.0;
        double lambda = 0.0;
        for (int it = 0; it < 500; ++it) {
            auto next = spmv(w, v);
            double norm = 0.0;
            for (double a : next)
                norm += a * a;
            norm = std::sqrt(norm);
            double vn = 0.0;
            for (double a : v)
                vn += a * a;
            lambda = norm / std::sqrt(vn);
            for (auto& a : next)
                a /= norm;
            v = next;
        }
        CHECK(lambda <= 1.0 + 1e-9);
    }
}

TEST_CASE("laplacian annihilates the square-root degree vector")
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto g = add_self_loops(testutil::random_graph(50, 0.1, seed));
        const auto l = laplacian(degree_normalize(g));
        const auto deg = g.row_sums();
        std::vector<double> s(deg.size());
        for (std::size_t i = 0; i < deg.size(); ++i)
            s[i] = std::sqrt(deg[i]);
        const auto r = spmv(l, s);
        double norm = 0.0;
        for (double a : r)
            norm += a * a;
        CHECK(std::sqrt(norm) < 1e-10);
    }
}

TEST_CASE("spmm distributes over addition")
{
    const auto w = normalized_adjacency(testutil::random_graph(25, 0.2, 3));
    const auto a = testutil::random_dense(25, 4, 1);
    const auto b = testutil::random_dense(25, 4, 2);
    CHECK(max_abs_diff(spmm(w, a + b), spmm(w, a) + spmm(w, b)) < 1e-12);
}

TEST_CASE("normalized adjacency mirrors are bit equal")
{
    const auto w = normalized_adjacency(testutil::random_graph(60, 0.15, 8));
    for (std::size_t i = 0; i < w.n(); ++i)
        for (std::size_t k = 0; k < w.row_cols(i).size(); ++k) {
            const auto j = w.row_cols(i)[k];
            CHECK(w.at(j, i) == w.row_values(i)[k]);
        }
}

TEST_CASE("linear combination")
{
    const auto a = SparseSym::identity(3);
    const auto b = add_self_loops(triangle());
    const SparseSym* mats[] = {&a, &b};
    const double coeffs[] = {2.0, -1.0};
    const auto c = linear_combination(mats, coeffs).to_dense();
    CHECK(c(0, 0) == 1.0);
    CHECK(c(0, 1) == -1.0);
    const double cancel[] = {1.0, 0.0};
    CHECK(linear_combination(mats, cancel) == a);
}

TEST_CASE("labeled graph validation")
{
    LabeledGraph g{edge_pair(), DenseMat(2, 3), {0, 1}};
    CHECK_NOTHROW(g.validate());
    CHECK(g.num_classes() == 2);
    g.labels = {0, 2};
    CHECK_THROWS_AS(g.validate(), InvalidArgument);
    g.labels = {0};
    CHECK_THROWS_AS(g.validate(), InvalidArgument);
}
