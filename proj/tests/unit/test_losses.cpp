#include <doctest.h>

#include <cmath>
#include <numbers>

#include "coles/error.hpp"
#include "coles/graph.hpp"
#include "coles/losses.hpp"
#include "coles/negative_sampling.hpp"
#include "coles/rng.hpp"
#include "coles/solver.hpp"
#include "helpers.hpp"

using namespace coles;

namespace {

const double kLn2 = std::numbers::ln2;

Vec random_vec(Rng& r, std::size_t d)
{
    Vec v(d);
    for (auto& a : v)
        a = r.normal();
    return v;
}

} // namespace

TEST_CASE("log_sigmoid is stable")
{
    CHECK(log_sigmoid(0.0) == doctest::Approx(-kLn2));
    CHECK(log_sigmoid(-800.0) == doctest::Approx(-800.0));
    CHECK(log_sigmoid(800.0) == 0.0);
    CHECK(std::isfinite(log_sigmoid(-1e308)));
}

TEST_CASE("sampled_nce_sigmoid examples")
{
    CHECK(sampled_nce_sigmoid({{1, 0}, {{0, 1}}, {{1, 0}}, 0.0}) == doctest::Approx(-0.693147).epsilon(1e-6));
    CHECK(sampled_nce_sigmoid({{1, 0}, {{1, 0}}, {{1, 0}}, 0.0}) == doctest::Approx(-0.313262).epsilon(1e-6));
    CHECK(sampled_nce_sigmoid({{1, 0}, {}, {{1, 0}}, 1.0}) == doctest::Approx(-1.313262).epsilon(1e-6));
    CHECK(sampled_nce_sigmoid({{1, 0}, {{1, 0}}, {{1, 0}}, 1.0}) ==
          doctest::Approx(-0.313262 - 1.313262).epsilon(1e-6));
    CHECK_THROWS_AS(sampled_nce_sigmoid({{1, 0}, {{1, 0, 0}}, {{1, 0}}, 1.0}), InvalidArgument);
}

TEST_CASE("coles_pointwise examples")
{
    CHECK(coles_pointwise({{1, 0}, {{1, 0}}, {}, 1.0}) == 1.0);
    CHECK(coles_pointwise({{1, 0}, {}, {{1, 0}}, 1.0}) == -1.0);
    CHECK(coles_pointwise({{1, 0}, {{1, 0}}, {{0, 1}}, 1.0}) == 1.0);
}

TEST_CASE("coles_pointwise is linear")
{
    Rng r(3, 0);
    for (int t = 0; t < 50; ++t) {
        const Vec a = random_vec(r, 4), b = random_vec(r, 4), u = random_vec(r, 4), w = random_vec(r, 4);
        Vec ab(4);
        for (int i = 0; i < 4; ++i)
            ab[i] = a[i] + b[i];
        const double lhs = coles_pointwise({ab, {u}, {w}, 0.7});
        const double rhs = coles_pointwise({a, {u}, {w}, 0.7}) + coles_pointwise({b, {u}, {w}, 0.7});
        CHECK(std::abs(lhs - rhs) < 1e-12);
        Vec uw(4);
        for (int i = 0; i < 4; ++i)
            uw[i] = u[i] + w[i];
        const double pl = coles_pointwise({a, {uw}, {}, 1.0});
        const double pr = coles_pointwise({a, {u}, {}, 1.0}) + coles_pointwise({a, {w}, {}, 1.0});
        CHECK(std::abs(pl - pr) < 1e-12);
    }
}

TEST_CASE("block_form examples")
{
    const auto b = block_form({{1, 0}, {{1, 0}, {0, 1}}, {{1, 0}}, 1.0});
    CHECK(b.mu_plus == Vec{.5, .5});
    CHECK(b.mu_minus == Vec{1, 0});
    CHECK(b.loss == doctest::Approx(0.5));
    const auto z = block_form({{0.3, -2}, {{1, 2}, {3, 4}}, {{1, 2}, {3, 4}}, 1.0});
    CHECK(z.loss == 0.0);
    CHECK_THROWS_AS(block_form({{1, 0}, {}, {{1, 0}}, 1.0}), InvalidArgument);

    Rng r(5, 0);
    for (int t = 0; t < 50; ++t) {
        ContrastiveBatch batch{random_vec(r, 3), {random_vec(r, 3), random_vec(r, 3)},
                               {random_vec(r, 3), random_vec(r, 3), random_vec(r, 3)}, 1.0};
        CHECK(std::abs(block_form(batch).loss + coles_pointwise(batch)) < 1e-12);
    }
}

TEST_CASE("graph block loss equals the negative trace")
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto wp = normalized_adjacency(testutil::random_graph(20, 0.2, seed));
        NegSampleConfig cfg;
        cfg.kappa = 1;
        cfg.seed = seed;
        const auto negs = sample_negative_graphs(20, cfg);
        const auto y = testutil::random_dense(20, 4, seed);
        const auto dw = build_delta_w(wp, negs, 1.0).to_dense();
        double oracle = 0.0;
        for (std::size_t i = 0; i < 20; ++i)
            for (std::size_t j = 0; j < 20; ++j)
                oracle -= dw(i, j) * dot(y.row(i), y.row(j));
        CHECK(std::abs(graph_block_loss(y, wp, negs, 1.0) - oracle) < 1e-9);
    }
}

TEST_CASE("generalized_mean examples and errors")
{
    CHECK(generalized_mean(Vec{1, 3}, 1.0) == doctest::Approx(2.0));
    CHECK(generalized_mean(Vec{1, 4}, 0.0) == doctest::Approx(2.0));
    CHECK(generalized_mean(Vec{2, 2}, -1.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(generalized_mean(Vec{}, 1.0), InvalidArgument);
    CHECK_THROWS_AS(generalized_mean(Vec{0, 1}, 0.0), InvalidArgument);
    CHECK_THROWS_AS(generalized_mean(Vec{-1, 1}, -1.0), InvalidArgument);
    CHECK(generalized_mean(Vec{1e300, 1e300}, 2.0) == doctest::Approx(1e300));
}

TEST_CASE("power mean ordering")
{
    Rng r(11, 0);
    for (int t = 0; t < 1000; ++t) {
        Vec v(2 + r.bounded(6));
        for (auto& a : v)
            a = 0.01 + 10.0 * r.uniform();
        const double mm1 = generalized_mean(v, -1), m0 = generalized_mean(v, 0);
        const double m1 = generalized_mean(v, 1), m2 = generalized_mean(v, 2);
        CHECK(mm1 <= m0 + 1e-12);
        CHECK(m0 <= m1 + 1e-12);
        CHECK(m1 <= m2 + 1e-12);
    }
    const Vec c(5, 3.7);
    for (double p : {-1.0, 0.0, 1.0, 2.0})
        CHECK(std::abs(generalized_mean(c, p) - 3.7) < 1e-12);
}

TEST_CASE("geometric mean of exponentials is the mean score")
{
    Rng r(12, 0);
    for (int t = 0; t < 200; ++t) {
        Vec s(1 + r.bounded(10));
        double mean = 0.0;
        for (auto& a : s) {
            a = 20.0 * r.normal();
            mean += a;
        }
        mean /= static_cast<double>(s.size());
        CHECK(std::abs(log_generalized_mean_exp(s, 0.0) - mean) < 1e-12);
    }
    const Vec big{1000.0, 1001.0};
    CHECK(log_generalized_mean_exp(big, 1.0) == doctest::Approx(1000.0 + std::log((1 + std::exp(1.0)) / 2)));
}

TEST_CASE("align_uniform examples")
{
    AlignUniformOptions gm{UniformityMode::generalized_mean, false, 1.0};
    AlignUniformOptions sm{UniformityMode::softmax, false, 1.0};
    const auto a = align_uniform({{1, 0}, {{0, 1}}, {{0, 1}, {0, -1}}, 1.0}, 0.0, gm);
    CHECK(a.uniform == 0.0);
    const auto b = align_uniform({{1, 0}, {{0, 1}}, {{0, 1}}, 1.0}, 1.0, sm);
    CHECK(b.total == doctest::Approx(kLn2));
    const auto c = align_uniform({{1, 0}, {{1, 0}}, {{0, 1}, {0, -1}}, 1.0}, 0.0, gm);
    CHECK(c.align == -1.0);
    CHECK(c.total == doctest::Approx(-1.0));
    CHECK_THROWS_AS(align_uniform({{1, 0}, {{1, 0}, {1, 0}}, {{0, 1}}, 1.0}, 0.0, gm), InvalidArgument);
}

TEST_CASE("align_uniform normalisation rescales to tau")
{
    AlignUniformOptions o{UniformityMode::generalized_mean, true, 2.0};
    const auto r = align_uniform({{3, 0}, {{5, 0}}, {{0, 7}}, 1.0}, 0.0, o);
    CHECK(r.align == doctest::Approx(-4.0));
    CHECK(r.uniform == doctest::Approx(0.0));
}
