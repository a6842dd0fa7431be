#include <doctest.h>

#include <cmath>

#include "coles/diagnostics.hpp"
#include "coles/error.hpp"
#include "coles/synthetic.hpp"

using namespace coles;

namespace {

std::size_t within_edges(const LabeledGraph& g)
{
    std::size_t count = 0;
    for (std::size_t i = 0; i < g.adjacency.n(); ++i)
        for (auto j : g.adjacency.row_cols(i))
            if (j > i && g.labels[i] == g.labels[j])
                ++count;
    return count;
}

} // namespace

TEST_CASE("sbm structure examples")
{
    SbmSpec spec;
    spec.p_out = 0.0;
    const auto g = generate_sbm(spec);
    g.validate();
    CHECK(g.adjacency.n() == 300);
    CHECK(g.features.rows() == 300);
    CHECK(g.features.cols() == 16);
    CHECK(within_edges(g) == g.adjacency.edge_count());

    SbmSpec cliques;
    cliques.classes = 2;
    cliques.per_block = 10;
    cliques.p_in = 1.0;
    cliques.p_out = 0.0;
    const auto c = generate_sbm(cliques);
    CHECK(c.adjacency.edge_count() == 2 * 45);
    CHECK(homophily(c.adjacency, c.labels) == 1.0);

    const auto a = generate_sbm(SbmSpec{});
    const auto b = generate_sbm(SbmSpec{});
    CHECK(a.adjacency == b.adjacency);
    CHECK(a.features == b.features);
    CHECK(a.labels == b.labels);
}

TEST_CASE("sbm spec validation")
{
    SbmSpec s;
    s.p_out = 0.5;
    s.p_in = 0.1;
    CHECK_THROWS_AS(generate_sbm(s), InvalidArgument);
    s = SbmSpec{};
    s.per_block = 1;
    CHECK_THROWS_AS(generate_sbm(s), InvalidArgument);
    s = SbmSpec{};
    s.p_in = 1.5;
    CHECK_THROWS_AS(generate_sbm(s), InvalidArgument);
}

TEST_CASE("sbm within-block edge count is binomial")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SbmSpec s;
        s.per_block = 60;
        s.seed = seed;
        const auto g = generate_sbm(s);
        const double pairs = 3.0 * 60 * 59 / 2;
        const double mean = pairs * s.p_in;
        const double sd = std::sqrt(pairs * s.p_in * (1 - s.p_in));
        CHECK(std::abs(static_cast<double>(within_edges(g)) - mean) < 4 * sd);
    }
}

TEST_CASE("sbm homophily exceeds the random baseline")
{
    int scored = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SbmSpec s;
        s.seed = seed;
        const auto g = generate_sbm(s);
        // Isolated nodes carry no neighbourhood; score the rest.
        bool isolated = false;
        for (std::size_t i = 0; i < g.adjacency.n(); ++i)
            isolated = isolated || g.adjacency.row_cols(i).empty();
        if (isolated)
            continue;
        ++scored;
        CHECK(homophily(g.adjacency, g.labels) >
              expected_negative_homophily(std::vector<double>(3, 1.0 / 3.0)));
    }
    CHECK(scored >= 15);
}

TEST_CASE("sbm class means are equidistant")
{
    SbmSpec s;
    s.noise_sigma = 0.0;
    s.mean_sep = 2.0;
    const auto g = generate_sbm(s);
    const auto dist = [&](std::size_t a, std::size_t b) {
        double d = 0.0;
        for (std::size_t j = 0; j < g.features.cols(); ++j)
            d += std::pow(g.features(a, j) - g.features(b, j), 2);
        return std::sqrt(d);
    };
    CHECK(dist(0, 100) == doctest::Approx(2.0));
    CHECK(dist(0, 200) == doctest::Approx(2.0));
    CHECK(dist(100, 200) == doctest::Approx(2.0));
}
