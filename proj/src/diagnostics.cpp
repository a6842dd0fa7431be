#include "coles/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "coles/error.hpp"
#include "coles/losses.hpp"
#include "coles/rng.hpp"

namespace coles {

namespace {

void require_sample(std::span<const double> s, const char* who)
{
    if (s.empty())
        throw InvalidArgument(std::string(who) + ": empty sample");
    for (double v : s)
        if (!std::isfinite(v))
            throw InvalidArgument(std::string(who) + ": non-finite sample value");
}

} // namespace

double silverman_bandwidth(std::span<const double> sample)
{
    require_sample(sample, "silverman_bandwidth");
    const double n = static_cast<double>(sample.size());
    const double mean = std::accumulate(sample.begin(), sample.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : sample)
        ss += (v - mean) * (v - mean);
    double sd = sample.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    if (sd == 0.0)
        sd = 1e-3 * std::max(1.0, std::abs(mean));
    return 1.06 * sd * std::pow(n, -0.2);
}

double pooled_bandwidth(std::span<const double> p, std::span<const double> q)
{
    return 0.5 * (silverman_bandwidth(p) + silverman_bandwidth(q));
}

std::vector<double> linspace(double lo, double hi, std::size_t points)
{
    if (points < 2 || !(hi > lo))
        throw InvalidArgument("linspace: need at least 2 points and hi > lo");
    std::vector<double> g(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        g[i] = lo + step * static_cast<double>(i);
    g.back() = hi;
    return g;
}

std::vector<double> parzen_density(std::span<const double> sample, double bandwidth,
                                   std::span<const double> grid)
{
    require_sample(sample, "parzen_density");
    if (!(bandwidth > 0.0))
        throw InvalidArgument("parzen_density: bandwidth must be > 0");
    if (grid.size() < 2)
        throw InvalidArgument("parzen_density: grid needs at least 2 points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw InvalidArgument("parzen_density: grid must be strictly increasing");
    const double norm =
        1.0 / (static_cast<double>(sample.size()) * bandwidth * std::sqrt(2.0 * std::numbers::pi));
    std::vector<double> density(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double acc = 0.0;
        for (double s : sample) {
            const double z = (grid[g] - s) / bandwidth;
            acc += std::exp(-0.5 * z * z);
        }
        density[g] = acc * norm;
    }
    return density;
}

std::vector<double> shared_grid(std::span<const double> p, std::span<const double> q,
                                double bandwidth, std::size_t points)
{
    require_sample(p, "shared_grid");
    require_sample(q, "shared_grid");
    const auto [pmin, pmax] = std::minmax_element(p.begin(), p.end());
    const auto [qmin, qmax] = std::minmax_element(q.begin(), q.end());
    const double lo = std::min(*pmin, *qmin) - 5.0 * bandwidth;
    const double hi = std::max(*pmax, *qmax) + 5.0 * bandwidth;
    return linspace(lo, hi, points);
}

double trapezoid(std::span<const double> grid, std::span<const double> values)
{
    if (grid.size() != values.size())
        throw InvalidArgument("trapezoid: size mismatch");
    double s = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        s += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
    return s;
}

double js_divergence(std::span<const double> p, std::span<const double> q, double bandwidth,
                     std::size_t grid_points)
{
    if (!(bandwidth > 0.0))
        throw InvalidArgument("js_divergence: bandwidth must be > 0");
    const auto grid = shared_grid(p, q, bandwidth, grid_points);
    const auto dp = parzen_density(p, bandwidth, grid);
    const auto dq = parzen_density(q, bandwidth, grid);
    std::vector<double> integrand(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double m = 0.5 * (dp[i] + dq[i]);
        double v = 0.0;
        if (dp[i] > 0.0)
            v += 0.5 * dp[i] * std::log(dp[i] / m);
        if (dq[i] > 0.0)
            v += 0.5 * dq[i] * std::log(dq[i] / m);
        integrand[i] = v;
    }
    const double js = trapezoid(grid, integrand);
    return std::clamp(js, 0.0, std::numbers::ln2 + 1e-6);
}

double wasserstein1(std::span<const double> p, std::span<const double> q)
{
    require_sample(p, "wasserstein1");
    require_sample(q, "wasserstein1");
    std::vector<double> a(p.begin(), p.end());
    std::vector<double> b(q.begin(), q.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a.size() == b.size()) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            s += std::abs(a[i] - b[i]);
        return s / static_cast<double>(a.size());
    }
    // Sweep the merged support, integrating |F_a - F_b| between breakpoints.
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double x = std::min(a.front(), b.front());
    double total = 0.0;
    while (i < a.size() || j < b.size()) {
        double next;
        if (j == b.size() || (i < a.size() && a[i] <= b[j]))
            next = a[i];
        else
            next = b[j];
        total += std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb) * (next - x);
        x = next;
        while (i < a.size() && a[i] == x)
            ++i;
        while (j < b.size() && b[j] == x)
            ++j;
    }
    return total;
}

LipschitzCheck lipschitz_check(std::span<const double> u, std::span<const double> u_prime,
                               std::span<const double> v)
{
    if (u.size() != v.size() || u_prime.size() != v.size())
        throw InvalidArgument("lipschitz_check: dimension mismatch");
    LipschitzCheck out;
    out.lhs = std::abs(dot(u, v) - dot(u_prime, v));
    double vmax = 0.0;
    double l1 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        vmax = std::max(vmax, std::abs(v[i]));
        l1 += std::abs(u[i] - u_prime[i]);
    }
    out.rhs = vmax * l1;
    out.holds = out.lhs <= out.rhs + 1e-12;
    return out;
}

double homophily(const SparseSym& adj, std::span<const int> labels, HomophilyForm form)
{
    if (labels.size() != adj.n())
        throw InvalidArgument("homophily: " + std::to_string(labels.size()) + " labels for " +
                              std::to_string(adj.n()) + " nodes");
    if (adj.n() == 0)
        throw InvalidArgument("homophily: empty graph");
    double total = 0.0;
    for (std::size_t i = 0; i < adj.n(); ++i) {
        const auto c = adj.row_cols(i);
        const auto w = adj.row_values(i);
        if (form == HomophilyForm::weighted) {
            for (std::size_t k = 0; k < c.size(); ++k)
                if (labels[c[k]] == labels[i])
                    total += w[k];
            continue;
        }
        std::size_t neighbours = 0;
        std::size_t same = 0;
        for (auto j : c) {
            if (j == i)
                continue;
            ++neighbours;
            if (labels[j] == labels[i])
                ++same;
        }
        if (neighbours == 0)
            throw InvalidArgument("homophily: node " + std::to_string(i) + " has no neighbours");
        total += static_cast<double>(same) / static_cast<double>(neighbours);
    }
    return total / static_cast<double>(adj.n());
}

double expected_negative_homophily(std::span<const double> class_probs)
{
    if (class_probs.empty())
        throw InvalidArgument("expected_negative_homophily: empty distribution");
    double sum = 0.0;
    double sq = 0.0;
    for (double p : class_probs) {
        if (!(p >= 0.0))
            throw InvalidArgument("expected_negative_homophily: negative probability");
        sum += p;
        sq += p * p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw InvalidArgument("expected_negative_homophily: probabilities sum to " +
                              std::to_string(sum));
    return sq;
}

double expected_negative_homophily_counts(std::span<const std::size_t> class_counts)
{
    uint128 total = 0;
    uint128 sq = 0;
    for (auto c : class_counts) {
        total += c;
        sq += static_cast<uint128>(c) * c;
    }
    if (total == 0)
        throw InvalidArgument("expected_negative_homophily_counts: no nodes");
    // Exact whenever N^2 < 2^53: both operands convert without rounding.
    return static_cast<double>(sq) / static_cast<double>(total * total);
}

double separation(double score_pos, double score_neg)
{
    const double a = sigmoid(score_pos);
    const double b = sigmoid(score_neg);
    return std::abs(a - b) / (a + b);
}

std::vector<double> pair_scores(const DenseMat& y, const SparseSym& graph)
{
    if (y.rows() != graph.n())
        throw InvalidArgument("pair_scores: embedding rows do not match graph size");
    std::vector<double> scores;
    for (std::size_t i = 0; i < graph.n(); ++i)
        for (auto j : graph.row_cols(i))
            if (j > i)
                scores.push_back(dot(y.row(i), y.row(j)));
    return scores;
}

} // namespace coles
