#include "coles/negative_sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coles/error.hpp"
#include "coles/graph.hpp"
#include "coles/rng.hpp"

namespace coles {

void NegSampleConfig::validate(std::size_t n) const
{
    if (!(eta_prime >= 0.0 && eta_prime <= 1.0))
        throw InvalidArgument("eta_prime must lie in [0, 1], got " + std::to_string(eta_prime));
    if (kappa == 0)
        return;
    if (n < 2)
        throw InvalidArgument("negative sampling needs at least 2 nodes");
    if (mode == NegativeMode::per_node) {
        if (per_node == 0 || per_node >= n)
            throw InvalidArgument("per_node must be in [1, n), got " + std::to_string(per_node) +
                                  " for n=" + std::to_string(n));
    } else if (!(p_prime > 0.0 && p_prime < 1.0)) {
        throw InvalidArgument("p_prime must lie in (0, 1), got " + std::to_string(p_prime));
    }
}

namespace {

std::vector<std::pair<std::uint32_t, std::uint32_t>> draw_per_node(std::size_t n,
                                                                   std::size_t per_node, Rng& rng)
{
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(n * per_node);
    const std::size_t candidates = n - 1;
    std::vector<std::uint64_t> chosen;
    chosen.reserve(per_node);
    for (std::size_t i = 0; i < n; ++i) {
        chosen.clear();
        // Floyd: exactly per_node draws, uniform over per_node-subsets.
        for (std::size_t j = candidates - per_node; j < candidates; ++j) {
            const std::uint64_t t = rng.bounded(j + 1);
            if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
                chosen.push_back(t);
            else
                chosen.push_back(j);
        }
        for (std::uint64_t c : chosen) {
            const auto partner = static_cast<std::uint32_t>(c < i ? c : c + 1);
            pairs.emplace_back(static_cast<std::uint32_t>(i), partner);
        }
    }
    return pairs;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> draw_erdos_renyi(std::size_t n, double p,
                                                                      Rng& rng)
{
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.uniform() < p)
                pairs.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    return pairs;
}

} // namespace

SparseSym sample_negative_adjacency(std::size_t n, const NegSampleConfig& cfg, std::size_t k)
{
    cfg.validate(n);
    if (k >= cfg.kappa)
        throw InvalidArgument("negative graph index " + std::to_string(k) + " >= kappa " +
                              std::to_string(cfg.kappa));
    Rng rng = keyed_rng(cfg.seed, StreamDomain::negative_graph, k);
    if (cfg.mode == NegativeMode::per_node)
        return adjacency_from_edges(n, draw_per_node(n, cfg.per_node, rng));
    auto pairs = draw_erdos_renyi(n, cfg.p_prime, rng);
    if (pairs.empty())
        pairs = draw_erdos_renyi(n, cfg.p_prime, rng);
    if (pairs.empty())
        throw NumericalError("Erdos-Renyi negative graph " + std::to_string(k) +
                             " came out empty twice; p_prime=" + std::to_string(cfg.p_prime) +
                             " is too small for n=" + std::to_string(n));
    return adjacency_from_edges(n, pairs);
}

SparseSym sample_negative_graph(std::size_t n, const NegSampleConfig& cfg, std::size_t k)
{
    return degree_normalize(add_self_loops(sample_negative_adjacency(n, cfg, k)));
}

std::vector<SparseSym> sample_negative_graphs(std::size_t n, const NegSampleConfig& cfg)
{
    cfg.validate(n);
    std::vector<SparseSym> graphs;
    graphs.reserve(cfg.kappa);
    for (std::size_t k = 0; k < cfg.kappa; ++k)
        graphs.push_back(sample_negative_graph(n, cfg, k));
    return graphs;
}

SparseSym build_delta_w(const SparseSym& w_pos, std::span<const SparseSym> w_negs,
                        double eta_prime)
{
    for (const auto& w : w_negs)
        if (w.n() != w_pos.n())
            throw InvalidArgument("build_delta_w: negative graph has " + std::to_string(w.n()) +
                                  " nodes, positive graph " + std::to_string(w_pos.n()));
    if (w_negs.empty() || eta_prime == 0.0)
        return w_pos;
    std::vector<const SparseSym*> mats{&w_pos};
    std::vector<double> coeffs{1.0};
    const double c = -eta_prime / static_cast<double>(w_negs.size());
    for (const auto& w : w_negs) {
        mats.push_back(&w);
        coeffs.push_back(c);
    }
    return linear_combination(mats, coeffs);
}

EigenEstimate min_eigenvalue(const SparseSym& a, double tol, std::size_t max_iterations)
{
    const std::size_t n = a.n();
    if (n == 0)
        throw InvalidArgument("min_eigenvalue: empty matrix");
    double sigma = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (double v : a.row_values(i))
            row += std::abs(v);
        sigma = std::max(sigma, row);
    }
    // B = sigma I - A is PSD; its top eigenvalue is sigma - lambda_min(A).
    Rng rng = keyed_rng(0x5eedULL, StreamDomain::power_iteration, n);
    std::vector<double> x(n);
    for (auto& v : x)
        v = 1.0 + 0.5 * (rng.uniform() - 0.5);
    auto normalize = [](std::vector<double>& v) {
        double s = 0.0;
        for (double e : v)
            s += e * e;
        s = std::sqrt(s);
        for (double& e : v)
            e /= s;
    };
    normalize(x);
    EigenEstimate best;
    double best_residual = std::numeric_limits<double>::infinity();
    for (std::size_t it = 1; it <= max_iterations; ++it) {
        auto ax = spmv(a, x);
        std::vector<double> bx(n);
        for (std::size_t i = 0; i < n; ++i)
            bx[i] = sigma * x[i] - ax[i];
        double mu = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            mu += x[i] * bx[i];
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = bx[i] - mu * x[i];
            res += r * r;
        }
        res = std::sqrt(res);
        if (res < best_residual) {
            best_residual = res;
            best.value = sigma - mu;
            best.iterations = it;
        }
        if (res < tol) {
            best.value = sigma - mu;
            best.iterations = it;
            best.converged = true;
            return best;
        }
        double norm = 0.0;
        for (double e : bx)
            norm += e * e;
        if (norm == 0.0) {
            // x lies in the eigenspace of lambda = sigma.
            best.value = sigma;
            best.converged = true;
            best.iterations = it;
            return best;
        }
        x = std::move(bx);
        normalize(x);
    }
    return best;
}

EigenEstimate psd_margin(const SparseSym& l_pos, std::span<const SparseSym> l_negs,
                         double eta_prime, double tol, std::size_t max_iterations)
{
    for (const auto& l : l_negs)
        if (l.n() != l_pos.n())
            throw InvalidArgument("psd_margin: dimension mismatch");
    if (l_negs.empty() || eta_prime == 0.0)
        return min_eigenvalue(l_pos, tol, max_iterations);
    std::vector<const SparseSym*> mats{&l_pos};
    std::vector<double> coeffs{1.0};
    const double c = -eta_prime / static_cast<double>(l_negs.size());
    for (const auto& l : l_negs) {
        mats.push_back(&l);
        coeffs.push_back(c);
    }
    const SparseSym combined = linear_combination(mats, coeffs);
    if (combined.nnz() == 0)
        return {0.0, true, 0};
    return min_eigenvalue(combined, tol, max_iterations);
}

} // namespace coles
