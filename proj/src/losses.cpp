#include "coles/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coles/error.hpp"

namespace coles {

double log_sigmoid(double x) noexcept
{
    return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double sigmoid(double x) noexcept
{
    if (x >= 0.0)
        return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

namespace {

void check_dims(const ContrastiveBatch& b)
{
    for (const auto& u : b.positives)
        if (u.size() != b.anchor.size())
            throw InvalidArgument("positive vector has dimension " + std::to_string(u.size()) +
                                  ", anchor " + std::to_string(b.anchor.size()));
    for (const auto& u : b.negatives)
        if (u.size() != b.anchor.size())
            throw InvalidArgument("negative vector has dimension " + std::to_string(u.size()) +
                                  ", anchor " + std::to_string(b.anchor.size()));
}

template <typename F>
double mean_of(const std::vector<Vec>& vs, const Vec& v, F f)
{
    if (vs.empty())
        return 0.0;
    double s = 0.0;
    for (const auto& u : vs)
        s += f(dot(u, v));
    return s / static_cast<double>(vs.size());
}

Vec mean_vector(const std::vector<Vec>& vs, std::size_t dim)
{
    Vec mu(dim, 0.0);
    for (const auto& u : vs)
        for (std::size_t i = 0; i < dim; ++i)
            mu[i] += u[i];
    for (double& m : mu)
        m /= static_cast<double>(vs.size());
    return mu;
}

Vec rescaled(const Vec& v, double tau)
{
    double norm = 0.0;
    for (double e : v)
        norm += e * e;
    norm = std::sqrt(norm);
    if (norm == 0.0)
        throw InvalidArgument("cannot rescale a zero vector to norm tau");
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = v[i] * (tau / norm);
    return out;
}

double log_sum_exp(std::span<const double> s)
{
    const double mx = *std::max_element(s.begin(), s.end());
    double acc = 0.0;
    for (double x : s)
        acc += std::exp(x - mx);
    return mx + std::log(acc);
}

} // namespace

double sampled_nce_sigmoid(const ContrastiveBatch& batch)
{
    check_dims(batch);
    const double pos = mean_of(batch.positives, batch.anchor, [](double s) { return log_sigmoid(s); });
    const double neg = mean_of(batch.negatives, batch.anchor, [](double s) { return log_sigmoid(-s); });
    return pos + batch.eta * neg;
}

double coles_pointwise(const ContrastiveBatch& batch)
{
    check_dims(batch);
    const double pos = mean_of(batch.positives, batch.anchor, [](double s) { return s; });
    const double neg = mean_of(batch.negatives, batch.anchor, [](double s) { return s; });
    return pos - batch.eta * neg;
}

BlockLoss block_form(const ContrastiveBatch& batch)
{
    check_dims(batch);
    if (batch.positives.empty() || batch.negatives.empty())
        throw InvalidArgument("block_form needs at least one positive and one negative");
    BlockLoss out;
    out.mu_plus = mean_vector(batch.positives, batch.anchor.size());
    out.mu_minus = mean_vector(batch.negatives, batch.anchor.size());
    double s = 0.0;
    for (std::size_t i = 0; i < batch.anchor.size(); ++i)
        s += batch.anchor[i] * (out.mu_plus[i] - out.mu_minus[i]);
    out.loss = -s;
    return out;
}

BlockLoss block_form_weighted(std::span<const double> anchor, std::span<const Vec> positives,
                              std::span<const double> pos_weights, std::span<const Vec> negatives,
                              std::span<const double> neg_weights)
{
    if (positives.size() != pos_weights.size() || negatives.size() != neg_weights.size())
        throw InvalidArgument("block_form_weighted: weight count mismatch");
    const std::size_t dim = anchor.size();
    BlockLoss out;
    out.mu_plus.assign(dim, 0.0);
    out.mu_minus.assign(dim, 0.0);
    for (std::size_t k = 0; k < positives.size(); ++k) {
        if (positives[k].size() != dim)
            throw InvalidArgument("block_form_weighted: dimension mismatch");
        for (std::size_t i = 0; i < dim; ++i)
            out.mu_plus[i] += pos_weights[k] * positives[k][i];
    }
    for (std::size_t k = 0; k < negatives.size(); ++k) {
        if (negatives[k].size() != dim)
            throw InvalidArgument("block_form_weighted: dimension mismatch");
        for (std::size_t i = 0; i < dim; ++i)
            out.mu_minus[i] += neg_weights[k] * negatives[k][i];
    }
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        s += anchor[i] * (out.mu_plus[i] - out.mu_minus[i]);
    out.loss = -s;
    return out;
}

double graph_block_loss(const DenseMat& y, const SparseSym& w_pos,
                        std::span<const SparseSym> w_negs, double eta_prime)
{
    if (y.rows() != w_pos.n())
        throw InvalidArgument("graph_block_loss: embedding rows do not match graph size");
    for (const auto& w : w_negs)
        if (w.n() != w_pos.n())
            throw InvalidArgument("graph_block_loss: negative graph size mismatch");
    const double scale = w_negs.empty() ? 0.0 : eta_prime / static_cast<double>(w_negs.size());
    auto row_vec = [&](std::size_t i) {
        const auto r = y.row(i);
        return Vec(r.begin(), r.end());
    };
    double total = 0.0;
    for (std::size_t v = 0; v < y.rows(); ++v) {
        std::vector<Vec> pos;
        std::vector<double> pos_w;
        for (std::size_t k = 0; k < w_pos.row_cols(v).size(); ++k) {
            pos.push_back(row_vec(w_pos.row_cols(v)[k]));
            pos_w.push_back(w_pos.row_values(v)[k]);
        }
        std::vector<Vec> neg;
        std::vector<double> neg_w;
        for (const auto& w : w_negs)
            for (std::size_t k = 0; k < w.row_cols(v).size(); ++k) {
                neg.push_back(row_vec(w.row_cols(v)[k]));
                neg_w.push_back(scale * w.row_values(v)[k]);
            }
        total += block_form_weighted(y.row(v), pos, pos_w, neg, neg_w).loss;
    }
    return total;
}

double generalized_mean(std::span<const double> values, double p)
{
    if (values.empty())
        throw InvalidArgument("generalized_mean: empty input");
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0 || (p <= 0.0 && v == 0.0))
            throw InvalidArgument("generalized_mean: values must be positive for p <= 0 and "
                                  "non-negative otherwise");
    }
    const double n = static_cast<double>(values.size());
    if (p == 0.0) {
        double s = 0.0;
        for (double v : values)
            s += std::log(v);
        return std::exp(s / n);
    }
    const double mx = *std::max_element(values.begin(), values.end());
    if (mx == 0.0)
        return 0.0;
    double s = 0.0;
    for (double v : values)
        s += std::pow(v / mx, p);
    return mx * std::pow(s / n, 1.0 / p);
}

double log_generalized_mean_exp(std::span<const double> scores, double p)
{
    if (scores.empty())
        throw InvalidArgument("log_generalized_mean_exp: empty input");
    const double n = static_cast<double>(scores.size());
    if (p == 0.0) {
        double s = 0.0;
        for (double x : scores)
            s += x;
        return s / n;
    }
    std::vector<double> scaled(scores.begin(), scores.end());
    for (double& x : scaled)
        x *= p;
    return (log_sum_exp(scaled) - std::log(n)) / p;
}

AlignUniform align_uniform(const ContrastiveBatch& batch, double p,
                           const AlignUniformOptions& options)
{
    check_dims(batch);
    if (batch.positives.size() != 1)
        throw InvalidArgument("align_uniform expects exactly one positive");
    if (batch.negatives.empty())
        throw InvalidArgument("align_uniform needs at least one negative");
    if (options.normalize && !(options.tau > 0.0))
        throw InvalidArgument("align_uniform: tau must be > 0");

    auto prep = [&](const Vec& v) { return options.normalize ? rescaled(v, options.tau) : v; };
    const Vec v = prep(batch.anchor);
    const Vec u = prep(batch.positives.front());
    std::vector<double> scores;
    scores.reserve(batch.negatives.size() + 1);
    for (const auto& n : batch.negatives)
        scores.push_back(dot(prep(n), v));

    AlignUniform out;
    const double pos_score = dot(u, v);
    out.align = -pos_score;
    if (options.mode == UniformityMode::softmax) {
        scores.push_back(pos_score);
        out.uniform = log_sum_exp(scores);
    } else {
        out.uniform = log_generalized_mean_exp(scores, p);
    }
    out.total = out.align + out.uniform;
    return out;
}

} // namespace coles
