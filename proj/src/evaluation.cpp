#include "coles/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "coles/error.hpp"
#include "coles/rng.hpp"

namespace coles {

namespace {

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng)
{
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = rng.bounded(i);
        std::swap(v[i - 1], v[j]);
    }
}

int class_count(std::span<const int> labels)
{
    int c = 0;
    for (int l : labels) {
        if (l < 0)
            throw InvalidArgument("labels must be non-negative, got " + std::to_string(l));
        c = std::max(c, l + 1);
    }
    return c;
}

} // namespace

Split random_split(std::span<const int> labels, const SplitSpec& spec)
{
    if (spec.per_class == 0)
        throw InvalidArgument("per_class must be >= 1");
    const int classes = class_count(labels);
    std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(classes));
    for (std::size_t i = 0; i < labels.size(); ++i)
        members[static_cast<std::size_t>(labels[i])].push_back(i);

    Rng rng = keyed_rng(spec.seed, StreamDomain::split, spec.index);
    Split split;
    std::vector<char> in_train(labels.size(), 0);
    for (int c = 0; c < classes; ++c) {
        auto& m = members[static_cast<std::size_t>(c)];
        if (m.empty())
            continue;
        if (m.size() < spec.per_class + spec.reserve)
            throw InvalidArgument("class " + std::to_string(c) + " has " +
                                  std::to_string(m.size()) + " members, fewer than per_class=" +
                                  std::to_string(spec.per_class) + " plus reserve " +
                                  std::to_string(spec.reserve));
        shuffle(m, rng);
        for (std::size_t k = 0; k < spec.per_class; ++k) {
            split.train.push_back(m[k]);
            in_train[m[k]] = 1;
        }
    }
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (!in_train[i])
            rest.push_back(i);
    shuffle(rest, rng);
    const std::size_t nval = std::min(spec.val_size, rest.size());
    split.val.assign(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(nval));
    split.test.assign(rest.begin() + static_cast<std::ptrdiff_t>(nval), rest.end());
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.val.begin(), split.val.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

namespace {

DenseMat standardized(const DenseMat& x, const std::vector<double>& mean,
                      const std::vector<double>& scale)
{
    DenseMat z(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            z(i, j) = (x(i, j) - mean[j]) / scale[j];
    return z;
}

DenseMat logits(const DenseMat& z, const DenseMat& w, const std::vector<double>& b)
{
    DenseMat out(z.rows(), w.cols());
    for (std::size_t i = 0; i < z.rows(); ++i) {
        auto o = out.row(i);
        for (std::size_t c = 0; c < w.cols(); ++c)
            o[c] = b[c];
        const auto zi = z.row(i);
        for (std::size_t j = 0; j < z.cols(); ++j) {
            const double v = zi[j];
            const auto wj = w.row(j);
            for (std::size_t c = 0; c < w.cols(); ++c)
                o[c] += v * wj[c];
        }
    }
    return out;
}

void softmax_rows(DenseMat& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto r = m.row(i);
        const double mx = *std::max_element(r.begin(), r.end());
        double s = 0.0;
        for (double& v : r) {
            v = std::exp(v - mx);
            s += v;
        }
        for (double& v : r)
            v /= s;
    }
}

double objective(const DenseMat& z, std::span<const int> labels, const DenseMat& w,
                 const std::vector<double>& b, double l2)
{
    const DenseMat lg = logits(z, w, b);
    double loss = 0.0;
    for (std::size_t i = 0; i < lg.rows(); ++i) {
        const auto r = lg.row(i);
        const double mx = *std::max_element(r.begin(), r.end());
        double s = 0.0;
        for (double v : r)
            s += std::exp(v - mx);
        loss += mx + std::log(s) - r[static_cast<std::size_t>(labels[i])];
    }
    loss /= static_cast<double>(lg.rows());
    double reg = 0.0;
    for (double v : w.data())
        reg += v * v;
    return loss + l2 * reg;
}

} // namespace

DenseMat LogRegModel::probabilities(const DenseMat& x) const
{
    if (x.cols() != mean.size())
        throw InvalidArgument("logistic regression: model expects " +
                              std::to_string(mean.size()) + " features, got " +
                              std::to_string(x.cols()));
    DenseMat p = logits(standardized(x, mean, scale), weights, bias);
    softmax_rows(p);
    return p;
}

std::vector<int> LogRegModel::predict(const DenseMat& x) const
{
    if (x.cols() != mean.size())
        throw InvalidArgument("logistic regression: model expects " +
                              std::to_string(mean.size()) + " features, got " +
                              std::to_string(x.cols()));
    const DenseMat lg = logits(standardized(x, mean, scale), weights, bias);
    std::vector<int> out(x.rows());
    for (std::size_t i = 0; i < lg.rows(); ++i) {
        const auto r = lg.row(i);
        out[i] = static_cast<int>(std::max_element(r.begin(), r.end()) - r.begin());
    }
    return out;
}

LogRegModel logreg_fit(const DenseMat& x, std::span<const int> labels, const LogRegConfig& config)
{
    if (x.rows() != labels.size())
        throw InvalidArgument("logreg_fit: " + std::to_string(x.rows()) + " rows but " +
                              std::to_string(labels.size()) + " labels");
    if (x.rows() == 0)
        throw InvalidArgument("logreg_fit: empty training set");
    const int classes = class_count(labels);
    {
        std::vector<int> distinct(labels.begin(), labels.end());
        std::sort(distinct.begin(), distinct.end());
        if (std::unique(distinct.begin(), distinct.end()) - distinct.begin() < 2)
            throw InvalidArgument("logreg_fit: training set contains a single class");
    }
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    const auto cc = static_cast<std::size_t>(classes);

    LogRegModel model;
    model.num_classes = cc;
    model.mean.assign(d, 0.0);
    model.scale.assign(d, 1.0);
    if (config.standardize) {
        for (std::size_t j = 0; j < d; ++j) {
            double m = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                m += x(i, j);
            m /= static_cast<double>(n);
            double v = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                v += (x(i, j) - m) * (x(i, j) - m);
            v /= static_cast<double>(n);
            model.mean[j] = m;
            model.scale[j] = v > 0.0 ? std::sqrt(v) : 1.0;
        }
    }
    const DenseMat z = standardized(x, model.mean, model.scale);
    model.weights = DenseMat(d, cc);
    model.bias.assign(cc, 0.0);

    double loss = objective(z, labels, model.weights, model.bias, config.l2);
    model.loss_history.push_back(loss);
    DenseMat gw(d, cc);
    std::vector<double> gb(cc);
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        DenseMat p = logits(z, model.weights, model.bias);
        softmax_rows(p);
        for (std::size_t i = 0; i < n; ++i)
            p(i, static_cast<std::size_t>(labels[i])) -= 1.0;
        const double inv_n = 1.0 / static_cast<double>(n);
        std::fill(gw.data().begin(), gw.data().end(), 0.0);
        std::fill(gb.begin(), gb.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto zi = z.row(i);
            const auto pi = p.row(i);
            for (std::size_t c = 0; c < cc; ++c)
                gb[c] += pi[c] * inv_n;
            for (std::size_t j = 0; j < d; ++j) {
                auto g = gw.row(j);
                const double v = zi[j] * inv_n;
                for (std::size_t c = 0; c < cc; ++c)
                    g[c] += v * pi[c];
            }
        }
        for (std::size_t k = 0; k < gw.size(); ++k)
            gw.data()[k] += 2.0 * config.l2 * model.weights.data()[k];

        double lr = config.lr;
        bool accepted = false;
        for (int halving = 0; halving < 40 && !accepted; ++halving, lr *= 0.5) {
            DenseMat w = model.weights;
            std::vector<double> b = model.bias;
            for (std::size_t k = 0; k < w.size(); ++k)
                w.data()[k] -= lr * gw.data()[k];
            for (std::size_t c = 0; c < cc; ++c)
                b[c] -= lr * gb[c];
            const double candidate = objective(z, labels, w, b, config.l2);
            if (candidate <= loss) {
                model.weights = std::move(w);
                model.bias = std::move(b);
                loss = candidate;
                accepted = true;
            }
        }
        model.loss_history.push_back(loss);
        if (!accepted)
            break;
    }
    return model;
}

std::vector<int> logreg_predict(const LogRegModel& model, const DenseMat& x)
{
    return model.predict(x);
}

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double e = a[i] - b[i];
        s += e * e;
    }
    return s;
}

KMeansResult kmeans_once(const DenseMat& y, std::size_t k, std::size_t max_iterations, Rng& rng)
{
    const std::size_t n = y.rows();
    const std::size_t d = y.cols();
    DenseMat centroids(k, d);
    auto set_centroid = [&](std::size_t c, std::size_t point) {
        std::copy(y.row(point).begin(), y.row(point).end(), centroids.row(c).begin());
    };

    // k-means++ seeding.
    set_centroid(0, rng.bounded(n));
    std::vector<double> nearest(n);
    for (std::size_t i = 0; i < n; ++i)
        nearest[i] = sq_dist(y.row(i), centroids.row(0));
    for (std::size_t c = 1; c < k; ++c) {
        double total = 0.0;
        for (double v : nearest)
            total += v;
        std::size_t pick = 0;
        if (total > 0.0) {
            const double r = rng.uniform() * total;
            double cum = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                cum += nearest[i];
                if (cum > r) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = rng.bounded(n);
        }
        set_centroid(c, pick);
        for (std::size_t i = 0; i < n; ++i)
            nearest[i] = std::min(nearest[i], sq_dist(y.row(i), centroids.row(c)));
    }

    std::vector<int> assign(n, -1);
    std::vector<double> dist(n, 0.0);
    auto assign_all = [&] {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double bd = sq_dist(y.row(i), centroids.row(0));
            for (std::size_t c = 1; c < k; ++c) {
                const double dc = sq_dist(y.row(i), centroids.row(c));
                if (dc < bd) {
                    bd = dc;
                    best = c;
                }
            }
            dist[i] = bd;
            if (assign[i] != static_cast<int>(best)) {
                assign[i] = static_cast<int>(best);
                changed = true;
            }
        }
        return changed;
    };

    assign_all();
    for (std::size_t it = 0; it < max_iterations; ++it) {
        std::vector<std::size_t> counts(k, 0);
        DenseMat sums(k, d);
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = static_cast<std::size_t>(assign[i]);
            ++counts[c];
            auto s = sums.row(c);
            const auto yi = y.row(i);
            for (std::size_t j = 0; j < d; ++j)
                s[j] += yi[j];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) {
                // Re-seed at the point farthest from its current centroid.
                const std::size_t far = static_cast<std::size_t>(
                    std::max_element(dist.begin(), dist.end()) - dist.begin());
                set_centroid(c, far);
                dist[far] = 0.0;
                continue;
            }
            auto cen = centroids.row(c);
            const auto s = sums.row(c);
            for (std::size_t j = 0; j < d; ++j)
                cen[j] = s[j] / static_cast<double>(counts[c]);
        }
        if (!assign_all())
            break;
    }
    KMeansResult out;
    out.assignment = std::move(assign);
    out.centroids = std::move(centroids);
    out.inertia = std::accumulate(dist.begin(), dist.end(), 0.0);
    return out;
}

} // namespace

KMeansResult kmeans(const DenseMat& y, std::size_t k, const KMeansConfig& config)
{
    if (k == 0 || k > y.rows())
        throw InvalidArgument("kmeans: k=" + std::to_string(k) + " must be in [1, n=" +
                              std::to_string(y.rows()) + "]");
    if (config.restarts == 0)
        throw InvalidArgument("kmeans: restarts must be >= 1");
    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < config.restarts; ++r) {
        Rng rng = keyed_rng(config.seed, StreamDomain::kmeans, r);
        KMeansResult run = kmeans_once(y, k, config.max_iterations, rng);
        if (run.inertia < best.inertia)
            best = std::move(run);
    }
    return best;
}

std::vector<std::size_t> hungarian(const DenseMat& cost)
{
    const std::size_t n = cost.rows();
    const std::size_t m = cost.cols();
    if (n > m)
        throw InvalidArgument("hungarian: more rows than columns");
    constexpr double inf = std::numeric_limits<double>::infinity();
    // Potentials formulation, 1-based with a virtual column 0.
    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<std::size_t> match(m + 1, 0), way(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(m + 1, inf);
        std::vector<char> used(m + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = match[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= m; ++j) {
                if (used[j])
                    continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> row_to_col(n, 0);
    for (std::size_t j = 1; j <= m; ++j)
        if (match[j] != 0)
            row_to_col[match[j] - 1] = j - 1;
    return row_to_col;
}

double nmi(std::span<const int> a, std::span<const int> b)
{
    if (a.size() != b.size())
        throw InvalidArgument("nmi: length mismatch");
    if (a.empty())
        throw InvalidArgument("nmi: empty input");
    std::map<int, double> ca, cb;
    std::map<std::pair<int, int>, double> joint;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ca[a[i]] += 1.0;
        cb[b[i]] += 1.0;
        joint[{a[i], b[i]}] += 1.0;
    }
    const double n = static_cast<double>(a.size());
    // Terms are summed in sorted order so relabelling either side gives a
    // bit-identical result.
    auto sorted_sum = [](std::vector<double> terms) {
        std::sort(terms.begin(), terms.end());
        double s = 0.0;
        for (double t : terms)
            s += t;
        return s;
    };
    auto entropy = [&](const std::map<int, double>& c) {
        std::vector<double> terms;
        for (const auto& [k, v] : c) {
            const double p = v / n;
            terms.push_back(-p * std::log(p));
        }
        return sorted_sum(std::move(terms));
    };
    const double ha = entropy(ca);
    const double hb = entropy(cb);
    std::vector<double> terms;
    for (const auto& [key, v] : joint) {
        const double pij = v / n;
        terms.push_back(pij * std::log(pij * n * n / (ca[key.first] * cb[key.second])));
    }
    const double mi = sorted_sum(std::move(terms));
    const double denom = 0.5 * (ha + hb);
    if (denom == 0.0)
        return 1.0;
    return std::clamp(mi / denom, 0.0, 1.0);
}

namespace {

Metrics classification_metrics(std::span<const int> pred, std::span<const int> truth)
{
    Metrics m;
    std::size_t correct = 0;
    int classes = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (pred[i] == truth[i])
            ++correct;
        classes = std::max({classes, truth[i] + 1, pred[i] + 1});
    }
    const auto cc = static_cast<std::size_t>(classes);
    std::vector<double> tp(cc, 0.0), fp(cc, 0.0), fn(cc, 0.0);
    std::vector<char> present(cc, 0);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        present[static_cast<std::size_t>(truth[i])] = 1;
        if (pred[i] == truth[i]) {
            tp[static_cast<std::size_t>(truth[i])] += 1.0;
        } else {
            fn[static_cast<std::size_t>(truth[i])] += 1.0;
            if (pred[i] >= 0)
                fp[static_cast<std::size_t>(pred[i])] += 1.0;
        }
    }
    double f1_sum = 0.0;
    std::size_t counted = 0;
    double tp_all = 0.0, fp_all = 0.0, fn_all = 0.0;
    for (std::size_t c = 0; c < cc; ++c) {
        tp_all += tp[c];
        fp_all += fp[c];
        fn_all += fn[c];
        if (!present[c])
            continue;
        f1_sum += 2.0 * tp[c] / (2.0 * tp[c] + fp[c] + fn[c]);
        ++counted;
    }
    m.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
    m.macro_f1 = f1_sum / static_cast<double>(counted);
    const double micro_den = 2.0 * tp_all + fp_all + fn_all;
    m.micro_f1 = micro_den > 0.0 ? 2.0 * tp_all / micro_den : 0.0;
    // Unmatched clusters (pred = -1) count as false negatives only, so
    // micro-F1 can exceed accuracy in clustering mode; single-label
    // classification keeps them equal.
    return m;
}

} // namespace

Metrics score(std::span<const int> pred, std::span<const int> truth, ScoreMode mode)
{
    if (pred.size() != truth.size())
        throw InvalidArgument("score: " + std::to_string(pred.size()) + " predictions for " +
                              std::to_string(truth.size()) + " labels");
    if (truth.empty())
        throw InvalidArgument("score: empty input");
    class_count(truth);
    class_count(pred);
    if (mode == ScoreMode::classification) {
        Metrics m = classification_metrics(pred, truth);
        m.nmi = nmi(pred, truth);
        return m;
    }
    // Clustering: match clusters to classes maximising agreement.
    const auto k = static_cast<std::size_t>(class_count(pred));
    const auto c = static_cast<std::size_t>(class_count(truth));
    const bool clusters_as_rows = k <= c;
    DenseMat cost(clusters_as_rows ? k : c, clusters_as_rows ? c : k);
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const auto p = static_cast<std::size_t>(pred[i]);
        const auto t = static_cast<std::size_t>(truth[i]);
        if (clusters_as_rows)
            cost(p, t) -= 1.0;
        else
            cost(t, p) -= 1.0;
    }
    const auto match = hungarian(cost);
    std::vector<int> cluster_to_class(k, -1);
    for (std::size_t r = 0; r < match.size(); ++r) {
        if (clusters_as_rows)
            cluster_to_class[r] = static_cast<int>(match[r]);
        else
            cluster_to_class[match[r]] = static_cast<int>(r);
    }
    std::vector<int> mapped(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i)
        mapped[i] = cluster_to_class[static_cast<std::size_t>(pred[i])];
    Metrics m = classification_metrics(mapped, truth);
    m.nmi = nmi(pred, truth);
    return m;
}

} // namespace coles
