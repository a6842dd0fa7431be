#include "coles/app.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <set>

#include "coles/datasets.hpp"
#include "coles/diagnostics.hpp"
#include "coles/error.hpp"
#include "coles/evaluation.hpp"
#include "coles/graph.hpp"
#include "coles/io.hpp"
#include "coles/log.hpp"
#include "coles/parallel.hpp"
#include "coles/preprocess.hpp"
#include "coles/rng.hpp"
#include "coles/solver.hpp"
#include "coles/synthetic.hpp"

namespace coles {

using nlohmann::json;

namespace {

// Ordered list of (key, member) bindings shared by to_json and apply_json.
template <typename F>
void for_each_field(RunConfig& c, F&& f)
{
    f("subcommand", c.subcommand);
    f("edges", c.edges);
    f("features", c.features);
    f("labels", c.labels);
    f("embedding", c.embedding);
    f("out", c.out);
    f("planetoid_dir", c.planetoid_dir);
    f("planetoid_name", c.planetoid_name);
    f("seed", c.seed);
    f("filter", c.filter);
    f("eigensolver", c.eigensolver);
    f("k_steps", c.k_steps);
    f("alpha", c.alpha);
    f("dim", c.dim);
    f("kappa", c.kappa);
    f("per_node", c.per_node);
    f("mode", c.mode);
    f("p_prime", c.p_prime);
    f("eta_prime", c.eta_prime);
    f("self_loops", c.self_loops);
    f("beta", c.beta);
    f("tau", c.tau);
    f("hash_dim", c.hash_dim);
    f("write_csv", c.write_csv);
    f("psd_iterations", c.psd_iterations);
    f("per_class", c.per_class);
    f("n_splits", c.n_splits);
    f("val_size", c.val_size);
    f("l2", c.l2);
    f("lr", c.lr);
    f("epochs", c.epochs);
    f("clusters", c.clusters);
    f("kmeans_restarts", c.kmeans_restarts);
    f("classes", c.classes);
    f("per_block", c.per_block);
    f("p_in", c.p_in);
    f("p_out", c.p_out);
    f("feature_dim", c.feature_dim);
    f("mean_sep", c.mean_sep);
    f("noise_sigma", c.noise_sigma);
    f("grid_points", c.grid_points);
    f("bandwidth", c.bandwidth);
    f("threads", c.threads);
}

std::filesystem::path out_dir(const RunConfig& cfg)
{
    const std::filesystem::path dir(cfg.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw IoError("output directory " + dir.string() + " is not writable");
    return dir;
}

void write_json(const json& j, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << j.dump(2) << '\n';
    if (!out)
        throw IoError("write failed for " + path.string());
}

void echo_config(const RunConfig& cfg, const std::filesystem::path& dir)
{
    write_json(to_json(cfg), dir / "config.json");
}

void require_file(const std::string& path, const char* key)
{
    if (path.empty())
        throw InvalidArgument(std::string("missing required input '") + key + "'");
    if (!std::filesystem::exists(path))
        throw IoError(std::string(key) + " file not found: " + path);
}

NegativeMode parse_mode(const std::string& m)
{
    if (m == "per-node" || m == "per_node")
        return NegativeMode::per_node;
    if (m == "erdos-renyi" || m == "erdos_renyi" || m == "er")
        return NegativeMode::erdos_renyi;
    throw InvalidArgument("unknown negative sampling mode '" + m +
                          "' (expected per-node or erdos-renyi)");
}

NegSampleConfig negatives_of(const RunConfig& cfg)
{
    NegSampleConfig n;
    n.kappa = cfg.kappa;
    n.per_node = cfg.per_node;
    n.mode = parse_mode(cfg.mode);
    n.p_prime = cfg.p_prime;
    n.eta_prime = cfg.eta_prime;
    n.seed = cfg.seed;
    return n;
}

struct GraphInputs {
    SparseSym adjacency;
    DenseMat features;
    std::vector<int> labels;
};

GraphInputs load_graph_inputs(const RunConfig& cfg, bool need_features)
{
    GraphInputs in;
    if (!cfg.planetoid_dir.empty()) {
        if (!has_linqs(cfg.planetoid_dir, cfg.planetoid_name))
            throw IoError("planetoid_dir " + cfg.planetoid_dir + " lacks " + cfg.planetoid_name +
                          ".content / " + cfg.planetoid_name + ".cites");
        LabeledGraph g = load_linqs(cfg.planetoid_dir, cfg.planetoid_name);
        in.adjacency = std::move(g.adjacency);
        in.features = std::move(g.features);
        in.labels = std::move(g.labels);
        return in;
    }
    require_file(cfg.edges, "edges");
    EdgeListOptions opts;
    opts.allow_isolated = cfg.self_loops;
    if (need_features) {
        require_file(cfg.features, "features");
        in.features = read_matrix(cfg.features);
        opts.num_nodes = in.features.rows();
    }
    in.adjacency = load_edge_list(cfg.edges, opts);
    if (!cfg.labels.empty()) {
        require_file(cfg.labels, "labels");
        in.labels = read_labels(cfg.labels);
        if (in.labels.size() != in.adjacency.n())
            throw InvalidArgument("labels file " + cfg.labels + " has " +
                                  std::to_string(in.labels.size()) + " entries for " +
                                  std::to_string(in.adjacency.n()) + " nodes");
    }
    return in;
}

std::vector<int> load_labels_checked(const RunConfig& cfg, std::size_t n)
{
    require_file(cfg.labels, "labels");
    auto labels = read_labels(cfg.labels);
    if (labels.size() != n)
        throw InvalidArgument("labels file " + cfg.labels + " has " +
                              std::to_string(labels.size()) + " entries but the embedding has " +
                              std::to_string(n) + " rows");
    return labels;
}

DenseMat rows_of(const DenseMat& m, const std::vector<std::size_t>& idx)
{
    DenseMat out(idx.size(), m.cols());
    for (std::size_t r = 0; r < idx.size(); ++r)
        std::copy(m.row(idx[r]).begin(), m.row(idx[r]).end(), out.row(r).begin());
    return out;
}

std::vector<int> pick(const std::vector<int>& v, const std::vector<std::size_t>& idx)
{
    std::vector<int> out(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
        out[r] = v[idx[r]];
    return out;
}

json metrics_json(const Metrics& m)
{
    return json{{"accuracy", m.accuracy},
                {"macro_f1", m.macro_f1},
                {"micro_f1", m.micro_f1},
                {"nmi", m.nmi}};
}

json summarize(const std::vector<Metrics>& runs)
{
    auto stat = [&](auto getter) {
        double mean = 0.0;
        for (const auto& m : runs)
            mean += getter(m);
        mean /= static_cast<double>(runs.size());
        double var = 0.0;
        for (const auto& m : runs)
            var += (getter(m) - mean) * (getter(m) - mean);
        var /= static_cast<double>(runs.size());
        return std::pair{mean, std::sqrt(var)};
    };
    json mean, sd;
    const std::pair<const char*, double Metrics::*> fields[] = {{"accuracy", &Metrics::accuracy},
                                                                {"macro_f1", &Metrics::macro_f1},
                                                                {"micro_f1", &Metrics::micro_f1},
                                                                {"nmi", &Metrics::nmi}};
    for (const auto& [name, member] : fields) {
        const auto [m, s] = stat([member](const Metrics& x) { return x.*member; });
        mean[name] = m;
        sd[name] = s;
    }
    return json{{"mean", mean}, {"std", sd}};
}

DenseMat load_embedding(const RunConfig& cfg)
{
    require_file(cfg.embedding, "embedding");
    return read_matrix(cfg.embedding);
}

} // namespace

json to_json(const RunConfig& cfg)
{
    json j = json::object();
    RunConfig copy = cfg;
    for_each_field(copy, [&](const char* key, auto& value) { j[key] = value; });
    return j;
}

void apply_json(RunConfig& cfg, const json& j)
{
    if (!j.is_object())
        throw InvalidArgument("config must be a JSON object");
    std::set<std::string> known;
    for_each_field(cfg, [&](const char* key, auto& value) {
        known.insert(key);
        const auto it = j.find(key);
        if (it == j.end())
            return;
        using T = std::decay_t<decltype(value)>;
        try {
            if constexpr (std::is_same_v<T, std::size_t> || std::is_same_v<T, std::uint64_t>) {
                if (!it->is_number_unsigned() &&
                    !(it->is_number_integer() && it->template get<std::int64_t>() >= 0))
                    throw InvalidArgument("");
            } else if constexpr (std::is_same_v<T, double>) {
                if (!it->is_number())
                    throw InvalidArgument("");
            } else if constexpr (std::is_same_v<T, bool>) {
                if (!it->is_boolean())
                    throw InvalidArgument("");
            } else {
                if (!it->is_string())
                    throw InvalidArgument("");
            }
            value = it->template get<T>();
        } catch (const std::exception&) {
            throw InvalidArgument("config key '" + std::string(key) + "' has the wrong type");
        }
    });
    for (const auto& [key, _] : j.items())
        if (!known.count(key))
            throw InvalidArgument("unknown config key '" + key + "'");
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InvalidArgument("config " + path.string() + " is not valid JSON: " + e.what());
    }
    apply_json(cfg, j);
}

int run_synth(const RunConfig& cfg)
{
    SbmSpec spec;
    spec.classes = cfg.classes;
    spec.per_block = cfg.per_block;
    spec.p_in = cfg.p_in;
    spec.p_out = cfg.p_out;
    spec.feature_dim = cfg.feature_dim;
    spec.mean_sep = cfg.mean_sep;
    spec.noise_sigma = cfg.noise_sigma;
    spec.seed = cfg.seed;
    const LabeledGraph g = generate_sbm(spec);
    const auto dir = out_dir(cfg);
    save_edge_list(g.adjacency, dir / "edges.txt");
    write_csv(g.features, dir / "features.csv");
    write_labels(g.labels, dir / "labels.txt");
    echo_config(cfg, dir);
    log::info("synth: wrote " + std::to_string(g.adjacency.n()) + " nodes, " +
              std::to_string(g.adjacency.edge_count()) + " edges to " + dir.string());
    return kExitOk;
}

int run_embed(const RunConfig& cfg)
{
    const auto start = std::chrono::steady_clock::now();
    GraphInputs in = load_graph_inputs(cfg, true);
    DenseMat x = std::move(in.features);
    if (cfg.hash_dim > 0)
        x = hash_features(x, cfg.hash_dim, cfg.seed);

    ColesConfig coles;
    coles.dim = cfg.dim;
    coles.filter.kind = parse_filter_kind(cfg.filter);
    coles.filter.k_steps = cfg.k_steps;
    coles.filter.alpha = cfg.alpha;
    coles.negatives = negatives_of(cfg);
    coles.beta = cfg.beta;
    coles.eigen_method = parse_eigen_method(cfg.eigensolver);
    coles.tau = cfg.tau;
    coles.validate(x.rows(), x.cols());
    log::info("embed: filter=" + cfg.filter + " k_steps=" + std::to_string(cfg.k_steps) +
              " alpha=" + format_double(cfg.alpha) + " dim=" + std::to_string(cfg.dim) +
              " kappa=" + std::to_string(cfg.kappa) + " eta_prime=" + format_double(cfg.eta_prime));

    const SparseSym w_pos = normalized_adjacency(in.adjacency, cfg.self_loops);
    std::vector<SparseSym> negs;
    if (coles.negatives.kappa > 0 && coles.negatives.eta_prime != 0.0)
        negs = sample_negative_graphs(w_pos.n(), coles.negatives);
    const SparseSym delta_w = build_delta_w(w_pos, negs, coles.negatives.eta_prime);
    const EmbeddingResult result = solve_linear_coles(x, w_pos, delta_w, coles.filter,
                                                      coles.dim, coles.eigen_method);
    const double solve_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::vector<SparseSym> neg_laplacians;
    neg_laplacians.reserve(negs.size());
    for (const auto& w : negs)
        neg_laplacians.push_back(laplacian(w));
    const EigenEstimate margin = psd_margin(laplacian(w_pos), neg_laplacians,
                                            coles.negatives.eta_prime, 1e-6, cfg.psd_iterations);
    if (margin.value < 0.0)
        log::info("embed: L - (eta'/kappa) sum L_k is indefinite, min eigenvalue " +
                  format_double(margin.value));

    const auto dir = out_dir(cfg);
    write_clsm(result.embedding, dir / "embedding.clsm");
    if (cfg.write_csv)
        write_csv(result.embedding, dir / "embedding.csv");
    if (!in.labels.empty() && !cfg.planetoid_dir.empty())
        write_labels(in.labels, dir / "labels.txt");

    json sidecar;
    sidecar["config"] = to_json(cfg);
    sidecar["nodes"] = x.rows();
    sidecar["features"] = x.cols();
    const bool jacobi = coles.eigen_method == EigenMethod::jacobi ||
                        (coles.eigen_method == EigenMethod::automatic && x.cols() <= kJacobiMaxDim);
    sidecar["eigensolver"] = jacobi ? "jacobi" : "tridiagonal";
    sidecar["eigenvalues"] = result.eigenvalues;
    sidecar["objective"] = result.objective;
    sidecar["converged"] = result.converged;
    sidecar["nonpositive_eigenvalues"] = result.nonpositive_eigenvalues;
    sidecar["psd_margin"] = {{"value", margin.value},
                             {"converged", margin.converged},
                             {"iterations", margin.iterations}};
    sidecar["wall_clock_seconds"] = solve_seconds;
    write_json(sidecar, dir / "embedding.json");
    echo_config(cfg, dir);

    if (!result.converged) {
        log::error("embed: eigensolver did not converge");
        return kExitNumerical;
    }
    if (result.nonpositive_eigenvalues)
        log::info("embed: fewer than dim positive eigenvalues in the quadratic form");
    return kExitOk;
}

int run_eval_classify(const RunConfig& cfg)
{
    const DenseMat y = load_embedding(cfg);
    const auto labels = load_labels_checked(cfg, y.rows());
    if (cfg.n_splits == 0)
        throw InvalidArgument("n_splits must be >= 1");
    LogRegConfig lr;
    lr.l2 = cfg.l2;
    lr.lr = cfg.lr;
    lr.epochs = cfg.epochs;

    json per_split = json::array();
    std::vector<Metrics> runs;
    for (std::size_t s = 0; s < cfg.n_splits; ++s) {
        SplitSpec spec;
        spec.per_class = cfg.per_class;
        spec.val_size = cfg.val_size;
        spec.seed = cfg.seed;
        spec.index = s;
        const Split split = random_split(labels, spec);
        if (split.test.empty())
            throw InvalidArgument("split leaves no test nodes; lower per_class or val_size");
        const auto model = logreg_fit(rows_of(y, split.train), pick(labels, split.train), lr);
        const auto pred = model.predict(rows_of(y, split.test));
        const Metrics m = score(pred, pick(labels, split.test), ScoreMode::classification);
        runs.push_back(m);
        json rec = metrics_json(m);
        rec["split"] = s;
        rec["train_size"] = split.train.size();
        rec["val_size"] = split.val.size();
        rec["test_size"] = split.test.size();
        per_split.push_back(rec);
    }
    json out = summarize(runs);
    out["per_split"] = per_split;
    out["config"] = to_json(cfg);
    const auto dir = out_dir(cfg);
    write_json(out, dir / "metrics_classify.json");
    echo_config(cfg, dir);
    log::info("eval-classify: mean accuracy " + format_double(out["mean"]["accuracy"]));
    return kExitOk;
}

int run_eval_cluster(const RunConfig& cfg)
{
    const DenseMat y = load_embedding(cfg);
    const auto labels = load_labels_checked(cfg, y.rows());
    if (cfg.n_splits == 0)
        throw InvalidArgument("n_splits must be >= 1");
    int classes = 0;
    for (int l : labels)
        classes = std::max(classes, l + 1);
    const std::size_t k = cfg.clusters > 0 ? cfg.clusters : static_cast<std::size_t>(classes);

    json per_run = json::array();
    std::vector<Metrics> runs;
    for (std::size_t r = 0; r < cfg.n_splits; ++r) {
        KMeansConfig km;
        km.restarts = cfg.kmeans_restarts;
        km.seed = Rng(cfg.seed, r).next();
        const auto result = kmeans(y, k, km);
        const Metrics m = score(result.assignment, labels, ScoreMode::clustering);
        runs.push_back(m);
        json rec = metrics_json(m);
        rec["split"] = r;
        rec["inertia"] = result.inertia;
        per_run.push_back(rec);
    }
    json out = summarize(runs);
    out["per_split"] = per_run;
    out["config"] = to_json(cfg);
    const auto dir = out_dir(cfg);
    write_json(out, dir / "metrics_cluster.json");
    echo_config(cfg, dir);
    return kExitOk;
}

int run_diagnose(const RunConfig& cfg)
{
    const DenseMat y = load_embedding(cfg);
    EdgeListOptions opts;
    opts.num_nodes = y.rows();
    opts.allow_isolated = true;
    require_file(cfg.edges, "edges");
    const SparseSym adj = load_edge_list(cfg.edges, opts);

    NegSampleConfig neg = negatives_of(cfg);
    if (neg.kappa == 0)
        neg.kappa = 1;
    std::vector<double> pos_scores = pair_scores(y, adj);
    std::vector<double> neg_scores;
    for (std::size_t k = 0; k < neg.kappa; ++k) {
        const auto s = pair_scores(y, sample_negative_adjacency(y.rows(), neg, k));
        neg_scores.insert(neg_scores.end(), s.begin(), s.end());
    }
    const double h = cfg.bandwidth > 0.0 ? cfg.bandwidth : pooled_bandwidth(pos_scores, neg_scores);
    const auto grid = shared_grid(pos_scores, neg_scores, h, cfg.grid_points);
    const auto dp = parzen_density(pos_scores, h, grid);
    const auto dn = parzen_density(neg_scores, h, grid);

    const auto dir = out_dir(cfg);
    {
        std::ofstream csv(dir / "densities.csv", std::ios::trunc);
        if (!csv)
            throw IoError("cannot write " + (dir / "densities.csv").string());
        csv << "grid,density_pos,density_neg\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
            csv << format_double(grid[i]) << ',' << format_double(dp[i]) << ','
                << format_double(dn[i]) << '\n';
    }

    json summary;
    summary["js"] = js_divergence(pos_scores, neg_scores, h, cfg.grid_points);
    summary["w1"] = wasserstein1(pos_scores, neg_scores);
    summary["bandwidth"] = h;
    summary["n_pos"] = pos_scores.size();
    summary["n_neg"] = neg_scores.size();
    double mp = 0.0, mn = 0.0;
    for (double s : pos_scores)
        mp += s;
    for (double s : neg_scores)
        mn += s;
    mp /= static_cast<double>(pos_scores.size());
    mn /= static_cast<double>(neg_scores.size());
    summary["mean_score_pos"] = mp;
    summary["mean_score_neg"] = mn;
    summary["separation"] = separation(mp, mn);
    if (!cfg.labels.empty()) {
        const auto labels = load_labels_checked(cfg, y.rows());
        // Isolated nodes have no neighbourhood to score; drop them.
        std::vector<std::uint32_t> keep(adj.n(), 0);
        std::uint32_t kept = 0;
        for (std::size_t i = 0; i < adj.n(); ++i)
            keep[i] = adj.row_cols(i).empty() ? UINT32_MAX : kept++;
        std::vector<Triplet> t;
        std::vector<int> kept_labels;
        for (std::size_t i = 0; i < adj.n(); ++i) {
            if (keep[i] == UINT32_MAX)
                continue;
            kept_labels.push_back(labels[i]);
            for (auto j : adj.row_cols(i))
                t.push_back({keep[i], keep[j], 1.0});
        }
        summary["isolated_nodes"] = adj.n() - kept;
        summary["homophily_pos"] =
            kept == 0 ? json(nullptr) : json(homophily(SparseSym::from_triplets(kept, std::move(t)), kept_labels));
        std::vector<std::size_t> counts;
        for (int l : labels) {
            if (static_cast<std::size_t>(l) >= counts.size())
                counts.resize(static_cast<std::size_t>(l) + 1, 0);
            ++counts[static_cast<std::size_t>(l)];
        }
        summary["homophily_neg_expected"] = expected_negative_homophily_counts(counts);
    } else {
        summary["isolated_nodes"] = nullptr;
        summary["homophily_pos"] = nullptr;
        summary["homophily_neg_expected"] = nullptr;
    }
    write_json(summary, dir / "diagnose.json");
    echo_config(cfg, dir);
    return kExitOk;
}

int run(const RunConfig& cfg)
{
    set_num_threads(cfg.threads);
    try {
        if (cfg.subcommand == "synth")
            return run_synth(cfg);
        if (cfg.subcommand == "embed")
            return run_embed(cfg);
        if (cfg.subcommand == "eval-classify")
            return run_eval_classify(cfg);
        if (cfg.subcommand == "eval-cluster")
            return run_eval_cluster(cfg);
        if (cfg.subcommand == "diagnose")
            return run_diagnose(cfg);
        throw InvalidArgument("unknown subcommand '" + cfg.subcommand + "'");
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

} // namespace coles
