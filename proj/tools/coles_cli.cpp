// Command-line front end: synth -> embed -> eval-classify / eval-cluster / diagnose.

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "coles/app.hpp"

namespace {

// Flags are parsed into optionals so a config file sets the baseline and
// only flags given on the command line override it.
struct Overrides {
    std::optional<std::string> config, edges, features, labels, embedding, out, planetoid_dir,
        planetoid_name, filter, eigensolver, mode;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> k_steps, dim, kappa, per_node, per_class, n_splits, val_size,
        hash_dim, epochs, clusters, classes, per_block, feature_dim, grid_points, threads;
    std::optional<double> alpha, eta_prime, p_prime, beta, tau, l2, lr, p_in, p_out, mean_sep,
        noise_sigma, bandwidth;
    bool no_self_loops = false;
    bool csv = false;
};

void add_common(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--config", o.config, "JSON config file (flags override its values)");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--seed", o.seed, "Master 64-bit seed");
    cmd->add_option("--threads", o.threads, "Worker cap (0 = all cores); never changes outputs");
}

void add_graph_inputs(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--edges", o.edges, "Edge list: one 'u v' pair per line");
    cmd->add_option("--labels", o.labels, "Labels: one integer per line");
}

void add_negatives(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--kappa", o.kappa, "Number of negative graphs");
    cmd->add_option("--per-node", o.per_node, "Negatives drawn per node");
    cmd->add_option("--negative-mode", o.mode, "per-node or erdos-renyi");
    cmd->add_option("--p-prime", o.p_prime, "Edge probability in erdos-renyi mode");
    cmd->add_option("--eta-prime", o.eta_prime, "Weight of the negative graphs, in [0, 1]");
}

void apply(coles::RunConfig& c, const Overrides& o)
{
    auto set = [](auto& dst, const auto& src) {
        if (src)
            dst = *src;
    };
    set(c.edges, o.edges);
    set(c.features, o.features);
    set(c.labels, o.labels);
    set(c.embedding, o.embedding);
    set(c.out, o.out);
    set(c.planetoid_dir, o.planetoid_dir);
    set(c.planetoid_name, o.planetoid_name);
    set(c.filter, o.filter);
    set(c.eigensolver, o.eigensolver);
    set(c.mode, o.mode);
    set(c.seed, o.seed);
    set(c.k_steps, o.k_steps);
    set(c.dim, o.dim);
    set(c.kappa, o.kappa);
    set(c.per_node, o.per_node);
    set(c.per_class, o.per_class);
    set(c.n_splits, o.n_splits);
    set(c.val_size, o.val_size);
    set(c.hash_dim, o.hash_dim);
    set(c.epochs, o.epochs);
    set(c.clusters, o.clusters);
    set(c.classes, o.classes);
    set(c.per_block, o.per_block);
    set(c.feature_dim, o.feature_dim);
    set(c.grid_points, o.grid_points);
    set(c.threads, o.threads);
    set(c.alpha, o.alpha);
    set(c.eta_prime, o.eta_prime);
    set(c.p_prime, o.p_prime);
    set(c.beta, o.beta);
    set(c.tau, o.tau);
    set(c.l2, o.l2);
    set(c.lr, o.lr);
    set(c.p_in, o.p_in);
    set(c.p_out, o.p_out);
    set(c.mean_sep, o.mean_sep);
    set(c.noise_sigma, o.noise_sigma);
    set(c.bandwidth, o.bandwidth);
    if (o.no_self_loops)
        c.self_loops = false;
    if (o.csv)
        c.write_csv = true;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Contrastive Laplacian eigenmaps for linear graph networks"};
    app.require_subcommand(1);
    Overrides o;

    auto* synth = app.add_subcommand("synth", "Generate a stochastic block model graph");
    add_common(synth, o);
    synth->add_option("--classes", o.classes, "Number of blocks");
    synth->add_option("--per-block", o.per_block, "Nodes per block");
    synth->add_option("--p-in", o.p_in, "Within-block edge probability");
    synth->add_option("--p-out", o.p_out, "Cross-block edge probability");
    synth->add_option("--feature-dim", o.feature_dim, "Feature dimension");
    synth->add_option("--mean-sep", o.mean_sep, "Distance between class means");
    synth->add_option("--noise-sigma", o.noise_sigma, "Feature noise standard deviation");

    auto* embed = app.add_subcommand("embed", "Compute closed-form embeddings");
    add_common(embed, o);
    add_graph_inputs(embed, o);
    add_negatives(embed, o);
    embed->add_option("--features", o.features, "Feature matrix (.csv or .clsm)");
    embed->add_option("--planetoid-dir", o.planetoid_dir,
                      "Directory with <name>.content / <name>.cites instead of edges+features");
    embed->add_option("--planetoid-name", o.planetoid_name, "Dataset name, e.g. cora");
    embed->add_option("--filter", o.filter, "sgc, s2gc or identity")
        ->check(CLI::IsMember({"sgc", "s2gc", "identity"}));
    embed->add_option("--eigensolver", o.eigensolver, "auto, jacobi or tridiagonal")
        ->check(CLI::IsMember({"auto", "jacobi", "tridiagonal"}));
    embed->add_option("--k-steps", o.k_steps, "Propagation steps");
    embed->add_option("--alpha", o.alpha, "S2GC self-loop weight");
    embed->add_option("--dim", o.dim, "Embedding dimension");
    embed->add_option("--beta", o.beta, "Orthogonality penalty weight (reporting only)");
    embed->add_option("--tau", o.tau, "Embedding norm for the diagnostics");
    embed->add_option("--hash-dim", o.hash_dim, "Hash features into this many columns first");
    embed->add_flag("--no-self-loops", o.no_self_loops, "Normalise W instead of W + I");
    embed->add_flag("--csv", o.csv, "Also write embedding.csv");

    auto add_eval = [&](CLI::App* cmd) {
        add_common(cmd, o);
        cmd->add_option("--embedding", o.embedding, "Embedding matrix (.clsm or .csv)");
        cmd->add_option("--labels", o.labels, "Labels: one integer per line");
        cmd->add_option("--n-splits", o.n_splits, "Number of random splits / runs");
    };
    auto* classify = app.add_subcommand("eval-classify", "Logistic regression on random splits");
    add_eval(classify);
    classify->add_option("--per-class", o.per_class, "Labelled nodes per class")
        ->check(CLI::IsMember({std::size_t{5}, std::size_t{20}}));
    classify->add_option("--val-size", o.val_size, "Validation nodes per split");
    classify->add_option("--epochs", o.epochs, "Gradient descent epochs");
    classify->add_option("--lr", o.lr, "Learning rate");
    classify->add_option("--l2", o.l2, "L2 penalty");

    auto* cluster = app.add_subcommand("eval-cluster", "k-means clustering of the embedding");
    add_eval(cluster);
    cluster->add_option("--clusters", o.clusters, "k (default: number of classes)");

    auto* diagnose = app.add_subcommand("diagnose", "Score densities, JS, W1 and homophily");
    add_common(diagnose, o);
    add_graph_inputs(diagnose, o);
    add_negatives(diagnose, o);
    diagnose->add_option("--embedding", o.embedding, "Embedding matrix (.clsm or .csv)");
    diagnose->add_option("--grid-points", o.grid_points, "Density grid size");
    diagnose->add_option("--bandwidth", o.bandwidth, "Parzen bandwidth (default: Silverman)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return coles::kExitConfig;
    }

    coles::RunConfig cfg;
    try {
        if (o.config)
            coles::apply_config_file(cfg, *o.config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return coles::kExitConfig;
    }
    apply(cfg, o);
    cfg.subcommand = app.get_subcommands().front()->get_name();
    return coles::run(cfg);
}
