#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

namespace coles {

/// Fully resolved settings for one CLI run. Every field maps to the JSON
/// key of the same name; see README for the table.
struct RunConfig {
    std::string subcommand;

    std::string edges;
    std::string features;
    std::string labels;
    std::string embedding;
    std::string out = "out";
    std::string planetoid_dir;
    std::string planetoid_name = "cora";

    std::uint64_t seed = 0;

    // embedding
    std::string filter = "s2gc";
    std::string eigensolver = "auto";
    std::size_t k_steps = 8;
    double alpha = 0.05;
    std::size_t dim = 64;
    std::size_t kappa = 10;
    std::size_t per_node = 5;
    std::string mode = "per-node";
    double p_prime = 0.01;
    double eta_prime = 1.0;
    bool self_loops = true;
    double beta = 0.0;
    double tau = 1.0;
    std::size_t hash_dim = 0;
    bool write_csv = false;
    std::size_t psd_iterations = 5000;

    // evaluation
    std::size_t per_class = 20;
    std::size_t n_splits = 50;
    std::size_t val_size = 500;
    double l2 = 1e-4;
    double lr = 0.1;
    std::size_t epochs = 500;
    std::size_t clusters = 0;
    std::size_t kmeans_restarts = 10;

    // synthetic graphs
    std::size_t classes = 3;
    std::size_t per_block = 100;
    double p_in = 0.1;
    double p_out = 0.01;
    std::size_t feature_dim = 16;
    double mean_sep = 1.0;
    double noise_sigma = 2.0;

    // diagnostics
    std::size_t grid_points = 512;
    double bandwidth = 0.0;

    std::size_t threads = 1;
};

nlohmann::json to_json(const RunConfig& cfg);

/// Overwrites fields of cfg with the keys present in j. Unknown keys and
/// ill-typed values raise InvalidArgument naming the key.
void apply_json(RunConfig& cfg, const nlohmann::json& j);

/// Loads a JSON config file onto cfg.
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;

int run_synth(const RunConfig& cfg);
int run_embed(const RunConfig& cfg);
int run_eval_classify(const RunConfig& cfg);
int run_eval_cluster(const RunConfig& cfg);
int run_diagnose(const RunConfig& cfg);

/// Dispatches on cfg.subcommand, converting library exceptions to exit
/// codes and printing a one-line error to stderr.
int run(const RunConfig& cfg);

} // namespace coles
