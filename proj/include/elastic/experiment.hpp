#pragma once

#include <torch/torch.h>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "elastic/data.hpp"
#include "elastic/evaluation.hpp"
#include "elastic/training.hpp"

namespace elastic {

/// Everything `run` needs. Read from a flat "section.key = value" file; see
/// parse_experiment_config for the keys.
struct ExperimentConfig {
  std::string name;
  std::filesystem::path output_root = "out";

  DatasetKind dataset = DatasetKind::mnist;
  std::filesystem::path data_path;   // empty: bundled default for the dataset
  std::filesystem::path splits_dir;  // empty: bundled split files
  std::string split = "canonical:1";  // canonical:<1-based index> | generated:<seed>
  int64_t generated_k = 10;           // class count for generated splits
  int64_t base_size = 0;              // 0: largest the data allows
  std::uint64_t subsample_seed = 0;
  int64_t image_side = 28;
  int64_t image_channels = 1;

  std::string model_preset = "infogan_mnist";  // infogan_mnist | desk
  TrainConfig train;  // template; seed, variant and split fields are filled per run
  int64_t checkpoint_every = 1;  // epochs; 0: only at the end

  std::vector<std::uint64_t> seeds = {0};
  std::vector<std::string> variants = {"elastic_infogan"};

  int64_t n_per_code = 1000;
  bool knn = true;
  std::uint64_t eval_seed = 1234;
  int64_t grid_cols = 10;

  ClassifierOptions classifier;
  std::uint64_t classifier_seed = 0;

  /// Throws ConfigError.
  void validate() const;
  nlohmann::json to_json() const;
  std::string hash() const;
  std::filesystem::path experiment_dir() const { return output_root / name; }
};

/// Keys (defaults in ExperimentConfig):
///   experiment.name, experiment.output
///   data.kind, data.path, data.splits_dir, data.split, data.k, data.base_size,
///   data.subsample_seed, data.image_side, data.channels
///   model.preset, model.noise_dim, model.continuous_dim, model.feature_dim,
///   model.generator_hidden, model.generator_channels, model.trunk_channels,
///   model.trunk_hidden, model.leaky_slope
///   train.epochs, train.batch_size, train.learning_rate, train.prior_learning_rate,
///   train.beta1, train.beta2, train.gumbel_temperature, train.lambda_mi,
///   train.lambda_contrastive, train.contrastive_temperature,
///   train.double_precision, train.checkpoint_every
///   run.seeds, run.variants (comma-separated)
///   eval.n_per_code, eval.knn, eval.seed, eval.grid_cols
///   classifier.epochs, classifier.batch_size, classifier.learning_rate, classifier.seed
/// '#' starts a comment. Unknown or repeated keys and bad values throw
/// ConfigError with the line number.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Applies the ELASTIC_INFOGAN_OUT override, if set.
void apply_environment(ExperimentConfig& config);

ImbalancedSplit resolve_split(const ExperimentConfig& config);
/// The full labeled pool for the configured dataset.
LabeledImageSet load_dataset(const ExperimentConfig& config);
/// The per-run training config for one grid cell.
TrainConfig make_train_config(const ExperimentConfig& config, const Variant& variant, const ImbalancedSplit& split,
                              std::uint64_t seed);

struct RunRecord {
  std::string variant;
  std::string split;
  std::uint64_t seed = 0;
  std::filesystem::path dir;
  std::map<std::string, std::filesystem::path> artifacts;
  MetricsReport metrics;
  std::vector<double> final_prior;
  bool reused = false;  // finished run found on disk with a matching config hash
};

struct RunManifest {
  nlohmann::json config;
  std::string hash;
  std::string started;
  std::string finished;
  std::vector<RunRecord> runs;
  std::map<std::string, std::filesystem::path> artifacts;  // experiment-level files
  std::filesystem::path path;

  nlohmann::json to_json() const;
};

struct RunCallbacks {
  std::function<void(const std::string&)> log;  // progress lines
};

/// Trains and evaluates every (variant, split, seed) cell, writes
/// <out>/<experiment>/<variant>/<split>/<seed>/{checkpoint.bin, metrics.json,
/// losses.csv, prior.csv, grid.png}, then the aggregate report and
/// manifest.json. Finished cells whose metrics.json carries the same config
/// hash are reused; an interrupted cell resumes from its checkpoint.
RunManifest run_experiment(const ExperimentConfig& config, const RunCallbacks& callbacks = {});

struct ReportRow {
  std::string variant;
  AggregateReport aggregate;
};

struct ReportTable {
  int64_t k = 0;
  std::vector<ReportRow> rows;  // in order of first appearance

  std::string to_csv() const;
  /// Aligned text, "mean ± std" cells.
  std::string to_text() const;
};

/// Collects every metrics.json under the given directories. Throws
/// std::invalid_argument when none is found or when runs disagree on k.
ReportTable report(const std::vector<std::filesystem::path>& run_dirs);

/// Row j holds `cols` samples from one-hot code j. Returns an 8-bit image
/// (rows*side, cols*side, channels).
torch::Tensor render_grid(const GeneratorFn& generator, int64_t k, int64_t cols, std::uint64_t seed);
/// Strip of `steps` images sweeping continuous dimension `dim` over [-1, 1]
/// with the code fixed to `code` and everything else held fixed.
torch::Tensor render_interpolation(const Networks& nets, int64_t code, int64_t dim, int64_t steps, std::uint64_t seed);

/// Lossless PNG of an 8-bit (H, W, C) tensor.
void write_png(const torch::Tensor& image, const std::filesystem::path& path);

/// Throws std::invalid_argument when expected_k > 0 and differs from the checkpoint.
void emit_grid(const std::filesystem::path& checkpoint, const std::filesystem::path& out, int64_t cols,
               std::uint64_t seed, int64_t expected_k = 0);
/// Throws std::invalid_argument when the checkpoint has no continuous codes.
void emit_interpolation(const std::filesystem::path& checkpoint, const std::filesystem::path& out, int64_t code,
                        int64_t dim, int64_t steps, std::uint64_t seed);

/// "epoch,p_0,...,p_{k-1}" then one row per snapshot. Throws on an empty trajectory.
std::string prior_csv(const PriorTrajectory& trajectory);
PriorTrajectory parse_prior_csv(std::istream& in);

}  // namespace elastic
