#pragma once

#include <torch/torch.h>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "elastic/data.hpp"
#include "elastic/latent.hpp"
#include "elastic/model.hpp"
#include "elastic/objectives.hpp"
#include "elastic/rng.hpp"

namespace elastic {

enum class PriorVariant { fixed_uniform, fixed_ground_truth, learnable };

std::string to_string(PriorVariant variant);
PriorVariant parse_prior_variant(std::string_view text);

/// A named (prior, contrastive mode) combination, one per ablation baseline.
struct Variant {
  std::string name;
  PriorVariant prior;
  ContrastiveMode mode;
};

/// uniform_infogan, ground_truth_infogan, ground_truth_infogan_ntxent,
/// gumbel_softmax, gumbel_softmax_pos_ntxent, elastic_infogan.
const std::vector<Variant>& baseline_variants();
/// Throws std::invalid_argument for unknown names.
const Variant& find_variant(std::string_view name);

struct TrainConfig {
  PriorVariant prior_variant = PriorVariant::learnable;
  ContrastiveMode contrastive_mode = ContrastiveMode::full;
  HyperParams hp;
  double gumbel_temperature = 0.1;
  double learning_rate = 2e-4;
  double prior_learning_rate = 0.0;  // <= 0: same as learning_rate
  double beta1 = 0.5;
  double beta2 = 0.999;
  int64_t batch_size = 64;
  int64_t epochs = 200;
  std::uint64_t seed = 0;
  DatasetKind dataset = DatasetKind::mnist;
  std::string split_label;
  std::vector<double> ground_truth;  // class proportions; required by fixed_ground_truth
  NetworkConfig network;
  bool double_precision = false;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
  torch::Dtype dtype() const { return double_precision ? torch::kFloat64 : torch::kFloat32; }
  bool learnable_prior() const { return prior_variant == PriorVariant::learnable; }

  nlohmann::json to_json() const;
  static TrainConfig from_json(const nlohmann::json& j);
  /// git-style SHA-1 of the canonical JSON form.
  std::string hash() const;
};

/// Adam with the same update rule as torch::optim::Adam, but with moments
/// that the checkpoint container can write out.
class Adam {
 public:
  Adam() = default;
  Adam(std::vector<torch::Tensor> params, double lr, double beta1, double beta2, double eps = 1e-8);

  void zero_grad();
  void step();

  int64_t steps() const { return steps_; }
  double learning_rate() const { return lr_; }
  const std::vector<torch::Tensor>& params() const { return params_; }
  std::vector<torch::Tensor>& first_moments() { return exp_avg_; }
  std::vector<torch::Tensor>& second_moments() { return exp_avg_sq_; }
  const std::vector<torch::Tensor>& first_moments() const { return exp_avg_; }
  const std::vector<torch::Tensor>& second_moments() const { return exp_avg_sq_; }
  void set_steps(int64_t steps) { steps_ = steps; }

 private:
  std::vector<torch::Tensor> params_, exp_avg_, exp_avg_sq_;
  double lr_ = 0.0, beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-8;
  int64_t steps_ = 0;
};

struct TrainState {
  TrainConfig config;
  Networks nets;
  PriorParams prior;
  Adam d_opt;      // trunk + D head, adversarial phase
  Adam g_opt;      // generator + trunk + Q head, minimization phase
  Adam prior_opt;  // prior logits; no parameters unless the prior is learnable
  AugmentationPipeline pipeline;
  int64_t step = 0;
  int64_t epoch = 0;
  Rng rng;

  std::vector<double> prior_probabilities() const;
};

/// Fresh state: uniform (zero) logits for the learnable prior, the config's
/// ground truth or uniform for fixed priors; deterministic given the seed.
TrainState init_state(const TrainConfig& config, const LabeledImageSet& dataset);

/// Deep copy (parameters, moments, counters, rng).
TrainState clone_state(const TrainState& state);

/// Phase 1 updates D on the adversarial loss; phase 2 regenerates the fakes
/// from the same latent draw and takes one step on G, Q and (if learnable)
/// the prior. Throws NumericalError when a loss or parameter goes non-finite.
LossReport train_step(TrainState& state, const torch::Tensor& real_batch);

/// Parameter groups reported by probe_minimization.
inline constexpr const char* kParamGroups[] = {"generator", "prior", "trunk", "d_head", "q_hidden", "q_out"};

/// Minimization-phase terms and, per term, the parameter groups that get a
/// non-zero gradient from it. Uses `rng` for the latent draw and the
/// augmentations; does not modify parameters.
struct MinimizationProbe {
  LatentDraw draw;
  double g_adv = 0.0, mi_discrete = 0.0, mi_continuous = 0.0, contrastive = 0.0, objective = 0.0;
  std::map<std::string, std::set<std::string>> touched;  // term -> groups
};
MinimizationProbe probe_minimization(TrainState& state, const torch::Tensor& real_batch, Rng& rng);

struct PriorSnapshot {
  int64_t epoch;
  std::vector<double> probabilities;
};
using PriorTrajectory = std::vector<PriorSnapshot>;

struct RunOptions {
  std::filesystem::path checkpoint_path;  // empty: no checkpoints
  int64_t checkpoint_every = 0;           // epochs; 0: only at the end
  std::function<void(const LossReport&)> on_step;
  std::function<void(const TrainState&)> on_epoch;
};

struct TrainingResult {
  TrainState state;
  PriorTrajectory trajectory;  // epoch 0 (initial) plus one row per epoch run
  std::vector<LossReport> log;
};

/// Trains from `initial` (or a fresh init_state) until config.epochs. One
/// epoch is one shuffled pass over `dataset`; a trailing batch of one image
/// is skipped. On a NaN abort the offending state is written next to
/// checkpoint_path as "<name>.nan" before the NumericalError propagates.
TrainingResult run_training(const TrainConfig& config, const LabeledImageSet& dataset, const RunOptions& options = {},
                            std::optional<TrainState> initial = std::nullopt);

}  // namespace elastic
