#pragma once

#include <torch/torch.h>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"

#include "elastic/data.hpp"
#include "elastic/model.hpp"
#include "elastic/rng.hpp"

namespace elastic {

/// Rows index latent codes, columns the classifier's predicted class.
struct ConfusionMatrix {
  int64_t rows = 0;
  int64_t cols = 0;
  std::vector<int64_t> counts;  // row-major

  ConfusionMatrix() = default;
  ConfusionMatrix(int64_t rows, int64_t cols) : rows(rows), cols(cols), counts(static_cast<size_t>(rows * cols), 0) {}
  static ConfusionMatrix from_rows(const std::vector<std::vector<int64_t>>& values);

  int64_t& at(int64_t r, int64_t c) { return counts[static_cast<size_t>(r * cols + c)]; }
  int64_t at(int64_t r, int64_t c) const { return counts[static_cast<size_t>(r * cols + c)]; }
  int64_t row_sum(int64_t r) const;
  int64_t col_sum(int64_t c) const;
  int64_t total() const;
  /// Throws std::invalid_argument on a shape mismatch, negative cells or an all-zero matrix.
  void validate() const;

  bool operator==(const ConfusionMatrix&) const = default;
};

struct EntropyReport {
  double ent_rows = 0.0;
  double ent_cols = 0.0;
  double ent = 0.0;  // (ent_rows + ent_cols) / 2
};

/// Natural-log entropies of the row- and column-normalized distributions.
/// An empty column counts as the uniform worst case ln(rows), an empty row
/// as ln(cols).
EntropyReport entropy_metric(const ConfusionMatrix& m);

/// I(A;B) / sqrt(H(A) H(B)) with A the row and B the column clustering; 0
/// when either marginal entropy is 0.
double nmi_metric(const ConfusionMatrix& m);

struct MetricsReport {
  double nmi = 0.0;
  double ent_rows = 0.0;
  double ent_cols = 0.0;
  double ent = 0.0;
  std::optional<double> knn_accuracy;
  ConfusionMatrix confusion;

  nlohmann::json to_json() const;
  static MetricsReport from_json(const nlohmann::json& j);
};

MetricsReport metrics_from_confusion(const ConfusionMatrix& m);

struct MetricStat {
  double mean = 0.0;
  double std = 0.0;  // population
};

struct AggregateReport {
  size_t runs = 0;
  MetricStat nmi, ent_rows, ent_cols, ent;
  std::optional<MetricStat> knn_accuracy;  // only when every run has it
};

MetricStat mean_std(std::span<const double> values);
/// Throws std::invalid_argument on an empty list.
AggregateReport aggregate_runs(std::span<const MetricsReport> reports);

/// Cosine-similarity k-NN; neighbours are ranked by similarity, ties by lower
/// train index, and the vote tie goes to the class of the nearest tied
/// neighbour. With exclude_self, test row i never matches train row i (the
/// two sets must then be the same size).
double knn_classify(const torch::Tensor& train_features, std::span<const int64_t> train_labels,
                    const torch::Tensor& test_features, std::span<const int64_t> test_labels, int64_t k_nn = 1,
                    bool exclude_self = false);

// Evaluation classifier: conv(5) -> relu -> pool -> conv(5) -> relu -> pool -> FC -> relu -> FC.
struct ClassifierImpl : torch::nn::Module {
  ClassifierImpl(int64_t channels, int64_t side, int64_t classes);
  torch::Tensor forward(const torch::Tensor& x);

  torch::nn::Conv2d conv1{nullptr}, conv2{nullptr};
  torch::nn::Linear fc1{nullptr}, fc2{nullptr};
};
TORCH_MODULE(Classifier);

struct ClassifierOptions {
  int64_t epochs = 12;
  int64_t batch_size = 64;
  double learning_rate = 1e-3;
  double train_fraction = 0.8;
};

struct ClassifierState {
  int64_t image_channels = 1;
  int64_t image_side = 28;
  int64_t num_classes = 10;
  Classifier net{nullptr};
  double validation_accuracy = 0.0;
  int64_t train_size = 0;
  int64_t validation_size = 0;

  /// Predicted class per image.
  std::vector<int64_t> predict(const torch::Tensor& images) const;
};

/// Trains on a per-class 80/20 split and records validation accuracy.
/// Throws DataError if any of the dataset's classes has no images.
ClassifierState train_eval_classifier(const LabeledImageSet& dataset, Rng& rng, const ClassifierOptions& options = {});

void save_classifier(const ClassifierState& state, const std::filesystem::path& path);
ClassifierState load_classifier(const std::filesystem::path& path);

/// n images conditioned on one latent code.
using GeneratorFn = std::function<torch::Tensor(int64_t code, int64_t n, Rng& rng)>;
using ClassifierFn = std::function<std::vector<int64_t>(const torch::Tensor& images)>;

/// Generator in eval mode fed hard one-hot codes with fresh noise.
GeneratorFn network_generator(const Networks& nets);
ClassifierFn classifier_fn(const ClassifierState& classifier);

/// counts[j][c] = how many of the n_per_code images generated from code j
/// were classified as c. Images are generated in chunks of `chunk`.
ConfusionMatrix build_confusion(int64_t k, int64_t num_classes, const GeneratorFn& generator,
                                const ClassifierFn& classifier, int64_t n_per_code, std::uint64_t seed,
                                int64_t chunk = 500);

}  // namespace elastic
