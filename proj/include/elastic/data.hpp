#pragma once

#include <torch/torch.h>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "elastic/rng.hpp"

namespace elastic {

enum class DatasetKind { mnist, cars, chairs, ytf, shapenet };

std::string to_string(DatasetKind kind);
/// Throws SplitError for unknown names.
DatasetKind parse_dataset_kind(std::string_view text);

/// Per-class proportions of an imbalanced subsampling.
struct ImbalancedSplit {
  struct Canonical {
    DatasetKind kind;
    int index;  // 1-based position in the published list
  };
  struct Generated {
    std::uint64_t seed;
  };

  std::vector<double> proportions;
  std::variant<Canonical, Generated> source = Generated{0};

  int64_t k() const { return static_cast<int64_t>(proportions.size()); }
  /// Directory-safe name: "mnist-1", "generated-42".
  std::string label() const;
  /// Sum within max(1e-3, k * 5e-4) of one (3-decimal rounding of k values)
  /// and every entry strictly positive.
  void validate() const;
};

/// Directory holding the bundled split files; $ELASTIC_DATA_DIR/splits when
/// that variable is set, the source tree's data/splits otherwise.
std::filesystem::path default_splits_dir();
std::filesystem::path default_data_dir();

/// Split-file format: "# dataset=<kind> k=<k>" then one comma-separated
/// proportion vector per line.
std::vector<ImbalancedSplit> parse_split_file(std::istream& in);
std::vector<ImbalancedSplit> read_split_file(const std::filesystem::path& path);
void write_split_file(std::ostream& out, DatasetKind kind, std::span<const ImbalancedSplit> splits);

/// The proportion vectors published for `kind`, verbatim and validated.
std::vector<ImbalancedSplit> load_canonical_splits(DatasetKind kind,
                                                   const std::filesystem::path& splits_dir = default_splits_dir());

/// k draws from U(min_prop, 2/k), normalized; redrawn until every entry
/// lies in [min_prop, 2.5/k]. Requires k >= 2 and 0 < min_prop < 1/k.
ImbalancedSplit generate_split(int64_t k, std::uint64_t seed, double min_prop = 0.02);

/// Probability that a random negative pair shares a class: sum_i p_i^2.
double expected_false_negative(std::span<const double> proportions);
inline double expected_false_negative(const ImbalancedSplit& split) {
  return expected_false_negative(split.proportions);
}

/// Images scaled to [-1, 1]. Labels are used for subsampling and evaluation only.
struct LabeledImageSet {
  torch::Tensor images;  // (n, channels, side, side), float32
  std::vector<int64_t> labels;
  int64_t num_classes = 0;

  int64_t size() const { return static_cast<int64_t>(labels.size()); }
  std::vector<int64_t> class_counts() const;
  LabeledImageSet select(std::span<const int64_t> indices) const;
};

/// Every "<prefix>-images-idx3-ubyte[.gz]" / "<prefix>-labels-idx1-ubyte[.gz]"
/// pair in `dir`, concatenated in file-name order.
LabeledImageSet load_mnist_idx(const std::filesystem::path& dir);

/// One sub-directory per class (sorted names give class ids), any image
/// format OpenCV decodes; images are resized to side x side.
LabeledImageSet load_image_folder(const std::filesystem::path& dir, int64_t side, int64_t channels);

/// Largest base size for which every class holds floor(p_i * base) images.
int64_t max_base_size(const LabeledImageSet& data, const ImbalancedSplit& split);

/// Class i receives floor(p_i * base_size) images drawn without replacement.
LabeledImageSet subsample(const LabeledImageSet& data, const ImbalancedSplit& split, int64_t base_size, Rng& rng);

/// Stratified split: floor(train_fraction * count) of each class go to the
/// first set (in random order), the rest to the second.
std::pair<LabeledImageSet, LabeledImageSet> stratified_split(const LabeledImageSet& data, double train_fraction,
                                                             Rng& rng);

// Identity-preserving transforms. Images are (channels, side, side) in [-1, 1].
struct RotateZoom {
  double max_degrees = 10.0;  // angle ~ U(-max, max)
  double max_zoom = 0.1;      // scale ~ U(1 - max, 1 + max)
};
struct HorizontalFlip {
  double probability = 0.5;
};
struct RandomCrop {
  double keep_side = 0.975;  // crop side as a fraction, resized back
};
struct ScaleCrop {
  double scale = 1.1;  // upscale, then crop the original side at a random offset
};
struct GammaContrast {
  double min_gamma = 0.3;
  double max_gamma = 4.0;
};
using Transform = std::variant<RotateZoom, HorizontalFlip, RandomCrop, ScaleCrop, GammaContrast>;

struct AugmentationPipeline {
  std::vector<Transform> steps;

  static AugmentationPipeline for_dataset(DatasetKind kind);
};

/// Applies every step with freshly drawn parameters; output clipped to [-1, 1].
torch::Tensor augment(const torch::Tensor& image, const AugmentationPipeline& pipeline, Rng& rng);

// Deterministic primitives behind augment(). Out-of-frame pixels read as -1.
torch::Tensor rotate_zoom(const torch::Tensor& image, double degrees, double zoom);
torch::Tensor flip_horizontal(const torch::Tensor& image);
torch::Tensor crop_resize(const torch::Tensor& image, double x0, double y0, double crop_side, int64_t out_side);
torch::Tensor adjust_gamma(const torch::Tensor& image, double gamma);

struct ContrastiveBatch {
  torch::Tensor images;              // (2N, ...): originals, then augmented copies
  std::vector<int64_t> pair_index;   // i <-> i + N
};

ContrastiveBatch make_contrastive_batch(const torch::Tensor& images, const AugmentationPipeline& pipeline, Rng& rng);

}  // namespace elastic
