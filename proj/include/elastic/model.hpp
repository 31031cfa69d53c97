#pragma once

#include <torch/torch.h>

#include <cstdint>

#include "elastic/latent.hpp"
#include "elastic/rng.hpp"

namespace elastic {

/// Shapes of the generator, shared D/Q trunk and the two heads. Layer
/// widths follow the InfoGAN MNIST topology; `desk()` shrinks them for
/// single-core runs.
struct NetworkConfig {
  int64_t image_side = 28;
  int64_t image_channels = 1;
  int64_t noise_dim = 64;
  int64_t code_dim = 10;
  int64_t continuous_dim = 0;
  int64_t feature_dim = 128;       // width of Q's penultimate layer
  int64_t generator_hidden = 1024;
  int64_t generator_channels = 128;
  int64_t trunk_channels = 64;
  int64_t trunk_hidden = 1024;
  double leaky_slope = 0.1;

  int64_t generator_input_width() const { return noise_dim + code_dim + continuous_dim; }
  int64_t q_output_width() const { return code_dim + 2 * continuous_dim; }

  void validate() const;

  static NetworkConfig infogan_mnist() { return {}; }
  static NetworkConfig desk();
};

// G: FC -> FC -> two stride-2 transposed convolutions, batch norm between, tanh out.
class GeneratorImpl : public torch::nn::Module {
 public:
  explicit GeneratorImpl(const NetworkConfig& config);
  torch::Tensor forward(const torch::Tensor& input);

 private:
  NetworkConfig config_;
  torch::nn::Linear fc1_{nullptr}, fc2_{nullptr};
  torch::nn::BatchNorm1d bn1_{nullptr}, bn2_{nullptr};
  torch::nn::ConvTranspose2d up1_{nullptr}, up2_{nullptr};
  torch::nn::BatchNorm2d bn3_{nullptr};
};
TORCH_MODULE(Generator);

// Shared D/Q body: conv -> conv(BN) -> FC(BN), leaky ReLU throughout.
class TrunkImpl : public torch::nn::Module {
 public:
  explicit TrunkImpl(const NetworkConfig& config);
  torch::Tensor forward(const torch::Tensor& images);

 private:
  NetworkConfig config_;
  torch::nn::Conv2d conv1_{nullptr}, conv2_{nullptr};
  torch::nn::BatchNorm2d bn2_{nullptr};
  torch::nn::Linear fc_{nullptr};
  torch::nn::BatchNorm1d bn3_{nullptr};
};
TORCH_MODULE(Trunk);

class DiscriminatorHeadImpl : public torch::nn::Module {
 public:
  explicit DiscriminatorHeadImpl(const NetworkConfig& config);
  torch::Tensor forward(const torch::Tensor& trunk_out) { return out_(trunk_out).squeeze(1); }

 private:
  torch::nn::Linear out_{nullptr};
};
TORCH_MODULE(DiscriminatorHead);

struct QOutput {
  torch::Tensor features;  // (n, feature_dim), after the penultimate leaky ReLU
  torch::Tensor logits;    // (n, k)
  torch::Tensor means;     // (n, m) or undefined
  torch::Tensor logvars;   // (n, m) or undefined
};

class RecognitionHeadImpl : public torch::nn::Module {
 public:
  explicit RecognitionHeadImpl(const NetworkConfig& config);
  QOutput forward(const torch::Tensor& trunk_out);
  torch::Tensor features(const torch::Tensor& trunk_out);

 private:
  NetworkConfig config_;
  torch::nn::Linear hidden_{nullptr}, out_{nullptr};
  torch::nn::BatchNorm1d bn_{nullptr};
};
TORCH_MODULE(RecognitionHead);

struct Networks {
  NetworkConfig config;
  Generator generator{nullptr};
  Trunk trunk{nullptr};
  DiscriminatorHead d_head{nullptr};
  RecognitionHead q_head{nullptr};

  void train(bool on = true);
  torch::Dtype dtype() const;
};

/// Builds all four networks with N(0, 0.02) weights and zero biases drawn
/// from `rng` (batch-norm scales start at 1).
Networks build_networks(const NetworkConfig& config, Rng& rng, torch::Dtype dtype = torch::kFloat32);

/// Images in [-1, 1], shape (n, channels, side, side).
torch::Tensor generate(Generator& generator, const LatentBatch& input);
/// One real/fake logit per image.
torch::Tensor discriminate(Trunk& trunk, DiscriminatorHead& head, const torch::Tensor& images);
QOutput q_forward(Trunk& trunk, RecognitionHead& head, const torch::Tensor& images);
/// Softmax over Q's categorical logits, (n, k).
torch::Tensor q_posterior(Trunk& trunk, RecognitionHead& head, const torch::Tensor& images);
torch::Tensor q_features(Trunk& trunk, RecognitionHead& head, const torch::Tensor& images);

/// Fills `module`'s weights with N(0, stddev) and zeroes biases.
void init_normal(torch::nn::Module& module, Rng& rng, double stddev = 0.02);

}  // namespace elastic
