#pragma once

#include <torch/torch.h>

#include <cstdint>
#include <span>
#include <vector>

#include "elastic/rng.hpp"

namespace elastic {

/// Learnable categorical prior. Probabilities are softmax(logits); the
/// Gumbel-Softmax temperature is fixed for the lifetime of a run.
struct PriorParams {
  torch::Tensor logits;  // shape (k)
  double temperature = 0.1;

  int64_t k() const { return logits.defined() ? logits.size(0) : 0; }

  /// Throws std::invalid_argument unless k >= 2, temperature > 0 and all logits finite.
  void validate() const;

  static PriorParams uniform(int64_t k, double temperature, torch::Dtype dtype = torch::kFloat64);
  /// Logits = log(probabilities); the probabilities must be strictly positive.
  static PriorParams from_probabilities(std::span<const double> probabilities, double temperature,
                                        torch::Dtype dtype = torch::kFloat64);
};

/// softmax(logits); differentiable w.r.t. the logits.
torch::Tensor probabilities(const PriorParams& prior);

/// log p computed as logits - logsumexp(logits).
torch::Tensor log_probabilities(const PriorParams& prior);

/// -log(-log(u)) with u clamped into [1e-20, nextafter(1, 0)].
double gumbel_from_uniform(double u);

/// Gumbel(0, 1) noise of shape (k) or (rows, k). Zero uniforms are redrawn.
torch::Tensor sample_gumbel(int64_t k, Rng& rng, torch::Dtype dtype = torch::kFloat64);
torch::Tensor sample_gumbel(int64_t rows, int64_t k, Rng& rng, torch::Dtype dtype = torch::kFloat64);

/// Gumbel-Softmax sample c_i = softmax((log p_i + g_i) / tau). `noise` has
/// shape (k) or (rows, k); the result has the same shape and stays on the
/// autograd tape of prior.logits.
torch::Tensor sample_code(const PriorParams& prior, const torch::Tensor& noise);

/// Gumbel-max sample: one-hot at argmax(log p_i + g_i). Exact categorical
/// draw, no gradient.
torch::Tensor sample_code_hard(const PriorParams& prior, const torch::Tensor& noise);

/// Argmax with ties going to the lowest index.
int64_t harden(std::span<const double> code);
/// Row-wise harden of a (rows, k) tensor.
std::vector<int64_t> harden(const torch::Tensor& codes);

/// One generator input batch.
struct LatentBatch {
  torch::Tensor code;        // (n, k), rows on the simplex
  torch::Tensor noise;       // (n, d_z), standard normal
  torch::Tensor continuous;  // (n, m) uniform(-1, 1), undefined when m == 0

  int64_t size() const { return code.size(0); }
  /// [noise | code | continuous] along dim 1.
  torch::Tensor generator_input() const;
};

/// The raw randomness behind a LatentBatch. Keeping it separate lets the
/// training loop rebuild the code from the same Gumbel draw after the
/// prior logits enter a fresh autograd graph.
struct LatentDraw {
  torch::Tensor gumbel;      // (n, k)
  torch::Tensor noise;       // (n, d_z)
  torch::Tensor continuous;  // (n, m) or undefined
};

LatentDraw draw_latents(int64_t n, int64_t k, int64_t noise_dim, int64_t continuous_dim, Rng& rng,
                        torch::Dtype dtype = torch::kFloat32);

/// Soft (Gumbel-Softmax) or hard (Gumbel-max one-hot) codes from a draw.
LatentBatch make_latents(const PriorParams& prior, const LatentDraw& draw, bool hard);

/// n inputs all conditioned on the one-hot code `code`, fresh noise per row.
LatentBatch one_hot_latents(int64_t k, int64_t code, int64_t n, int64_t noise_dim, int64_t continuous_dim, Rng& rng,
                            torch::Dtype dtype = torch::kFloat32);

}  // namespace elastic
