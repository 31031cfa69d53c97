#pragma once

#include <torch/torch.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace elastic {

/// Loss weights and the NT-Xent temperature.
struct HyperParams {
  double lambda_mi = 1.0;            // weight of the discrete MI surrogate
  double lambda_contrastive = 10.0;  // weight of the contrastive term
  double contrastive_temperature = 0.5;

  void validate() const;
};

/// Which contrastive term joins the minimization objective.
enum class ContrastiveMode { none, pos_only, full };

std::string to_string(ContrastiveMode mode);
/// Throws std::invalid_argument for anything but "none", "pos_only", "full".
ContrastiveMode parse_contrastive_mode(std::string_view text);

struct AdversarialLosses {
  torch::Tensor discriminator;  // -E[log D(x)] - E[log(1 - D(G(z)))]
  torch::Tensor generator;      // -E[log D(G(z))], non-saturating
};

/// Sigmoid cross-entropy GAN losses from raw real/fake logits.
AdversarialLosses adversarial_losses(const torch::Tensor& real_scores, const torch::Tensor& fake_scores);

/// Mean over the batch of -sum_i c_i log Q(c_i | x), Q = softmax(q_logits),
/// with the log argument clamped at 1e-12. H(c) is left out.
torch::Tensor mi_discrete_loss(const torch::Tensor& codes, const torch::Tensor& q_logits);

/// Mean (over the batch) factored-Gaussian NLL of the sampled continuous
/// codes, summed over code dimensions.
torch::Tensor mi_continuous_loss(const torch::Tensor& sampled, const torch::Tensor& means, const torch::Tensor& logvars);

/// NT-Xent summed over the first N anchors of a 2N-row feature matrix.
/// pair_index[i] names the positive partner of row i and must be a
/// fixed-point-free involution. Requires N >= 2 and non-zero rows.
torch::Tensor ntxent_loss(const torch::Tensor& features, std::span<const int64_t> pair_index, double temperature);

/// Positive-pair-only consistency: mean squared difference between the
/// posteriors of the two views.
torch::Tensor positive_pair_loss(const torch::Tensor& posteriors, std::span<const int64_t> pair_index);

/// Terms of the minimization side. `contrastive` holds whichever term the
/// mode selects (NT-Xent or positive-pair MSE); `mi_continuous` is
/// undefined without continuous codes.
struct LossTerms {
  torch::Tensor g_adv;
  torch::Tensor mi_discrete;
  torch::Tensor mi_continuous;
  torch::Tensor contrastive;
};

/// g_adv + lambda_mi * mi_discrete (+ mi_continuous) + lambda_contrastive * contrastive.
/// The contrastive term is dropped in ContrastiveMode::none.
torch::Tensor total_minimization_objective(const LossTerms& terms, const HyperParams& hp, ContrastiveMode mode);

struct LossReport {
  int64_t step = 0;
  double d_loss = 0.0;
  double g_adv = 0.0;
  double mi_discrete = 0.0;
  double mi_continuous = 0.0;
  double ntxent = 0.0;  // value of the active contrastive term (0 in mode none)
  double total = 0.0;

  bool all_finite() const;
  bool operator==(const LossReport&) const = default;
};

/// CSV header and row for the per-step training log.
std::string loss_log_header();
std::string loss_log_row(const LossReport& report);
LossReport parse_loss_log_row(const std::string& line);

}  // namespace elastic
