#pragma once

#include <torch/torch.h>

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "elastic/training.hpp"

namespace elastic {

/// Versioned multi-section binary container:
///   "EIGCKPT\0" | u32 version | u32 section count
///   per section: u32 name length | name | u64 payload length | payload
///   u32 CRC-32 of everything before it
/// Integers are little-endian.
struct Container {
  static constexpr std::uint32_t kVersion = 1;

  std::vector<std::pair<std::string, std::string>> sections;

  void add(std::string name, std::string payload) { sections.emplace_back(std::move(name), std::move(payload)); }
  /// Throws CheckpointError when the section is absent.
  const std::string& get(std::string_view name) const;

  std::string encode() const;
  /// Throws CheckpointError on bad magic, version, truncation or checksum.
  static Container decode(std::string_view bytes);
};

/// Named tensors as: u32 count, then per tensor name, dtype, rank, dims, raw data.
std::string encode_tensors(const std::vector<std::pair<std::string, torch::Tensor>>& tensors);
std::vector<std::pair<std::string, torch::Tensor>> decode_tensors(std::string_view bytes);

/// Parameters and buffers of a module, in registration order.
std::string encode_module(const torch::nn::Module& module);
/// Copies into an already-built module; names and shapes must match.
void decode_module(std::string_view bytes, torch::nn::Module& module);

std::string serialize_state(const TrainState& state);
TrainState deserialize_state(std::string_view bytes);

void write_file(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

/// Sections: config, generator, trunk, d_head, q_head, prior, optimizer, rng, counters.
void checkpoint_save(const TrainState& state, const std::filesystem::path& path);
TrainState checkpoint_load(const std::filesystem::path& path);

}  // namespace elastic
