#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "gridrl/nn/mlp.hpp"

namespace gridrl::nn {

// Checkpoint file: named parameter blobs, all little-endian.
//
//   file  := magic[8] = "GRLCKPT1"
//            u32 version = 1
//            u32 entry_count
//            entry*
//   entry := u32 name_len, name bytes (UTF-8)
//            u8  kind (0 = mlp, 1 = raw vector)
//            u8  output_activation (0 = identity, 1 = tanh; 0 for vectors)
//            u8  pad[6] = 0
//            u32 n_sizes, u32 sizes[n_sizes]   (layer sizes; [len] for vectors)
//            u64 value_count
//            f64 values[value_count]           (IEEE-754 little-endian)
struct CheckpointEntry {
  enum class Kind : std::uint8_t { MlpNet = 0, RawVector = 1 };

  Kind kind = Kind::MlpNet;
  std::vector<int> sizes;
  Activation output_activation = Activation::Identity;
  std::vector<double> values;
};

using Checkpoint = std::vector<std::pair<std::string, CheckpointEntry>>;

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& entries);
Checkpoint load_checkpoint(const std::filesystem::path& path);

CheckpointEntry to_entry(const Mlp& net);
CheckpointEntry to_entry(const std::vector<double>& values);
Mlp mlp_from_entry(const CheckpointEntry& entry);

// Lookup by name; throws ConfigError when missing.
const CheckpointEntry& find_entry(const Checkpoint& ckpt, const std::string& name);

}  // namespace gridrl::nn
