#include "gridrl/nn/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include "gridrl/util/errors.hpp"

namespace gridrl::nn {

namespace {

constexpr char kMagic[8] = {'G', 'R', 'L', 'C', 'K', 'P', 'T', '1'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

void write_f64(std::ostream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  write_u64(out, bits);
}

std::uint32_t read_u32(std::istream& in, const std::string& ctx) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4))
    throw ConfigError(ctx + ": truncated checkpoint");
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

std::uint64_t read_u64(std::istream& in, const std::string& ctx) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8))
    throw ConfigError(ctx + ": truncated checkpoint");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

double read_f64(std::istream& in, const std::string& ctx) {
  const std::uint64_t bits = read_u64(in, ctx);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& entries) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError(path.string() + ": cannot open checkpoint for writing");

  out.write(kMagic, 8);
  write_u32(out, kVersion);
  write_u32(out, static_cast<std::uint32_t>(entries.size()));
  for (const auto& [name, entry] : entries) {
    write_u32(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    const unsigned char head[8] = {static_cast<unsigned char>(entry.kind),
                                   static_cast<unsigned char>(entry.output_activation),
                                   0, 0, 0, 0, 0, 0};
    out.write(reinterpret_cast<const char*>(head), 8);
    write_u32(out, static_cast<std::uint32_t>(entry.sizes.size()));
    for (int s : entry.sizes) write_u32(out, static_cast<std::uint32_t>(s));
    write_u64(out, entry.values.size());
    for (double v : entry.values) write_f64(out, v);
  }
  if (!out) throw ConfigError(path.string() + ": write failed");
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  const std::string ctx = path.string();
  if (!in) throw ConfigError(ctx + ": cannot open checkpoint");

  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
    throw ConfigError(ctx + ": not a checkpoint file (bad magic)");
  if (read_u32(in, ctx) != kVersion)
    throw ConfigError(ctx + ": unsupported checkpoint version");

  const std::uint32_t count = read_u32(in, ctx);
  Checkpoint entries;
  entries.reserve(count);
  for (std::uint32_t e = 0; e < count; ++e) {
    const std::uint32_t name_len = read_u32(in, ctx);
    std::string name(name_len, '\0');
    if (!in.read(name.data(), name_len)) throw ConfigError(ctx + ": truncated checkpoint");

    unsigned char head[8];
    if (!in.read(reinterpret_cast<char*>(head), 8))
      throw ConfigError(ctx + ": truncated checkpoint");
    CheckpointEntry entry;
    if (head[0] > 1) throw ConfigError(ctx + ": unknown entry kind");
    if (head[1] > 1) throw ConfigError(ctx + ": unknown activation tag");
    entry.kind = static_cast<CheckpointEntry::Kind>(head[0]);
    entry.output_activation = static_cast<Activation>(head[1]);

    const std::uint32_t n_sizes = read_u32(in, ctx);
    entry.sizes.resize(n_sizes);
    for (std::uint32_t i = 0; i < n_sizes; ++i) {
      entry.sizes[i] = static_cast<int>(read_u32(in, ctx));
      if (entry.sizes[i] < 1) throw ConfigError(ctx + ": invalid layer size");
    }
    const std::uint64_t n_values = read_u64(in, ctx);
    entry.values.resize(n_values);
    for (std::uint64_t i = 0; i < n_values; ++i) entry.values[i] = read_f64(in, ctx);

    if (entry.kind == CheckpointEntry::Kind::MlpNet) {
      Mlp probe;
      probe.layer_sizes = entry.sizes;
      if (entry.sizes.size() < 2 || probe.param_count() != entry.values.size())
        throw ConfigError(ctx + ": entry \"" + name +
                          "\" parameter count does not match its layer sizes");
    }
    entries.emplace_back(std::move(name), std::move(entry));
  }
  return entries;
}

CheckpointEntry to_entry(const Mlp& net) {
  CheckpointEntry e;
  e.kind = CheckpointEntry::Kind::MlpNet;
  e.sizes = net.layer_sizes;
  e.output_activation = net.output_activation;
  e.values = net.params;
  return e;
}

CheckpointEntry to_entry(const std::vector<double>& values) {
  CheckpointEntry e;
  e.kind = CheckpointEntry::Kind::RawVector;
  e.sizes = {static_cast<int>(values.size())};
  e.values = values;
  return e;
}

Mlp mlp_from_entry(const CheckpointEntry& entry) {
  if (entry.kind != CheckpointEntry::Kind::MlpNet)
    throw ConfigError("checkpoint entry is not a network");
  Mlp net;
  net.layer_sizes = entry.sizes;
  net.output_activation = entry.output_activation;
  net.params = entry.values;
  return net;
}

const CheckpointEntry& find_entry(const Checkpoint& ckpt, const std::string& name) {
  for (const auto& [n, e] : ckpt)
    if (n == name) return e;
  throw ConfigError("checkpoint is missing entry \"" + name + "\"");
}

}  // namespace gridrl::nn
