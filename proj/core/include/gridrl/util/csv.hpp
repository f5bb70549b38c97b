#pragma once

#include <filesystem>
#include <span>
#include <vector>

namespace gridrl {

// Exogenous profile file: two-column CSV with literal header "step,value".
// Step indices must be 0-based and consecutive. Throws ConfigError with a
// path-qualified message on any malformed content.
std::vector<double> load_profile_csv(const std::filesystem::path& path);

void write_profile_csv(const std::filesystem::path& path,
                       std::span<const double> values);

// Formats a double with round-trip precision ("%.17g").
std::string format_full(double v);

}  // namespace gridrl
