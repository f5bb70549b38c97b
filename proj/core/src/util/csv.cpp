#include "gridrl/util/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "gridrl/util/errors.hpp"

namespace gridrl {

namespace {

std::string strip_cr(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.pop_back();
  return s;
}

}  // namespace

std::vector<double> load_profile_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open profile file");

  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != "step,value")
    throw ConfigError(path.string() + ": expected header \"step,value\"");

  std::vector<double> values;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ConfigError(path.string() + ": line " + std::to_string(row + 2) +
                        ": expected \"step,value\" row");
    std::size_t pos = 0;
    long step = -1;
    double value = 0.0;
    try {
      step = std::stol(line.substr(0, comma), &pos);
      value = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw ConfigError(path.string() + ": line " + std::to_string(row + 2) +
                        ": cannot parse row \"" + line + "\"");
    }
    if (step != static_cast<long>(row))
      throw ConfigError(path.string() + ": line " + std::to_string(row + 2) +
                        ": step indices must be consecutive from 0");
    if (!std::isfinite(value))
      throw ConfigError(path.string() + ": line " + std::to_string(row + 2) +
                        ": non-finite value");
    values.push_back(value);
    ++row;
  }
  if (values.empty())
    throw ConfigError(path.string() + ": profile has no data rows");
  return values;
}

void write_profile_csv(const std::filesystem::path& path,
                       std::span<const double> values) {
  std::ofstream out(path);
  if (!out) throw ConfigError(path.string() + ": cannot open for writing");
  out << "step,value\n";
  for (std::size_t i = 0; i < values.size(); ++i)
    out << i << ',' << format_full(values[i]) << '\n';
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace gridrl
