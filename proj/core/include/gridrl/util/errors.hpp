#pragma once

#include <stdexcept>

namespace gridrl {

// Invalid scenario, feeder, profile or checkpoint definitions. Messages are
// path-qualified where a file or config field is involved.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gridrl
