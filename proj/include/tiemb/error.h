#ifndef TIEMB_ERROR_H_
#define TIEMB_ERROR_H_

#include <stdexcept>
#include <string>

namespace tiemb {

// Bad input data: malformed files, empty selections, violated preconditions
// on user-supplied content.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string &what) : std::runtime_error(what) {}
};

// Invalid configuration (bad flag values, missing input paths).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace tiemb

#endif  // TIEMB_ERROR_H_
