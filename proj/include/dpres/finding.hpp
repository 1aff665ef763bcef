#pragma once

#include <string>

namespace dpres {

/// One problem reported by a validator.
struct Finding {
  std::string kind;
  std::string detail;

  friend bool operator==(const Finding&, const Finding&) = default;
};

}  // namespace dpres
