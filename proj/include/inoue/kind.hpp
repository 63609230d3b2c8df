#pragma once

#include <string>
#include <string_view>

#include "inoue/errors.hpp"

namespace inoue {

/// Inoue surface type.
enum class Kind { S0, SPlus, SMinus };

inline std::string to_string(Kind k) {
  switch (k) {
    case Kind::S0: return "S0";
    case Kind::SPlus: return "S+";
    case Kind::SMinus: return "S-";
  }
  return "?";
}

inline Kind kind_from_string(std::string_view s) {
  if (s == "S0") return Kind::S0;
  if (s == "S+") return Kind::SPlus;
  if (s == "S-") return Kind::SMinus;
  throw PreconditionError("unknown surface kind '" + std::string(s) + "'");
}

}  // namespace inoue
