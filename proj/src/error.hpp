#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "source_range.hpp"
#include "tyro/tyro.h"

namespace tyro {

struct Error : std::runtime_error {
  tyro_status code;
  std::optional<SourceRange> where;

  Error(tyro_status c, std::string msg, std::optional<SourceRange> w = {})
      : std::runtime_error(std::move(msg)), code(c), where(std::move(w)) {}
};

[[noreturn]] inline void fail(tyro_status c, std::string msg,
                              std::optional<SourceRange> w = {}) {
  throw Error(c, std::move(msg), std::move(w));
}

} // namespace tyro
