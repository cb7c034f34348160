#pragma once

#include <memory>

#include "ves/profile.hpp"

namespace ves::test {

// Reference solution at (1.816, 0.716), K = 1, built once per process.
inline std::shared_ptr<const GlobalSolution> reference() {
  static const auto sol =
      std::make_shared<const GlobalSolution>(assemble(derived_constants(1.816, 0.716), 1.0));
  return sol;
}

}  // namespace ves::test
