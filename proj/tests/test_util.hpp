#pragma once

#include "qsymx/uqg.hpp"

namespace qsymx::test {

inline ModuleRep simple(CartanType t, std::vector<int> hw, double q) {
  const RootSystem rs = build_root_system(t);
  return build_simple(rs, Weight(std::move(hw)), q);
}

// The desk-scale module sweep used across suites.
inline std::vector<ModuleRep> sweep_modules(double q) {
  return {
      simple(CartanType::A1, {1}, q),  simple(CartanType::A1, {2}, q),
      simple(CartanType::A1, {3}, q),  simple(CartanType::A2, {1, 0}, q),
      simple(CartanType::A2, {0, 1}, q), simple(CartanType::B2, {0, 1}, q),
  };
}

}  // namespace qsymx::test
