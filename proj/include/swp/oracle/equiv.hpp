#pragma once

#include <cstdint>
#include <optional>

#include "swp/lang/database.hpp"
#include "swp/logic/formula.hpp"

namespace swp {

struct EquivResult {
  bool holds = true;
  bool fast_path = false;  // decided syntactically, no enumeration
  std::uint64_t instances = 0;
  std::optional<Database> counterexample;
};

inline constexpr std::uint64_t kDefaultInstanceCap = std::uint64_t{1} << 24;

// Compares the closures of f and g on every database over their relations,
// with the domain made of their constants plus extra_constants fresh ones.
// Throws CapExceededError when the instance count exceeds cap.
EquivResult equiv_bruteforce(const Formula& f, const Formula& g, std::size_t extra_constants = 1,
                             std::uint64_t cap = kDefaultInstanceCap);
// Same enumeration; holds iff every instance satisfying f satisfies g.
EquivResult implies_bruteforce(const Formula& f, const Formula& g, std::size_t extra_constants = 1,
                               std::uint64_t cap = kDefaultInstanceCap);

}  // namespace swp
