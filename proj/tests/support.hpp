#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "maxtype/generators.hpp"
#include "maxtype/maximal.hpp"

namespace testsupport {

inline maxtype::ExtScalar rat(long p, long q = 1) { return maxtype::ExtScalar(mpq_class(p, q)); }

/// Exact rational value of an ExtScalar holding a dyadic-friendly result.
inline bool exactly(const maxtype::ExtScalar& x, long p, long q = 1) { return x == rat(p, q); }

inline maxtype::PointLabel lbl(maxtype::PointKind kind, std::uint32_t n, std::uint32_t i, std::uint64_t index,
                               std::uint16_t part = 0) {
  maxtype::PointLabel l;
  l.kind = kind;
  l.part = part;
  l.n = n;
  l.i = i;
  l.index = index;
  return l;
}

/// Index of the explicit point carrying `label`.
inline std::size_t find(const maxtype::GeneratedSpace& gs, const maxtype::PointLabel& label) {
  for (std::size_t k = 0; k < gs.space.size(); ++k) {
    if (gs.space.label(k) == label) return k;
  }
  throw std::out_of_range("no point " + label.to_string());
}

}  // namespace testsupport
