#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "maxtype/generators.hpp"
#include "maxtype/maximal.hpp"
#include "maxtype/report.hpp"

namespace maxtype {

/// 2^((n-i)/(p0-1)) at every branch point of level n of `part`, zero elsewhere.
WeightedFunction extremal_function(const GeneratedSpace& gs, std::uint16_t part, int n);

/// 2^(1-2 p0) * (sum_{i<=n} floor(a_i)) / n.
ExtScalar growth_lower_bound(const GenParams& params, int n);

/// Weak ratios of the extremal functions against their lower bound, with
/// the leaf-level estimate min (Op f_n) * 2 m_n on the leaf layer.
Report growth_table(double p0, int N, Generation generation, Operator op, Mode mode = Mode::quotient);

struct RandomFunctionSpec {
  double log2_lo = -40.0;
  double log2_hi = 40.0;
};

/// Random f >= 0: support drawn with a per-trial inclusion probability,
/// log-uniform values. Never the zero function.
WeightedFunction random_function(std::size_t points, std::uint64_t seed, std::uint64_t trial,
                                 const RandomFunctionSpec& spec = {});

/// max ||M^c f||_1 / ||f||_1 over constants, point-class Diracs, the
/// extremal functions and `trials` random functions; asserts <= 6.
Report strong11_check(const GeneratedSpace& gs, std::uint64_t trials, std::uint64_t seed,
                      Operator op = Operator::centered);

enum class SearchMode : std::uint8_t { exhaustive, random };

struct SearchOptions {
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t budget = 10000;
  std::uint64_t seed = 0;
  /// Subsets are drawn from this universe of whole orbits; everything if unset.
  std::optional<PointSet> universe;
  /// Asserted upper bound and its source; defaults to the umbrella constant.
  std::optional<std::pair<ExtScalar, std::string>> bound;
  std::optional<std::pair<ExtScalar, std::string>> golden;
};

inline constexpr std::size_t kExhaustiveCap = 22;
inline constexpr int kUmbrellaConstant = 64;

struct SearchResult {
  ExtScalar best;
  std::vector<std::uint32_t> argmax;
  std::uint64_t evaluated = 0;
};

/// Max of the restricted-weak functional over subsets of the universe.
/// Exhaustive mode counts masks over the universe in ascending order and
/// keeps the lowest mask on ties.
SearchResult rwt_maximum(const GeneratedSpace& gs, double p, Operator op, const SearchOptions& options);
Report rwt_search(const GeneratedSpace& gs, double p, Operator op, const SearchOptions& options);

/// rwt_functional of every branch-point Dirac; asserts <= 4.
Report dirac_rwt_check(const GeneratedSpace& gs, double p, Operator op = Operator::noncentered);

/// For random f on glue(A, B), M_Z f(x) against max(local part operator,
/// average over Z), both operators, relative tolerance 1e-20.
Report glue_consistency_check(const GeneratedSpace& A, const GeneratedSpace& B, std::uint64_t trials,
                              std::uint64_t seed);

/// Structural ball lists against the generic scan for every center and
/// representative radius.
Report verify_balls(const GeneratedSpace& gs);

}  // namespace maxtype
