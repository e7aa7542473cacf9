#pragma once

// Two-level "branch/leaf" spaces and their three-layer variant.
//
// First generation, level n: branch points x(n,i,j), 1 <= i <= n,
// 1 <= j <= 2^(i-1), and leaves x'(n,i',k), 1 <= k <= tau(n,i'). Leaf
// x'(n,i',k) sits at distance 1 from x(n,i,j) exactly when i <= i' and k lies
// in the j-th of the 2^(i-1) equal dyadic blocks of 1..tau(n,i'). All other
// distinct pairs are at distance 2.
//
// Second generation, level n: branch points y(n,i,j), middle points
// yo(n,i',k) and leaves y'(n,i',k). Branch points of one level are pairwise
// at distance 1, yo follows the first-generation block rule towards the
// branch points, and yo(n,i',k)--y'(n,i',k) are at distance 1.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "maxtype/ext_scalar.hpp"
#include "maxtype/space.hpp"

namespace maxtype {

enum class Generation : std::uint8_t { first, second };

std::string to_string(Generation g);

class GeneratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter bundle. Tables are 1-based in the accessors: tau(n, i) with
/// 1 <= i <= n <= N.
struct GenParams {
  std::optional<double> p0;  // set for presets
  bool preset = false;
  int N = 0;
  std::vector<std::vector<mpz_class>> tau_table;
  std::vector<std::vector<ExtScalar>> F_table;
  std::vector<ExtScalar> m_seq;
  std::vector<ExtScalar> G_seq;  // second generation only
  std::vector<ExtScalar> a_seq;  // presets only, a(i) for 1 <= i <= N
  std::vector<ExtScalar> d_seq;

  const mpz_class& tau(int n, int i) const { return tau_table.at(n - 1).at(i - 1); }
  const ExtScalar& F(int n, int i) const { return F_table.at(n - 1).at(i - 1); }
  const ExtScalar& m(int n) const { return m_seq.at(n - 1); }
  const ExtScalar& G(int n) const { return G_seq.at(n - 1); }
  const ExtScalar& a(int i) const { return a_seq.at(i - 1); }
  const ExtScalar& d(int n) const { return d_seq.at(n - 1); }
  mpz_class floor_a(int i) const { return a(i).floor_integer(); }
  mpz_class tau_sum(int n) const;
};

/// Preset sequences for a given p0 > 1: a(i), tau(n,i), m(n), F(n,i), G(n),
/// plus d(n) normalized for `generation`.
GenParams derive_sequences(double p0, int N, Generation generation = Generation::first);

/// Level mass with d(n) factored out.
ExtScalar level_weight(const GenParams& params, int n, Generation generation);

/// d(1) = 1 and each level carries half the mass of the previous one.
std::vector<ExtScalar> normalization_weights(const GenParams& params, Generation generation);

struct Violation {
  std::string code;
  std::string message;
};

/// Every violated constraint; empty means valid. d is checked only when set.
std::vector<Violation> validate_params(const GenParams& params, Generation generation = Generation::first);

// Dyadic block bookkeeping shared by both generations.
namespace blocks {

/// j such that leaf k of a family of size tau lies in the j-th level-i block.
mpz_class block_of(const mpz_class& k, const mpz_class& tau, int level);
/// Leaf indices (lo, hi] of the j-th level-i block of a family of size tau.
std::pair<mpz_class, mpz_class> block_range(const mpz_class& tau, int level, const mpz_class& j);
/// Level-`level` block containing finest block b of a level-`finest` family.
std::uint64_t parent_block(std::uint64_t b, int finest, int level);

}  // namespace blocks

/// Index arithmetic for one generated part of a (possibly glued) space.
struct LevelLayout {
  std::uint32_t branch_base = 0;
  std::vector<std::uint32_t> leaf_base;  // x' or y'
  std::vector<std::uint32_t> mid_base;   // yo, second generation only
};

struct PartInfo {
  Generation generation = Generation::first;
  GenParams params;
  std::uint16_t part = 0;
  std::uint32_t offset = 0;
  std::uint32_t count = 0;
  std::vector<LevelLayout> levels;

  std::uint32_t branch_index(int n, int i, std::uint64_t j) const;
  /// pos is k in explicit mode and the finest block id in quotient mode.
  std::uint32_t leaf_index(int n, int i, std::uint64_t pos) const;
  std::uint32_t mid_index(int n, int i, std::uint64_t pos) const;
};

struct GeneratedSpace {
  Space space;
  std::vector<PartInfo> parts;

  const PartInfo& part_of(std::size_t index) const;
};

inline constexpr std::uint64_t kDefaultPointCap = 2'000'000;

/// Number of points of the truncation to level N.
mpz_class point_count(const GenParams& params, Generation generation);

GeneratedSpace build_first_gen(const GenParams& params, Mode mode, std::uint64_t point_cap = kDefaultPointCap);
GeneratedSpace build_second_gen(const GenParams& params, Mode mode, std::uint64_t point_cap = kDefaultPointCap);
GeneratedSpace build(const GenParams& params, Generation generation, Mode mode,
                     std::uint64_t point_cap = kDefaultPointCap);
/// derive_sequences + build.
GeneratedSpace make_preset(double p0, int N, Generation generation, Mode mode,
                           std::uint64_t point_cap = kDefaultPointCap);

/// Disjoint union at mutual distance 2 with summed measure.
GeneratedSpace glue(const GeneratedSpace& a, const GeneratedSpace& b);

/// Ball from the closed-form case lists: singleton for r <= 1, the star of
/// the center for 1 < r <= 2, everything for r > 2.
PointSet structural_ball(const GeneratedSpace& gs, std::size_t center, double radius);

/// Index in a quotient space of the orbit holding the explicit point `label`.
std::size_t orbit_of(const GeneratedSpace& quotient, const PointLabel& label);

/// Points of level n of a part (S_n or T_n), and the leaf layer S'_n / T'_n,
/// and the middle layer T°_n.
PointSet level_set(const GeneratedSpace& gs, std::uint16_t part, int n);
PointSet leaf_layer(const GeneratedSpace& gs, std::uint16_t part, int n);
PointSet mid_layer(const GeneratedSpace& gs, std::uint16_t part, int n);
PointSet branch_layer(const GeneratedSpace& gs, std::uint16_t part, int n);

}  // namespace maxtype
