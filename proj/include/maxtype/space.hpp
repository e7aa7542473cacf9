#pragma once

// Finite metric measure spaces with exact ball enumeration.
//
// A Space is a list of points, each carrying a positive mass and a positive
// multiplicity. In explicit mode every multiplicity is 1. In quotient mode a
// point stands for an orbit of mutually exchangeable points (same mass, same
// distance profile to everything else), and the operations below account
// for every member of every orbit.
//
// Distances are stored sparsely: each point lists the points closer than the
// space's far distance, everything else sits at exactly the far distance.
// For quotient spaces a link also says how many members of the target orbit
// are at that distance from this orbit's representative. Links always
// include the target's representative, so distance() between two
// representatives is read straight off the link table.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "maxtype/ext_scalar.hpp"

namespace maxtype {

enum class PointKind : std::uint8_t { x_branch, x_leaf, y_branch, y_mid, y_leaf, opaque };

/// Structural coordinates of a point. `index` is j for branch points and k for
/// leaves; with `block` set it is instead the 1-based id of the finest dyadic
/// block that a quotient orbit represents.
struct PointLabel {
  PointKind kind = PointKind::opaque;
  std::uint16_t part = 0;
  std::uint32_t n = 0;
  std::uint32_t i = 0;
  std::uint64_t index = 0;
  bool block = false;

  std::string to_string() const;
  friend auto operator<=>(const PointLabel&, const PointLabel&) = default;
};

enum class Mode : std::uint8_t { explicit_points, quotient };

std::string to_string(Mode mode);

/// Sentinel member count meaning "every member of the orbit".
inline constexpr std::uint64_t kWholeOrbit = std::numeric_limits<std::uint64_t>::max();

struct Link {
  std::uint32_t target = 0;
  double distance = 0.0;
  std::uint64_t members = 1;  // members of target's orbit at `distance`, or kWholeOrbit
};

struct Member {
  std::uint32_t index = 0;
  std::uint64_t count = kWholeOrbit;
  friend bool operator==(const Member&, const Member&) = default;
};

class SpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A set of points (or of orbit members). Either the whole space, or a list
/// of members sorted by index without duplicates.
class PointSet {
 public:
  PointSet() = default;
  static PointSet everything();
  static PointSet of(std::vector<Member> members);
  static PointSet of_indices(std::span<const std::uint32_t> indices);

  bool is_everything() const { return everything_; }
  bool empty() const { return !everything_ && members_.empty(); }
  const std::vector<Member>& members() const { return members_; }
  bool contains(std::uint32_t index) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  bool everything_ = false;
  std::vector<Member> members_;
};

class Space {
 public:
  class Builder;

  std::size_t size() const { return labels_.size(); }
  Mode mode() const { return mode_; }
  double far_distance() const { return far_; }

  const PointLabel& label(std::size_t i) const { return labels_.at(i); }
  const ExtScalar& mass(std::size_t i) const { return classes_[class_of_.at(i)].mass; }
  const mpz_class& multiplicity(std::size_t i) const { return classes_[class_of_.at(i)].multiplicity; }
  /// mass * multiplicity: the measure of the whole orbit.
  const ExtScalar& weight(std::size_t i) const { return classes_[class_of_.at(i)].weight; }
  const ExtScalar& total_mass() const { return total_mass_; }
  /// Number of underlying points (sum of multiplicities).
  const mpz_class& point_count() const { return point_count_; }

  std::span<const Link> links(std::size_t i) const;
  /// Distance between the representatives of i and j.
  double distance(std::size_t i, std::size_t j) const;
  /// Sorted distinct distances from i's representative to every member of
  /// every orbit, starting with 0.
  std::vector<double> distinct_distances(std::size_t i) const;
  /// One radius per distinct ball at i, ascending.
  std::vector<double> representative_radii(std::size_t i) const;

  /// Measure of `count` members of orbit i (count may be kWholeOrbit).
  ExtScalar member_measure(std::size_t i, std::uint64_t count) const;
  bool is_whole_orbit(std::size_t i, std::uint64_t count) const;

  /// Replaces counts equal to the full multiplicity by kWholeOrbit and a set
  /// covering every point wholly by PointSet::everything().
  PointSet canonical(PointSet set) const;

 private:
  struct MassClass {
    ExtScalar mass;
    mpz_class multiplicity;
    ExtScalar weight;
  };

  Mode mode_ = Mode::explicit_points;
  double far_ = 2.0;
  std::vector<PointLabel> labels_;
  std::vector<std::uint32_t> class_of_;
  std::vector<MassClass> classes_;
  std::vector<std::size_t> link_offsets_{0};
  std::vector<Link> links_;
  ExtScalar total_mass_;
  mpz_class point_count_;
};

/// Incremental construction. Links are added once per unordered pair and
/// mirrored automatically.
class Space::Builder {
 public:
  explicit Builder(Mode mode, double far_distance = 2.0);

  /// Registers a (mass, multiplicity) pair shared by many points.
  std::uint32_t add_class(ExtScalar mass, mpz_class multiplicity = 1);
  std::uint32_t add_point(const PointLabel& label, std::uint32_t mass_class);
  /// a's representative sees `members_of_b` members of b at `distance`, and
  /// b's representative sees `members_of_a` members of a.
  void add_link(std::uint32_t a, std::uint32_t b, double distance, std::uint64_t members_of_b = kWholeOrbit,
                std::uint64_t members_of_a = kWholeOrbit);
  /// Other members of i's own orbit at `distance` from the representative.
  void add_self_link(std::uint32_t i, double distance, std::uint64_t members = kWholeOrbit);

  std::size_t size() const { return space_.labels_.size(); }
  Space build() &&;

 private:
  Space space_;
  std::vector<std::pair<std::uint32_t, Link>> pending_;
};

/// Nonnegative function on the points (one value per orbit in quotient mode).
class WeightedFunction {
 public:
  WeightedFunction() = default;
  explicit WeightedFunction(std::size_t n) : values_(n, ExtScalar(0)) {}
  explicit WeightedFunction(std::vector<ExtScalar> values);
  static WeightedFunction constant(std::size_t n, const ExtScalar& c);
  static WeightedFunction indicator(std::size_t n, const PointSet& set);
  static WeightedFunction dirac(std::size_t n, std::size_t at, const ExtScalar& value = ExtScalar(1));

  std::size_t size() const { return values_.size(); }
  const ExtScalar& operator[](std::size_t i) const { return values_[i]; }
  void set(std::size_t i, ExtScalar v);
  const std::vector<ExtScalar>& values() const { return values_; }
  bool is_zero() const;
  WeightedFunction scaled(const ExtScalar& c) const;

 private:
  std::vector<ExtScalar> values_;
};

/// Open ball {y : dist(center, y) < radius} by scanning the center's
/// distance row; every unlisted point is at the far distance.
PointSet ball(const Space& space, std::size_t center, double radius);

ExtScalar measure(const Space& space, const PointSet& set);

/// Sum of f * mass over the set divided by its measure.
ExtScalar average(const Space& space, const WeightedFunction& f, const PointSet& set);

/// (sum_x f(x)^p mass(x))^(1/p), and its p-th power.
ExtScalar lp_norm(const Space& space, const WeightedFunction& f, double p);
ExtScalar lp_norm_pow(const Space& space, const WeightedFunction& f, double p);

/// sup over lambda > 0 of lambda^p mu({g > lambda}), realized exactly as the
/// max over distinct values v of v^p mu({g >= v}). Zero for g == 0.
ExtScalar weak_quasinorm_pow(const Space& space, const WeightedFunction& g, double p);
ExtScalar weak_quasinorm(const Space& space, const WeightedFunction& g, double p);

/// mu({g >= v}) for each distinct nonzero value v, descending.
struct LevelSet {
  ExtScalar value;
  ExtScalar mass;
};
std::vector<LevelSet> superlevel_masses(const Space& space, const WeightedFunction& g);

void require_compatible(const Space& space, const WeightedFunction& f);

}  // namespace maxtype
