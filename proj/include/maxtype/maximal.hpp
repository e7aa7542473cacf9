#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "maxtype/generators.hpp"
#include "maxtype/space.hpp"

namespace maxtype {

enum class Operator : std::uint8_t { centered, noncentered };

std::string to_string(Operator op);

struct MaximalOptions {
  /// Only balls B(c, r) with r <= max_radius take part. The default admits all.
  double max_radius = std::numeric_limits<double>::infinity();
};

/// Every distinct ball of a space, deduplicated by membership, together
/// with the balls centered at each point. Depends only on the space, so it
/// is built once and reused for many functions.
class BallFamily {
 public:
  /// Balls from the generic distance scan.
  static BallFamily generic(const Space& space, const MaximalOptions& options = {});
  /// Balls from the closed-form case lists of a generated space.
  static BallFamily structural(const GeneratedSpace& gs, const MaximalOptions& options = {});

  std::size_t size() const { return balls_.size(); }
  std::size_t points() const { return centered_offsets_.size() - 1; }
  const PointSet& ball(std::size_t id) const { return balls_[id]; }
  const ExtScalar& ball_measure(std::size_t id) const { return measures_[id]; }
  std::span<const std::uint32_t> centered_at(std::size_t center) const;

 private:
  template <class Provider>
  static BallFamily assemble(const Space& space, const MaximalOptions& options, Provider&& provider);

  std::vector<PointSet> balls_;
  std::vector<ExtScalar> measures_;
  std::vector<std::size_t> centered_offsets_{0};
  std::vector<std::uint32_t> centered_ids_;
};

/// Average of f over every ball of the family, indexed by ball id. Balls on
/// which f is constant get that constant exactly.
std::vector<ExtScalar> ball_averages(const Space& space, const BallFamily& family, const WeightedFunction& f);

/// Sup of ball averages at each point: over balls centered there (centered)
/// or over all balls containing it (noncentered).
WeightedFunction maximal(const Space& space, const BallFamily& family, const WeightedFunction& f, Operator op);

WeightedFunction maximal_centered(const Space& space, const WeightedFunction& f, const MaximalOptions& options = {});
WeightedFunction maximal_noncentered(const Space& space, const WeightedFunction& f,
                                     const MaximalOptions& options = {});
/// Generated spaces use the structural ball lists.
WeightedFunction maximal(const GeneratedSpace& gs, const WeightedFunction& f, Operator op,
                         const MaximalOptions& options = {});

/// ||Op f||_{p,inf}^p / ||f||_p^p.
ExtScalar weak_ratio(const Space& space, const BallFamily& family, const WeightedFunction& f, double p, Operator op);
ExtScalar weak_ratio(const GeneratedSpace& gs, const WeightedFunction& f, double p, Operator op);

/// sup_lambda lambda^p mu({Op chi_E > lambda}) / ||chi_E||_p^p.
ExtScalar rwt_functional(const Space& space, const BallFamily& family, const PointSet& set, double p, Operator op);
ExtScalar rwt_functional(const GeneratedSpace& gs, const PointSet& set, double p, Operator op);

}  // namespace maxtype
