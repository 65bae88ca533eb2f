#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sphtrop/expr.hpp"
#include "sphtrop/matrix.hpp"
#include "sphtrop/rational.hpp"
#include "sphtrop/series.hpp"

namespace sphtrop::trop {

enum class SpaceKind { Torus, PuncturedAffine, GL, SL, PGL };

/// One of the spherical homogeneous spaces with a closed-form val map, with
/// its fixed basis of the lattice Q.
class GroupSpace {
 public:
  /// Throws std::invalid_argument when n is out of range for the kind.
  GroupSpace(SpaceKind kind, int n);

  /// "GL 2", "SL3", "PGL 3", "TORUS 2", "PUNCTURED 2" (case-insensitive).
  static GroupSpace parse(std::string_view text);

  SpaceKind kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }
  bool is_matrix_space() const noexcept { return kind_ == SpaceKind::GL || kind_ == SpaceKind::SL || kind_ == SpaceKind::PGL; }
  /// Dimension of Q: n, 1, n, n-1, n-1.
  std::size_t coordinate_count() const noexcept;
  /// Number of ambient coordinates: n*n for matrix spaces, n otherwise.
  std::size_t ambient_size() const noexcept;
  std::string name() const;

  auto operator<=>(const GroupSpace&) const = default;

 private:
  SpaceKind kind_;
  int n_;
};

struct TropPoint {
  GroupSpace space;
  std::vector<Rational> coords;

  friend bool operator==(const TropPoint&, const TropPoint&) = default;
};

/// A K-bar point of the ambient space: a coordinate vector or a matrix.
using SpacePoint = std::variant<std::vector<PuiseuxSeries>, SeriesMatrix>;

/// The tropicalization map.
///   TORUS     coordinatewise valuations
///   PUNCTURED min_i val(x_i)
///   GL        invariant factors, decreasing
///   SL        the n-1 largest invariant factors
///   PGL       alpha_i - alpha_n, i < n (relative invariant factors)
/// Throws NotOnSpace when the point is off the ambient space.
TropPoint val_point(const GroupSpace& space, const SpacePoint& point, int threads = 1);

bool in_valuation_cone(const GroupSpace& space, const std::vector<Rational>& coords);

/// Substitution x[i][j] / x[i] -> point coordinates.
Assignment coordinate_assignment(const GroupSpace& space, const SpacePoint& point);

class VarietySpec {
 public:
  enum class Mode { Ideal, Param };

  /// Generators may mention only the ambient coordinates (x[i][j] for matrix
  /// spaces, x[i] otherwise) and constants.
  static VarietySpec ideal(const GroupSpace& space, std::vector<Expression> generators);
  /// Entries (row-major for matrix spaces) may mention only s1..sm and t.
  static VarietySpec param(const GroupSpace& space, std::vector<Expression> entries);

  const GroupSpace& space() const noexcept { return space_; }
  Mode mode() const noexcept { return mode_; }
  const std::vector<Expression>& generators() const noexcept { return generators_; }
  const std::vector<Expression>& entries() const noexcept { return entries_; }
  /// Largest parameter index used (PARAM mode).
  int parameter_count() const noexcept { return parameter_count_; }

 private:
  VarietySpec(GroupSpace space, Mode mode) : space_(space), mode_(mode) {}
  GroupSpace space_;
  Mode mode_;
  std::vector<Expression> generators_;
  std::vector<Expression> entries_;
  int parameter_count_ = 0;
};

enum class Membership { OnVariety, Violated, Inconclusive };

struct MembershipResult {
  Membership status = Membership::OnVariety;
  std::size_t generator_index = 0;     ///< first violated generator (0-based)
  std::optional<Rational> valuation;   ///< its valuation at the point
  std::size_t generators_checked = 0;
};

/// Every generator zero to precision means OnVariety.
MembershipResult check_on_variety(const VarietySpec& spec, const SpacePoint& point,
                                  const Rational& relative_precision = kDefaultPrecision);

/// Evaluates a PARAM family at the given parameter values.
SpacePoint instantiate(const VarietySpec& spec, const std::vector<PuiseuxSeries>& parameters,
                       const Rational& relative_precision = kDefaultPrecision);

struct SampleOptions {
  std::vector<std::pair<int, int>> box;  ///< inclusive exponent range per parameter
  int draws_per_cell = 4;
  std::uint64_t seed = 1;
  int threads = 1;
  Rational relative_precision = kDefaultPrecision;
};

struct SampledPoint {
  TropPoint point;
  std::vector<PuiseuxSeries> witness;  ///< parameter values that produced it
};

struct SampleResult {
  std::vector<SampledPoint> points;  ///< lexicographic by coordinates, no duplicates
  std::size_t cells = 0;
  std::size_t instantiations = 0;
  std::size_t skipped = 0;
  std::uint64_t seed = 0;
};

/// Instantiates s_i := c_i t^{e_i} for every integer exponent tuple in the
/// box, `draws_per_cell` times with fresh nonzero integers c_i in [-100, 100],
/// and additionally with every subset of the parameters set to zero. Points
/// off the ambient space are skipped and counted. Every emitted point lies in
/// the tropicalization; completeness holds only relative to the box.
SampleResult sample_family(const VarietySpec& spec, const SampleOptions& options);
/// Reference kernel: cells in order on the calling thread.
SampleResult sample_family_serial(const VarietySpec& spec, const SampleOptions& options);
/// OpenMP kernel over cells; merges in cell order, so the result equals the
/// serial one.
SampleResult sample_family_parallel(const VarietySpec& spec, const SampleOptions& options);

/// Smallest integer vector on the ray through `coords` (zero stays zero).
std::vector<Rational> primitive_generator(const std::vector<Rational>& coords);

/// Origin plus the primitive generator of each observed ray, sorted.
/// Empty input gives empty output. Throws MixedSpaces.
std::vector<TropPoint> ray_closure(const std::vector<TropPoint>& points);

enum class CurveClass { RayMinus, FullCone };

/// Curves f(x, y) = 0 in the punctured plane: the full cone when the curve
/// passes through the origin, the ray -R otherwise. Throws
/// std::invalid_argument for a generator that does not define a curve.
CurveClass punctured_curve_classifier(const Expression& generator);

std::string to_string(CurveClass c);
std::string to_string(Membership m);

}  // namespace sphtrop::trop
