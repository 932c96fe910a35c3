#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vhodge/integer.hpp"
#include "vhodge/series.hpp"
#include "vhodge/smith.hpp"

namespace vhodge::toric {

/// Sorted ray indices spanning a cone.
using Cone = std::vector<std::size_t>;

/// Smooth fan given by primitive ray generators and maximal cones. Only
/// facet pairing is verified; projectivity is taken on trust.
struct Fan {
  std::int64_t dim = 0;
  std::vector<std::vector<std::int64_t>> rays;
  std::vector<Cone> max_cones;
};

class FanError : public DomainError {
 public:
  enum class Kind { Malformed, NonPrimitive, DuplicateRay, NonSmooth, DanglingFacet };
  FanError(Kind kind, const std::string& message) : DomainError(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Checks every Fan invariant; throws FanError. Cone index lists must be
/// sorted, distinct and in range.
void validate(const Fan& fan);

/// Parses { "dim": n, "rays": [[...], ...], "max_cones": [[...], ...] }
/// (0-based ray indices, no other fields) and validates the result.
Fan parse_fan(std::string_view json_text);
Fan load_fan(const std::string& path);

/// Cones of dimension n - p, i.e. the cones whose orbit closures are the
/// p-dimensional invariant subvarieties. Deterministic, sorted order.
std::vector<Cone> orbit_cones(const Fan& fan, std::int64_t p);

/// Free presentation of the Chow group A_p: generators are the orbit closures
/// V(sigma) for dim sigma = n - p, relations come from the cones one
/// dimension lower.
struct ChowLattice {
  std::int64_t p = 0;
  std::size_t rank = 0;
  std::vector<Cone> generators;
  /// Relation rows over the generators.
  IntMatrix relations;
  /// class_coords[i] is the image of generators[i] in Z^rank, in Hermite
  /// normal form coordinates.
  std::vector<std::vector<std::int64_t>> class_coords;
};

ChowLattice chow_lattice(const Fan& fan, std::int64_t p);

struct SeriesTerm {
  std::vector<std::int64_t> class_coords;
  Integer chi;
};

struct EulerChowSeries {
  std::int64_t p = 0;
  std::size_t basis_rank = 0;
  std::vector<std::int64_t> degree_functional;
  TruncSeries series;

  /// Terms sorted by functional degree, then lexicographically by class.
  std::vector<SeriesTerm> sorted_terms() const;
};

/// Expands prod_i 1 / (1 - x^{[V_i]}) over the p-dimensional orbit closures,
/// keeping classes whose degree under `functional` is at most `bound`.
/// The functional defaults to the sum of coordinates and must be positive on
/// every class.
EulerChowSeries euler_chow_series(const Fan& fan, std::int64_t p, std::int64_t bound,
                                  std::optional<std::vector<std::int64_t>> functional = std::nullopt);

/// Standard fan of P^n: rays e_1..e_n and -(e_1+...+e_n).
Fan projective_space_fan(std::int64_t n);

}  // namespace vhodge::toric
