#include <functional>
#include <string>

#include "doctest.h"
#include "vhodge/chow.hpp"
#include "vhodge/toric.hpp"

using namespace vhodge;
using namespace vhodge::toric;

namespace {

std::string data(const std::string& name) { return std::string(VHODGE_TEST_DATA) + "/" + name; }

// Cones of size k by scanning every subset of rays and keeping those that
// sit inside some maximal cone.
std::size_t brute_force_cone_count(const Fan& fan, std::size_t k) {
  const std::size_t r = fan.rays.size();
  std::size_t count = 0;
  for (unsigned long mask = 0; mask < (1UL << r); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountl(mask)) != k) continue;
    for (const auto& cone : fan.max_cones) {
      unsigned long cone_mask = 0;
      for (auto i : cone) cone_mask |= 1UL << i;
      if ((mask & ~cone_mask) == 0) {
        ++count;
        break;
      }
    }
  }
  return count;
}

FanError::Kind fan_error_kind(const std::string& file) {
  try {
    load_fan(data(file));
  } catch (const FanError& e) {
    return e.kind();
  }
  FAIL("fan " << file << " was accepted");
  return FanError::Kind::Malformed;
}

void check_relations_annihilate(const ChowLattice& lattice) {
  for (std::size_t r = 0; r < lattice.relations.rows(); ++r)
    for (std::size_t i = 0; i < lattice.rank; ++i) {
      Integer dot = 0;
      for (std::size_t g = 0; g < lattice.generators.size(); ++g)
        dot += lattice.relations(r, g) * static_cast<long>(lattice.class_coords[g][i]);
      CHECK(dot == 0);
    }
}

// Number of ways to write `target` as a sum of the given classes with
// multiplicity: the coefficient of x^target in prod 1/(1 - x^{c_i}).
long count_decompositions(const std::vector<std::vector<std::int64_t>>& classes, std::vector<std::int64_t> target,
                          std::size_t from = 0) {
  if (std::ranges::all_of(target, [](auto x) { return x == 0; })) return 1;
  if (from == classes.size()) return 0;
  long total = 0;
  // Use class `from` some number of times, then move on.
  for (;;) {
    total += count_decompositions(classes, target, from + 1);
    bool ok = true;
    for (std::size_t i = 0; i < target.size(); ++i) {
      target[i] -= classes[from][i];
      if (target[i] < 0) ok = false;
    }
    if (!ok) break;
  }
  return total;
}

}  // namespace

TEST_CASE("parse_fan accepts standard fans") {
  const Fan p2 = load_fan(data("p2.json"));
  CHECK(p2.dim == 2);
  CHECK(p2.rays.size() == 3);
  CHECK(p2.max_cones.size() == 3);
  const Fan p1p1 = load_fan(data("p1xp1.json"));
  CHECK(p1p1.max_cones.size() == 4);
  CHECK_NOTHROW(load_fan(data("hirzebruch1.json")));
  CHECK_NOTHROW(load_fan(data("p3.json")));
  for (int n = 1; n <= 5; ++n) CHECK_NOTHROW(validate(projective_space_fan(n)));
}

TEST_CASE("parse_fan rejects invalid fans") {
  CHECK(fan_error_kind("nonprimitive.json") == FanError::Kind::NonPrimitive);
  CHECK(fan_error_kind("duplicate_ray.json") == FanError::Kind::DuplicateRay);
  CHECK(fan_error_kind("nonsmooth.json") == FanError::Kind::NonSmooth);
  CHECK(fan_error_kind("dangling.json") == FanError::Kind::DanglingFacet);
  CHECK(fan_error_kind("unknown_field.json") == FanError::Kind::Malformed);
  CHECK(fan_error_kind("does_not_exist.json") == FanError::Kind::Malformed);

  CHECK_THROWS_AS(parse_fan("{"), FanError);
  CHECK_THROWS_AS(parse_fan("[]"), FanError);
  CHECK_THROWS_AS(parse_fan(R"({"dim": 2, "rays": [[1,0],[0,1],[-1,-1]]})"), FanError);
  CHECK_THROWS_AS(parse_fan(R"({"dim": 2, "rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2],[0,5]]})"),
                  FanError);
  CHECK_THROWS_AS(parse_fan(R"({"dim": 2, "rays": [[1,0],[0,1],[0,0]], "max_cones": [[0,1]]})"), FanError);
  CHECK_THROWS_AS(parse_fan(R"({"dim": 2, "rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2],[0,2],[0]]})"),
                  FanError);
  CHECK_THROWS_AS(parse_fan(R"({"dim": 2, "rays": [[1,0.5]], "max_cones": [[0]]})"), FanError);
}

TEST_CASE("orbit_cones") {
  const Fan p2 = load_fan(data("p2.json"));
  CHECK(orbit_cones(p2, 0).size() == 3);
  CHECK(orbit_cones(p2, 1).size() == 3);
  CHECK(orbit_cones(p2, 1) == std::vector<Cone>{{0}, {1}, {2}});
  CHECK(orbit_cones(p2, 2) == std::vector<Cone>{{}});
  CHECK(orbit_cones(load_fan(data("p1xp1.json")), 1).size() == 4);
  CHECK_THROWS_AS(orbit_cones(p2, 3), DomainError);
  CHECK_THROWS_AS(orbit_cones(p2, -1), DomainError);

  for (const auto& fan : {load_fan(data("p2.json")), load_fan(data("p1xp1.json")), load_fan(data("hirzebruch1.json")),
                          load_fan(data("p3.json")), projective_space_fan(4)})
    for (std::int64_t p = 0; p <= fan.dim; ++p)
      CHECK(orbit_cones(fan, p).size() == brute_force_cone_count(fan, static_cast<std::size_t>(fan.dim - p)));
}

TEST_CASE("chow_lattice") {
  const Fan p2 = load_fan(data("p2.json"));
  for (std::int64_t p : {0, 1}) {
    const auto lattice = chow_lattice(p2, p);
    CHECK(lattice.rank == 1);
    CHECK(lattice.class_coords == std::vector<std::vector<std::int64_t>>(3, {1}));
    check_relations_annihilate(lattice);
  }

  const auto p1p1 = chow_lattice(load_fan(data("p1xp1.json")), 1);
  CHECK(p1p1.rank == 2);
  CHECK(p1p1.class_coords == std::vector<std::vector<std::int64_t>>{{1, 0}, {1, 0}, {0, 1}, {0, 1}});
  check_relations_annihilate(p1p1);

  const auto f1 = chow_lattice(load_fan(data("hirzebruch1.json")), 1);
  CHECK(f1.rank == 2);
  check_relations_annihilate(f1);
  CHECK(f1.class_coords[0] == f1.class_coords[2]);

  for (std::int64_t n = 1; n <= 5; ++n)
    for (std::int64_t p = 0; p <= n - 1; ++p) {
      const auto lattice = chow_lattice(projective_space_fan(n), p);
      CHECK(lattice.rank == 1);
      for (const auto& c : lattice.class_coords) CHECK(c == std::vector<std::int64_t>{1});
      CHECK(lattice.generators.size() == static_cast<std::size_t>(chow::v(p, n).get_si()));
      check_relations_annihilate(lattice);
    }
  CHECK_THROWS_AS(chow_lattice(p2, 2), DomainError);
}

TEST_CASE("euler_chow_series") {
  SUBCASE("P^n agrees with the closed form") {
    for (std::int64_t n = 1; n <= 4; ++n)
      for (std::int64_t p = 0; p <= n - 1; ++p) {
        const auto series = euler_chow_series(projective_space_fan(n), p, 6);
        for (std::int64_t d = 0; d <= 6; ++d) CHECK(series.series.coefficient({d}) == chow::chow_euler(p, d, n));
        CHECK(series.series.terms().size() == 7);
      }
  }
  SUBCASE("P1 x P1 curves") {
    const auto series = euler_chow_series(load_fan(data("p1xp1.json")), 1, 4);
    for (std::int64_t a = 0; a <= 4; ++a)
      for (std::int64_t b = 0; a + b <= 4; ++b) CHECK(series.series.coefficient({a, b}) == (a + 1) * (b + 1));
    CHECK(series.series.terms().size() == 15);
  }
  SUBCASE("P1 x P1 points") {
    const auto series = euler_chow_series(load_fan(data("p1xp1.json")), 0, 5);
    for (std::int64_t d = 0; d <= 5; ++d) CHECK(series.series.coefficient({d}) == binomial(d + 3, 3));
    // chi(Sp^d(P^1 x P^1)) from the symmetric-power route.
    const auto sym = sym_powers(pow(atom_epoly(Atom::projective(1)), 2), 5);
    for (std::int64_t d = 0; d <= 5; ++d) CHECK(series.series.coefficient({d}) == euler_char(sym.coeffs[d]));
  }
  SUBCASE("Hirzebruch surface against partition counting") {
    const auto lattice = chow_lattice(load_fan(data("hirzebruch1.json")), 1);
    const auto series = euler_chow_series(load_fan(data("hirzebruch1.json")), 1, 6);
    for (std::int64_t a = 0; a <= 6; ++a)
      for (std::int64_t b = 0; a + b <= 6; ++b)
        CHECK(series.series.coefficient({a, b}) == count_decompositions(lattice.class_coords, {a, b}));
  }
  SUBCASE("terms are sorted by degree then class") {
    const auto series = euler_chow_series(load_fan(data("p1xp1.json")), 1, 2);
    const auto terms = series.sorted_terms();
    std::vector<std::vector<std::int64_t>> classes;
    for (const auto& t : terms) classes.push_back(t.class_coords);
    CHECK(classes == std::vector<std::vector<std::int64_t>>{{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}});
    CHECK(terms.front().chi == 1);
    for (const auto& t : terms) CHECK(t.chi > 0);
  }
  SUBCASE("explicit functional") {
    const auto weighted = euler_chow_series(load_fan(data("p1xp1.json")), 1, 4, std::vector<std::int64_t>{1, 2});
    CHECK(weighted.series.coefficient({2, 1}) == 6);
    CHECK(weighted.series.coefficient({1, 2}) == 0);  // degree 5, truncated
    CHECK_THROWS_AS(euler_chow_series(load_fan(data("p1xp1.json")), 1, 4, std::vector<std::int64_t>{1, 0}), DomainError);
    CHECK_THROWS_AS(euler_chow_series(load_fan(data("p1xp1.json")), 1, 4, std::vector<std::int64_t>{1}), DomainError);
    CHECK_THROWS_AS(euler_chow_series(load_fan(data("p1xp1.json")), 1, -1), DomainError);
  }
}
