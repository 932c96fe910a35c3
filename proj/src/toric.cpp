#include "vhodge/toric.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace vhodge::toric {

namespace {

using Kind = FanError::Kind;

bool is_subset(const Cone& small, const Cone& big) { return std::ranges::includes(big, small); }

IntMatrix ray_matrix(const Fan& fan, const Cone& cone) {
  IntMatrix m(cone.size(), static_cast<std::size_t>(fan.dim));
  for (std::size_t r = 0; r < cone.size(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = static_cast<long>(fan.rays[cone[r]][c]);
  return m;
}

// Cones of a given size among faces of the maximal cones (every subset of a
// simplicial cone is a face).
std::vector<Cone> faces_of_size(const Fan& fan, std::size_t size) {
  std::set<Cone> found;
  for (const auto& cone : fan.max_cones) {
    if (cone.size() < size) continue;
    std::vector<bool> pick(cone.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      Cone face;
      for (std::size_t i = 0; i < cone.size(); ++i)
        if (pick[i]) face.push_back(cone[i]);
      found.insert(std::move(face));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return {found.begin(), found.end()};
}

// Row-style Hermite normal form by unimodular row operations; positive
// pivots, entries above each pivot reduced into [0, pivot).
void hermite_rows(IntMatrix& m) {
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = row; i < m.rows(); ++i)
        if (m(i, col) != 0 && (!best || abs(m(i, col)) < abs(m(*best, col)))) best = i;
      if (!best) break;
      m.swap_rows(row, *best);
      bool clean = true;
      for (std::size_t i = row + 1; i < m.rows(); ++i) {
        if (m(i, col) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), m(i, col).get_mpz_t(), m(row, col).get_mpz_t());
        m.add_row_multiple(i, row, -q);
        if (m(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (m(row, col) == 0) continue;
    if (m(row, col) < 0) m.negate_row(row);
    for (std::size_t i = 0; i < row; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, col).get_mpz_t(), m(row, col).get_mpz_t());
      m.add_row_multiple(i, row, -q);
    }
    ++row;
  }
}

}  // namespace

void validate(const Fan& fan) {
  if (fan.dim <= 0) throw FanError(Kind::Malformed, "fan dimension must be positive");
  const auto n = static_cast<std::size_t>(fan.dim);

  std::set<std::vector<std::int64_t>> seen;
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    const auto& ray = fan.rays[i];
    if (ray.size() != n) throw FanError(Kind::Malformed, "ray " + std::to_string(i) + " has wrong length");
    std::int64_t g = 0;
    for (auto x : ray) g = std::gcd(g, x);
    if (g == 0) throw FanError(Kind::Malformed, "ray " + std::to_string(i) + " is zero");
    if (g != 1) throw FanError(Kind::NonPrimitive, "ray " + std::to_string(i) + " is not primitive");
    if (!seen.insert(ray).second) throw FanError(Kind::DuplicateRay, "ray " + std::to_string(i) + " is repeated");
  }

  if (fan.max_cones.empty()) throw FanError(Kind::Malformed, "fan has no cones");
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const auto& cone = fan.max_cones[c];
    const auto label = "cone " + std::to_string(c);
    if (cone.empty() || cone.size() > n) throw FanError(Kind::Malformed, label + " has an invalid number of rays");
    if (!std::ranges::is_sorted(cone) || std::ranges::adjacent_find(cone) != cone.end())
      throw FanError(Kind::Malformed, label + " repeats a ray index");
    if (cone.back() >= fan.rays.size()) throw FanError(Kind::Malformed, label + " has an out-of-range ray index");
    const SmithForm snf = smith_normal_form(ray_matrix(fan, cone));
    if (snf.rank != cone.size()) throw FanError(Kind::NonSmooth, label + " has linearly dependent rays");
    for (const auto& f : snf.invariant_factors())
      if (f != 1) throw FanError(Kind::NonSmooth, label + " is not part of a lattice basis");
  }
  for (std::size_t a = 0; a < fan.max_cones.size(); ++a)
    for (std::size_t b = 0; b < fan.max_cones.size(); ++b)
      if (a != b && is_subset(fan.max_cones[a], fan.max_cones[b]))
        throw FanError(Kind::Malformed, "cone " + std::to_string(a) + " is not maximal");

  for (const auto& facet : faces_of_size(fan, n - 1)) {
    const auto sharing = std::ranges::count_if(fan.max_cones, [&](const Cone& c) { return is_subset(facet, c); });
    if (sharing != 2) {
      std::ostringstream msg;
      msg << "facet {";
      for (std::size_t i = 0; i < facet.size(); ++i) msg << (i ? "," : "") << facet[i];
      msg << "} lies in " << sharing << " maximal cones, expected 2";
      throw FanError(Kind::DanglingFacet, msg.str());
    }
  }
}

Fan parse_fan(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FanError(Kind::Malformed, std::string("fan file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FanError(Kind::Malformed, "fan document must be an object");
  for (const auto& [key, value] : doc.items())
    if (key != "dim" && key != "rays" && key != "max_cones") throw FanError(Kind::Malformed, "unknown field '" + key + "'");
  for (const char* key : {"dim", "rays", "max_cones"})
    if (!doc.contains(key)) throw FanError(Kind::Malformed, std::string("missing field '") + key + "'");

  Fan fan;
  try {
    if (!doc["dim"].is_number_integer()) throw FanError(Kind::Malformed, "'dim' must be an integer");
    fan.dim = doc["dim"].get<std::int64_t>();
    for (const auto& ray : doc.at("rays")) {
      std::vector<std::int64_t> v;
      for (const auto& x : ray) {
        if (!x.is_number_integer()) throw FanError(Kind::Malformed, "ray entries must be integers");
        v.push_back(x.get<std::int64_t>());
      }
      fan.rays.push_back(std::move(v));
    }
    for (const auto& cone : doc.at("max_cones")) {
      Cone c;
      for (const auto& x : cone) {
        if (!x.is_number_unsigned()) throw FanError(Kind::Malformed, "cone indices must be nonnegative integers");
        c.push_back(x.get<std::size_t>());
      }
      std::ranges::sort(c);
      fan.max_cones.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FanError(Kind::Malformed, std::string("malformed fan document: ") + e.what());
  }
  validate(fan);
  return fan;
}

Fan load_fan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FanError(Kind::Malformed, "cannot open fan file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_fan(buffer.str());
}

std::vector<Cone> orbit_cones(const Fan& fan, std::int64_t p) {
  if (p < 0 || p > fan.dim) throw DomainError("orbit_cones requires 0 <= p <= dim");
  return faces_of_size(fan, static_cast<std::size_t>(fan.dim - p));
}

ChowLattice chow_lattice(const Fan& fan, std::int64_t p) {
  if (p < 0 || p > fan.dim - 1) throw DomainError("chow_lattice requires 0 <= p <= dim - 1");
  ChowLattice lattice;
  lattice.p = p;
  lattice.generators = orbit_cones(fan, p);
  const auto& generators = lattice.generators;

  // Relations: for tau of dimension n-p-1 and u in the lattice of functionals
  // vanishing on tau, sum over sigma > tau of <u, nu_sigma> [V(sigma)] = 0,
  // nu_sigma being the ray of sigma outside tau.
  std::vector<std::vector<Integer>> rows;
  for (const auto& tau : orbit_cones(fan, p + 1)) {
    for (const auto& u : integer_kernel(ray_matrix(fan, tau))) {
      std::vector<Integer> row(generators.size());
      for (std::size_t g = 0; g < generators.size(); ++g) {
        const auto& sigma = generators[g];
        if (!is_subset(tau, sigma)) continue;
        std::size_t extra = 0;
        for (auto r : sigma)
          if (!std::ranges::binary_search(tau, r)) extra = r;
        for (std::size_t k = 0; k < u.size(); ++k) row[g] += u[k] * static_cast<long>(fan.rays[extra][k]);
      }
      rows.push_back(std::move(row));
    }
  }
  lattice.relations = IntMatrix(rows.size(), generators.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t g = 0; g < generators.size(); ++g) lattice.relations(r, g) = rows[r][g];

  // Z^G / rowspace(R): with L R V = D a row vector x has coordinates x V, the
  // relations span the first `rank` of them, and the rest are free.
  const SmithForm snf = smith_normal_form(lattice.relations);
  for (const auto& f : snf.invariant_factors())
    if (f != 1) throw DomainError("Chow group has torsion (invariant factor " + f.get_str() + "); fan unsupported");
  lattice.rank = generators.size() - snf.rank;
  if (lattice.rank == 0 && !generators.empty()) throw DomainError("Chow group has rank 0; fan is not complete");

  IntMatrix coords(lattice.rank, generators.size());
  for (std::size_t i = 0; i < lattice.rank; ++i)
    for (std::size_t g = 0; g < generators.size(); ++g) coords(i, g) = snf.right(g, snf.rank + i);
  hermite_rows(coords);

  lattice.class_coords.assign(generators.size(), std::vector<std::int64_t>(lattice.rank));
  for (std::size_t g = 0; g < generators.size(); ++g)
    for (std::size_t i = 0; i < lattice.rank; ++i) lattice.class_coords[g][i] = to_int64(coords(i, g));
  return lattice;
}

std::vector<SeriesTerm> EulerChowSeries::sorted_terms() const {
  std::vector<SeriesTerm> terms;
  for (const auto& [exponents, c] : series.terms()) terms.push_back({exponents, c});
  std::ranges::stable_sort(terms, [this](const SeriesTerm& a, const SeriesTerm& b) {
    const auto da = series.degree(a.class_coords);
    const auto db = series.degree(b.class_coords);
    if (da != db) return da < db;
    return a.class_coords < b.class_coords;
  });
  return terms;
}

EulerChowSeries euler_chow_series(const Fan& fan, std::int64_t p, std::int64_t bound,
                                  std::optional<std::vector<std::int64_t>> functional) {
  if (bound < 0) throw DomainError("truncation bound must be nonnegative");
  const ChowLattice lattice = chow_lattice(fan, p);
  std::vector<std::int64_t> phi = functional.value_or(std::vector<std::int64_t>(lattice.rank, 1));
  if (phi.size() != lattice.rank)
    throw DomainError("degree functional has " + std::to_string(phi.size()) + " entries, class lattice has rank " +
                      std::to_string(lattice.rank));

  std::vector<GeometricFactor> factors;
  for (const auto& cls : lattice.class_coords) {
    std::int64_t degree = 0;
    for (std::size_t i = 0; i < cls.size(); ++i) degree += phi[i] * cls[i];
    if (degree <= 0)
      throw DomainError("degree functional is not positive on every invariant class; pass --degree-functional");
    factors.push_back({cls, 1});
  }
  const WeightedBound weighted{phi, bound};
  return EulerChowSeries{p, lattice.rank, phi, product_expand(factors, lattice.rank, weighted)};
}

Fan projective_space_fan(std::int64_t n) {
  if (n < 1) throw DomainError("projective_space_fan requires n >= 1");
  Fan fan;
  fan.dim = n;
  const auto size = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < size; ++i) {
    std::vector<std::int64_t> e(size, 0);
    e[i] = 1;
    fan.rays.push_back(std::move(e));
  }
  fan.rays.emplace_back(size, -1);
  for (std::size_t skip = 0; skip <= size; ++skip) {
    Cone cone;
    for (std::size_t r = 0; r <= size; ++r)
      if (r != skip) cone.push_back(r);
    fan.max_cones.push_back(std::move(cone));
  }
  return fan;
}

}  // namespace vhodge::toric
