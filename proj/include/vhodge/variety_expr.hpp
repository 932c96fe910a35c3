#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vhodge/epoly.hpp"

namespace vhodge {

class VarietyExpr;

namespace expr {

struct AtomNode {
  Atom atom;
};
struct Product {
  std::shared_ptr<const VarietyExpr> left, right;
};
struct Disjoint {
  std::shared_ptr<const VarietyExpr> left, right;
};
/// whole minus a closed part. Closedness is the caller's assertion.
struct Complement {
  std::shared_ptr<const VarietyExpr> whole, closed_part;
};
struct AffineBundle {
  std::shared_ptr<const VarietyExpr> base;
  std::int64_t fiber_dim;
};
struct ProjBundle {
  std::shared_ptr<const VarietyExpr> base;
  std::int64_t fiber_proj_dim;
};
struct Blowup {
  std::shared_ptr<const VarietyExpr> whole, center;
  std::int64_t codim;
};
struct SymPower {
  std::shared_ptr<const VarietyExpr> base;
  std::int64_t degree;
};
struct BBPiece {
  std::shared_ptr<const VarietyExpr> fixed_component;
  std::int64_t fiber_dim;
};
/// Bialynicki-Birula decomposition: fixed components F_j with affine
/// attracting fibres of dimension m_j.
struct BBDecomp {
  std::vector<BBPiece> pieces;
};

using Node = std::variant<AtomNode, Product, Disjoint, Complement, AffineBundle, ProjBundle, Blowup,
                          SymPower, BBDecomp>;

}  // namespace expr

/// Immutable expression tree describing a variety assembled by cut-and-paste.
/// Copies share structure.
class VarietyExpr {
 public:
  static VarietyExpr atom(const Atom& atom);
  static VarietyExpr product(const VarietyExpr& left, const VarietyExpr& right);
  static VarietyExpr disjoint(const VarietyExpr& left, const VarietyExpr& right);
  static VarietyExpr complement(const VarietyExpr& whole, const VarietyExpr& closed_part);
  static VarietyExpr affine_bundle(const VarietyExpr& base, std::int64_t fiber_dim);
  static VarietyExpr proj_bundle(const VarietyExpr& base, std::int64_t fiber_proj_dim);
  static VarietyExpr blowup(const VarietyExpr& whole, const VarietyExpr& center, std::int64_t codim);
  static VarietyExpr sym_power(const VarietyExpr& base, std::int64_t degree);
  static VarietyExpr bb_decomp(const std::vector<std::pair<VarietyExpr, std::int64_t>>& pieces);

  const expr::Node& node() const { return *node_; }

 private:
  explicit VarietyExpr(expr::Node node);
  std::shared_ptr<const expr::Node> node_;
};

// Builtins for worked examples.

/// Nodal plane cubic: a torus C* with the node glued back in.
VarietyExpr nodal_cubic();
/// Surface obtained from P^1 x C (C of genus g >= 1) by blowing up one point
/// on each of the two fixed curves and contracting their proper transforms.
VarietyExpr surface_s(std::int64_t genus);
/// Projective cone over V with the scaling action: attracting cell V x C
/// plus the vertex.
VarietyExpr cone(const VarietyExpr& base);

EPoly eval(const VarietyExpr& e);

/// Syntax error in the expression grammar, with a 0-based byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses the expression grammar:
///   atoms        pt  A(n)  T(n)  P(n)  G(k,n)  Curve(g)
///   constructors prod(x,y) disj(x,y) diff(x,y) affb(x,m) projb(x,r)
///                blowup(x,z,c) sym(x,d) bb((x1,m1),(x2,m2),...)
///   builtins     nodal_cubic  surfS(g)  cone(x)
/// Whitespace is ignored. Throws ParseError on malformed text and
/// DomainError on out-of-range parameters.
VarietyExpr parse(std::string_view text);

/// Canonical grammar text (builtins appear expanded).
std::string to_string(const VarietyExpr& e);

}  // namespace vhodge
