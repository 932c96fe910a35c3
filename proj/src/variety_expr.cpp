#include "vhodge/variety_expr.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "vhodge/series.hpp"

namespace vhodge {

namespace {

std::shared_ptr<const VarietyExpr> share(const VarietyExpr& e) { return std::make_shared<const VarietyExpr>(e); }

void require(bool ok, const char* message) {
  if (!ok) throw DomainError(message);
}

}  // namespace

VarietyExpr::VarietyExpr(expr::Node node) : node_(std::make_shared<const expr::Node>(std::move(node))) {}

VarietyExpr VarietyExpr::atom(const Atom& atom) {
  validate(atom);
  return VarietyExpr(expr::AtomNode{atom});
}

VarietyExpr VarietyExpr::product(const VarietyExpr& left, const VarietyExpr& right) {
  return VarietyExpr(expr::Product{share(left), share(right)});
}

VarietyExpr VarietyExpr::disjoint(const VarietyExpr& left, const VarietyExpr& right) {
  return VarietyExpr(expr::Disjoint{share(left), share(right)});
}

VarietyExpr VarietyExpr::complement(const VarietyExpr& whole, const VarietyExpr& closed_part) {
  return VarietyExpr(expr::Complement{share(whole), share(closed_part)});
}

VarietyExpr VarietyExpr::affine_bundle(const VarietyExpr& base, std::int64_t fiber_dim) {
  require(fiber_dim >= 0, "affine bundle fibre dimension must be nonnegative");
  return VarietyExpr(expr::AffineBundle{share(base), fiber_dim});
}

VarietyExpr VarietyExpr::proj_bundle(const VarietyExpr& base, std::int64_t fiber_proj_dim) {
  require(fiber_proj_dim >= 0, "projective bundle fibre dimension must be nonnegative");
  return VarietyExpr(expr::ProjBundle{share(base), fiber_proj_dim});
}

VarietyExpr VarietyExpr::blowup(const VarietyExpr& whole, const VarietyExpr& center, std::int64_t codim) {
  require(codim >= 1, "blowup codimension must be at least 1");
  return VarietyExpr(expr::Blowup{share(whole), share(center), codim});
}

VarietyExpr VarietyExpr::sym_power(const VarietyExpr& base, std::int64_t degree) {
  require(degree >= 0, "symmetric power degree must be nonnegative");
  return VarietyExpr(expr::SymPower{share(base), degree});
}

VarietyExpr VarietyExpr::bb_decomp(const std::vector<std::pair<VarietyExpr, std::int64_t>>& pieces) {
  require(!pieces.empty(), "bb decomposition needs at least one fixed component");
  expr::BBDecomp node;
  for (const auto& [component, fiber_dim] : pieces) {
    require(fiber_dim >= 0, "bb fibre dimension must be nonnegative");
    node.pieces.push_back({share(component), fiber_dim});
  }
  return VarietyExpr(std::move(node));
}

// Builtins ------------------------------------------------------------

VarietyExpr nodal_cubic() {
  return VarietyExpr::disjoint(VarietyExpr::atom(Atom::torus(1)), VarietyExpr::atom(Atom::point()));
}

VarietyExpr surface_s(std::int64_t genus) {
  require(genus >= 1, "surfS(g) requires g >= 1");
  const auto pt = VarietyExpr::atom(Atom::point());
  const auto curve = VarietyExpr::atom(Atom::curve(genus));
  const auto two_points = VarietyExpr::disjoint(pt, pt);
  // Blow up one point on each fixed curve of P^1 x C.
  const auto blown_up = VarietyExpr::blowup(VarietyExpr::product(VarietyExpr::atom(Atom::projective(1)), curve),
                                            two_points, 2);
  // Contract both proper transforms (each isomorphic to C) to points.
  const auto open_part = VarietyExpr::complement(VarietyExpr::complement(blown_up, curve), curve);
  return VarietyExpr::disjoint(VarietyExpr::disjoint(open_part, pt), pt);
}

VarietyExpr cone(const VarietyExpr& base) {
  return VarietyExpr::bb_decomp({{base, 1}, {VarietyExpr::atom(Atom::point()), 0}});
}

// Evaluation ----------------------------------------------------------

EPoly eval(const VarietyExpr& e) {
  return std::visit(
      [](const auto& n) -> EPoly {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, expr::AtomNode>) {
          return atom_epoly(n.atom);
        } else if constexpr (std::is_same_v<T, expr::Product>) {
          return eval(*n.left) * eval(*n.right);
        } else if constexpr (std::is_same_v<T, expr::Disjoint>) {
          return eval(*n.left) + eval(*n.right);
        } else if constexpr (std::is_same_v<T, expr::Complement>) {
          return eval(*n.whole) - eval(*n.closed_part);
        } else if constexpr (std::is_same_v<T, expr::AffineBundle>) {
          return eval(*n.base) * EPoly::uv_power(n.fiber_dim);
        } else if constexpr (std::is_same_v<T, expr::ProjBundle>) {
          return eval(*n.base) * atom_epoly(Atom::projective(n.fiber_proj_dim));
        } else if constexpr (std::is_same_v<T, expr::Blowup>) {
          // The center is replaced by a P^{c-1}-bundle over it.
          return eval(*n.whole) + eval(*n.center) * (atom_epoly(Atom::projective(n.codim - 1)) - EPoly(1));
        } else if constexpr (std::is_same_v<T, expr::SymPower>) {
          return sym_powers(eval(*n.base), n.degree).coeffs.back();
        } else {
          EPoly total;
          for (const auto& piece : n.pieces) total += eval(*piece.fixed_component) * EPoly::uv_power(piece.fiber_dim);
          return total;
        }
      },
      e.node());
}

// Parsing -------------------------------------------------------------

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error("at offset " + std::to_string(position) + ": " + message), position_(position) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  VarietyExpr parse_all() {
    auto e = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier() {
    skip_space();
    const auto start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected an identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::int64_t integer() {
    skip_space();
    const auto start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::int64_t value = 0;
    const auto* first = text_.data() + start;
    const auto* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      pos_ = start;
      fail("expected an integer");
    }
    return value;
  }

  VarietyExpr parse_expr() {
    skip_space();
    const auto start = pos_;
    const std::string name = identifier();

    if (name == "pt") return VarietyExpr::atom(Atom::point());
    if (name == "nodal_cubic") return nodal_cubic();

    expect('(');
    VarietyExpr result = parse_call(name, start);
    expect(')');
    return result;
  }

  VarietyExpr parse_call(const std::string& name, std::size_t start) {
    if (name == "A") return VarietyExpr::atom(Atom::affine(integer()));
    if (name == "T") return VarietyExpr::atom(Atom::torus(integer()));
    if (name == "P") return VarietyExpr::atom(Atom::projective(integer()));
    if (name == "Curve") return VarietyExpr::atom(Atom::curve(integer()));
    if (name == "G") {
      const auto k = integer();
      expect(',');
      return VarietyExpr::atom(Atom::grassmannian(k, integer()));
    }
    if (name == "surfS") return surface_s(integer());
    if (name == "cone") return cone(parse_expr());
    if (name == "prod" || name == "disj" || name == "diff") {
      auto x = parse_expr();
      expect(',');
      auto y = parse_expr();
      if (name == "prod") return VarietyExpr::product(x, y);
      if (name == "disj") return VarietyExpr::disjoint(x, y);
      return VarietyExpr::complement(x, y);
    }
    if (name == "affb" || name == "projb" || name == "sym") {
      auto x = parse_expr();
      expect(',');
      const auto k = integer();
      if (name == "affb") return VarietyExpr::affine_bundle(x, k);
      if (name == "projb") return VarietyExpr::proj_bundle(x, k);
      return VarietyExpr::sym_power(x, k);
    }
    if (name == "blowup") {
      auto x = parse_expr();
      expect(',');
      auto z = parse_expr();
      expect(',');
      return VarietyExpr::blowup(x, z, integer());
    }
    if (name == "bb") {
      std::vector<std::pair<VarietyExpr, std::int64_t>> pieces;
      for (;;) {
        expect('(');
        auto component = parse_expr();
        expect(',');
        const auto m = integer();
        expect(')');
        pieces.emplace_back(component, m);
        if (!peek(',')) break;
        ++pos_;
      }
      return VarietyExpr::bb_decomp(pieces);
    }
    pos_ = start;
    fail("unknown name '" + name + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print(std::ostringstream& out, const VarietyExpr& e) {
  std::visit(
      [&out](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, expr::AtomNode>) {
          const auto& a = n.atom;
          switch (a.kind) {
            case AtomKind::Point: out << "pt"; break;
            case AtomKind::Affine: out << "A(" << a.first << ')'; break;
            case AtomKind::Torus: out << "T(" << a.first << ')'; break;
            case AtomKind::Projective: out << "P(" << a.first << ')'; break;
            case AtomKind::Grassmannian: out << "G(" << a.first << ',' << a.second << ')'; break;
            case AtomKind::Curve: out << "Curve(" << a.first << ')'; break;
          }
        } else if constexpr (std::is_same_v<T, expr::Product> || std::is_same_v<T, expr::Disjoint>) {
          out << (std::is_same_v<T, expr::Product> ? "prod(" : "disj(");
          print(out, *n.left);
          out << ',';
          print(out, *n.right);
          out << ')';
        } else if constexpr (std::is_same_v<T, expr::Complement>) {
          out << "diff(";
          print(out, *n.whole);
          out << ',';
          print(out, *n.closed_part);
          out << ')';
        } else if constexpr (std::is_same_v<T, expr::AffineBundle>) {
          out << "affb(";
          print(out, *n.base);
          out << ',' << n.fiber_dim << ')';
        } else if constexpr (std::is_same_v<T, expr::ProjBundle>) {
          out << "projb(";
          print(out, *n.base);
          out << ',' << n.fiber_proj_dim << ')';
        } else if constexpr (std::is_same_v<T, expr::Blowup>) {
          out << "blowup(";
          print(out, *n.whole);
          out << ',';
          print(out, *n.center);
          out << ',' << n.codim << ')';
        } else if constexpr (std::is_same_v<T, expr::SymPower>) {
          out << "sym(";
          print(out, *n.base);
          out << ',' << n.degree << ')';
        } else {
          out << "bb(";
          bool first = true;
          for (const auto& piece : n.pieces) {
            if (!first) out << ',';
            out << '(';
            print(out, *piece.fixed_component);
            out << ',' << piece.fiber_dim << ')';
            first = false;
          }
          out << ')';
        }
      },
      e.node());
}

}  // namespace

VarietyExpr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string to_string(const VarietyExpr& e) {
  std::ostringstream out;
  print(out, e);
  return out.str();
}

}  // namespace vhodge
