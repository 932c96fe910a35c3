#include "vhodge/cli.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vhodge/chow.hpp"
#include "vhodge/epoly.hpp"
#include "vhodge/series.hpp"
#include "vhodge/toric.hpp"
#include "vhodge/variety_expr.hpp"

namespace vhodge::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Text, Json, Csv };

const std::map<std::string, std::string>& synopses() {
  static const std::map<std::string, std::string> table = {
      {"epoly", "epoly <expr> [--poincare|--euler|--hodge P Q]"},
      {"poincare", "poincare <expr>"},
      {"betti", "betti <expr>"},
      {"chow-euler", "chow-euler --p P --d D --n N [--check-recursion]"},
      {"chow-dim", "chow-dim --p P --d D --n N"},
      {"chow-bound", "chow-bound --p P --d D --n N"},
      {"chow2", "chow2 --p P --n N [--check-constraints]"},
      {"sym", "sym <expr> --dmax D"},
      {"toric", "toric --fan FILE --p P --bound B [--degree-functional c1,c2,...]"},
      {"sweep", "sweep --p A[..B] --d A[..B] --n A[..B]"},
  };
  return table;
}

/// Thrown for argument combinations CLI11 cannot express; exits 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Big integers become JSON numbers when they fit in 64 bits and decimal
/// strings otherwise, so that re-parsing never loses precision.
Json json_integer(const Integer& value) {
  if (fits_int64(value)) return to_int64(value);
  return to_string(value);
}

Json terms_json(const EPoly& a) {
  Json terms = Json::array();
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it)
    terms.push_back({{"p", it->first.p}, {"q", it->first.q}, {"coeff", json_integer(it->second)}});
  return terms;
}

Json coeffs_json(const UniPoly& a) {
  Json coeffs = Json::array();
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it)
    coeffs.push_back({{"k", it->first}, {"coeff", json_integer(it->second)}});
  return coeffs;
}

void emit_json(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

IntRange parse_range(const std::string& text, const char* name) {
  IntRange range;
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      range.lo = range.hi = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const auto lo_text = text.substr(0, dots);
      const auto hi_text = text.substr(dots + 2);
      range.lo = std::stoll(lo_text, &used);
      if (used != lo_text.size()) throw std::invalid_argument(text);
      range.hi = std::stoll(hi_text, &used);
      if (used != hi_text.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw UsageError(std::string("--") + name + ": expected an integer or a range A..B, got '" + text + "'");
  }
  if (range.lo > range.hi) throw UsageError(std::string("--") + name + ": empty range '" + text + "'");
  return range;
}

class Runner {
 public:
  Runner(std::ostream& sink, std::ostream& err) : sink_(sink), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  void epoly_cmd();
  void poincare_cmd();
  void betti_cmd();
  void chow_euler_cmd();
  void chow_dim_cmd();
  void chow_bound_cmd();
  void chow2_cmd();
  void sym_cmd();
  void toric_cmd();
  void sweep_cmd();

  std::ostream& sink_;
  std::ostream& err_;
  // Output is buffered so that a failing command emits nothing on stdout.
  std::ostringstream out_;
  Format format_ = Format::Text;
  int status_ = kOk;

  // Shared option storage; each verb reads only its own.
  std::string expr_text_;
  bool want_poincare_ = false;
  bool want_euler_ = false;
  std::vector<std::int64_t> hodge_;
  std::int64_t p_ = 0, d_ = 0, n_ = 0;
  bool check_recursion_ = false;
  bool check_constraints_ = false;
  std::int64_t dmax_ = 0;
  std::string fan_path_;
  std::int64_t bound_ = 0;
  std::vector<std::int64_t> functional_;
  std::string p_range_, d_range_, n_range_;
};

int Runner::run(const std::vector<std::string>& args) {
  CLI::App app{"Virtual Hodge polynomials and Chow variety invariants", "vhodge"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  std::string format_name = "text";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();

  auto* epoly = app.add_subcommand("epoly", "Evaluate an expression to its E-polynomial");
  epoly->add_option("expr", expr_text_, "Variety expression")->required();
  auto* poincare_flag = epoly->add_flag("--poincare", want_poincare_, "Print the virtual Poincare polynomial");
  auto* euler_flag = epoly->add_flag("--euler", want_euler_, "Print the Euler characteristic");
  auto* hodge_opt = epoly->add_option("--hodge", hodge_, "Print the virtual Hodge number h^{p,q}")->expected(2);
  poincare_flag->excludes(euler_flag)->excludes(hodge_opt);
  euler_flag->excludes(hodge_opt);

  auto* poincare = app.add_subcommand("poincare", "Virtual Poincare polynomial of an expression");
  poincare->add_option("expr", expr_text_, "Variety expression")->required();

  auto* betti = app.add_subcommand("betti", "Virtual Betti numbers of an expression");
  betti->add_option("expr", expr_text_, "Variety expression")->required();

  const auto add_pdn = [this](CLI::App* cmd, bool with_d) {
    cmd->add_option("--p", p_, "Cycle dimension")->required();
    if (with_d) cmd->add_option("--d", d_, "Cycle degree")->required();
    cmd->add_option("--n", n_, "Ambient projective dimension")->required();
  };
  auto* chow_euler = app.add_subcommand("chow-euler", "Euler characteristic of C_{p,d}(P^n)");
  add_pdn(chow_euler, true);
  chow_euler->add_flag("--check-recursion", check_recursion_, "Cross-check against the recursion");
  auto* chow_dim = app.add_subcommand("chow-dim", "Dimension of C_{p,d}(P^n)");
  add_pdn(chow_dim, true);
  auto* chow_bound = app.add_subcommand("chow-bound", "Upper bound on irreducible components of C_{p,d}(P^n)");
  add_pdn(chow_bound, true);
  auto* chow2 = app.add_subcommand("chow2", "E-polynomial of C_{p,2}(P^n) by decomposition");
  add_pdn(chow2, false);
  chow2->add_flag("--check-constraints", check_constraints_, "Check the Hodge-number constraints");

  auto* sym = app.add_subcommand("sym", "E-polynomials of symmetric powers");
  sym->add_option("expr", expr_text_, "Variety expression")->required();
  sym->add_option("--dmax", dmax_, "Largest symmetric power")->required()->check(CLI::NonNegativeNumber);

  auto* toric = app.add_subcommand("toric", "Euler-Chow series of a smooth projective toric variety");
  toric->add_option("--fan", fan_path_, "Fan file (JSON)")->required();
  toric->add_option("--p", p_, "Cycle dimension")->required();
  toric->add_option("--bound", bound_, "Truncation degree")->required();
  toric->add_option("--degree-functional", functional_, "Degree functional coefficients")->delimiter(',');

  auto* sweep = app.add_subcommand("sweep", "Table of Chow variety invariants over index ranges");
  sweep->add_option("--p", p_range_, "p or range A..B")->required();
  sweep->add_option("--d", d_range_, "d or range A..B")->required();
  sweep->add_option("--n", n_range_, "n or range A..B")->required();

  const auto usage = [&](const std::string& message) {
    err_ << "error: " << message << '\n';
    const auto verb = std::ranges::find_if(args, [](const std::string& a) { return synopses().contains(a); });
    if (verb != args.end()) {
      err_ << "usage: vhodge " << synopses().at(*verb) << " [--format text|json|csv]\n";
    } else {
      err_ << "usage: vhodge [--format text|json|csv] <verb> ...\n";
      for (const auto& [name, line] : synopses()) err_ << "  " << line << '\n';
    }
    return kUsageError;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    sink_ << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    sink_ << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return usage(e.what());
  }
  format_ = format_name == "json" ? Format::Json : format_name == "csv" ? Format::Csv : Format::Text;

  try {
    const std::string& name = app.get_subcommands().front()->get_name();
    if (name == "epoly") epoly_cmd();
    else if (name == "poincare") poincare_cmd();
    else if (name == "betti") betti_cmd();
    else if (name == "chow-euler") chow_euler_cmd();
    else if (name == "chow-dim") chow_dim_cmd();
    else if (name == "chow-bound") chow_bound_cmd();
    else if (name == "chow2") chow2_cmd();
    else if (name == "sym") sym_cmd();
    else if (name == "toric") toric_cmd();
    else sweep_cmd();
  } catch (const UsageError& e) {
    return usage(e.what());
  } catch (const ParseError& e) {
    return usage(std::string("cannot parse expression ") + e.what());
  } catch (const std::exception& e) {
    err_ << "error: " << e.what() << '\n';
    return kDomainError;
  }
  sink_ << out_.str();
  return status_;
}

void Runner::epoly_cmd() {
  const auto e = parse(expr_text_);
  const EPoly value = eval(e);
  const std::string canonical = to_string(e);

  if (want_poincare_) {
    const UniPoly pt = poincare(value);
    if (format_ == Format::Json) {
      emit_json(out_, {{"expr", canonical}, {"poincare", to_string(pt)}, {"coeffs", coeffs_json(pt)}});
    } else if (format_ == Format::Csv) {
      out_ << "k,coeff\n";
      for (auto it = pt.terms().rbegin(); it != pt.terms().rend(); ++it)
        out_ << it->first << ',' << it->second.get_str() << '\n';
    } else {
      out_ << to_string(pt) << '\n';
    }
  } else if (want_euler_) {
    const Integer chi = euler_char(value);
    if (format_ == Format::Json) {
      emit_json(out_, {{"expr", canonical}, {"euler", json_integer(chi)}});
    } else if (format_ == Format::Csv) {
      out_ << "euler\n" << chi.get_str() << '\n';
    } else {
      out_ << chi.get_str() << '\n';
    }
  } else if (!hodge_.empty()) {
    const Integer h = coefficient(value, hodge_[0], hodge_[1]);
    if (format_ == Format::Json) {
      emit_json(out_, {{"expr", canonical}, {"p", hodge_[0]}, {"q", hodge_[1]}, {"hodge", json_integer(h)}});
    } else if (format_ == Format::Csv) {
      out_ << "p,q,coeff\n" << hodge_[0] << ',' << hodge_[1] << ',' << h.get_str() << '\n';
    } else {
      out_ << h.get_str() << '\n';
    }
  } else {
    if (format_ == Format::Json) {
      emit_json(out_, {{"expr", canonical}, {"epoly", to_string(value)}, {"terms", terms_json(value)}});
    } else if (format_ == Format::Csv) {
      out_ << "p,q,coeff\n";
      for (auto it = value.terms().rbegin(); it != value.terms().rend(); ++it)
        out_ << it->first.p << ',' << it->first.q << ',' << it->second.get_str() << '\n';
    } else {
      out_ << to_string(value) << '\n';
    }
  }
}

void Runner::poincare_cmd() {
  want_poincare_ = true;
  epoly_cmd();
}

void Runner::betti_cmd() {
  const auto e = parse(expr_text_);
  const UniPoly pt = poincare(eval(e));
  const std::int64_t top = std::max<std::int64_t>(pt.degree(), 0);
  if (format_ == Format::Json) {
    Json numbers = Json::array();
    for (std::int64_t k = 0; k <= top; ++k) numbers.push_back(json_integer(pt.coefficient(k)));
    emit_json(out_, {{"expr", to_string(e)}, {"betti", numbers}});
  } else if (format_ == Format::Csv) {
    out_ << "k,betti\n";
    for (std::int64_t k = 0; k <= top; ++k) out_ << k << ',' << pt.coefficient(k).get_str() << '\n';
  } else {
    for (std::int64_t k = 0; k <= top; ++k) out_ << "b" << k << " = " << pt.coefficient(k).get_str() << '\n';
  }
}

void Runner::chow_euler_cmd() {
  const Integer chi = chow::chow_euler(p_, d_, n_);
  std::optional<Integer> rec;
  if (check_recursion_) rec = chow::chow_euler_rec(p_, d_, n_);
  const bool agree = !rec || *rec == chi;

  if (format_ == Format::Json) {
    Json doc = {{"p", p_}, {"d", d_}, {"n", n_}, {"chi", json_integer(chi)}};
    if (rec) doc["recursion"] = {{"chi", json_integer(*rec)}, {"agree", agree}};
    emit_json(out_, doc);
  } else if (format_ == Format::Csv) {
    out_ << "p,d,n,chi" << (rec ? ",chi_recursion" : "") << '\n';
    out_ << p_ << ',' << d_ << ',' << n_ << ',' << chi.get_str();
    if (rec) out_ << ',' << rec->get_str();
    out_ << '\n';
  } else {
    out_ << chi.get_str() << '\n';
    if (rec) {
      if (agree)
        out_ << "recursion: agree\n";
      else
        out_ << "recursion: DISAGREE (closed form " << chi.get_str() << ", recursion " << rec->get_str() << ")\n";
    }
  }
  if (!agree) {
    err_ << "error: closed form " << chi.get_str() << " disagrees with recursion " << rec->get_str() << '\n';
    status_ = kDomainError;
  }
}

void Runner::chow_dim_cmd() {
  const Integer dim = chow::chow_dim(p_, d_, n_);
  if (format_ == Format::Json) {
    emit_json(out_, {{"p", p_}, {"d", d_}, {"n", n_}, {"dim", json_integer(dim)}});
  } else if (format_ == Format::Csv) {
    out_ << "p,d,n,dim\n" << p_ << ',' << d_ << ',' << n_ << ',' << dim.get_str() << '\n';
  } else {
    out_ << dim.get_str() << '\n';
  }
}

void Runner::chow_bound_cmd() {
  const Integer bound = chow::kollar_bound(p_, d_, n_);
  const Integer exponent = chow::kollar_exponent(p_, d_);
  if (format_ == Format::Json) {
    emit_json(out_, {{"p", p_}, {"d", d_}, {"n", n_}, {"exponent", json_integer(exponent)},
                     {"kollar_bound", json_integer(bound)}});
  } else if (format_ == Format::Csv) {
    out_ << "p,d,n,exponent,kollar_bound\n"
         << p_ << ',' << d_ << ',' << n_ << ',' << exponent.get_str() << ',' << bound.get_str() << '\n';
  } else {
    out_ << bound.get_str() << '\n';
  }
}

void Runner::chow2_cmd() {
  const auto e = chow::chow2_expr(p_, n_);
  const EPoly value = eval(e);
  const UniPoly pt = poincare(value);
  const Integer chi = euler_char(value);

  std::optional<chow::ConstraintReport> report;
  bool diagonal = true;
  if (check_constraints_) {
    report = chow::check_chow_constraints(value, p_, 2, n_);
    diagonal = chow::off_diagonal_vanishes(value);
  }

  if (format_ == Format::Json) {
    Json doc = {{"p", p_}, {"n", n_}, {"expr", to_string(e)}, {"epoly", to_string(value)},
                {"poincare", to_string(pt)}, {"euler", json_integer(chi)}, {"terms", terms_json(value)}};
    if (report) {
      Json checks = Json::array();
      for (const auto& r : report->results)
        checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      checks.push_back({{"name", "off_diagonal_hodge_vanish"}, {"passed", diagonal}, {"detail", ""}});
      doc["constraints"] = checks;
    }
    emit_json(out_, doc);
  } else if (format_ == Format::Csv) {
    out_ << "p,q,coeff\n";
    for (auto it = value.terms().rbegin(); it != value.terms().rend(); ++it)
      out_ << it->first.p << ',' << it->first.q << ',' << it->second.get_str() << '\n';
  } else {
    out_ << "expr: " << to_string(e) << '\n'
         << "epoly: " << to_string(value) << '\n'
         << "poincare: " << to_string(pt) << '\n'
         << "euler: " << chi.get_str() << '\n';
    if (report) {
      for (const auto& r : report->results)
        out_ << r.name << ": " << (r.passed ? "pass" : "FAIL") << (r.detail.empty() ? "" : " (" + r.detail + ")")
             << '\n';
      out_ << "off_diagonal_hodge_vanish: " << (diagonal ? "pass" : "FAIL") << '\n';
    }
  }
  if (report && !(report->all_passed() && diagonal)) {
    err_ << "error: constraint check failed for C_{" << p_ << ",2}(P^" << n_ << ")\n";
    status_ = kDomainError;
  }
}

void Runner::sym_cmd() {
  const auto e = parse(expr_text_);
  const SymSeries series = sym_powers(eval(e), dmax_);
  if (format_ == Format::Json) {
    Json entries = Json::array();
    for (std::size_t d = 0; d < series.coeffs.size(); ++d)
      entries.push_back({{"d", d}, {"epoly", to_string(series.coeffs[d])}, {"terms", terms_json(series.coeffs[d])}});
    emit_json(out_, {{"expr", to_string(e)}, {"dmax", dmax_}, {"entries", entries}});
  } else if (format_ == Format::Csv) {
    out_ << "d,p,q,coeff\n";
    for (std::size_t d = 0; d < series.coeffs.size(); ++d) {
      const auto& terms = series.coeffs[d].terms();
      for (auto it = terms.rbegin(); it != terms.rend(); ++it)
        out_ << d << ',' << it->first.p << ',' << it->first.q << ',' << it->second.get_str() << '\n';
    }
  } else {
    for (std::size_t d = 0; d < series.coeffs.size(); ++d) out_ << "d=" << d << ": " << to_string(series.coeffs[d]) << '\n';
  }
}

void Runner::toric_cmd() {
  const auto fan = toric::load_fan(fan_path_);
  std::optional<std::vector<std::int64_t>> functional;
  if (!functional_.empty()) functional = functional_;
  const auto series = toric::euler_chow_series(fan, p_, bound_, functional);
  const auto terms = series.sorted_terms();

  if (format_ == Format::Json) {
    Json list = Json::array();
    for (const auto& t : terms) list.push_back({{"class", t.class_coords}, {"chi", json_integer(t.chi)}});
    emit_json(out_, list);
  } else if (format_ == Format::Csv) {
    for (std::size_t i = 0; i < series.basis_rank; ++i) out_ << 'c' << i << ',';
    out_ << "chi\n";
    for (const auto& t : terms) {
      for (auto c : t.class_coords) out_ << c << ',';
      out_ << t.chi.get_str() << '\n';
    }
  } else {
    for (const auto& t : terms) {
      out_ << '(';
      for (std::size_t i = 0; i < t.class_coords.size(); ++i) out_ << (i ? "," : "") << t.class_coords[i];
      out_ << ") " << t.chi.get_str() << '\n';
    }
  }
}

void Runner::sweep_cmd() {
  const IntRange ps = parse_range(p_range_, "p");
  const IntRange ds = parse_range(d_range_, "d");
  const IntRange ns = parse_range(n_range_, "n");
  if (ps.lo < 0) throw UsageError("--p must be nonnegative");
  if (ds.lo < 1) throw UsageError("--d must be at least 1");
  if (ps.hi > ns.lo) throw UsageError("every p in the range must satisfy p <= n");

  struct Row {
    std::int64_t p, d, n;
    Integer chi, dim, bound;
    std::optional<bool> constraints_ok;
  };
  std::vector<Row> rows;
  for (auto p = ps.lo; p <= ps.hi; ++p)
    for (auto d = ds.lo; d <= ds.hi; ++d)
      for (auto n = ns.lo; n <= ns.hi; ++n) {
        Row row{p, d, n, chow::chow_euler(p, d, n), chow::chow_dim(p, d, n), chow::kollar_bound(p, d, n), {}};
        if (d <= 2) {
          EPoly e = 1;
          if (p < n) e = d == 1 ? atom_epoly(Atom::grassmannian(p + 1, n + 1)) : eval(chow::chow2_expr(p, n));
          row.constraints_ok = chow::check_chow_constraints(e, p, d, n).all_passed() && chow::off_diagonal_vanishes(e);
        }
        rows.push_back(std::move(row));
      }

  if (format_ == Format::Json) {
    Json list = Json::array();
    for (const auto& r : rows) {
      Json item = {{"p", r.p}, {"d", r.d}, {"n", r.n}, {"chi", json_integer(r.chi)}, {"dim", json_integer(r.dim)},
                   {"kollar_bound", json_integer(r.bound)}};
      item["constraints_ok"] = r.constraints_ok ? Json(*r.constraints_ok) : Json(nullptr);
      list.push_back(item);
    }
    emit_json(out_, list);
  } else if (format_ == Format::Csv) {
    out_ << "p,d,n,chi,dim,kollar_bound\n";
    for (const auto& r : rows)
      out_ << r.p << ',' << r.d << ',' << r.n << ',' << r.chi.get_str() << ',' << r.dim.get_str() << ','
           << r.bound.get_str() << '\n';
  } else {
    out_ << "p d n chi dim kollar_bound constraints_ok\n";
    for (const auto& r : rows)
      out_ << r.p << ' ' << r.d << ' ' << r.n << ' ' << r.chi.get_str() << ' ' << r.dim.get_str() << ' '
           << r.bound.get_str() << ' ' << (r.constraints_ok ? (*r.constraints_ok ? "yes" : "no") : "n/a") << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Runner(out, err).run(args);
}

}  // namespace vhodge::cli
