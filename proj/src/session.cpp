#include "supergeom/session.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "supergeom/distribution.hpp"
#include "supergeom/liealgebra.hpp"
#include "supergeom/selftest.hpp"

namespace sg {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  std::size_t i = 1;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
  while (i < s.size() && s[i] == '\'') ++i;
  return i == s.size();
}

std::vector<std::string> name_list(std::string_view inner, const LineCursor& cur) {
  std::vector<std::string> out;
  for (auto piece : split_top_level(inner)) {
    if (!is_identifier(piece)) {
      const SourcePos p = cur.position_of(piece);
      throw SyntaxError("invalid variable name '" + std::string(piece) + "'", p.line, p.column);
    }
    out.emplace_back(piece);
  }
  return out;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : sep) + s;
  return out;
}

std::string poly_list(const std::vector<SuperPoly>& polys) {
  std::vector<std::string> s;
  for (const auto& p : polys) s.push_back(p.to_string());
  return "[" + join(s, ", ") + "]";
}

std::string describe(const Value& v) {
  struct {
    std::string operator()(const ContextPtr& c) const {
      return "even=[" + join(c->even_vars(), ", ") + "] odd=[" + join(c->odd_vars(), ", ") + "]";
    }
    std::string operator()(const SuperPoly& p) const { return p.to_string(); }
    std::string operator()(const SuperMatrix& m) const { return m.to_string(); }
    std::string operator()(const SuperDerivation& d) const { return d.to_string(); }
    std::string operator()(const Morphism& m) const { return m.to_string(); }
    std::string operator()(const GroupLaw& g) const {
      std::string out = "mu=" + g.mu().to_string() + " unit=" + g.unit().to_string();
      if (g.inverse()) out += " inv=" + g.inverse()->to_string();
      return out;
    }
    std::string operator()(const PointedVariety& v) const {
      return "ideal=" + poly_list(v.generators()) + " point=" + v.point().to_string();
    }
  } visitor;
  return std::visit(visitor, v);
}

template <typename T>
const char* kind_name() {
  if constexpr (std::is_same_v<T, ContextPtr>) return "context";
  if constexpr (std::is_same_v<T, SuperPoly>) return "poly";
  if constexpr (std::is_same_v<T, SuperMatrix>) return "matrix";
  if constexpr (std::is_same_v<T, SuperDerivation>) return "field";
  if constexpr (std::is_same_v<T, Morphism>) return "morphism";
  if constexpr (std::is_same_v<T, GroupLaw>) return "group";
  return "variety";
}

RationalPoint point_in(const std::vector<Rational>& values, const Context& ctx) {
  RationalPoint p;
  if (values.size() == ctx.size() && values.size() != ctx.even_count()) {
    for (std::size_t j = ctx.even_count(); j < values.size(); ++j) {
      if (!is_zero(values[j])) {
        throw Error(ErrorCode::Invalid, "odd coordinates of a rational point must be 0");
      }
    }
    p.even_values.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(ctx.even_count()));
  } else {
    p.even_values = values;
  }
  require_point_in(p, ctx);
  return p;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

}  // namespace

Session::Session(SessionOptions options) : options_(std::move(options)) {}

const Value* Session::lookup(const std::string& name) const {
  const auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

void Session::bind(const std::string& name, Value v) { bindings_.insert_or_assign(name, std::move(v)); }

const ContextPtr& Session::active() const {
  if (!active_) throw Error(ErrorCode::Context, "no active context; declare one with 'context'");
  return active_;
}

ContextPtr Session::context_named(const std::string& name) const {
  return get<ContextPtr>(name);
}

template <typename T>
const T& Session::get(const std::string& name) const {
  const Value* v = lookup(name);
  if (!v) throw Error(ErrorCode::Unbound, "'" + name + "' is not bound");
  if (const T* t = std::get_if<T>(v)) return *t;
  throw Error(ErrorCode::Invalid, "'" + name + "' is a " + value_kind(*v) + ", expected a " +
                                      kind_name<T>());
}

PolyLookup Session::poly_lookup() const {
  return [this](const std::string& name) -> std::optional<SuperPoly> {
    const Value* v = lookup(name);
    if (v) {
      if (const auto* p = std::get_if<SuperPoly>(v)) return *p;
    }
    return std::nullopt;
  };
}

RunResult Session::run(std::string_view script) {
  RunResult result;
  int line_no = 0;
  std::size_t start = 0;
  while (start < script.size()) {
    std::size_t end = script.find('\n', start);
    if (end == std::string_view::npos) end = script.size();
    std::string_view raw = script.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::string_view line = strip_comment(raw);
    if (trim(line).empty()) continue;

    std::string out;
    try {
      execute(line, SourcePos{line_no, 1}, out);
      result.report += out;
    } catch (const Error& e) {
      result.report += out;
      result.errors += "line " + std::to_string(line_no) + ": " + std::string(trim(line)) + ": " +
                       error_code_name(e.code()) + ": " + e.what() + "\n";
      if (!result.first_error) result.first_error = e.code();
      ++result.error_count;
    } catch (const std::exception& e) {
      result.report += out;
      result.errors += "line " + std::to_string(line_no) + ": " + std::string(trim(line)) +
                       ": internal: " + e.what() + "\n";
      if (!result.first_error) result.first_error = ErrorCode::Invalid;
      ++result.error_count;
    }
    if (result.error_count > 0 && !options_.keep_going) break;
  }
  return result;
}

void Session::execute(std::string_view line, SourcePos at, std::string& out) {
  LineCursor cur(line, at);
  const std::string kw = cur.ident();
  auto emit = [&](const std::string& s) { out += s + "\n"; };
  auto done = [&] {
    if (!cur.at_end()) cur.fail("unexpected text");
  };
  auto expr_at = [&](std::string_view text) {
    if (text.empty()) cur.fail("expected an expression");
    return cur.position_of(text);
  };
  auto point_arg = [&](const Context& ctx) {
    cur.expect_word("at");
    const std::string_view inner = cur.group('(', ')');
    return point_in(parse_rational_list(inner, cur.position_of(inner)), ctx);
  };
  // Group name, or the most recently declared group when omitted.
  auto group_arg = [&]() -> const GroupLaw& {
    LineCursor probe = cur;
    std::string name;
    try {
      name = probe.ident();
    } catch (const Error&) {
    }
    if (!name.empty()) {
      const Value* v = lookup(name);
      if (v && std::holds_alternative<GroupLaw>(*v)) {
        cur = probe;
        return std::get<GroupLaw>(*v);
      }
    }
    if (last_group_.empty()) throw Error(ErrorCode::Unbound, "no group declared");
    return get<GroupLaw>(last_group_);
  };
  auto field_arg = [&](const ContextPtr& ctx, std::string_view text) {
    const ExprNode e = parse_expr(text, expr_at(text));
    if (e.kind == ExprNode::Kind::Ident && lookup(e.name)) return get<SuperDerivation>(e.name);
    return lower_derivation(e, ctx, expr_at(text), poly_lookup());
  };

  if (kw == "context") {
    std::string name;
    if (!cur.accept_word("even") && !cur.accept_word("odd") && !cur.at_end()) {
      name = cur.ident();
    } else {
      cur = LineCursor(line, at);
      cur.ident();
    }
    std::vector<std::string> even, odd;
    while (!cur.at_end()) {
      if (cur.accept_word("even")) {
        cur.expect('=');
        even = name_list(cur.group('[', ']'), cur);
      } else if (cur.accept_word("odd")) {
        cur.expect('=');
        odd = name_list(cur.group('[', ']'), cur);
      } else {
        cur.fail("expected 'even=[...]' or 'odd=[...]'");
      }
    }
    active_ = Context::make(std::move(even), std::move(odd));
    if (!name.empty()) bind(name, active_);
    return;
  }
  if (kw == "use") {
    const std::string name = cur.ident();
    done();
    active_ = context_named(name);
    return;
  }
  if (kw == "let" || kw == "field") {
    const std::string name = cur.ident();
    cur.expect('=');
    const std::string_view text = cur.rest();
    if (kw == "let") {
      bind(name, parse_poly(text, active(), expr_at(text), poly_lookup()));
    } else {
      bind(name, parse_derivation(text, active(), expr_at(text), poly_lookup()));
    }
    return;
  }
  if (kw == "matrix") {
    const std::string name = cur.ident();
    const std::string_view text = cur.rest();
    bind(name, parse_matrix(text, active(), expr_at(text)));
    return;
  }
  if (kw == "morphism") {
    const std::string name = cur.ident();
    cur.expect(':');
    const ContextPtr src = context_named(cur.ident());
    cur.expect('-');
    cur.expect('>');
    const ContextPtr dst = context_named(cur.ident());
    const std::string_view inner = cur.group('[', ']');
    done();
    std::vector<SuperPoly> a;
    for (auto piece : split_top_level(inner)) {
      a.push_back(parse_poly(piece, src, expr_at(piece), poly_lookup()));
    }
    bind(name, Morphism(src, dst, std::move(a)));
    return;
  }
  if (kw == "group") {
    const std::string name = cur.ident();
    const ContextPtr ctx = cur.accept(':') ? context_named(cur.ident()) : active();
    const ContextPtr prod = product_context(*ctx, 2);
    std::vector<SuperPoly> mu;
    const std::string_view mu_text = cur.keyed_group("mu", '[', ']');
    for (auto piece : split_top_level(mu_text)) mu.push_back(parse_poly(piece, prod, expr_at(piece)));
    const std::string_view unit_text = cur.keyed_group("unit", '(', ')');
    const RationalPoint unit = point_in(parse_rational_list(unit_text, cur.position_of(unit_text)), *ctx);
    std::optional<std::vector<SuperPoly>> inv;
    if (!cur.at_end()) {
      const std::string_view inv_text = cur.keyed_group("inv", '[', ']');
      inv.emplace();
      for (auto piece : split_top_level(inv_text)) inv->push_back(parse_poly(piece, ctx, expr_at(piece)));
    }
    done();
    bind(name, GroupLaw(ctx, std::move(mu), unit, std::move(inv)));
    last_group_ = name;
    return;
  }
  if (kw == "variety") {
    const std::string name = cur.ident();
    ContextPtr ctx = cur.accept(':') ? context_named(cur.ident()) : active();
    const std::string_view ideal = cur.keyed_group("ideal", '[', ']');
    std::vector<SuperPoly> gens;
    for (auto piece : split_top_level(ideal)) {
      gens.push_back(parse_poly(piece, ctx, expr_at(piece), poly_lookup()));
    }
    const std::string_view pt = cur.keyed_group("point", '(', ')');
    const RationalPoint point = point_in(parse_rational_list(pt, cur.position_of(pt)), *ctx);
    done();
    bind(name, PointedVariety(ctx, std::move(gens), point));
    last_variety_ = name;
    return;
  }

  // ---- commands
  if (kw == "eval") {
    const std::string_view text = cur.rest();
    const ExprNode e = parse_expr(text, expr_at(text));
    if (has_derivation(e)) {
      emit(lower_derivation(e, active(), expr_at(text), poly_lookup()).to_string());
    } else {
      emit(lower_poly(e, active(), expr_at(text), poly_lookup()).to_string());
    }
    return;
  }
  if (kw == "print") {
    const std::string name = cur.ident();
    done();
    const Value* v = lookup(name);
    if (!v) throw Error(ErrorCode::Unbound, "'" + name + "' is not bound");
    emit(describe(*v));
    return;
  }
  if (kw == "ber" || kw == "strace" || kw == "srank" || kw == "inv") {
    const SuperMatrix& m = get<SuperMatrix>(cur.ident());
    done();
    if (kw == "ber") emit(berezinian(m).to_string());
    if (kw == "strace") emit(supertrace(m).to_string());
    if (kw == "srank") emit(srank(m).to_string());
    if (kw == "inv") emit(invert(m).to_string());
    return;
  }
  if (kw == "pullback") {
    const Morphism& phi = get<Morphism>(cur.ident());
    const std::string_view text = cur.rest();
    emit(pullback(phi, parse_poly(text, phi.target(), expr_at(text), poly_lookup())).to_string());
    return;
  }
  if (kw == "compose") {
    const Morphism& psi = get<Morphism>(cur.ident());
    const Morphism& phi = get<Morphism>(cur.ident());
    done();
    emit(compose(psi, phi).to_string());
    return;
  }
  if (kw == "jacobian" || kw == "classify") {
    const Morphism& phi = get<Morphism>(cur.ident());
    const RationalPoint m = point_arg(*phi.source());
    done();
    if (kw == "jacobian") {
      emit(differential_at(phi, m).to_string());
    } else {
      emit(to_string(classify_at(phi, m)));
    }
    return;
  }
  if (kw == "value" || kw == "differential") {
    const std::string_view text = cur.until_word("at");
    const SuperPoly f = parse_poly(text, active(), expr_at(text), poly_lookup());
    const RationalPoint x = point_arg(*f.context());
    done();
    if (kw == "value") {
      emit(to_string(value_at(f, x)));
    } else {
      emit(differential_of_function(f, x).to_string());
    }
    return;
  }
  if (kw == "tangent") {
    if (cur.at_end() && last_variety_.empty()) throw Error(ErrorCode::Unbound, "no variety declared");
    const PointedVariety& v = get<PointedVariety>(cur.at_end() ? last_variety_ : cur.ident());
    done();
    emit(tangent_space(v).to_string());
    return;
  }
  if (kw == "livf" || kw == "invariant") {
    const GroupLaw& g = group_arg();
    const SuperDerivation v = field_arg(g.coords(), cur.rest());
    if (kw == "livf") {
      emit(left_invariant_field(g, v).to_string());
    } else {
      emit(is_left_invariant(v, g) ? "true" : "false");
    }
    return;
  }
  if (kw == "action") {
    const GroupLaw& g = get<GroupLaw>(cur.ident());
    const Morphism& sigma = get<Morphism>(cur.ident());
    const SuperDerivation v = field_arg(g.coords(), cur.rest());
    emit(infinitesimal_action(g, sigma, v).to_string());
    return;
  }
  if (kw == "bracket") {
    const std::string a = cur.ident(), b = cur.ident();
    done();
    const Value* va = lookup(a);
    if (va && std::holds_alternative<SuperMatrix>(*va)) {
      emit(superbracket(get<SuperMatrix>(a), get<SuperMatrix>(b)).to_string());
    } else {
      emit(bracket(get<SuperDerivation>(a), get<SuperDerivation>(b)).to_string());
    }
    return;
  }
  if (kw == "commutator" || kw == "adjoint") {
    const SuperMatrix& a = get<SuperMatrix>(cur.ident());
    const SuperMatrix& b = get<SuperMatrix>(cur.ident());
    done();
    emit((kw == "commutator" ? commutator_bracket(a, b) : adjoint_action(a, b)).to_string());
    return;
  }
  if (kw == "lie") {
    MatrixGroupSpec spec;
    const std::string kind = cur.ident();
    if (kind == "GL") {
      spec.kind = MatrixGroupKind::GL;
    } else if (kind == "SL") {
      spec.kind = MatrixGroupKind::SL;
    } else if (kind == "OSp") {
      spec.kind = MatrixGroupKind::OSp;
    } else {
      cur.fail("expected GL, SL or OSp");
    }
    spec.dims = cur.superdim();
    if (spec.kind == MatrixGroupKind::OSp) {
      const std::string_view rows = cur.keyed_group("form", '[', ']');
      for (auto row : split_top_level(rows)) {
        LineCursor rc(row, cur.position_of(row));
        const std::string_view inner = rc.group('[', ']');
        spec.form.push_back(parse_rational_list(inner, cur.position_of(inner)));
      }
    }
    done();
    emit(lie_algebra(spec).to_string());
    return;
  }
  if (kw == "involutive") {
    std::vector<SuperDerivation> fields;
    while (!cur.at_end()) {
      fields.push_back(get<SuperDerivation>(cur.ident()));
      cur.accept(',');
    }
    emit(to_string(involutive(Distribution(std::move(fields)))));
    return;
  }
  if (kw == "axioms") {
    const GroupLaw& g = group_arg();
    done();
    emit(check_group_axioms(g).to_string());
    return;
  }
  if (kw == "export") {
    const std::string name = cur.ident();
    done();
    const Value* v = lookup(name);
    if (!v) throw Error(ErrorCode::Unbound, "'" + name + "' is not bound");
    emit(to_json(*v));
    for (auto& [n, val] : exports_) {
      if (n == name) {
        val = *v;
        return;
      }
    }
    exports_.emplace_back(name, *v);
    return;
  }
  if (kw == "import") {
    const std::string_view quoted = cur.rest();
    if (quoted.size() < 2 || quoted.front() != '"' || quoted.back() != '"') {
      cur.fail("expected a quoted file name");
    }
    std::filesystem::path path(std::string(quoted.substr(1, quoted.size() - 2)));
    if (path.is_relative()) path = std::filesystem::path(options_.base_dir) / path;
    std::vector<std::string> names;
    for (auto& [name, v] : exports_from_json(read_file(path))) {
      names.push_back(name);
      bind(name, std::move(v));
    }
    emit("imported " + (names.empty() ? std::string("nothing") : join(names, ", ")));
    return;
  }
  if (kw == "selftest") {
    // test names contain '-', so split the rest at the last blank
    const std::string_view args = cur.rest();
    const auto sp = args.find_last_of(" \t");
    if (sp == std::string_view::npos) cur.fail("expected 'selftest NAME COUNT'");
    const std::string test(trim(args.substr(0, sp)));
    const std::string count_text(trim(args.substr(sp + 1)));
    if (count_text.size() > 6 || count_text.find_first_not_of("0123456789") != std::string::npos) {
      cur.fail("expected a natural-number count");
    }
    const SelftestResult r =
        run_selftest(test, static_cast<unsigned>(std::stoul(count_text)), options_.seed);
    emit(r.name + ": " + std::to_string(r.passed) + "/" + std::to_string(r.total) + " passed");
    if (r.passed != r.total) throw Error(ErrorCode::Invalid, r.first_failure);
    return;
  }
  throw SyntaxError("unknown statement '" + kw + "'", at.line, at.column);
}

}  // namespace sg
