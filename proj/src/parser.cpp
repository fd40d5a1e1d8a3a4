#include "supergeom/parser.hpp"

#include <cctype>

#include "supergeom/error.hpp"

namespace sg {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

enum class Tok { Number, Ident, Deriv, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  int column;
};

class ExprParser {
 public:
  ExprParser(std::string_view text, SourcePos at) : text_(text), at_(at) { advance(); }

  ExprNode parse() {
    ExprNode e = expr();
    if (tok_.kind != Tok::End) fail("unexpected '" + tok_.text + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, at_.line, tok_.column);
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const int col = at_.column + static_cast<int>(pos_);
    if (pos_ >= text_.size()) {
      tok_ = {Tok::End, "end of input", col};
      return;
    }
    const char c = text_[pos_];
    if (digit(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
      if (pos_ + 1 < text_.size() && text_[pos_] == '/' && digit(text_[pos_ + 1])) {
        ++pos_;
        while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
      }
      tok_ = {Tok::Number, std::string(text_.substr(start, pos_ - start)), col};
      return;
    }
    if (ident_start(c)) {
      if (text_.substr(pos_, 3) == "d/d" && pos_ + 3 < text_.size() &&
          ident_start(text_[pos_ + 3])) {
        pos_ += 3;
        tok_ = {Tok::Deriv, read_ident(), col};
        return;
      }
      tok_ = {Tok::Ident, read_ident(), col};
      return;
    }
    ++pos_;
    switch (c) {
      case '+': tok_ = {Tok::Plus, "+", col}; return;
      case '-': tok_ = {Tok::Minus, "-", col}; return;
      case '*': tok_ = {Tok::Star, "*", col}; return;
      case '^': tok_ = {Tok::Caret, "^", col}; return;
      case '(': tok_ = {Tok::LParen, "(", col}; return;
      case ')': tok_ = {Tok::RParen, ")", col}; return;
      default:
        tok_ = {Tok::End, std::string(1, c), col};
        fail(std::string("unexpected character '") + c + "'");
    }
  }

  std::string read_ident() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    while (pos_ < text_.size() && text_[pos_] == '\'') ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  ExprNode node(ExprNode::Kind k, int column) {
    ExprNode n;
    n.kind = k;
    n.column = column;
    return n;
  }

  ExprNode expr() {
    ExprNode sum = node(ExprNode::Kind::Sum, tok_.column);
    sum.children.push_back(term());
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      const bool minus = tok_.kind == Tok::Minus;
      const int col = tok_.column;
      advance();
      ExprNode t = term();
      if (minus) {
        ExprNode neg = node(ExprNode::Kind::Neg, col);
        neg.children.push_back(std::move(t));
        t = std::move(neg);
      }
      sum.children.push_back(std::move(t));
    }
    if (sum.children.size() == 1) return std::move(sum.children.front());
    return sum;
  }

  ExprNode term() {
    ExprNode prod = node(ExprNode::Kind::Product, tok_.column);
    prod.children.push_back(unary());
    while (tok_.kind == Tok::Star) {
      advance();
      prod.children.push_back(unary());
    }
    if (prod.children.size() == 1) return std::move(prod.children.front());
    return prod;
  }

  ExprNode unary() {
    if (tok_.kind == Tok::Minus) {
      ExprNode neg = node(ExprNode::Kind::Neg, tok_.column);
      advance();
      neg.children.push_back(unary());
      return neg;
    }
    return power();
  }

  ExprNode power() {
    ExprNode base = atom();
    while (tok_.kind == Tok::Caret) {
      const int col = tok_.column;
      advance();
      if (tok_.kind == Tok::Minus) {
        throw Error(ErrorCode::BadExponent,
                    "negative exponent at " + std::to_string(at_.line) + ":" +
                        std::to_string(tok_.column));
      }
      if (tok_.kind == Tok::LParen) {
        const int ecol = tok_.column;
        const std::optional<Rational> v = constant_value(atom());
        if (!v) fail("expected a natural-number exponent");
        if (sgn(*v) < 0 || v->get_den() != 1 || *v > 999999) {
          throw Error(ErrorCode::BadExponent, "exponent " + to_string(*v) + " at " +
                                                  std::to_string(at_.line) + ":" +
                                                  std::to_string(ecol));
        }
        ExprNode p = node(ExprNode::Kind::Power, col);
        p.exponent = static_cast<unsigned>(v->get_num().get_ui());
        p.children.push_back(std::move(base));
        base = std::move(p);
        continue;
      }
      if (tok_.kind != Tok::Number) fail("expected a natural-number exponent");
      if (tok_.text.find('/') != std::string::npos) {
        throw Error(ErrorCode::BadExponent, "fractional exponent " + tok_.text + " at " +
                                                std::to_string(at_.line) + ":" +
                                                std::to_string(tok_.column));
      }
      if (tok_.text.size() > 6) fail("exponent too large");
      ExprNode p = node(ExprNode::Kind::Power, col);
      p.exponent = static_cast<unsigned>(std::stoul(tok_.text));
      p.children.push_back(std::move(base));
      base = std::move(p);
      advance();
    }
    return base;
  }

  static std::optional<Rational> constant_value(const ExprNode& e) {
    switch (e.kind) {
      case ExprNode::Kind::Number:
        return e.value;
      case ExprNode::Kind::Neg: {
        auto v = constant_value(e.children[0]);
        if (v) *v = -*v;
        return v;
      }
      case ExprNode::Kind::Sum:
      case ExprNode::Kind::Product: {
        Rational acc(e.kind == ExprNode::Kind::Sum ? 0 : 1);
        for (const auto& c : e.children) {
          const auto v = constant_value(c);
          if (!v) return std::nullopt;
          if (e.kind == ExprNode::Kind::Sum) {
            acc += *v;
          } else {
            acc *= *v;
          }
        }
        return acc;
      }
      default:
        return std::nullopt;
    }
  }

  ExprNode atom() {
    ExprNode n;
    switch (tok_.kind) {
      case Tok::Number:
        n = node(ExprNode::Kind::Number, tok_.column);
        n.value = parse_rational(tok_.text);
        advance();
        return n;
      case Tok::Ident:
        n = node(ExprNode::Kind::Ident, tok_.column);
        n.name = tok_.text;
        advance();
        return n;
      case Tok::Deriv:
        n = node(ExprNode::Kind::Deriv, tok_.column);
        n.name = tok_.text;
        advance();
        return n;
      case Tok::LParen: {
        advance();
        n = expr();
        if (tok_.kind != Tok::RParen) fail("expected ')'");
        advance();
        return n;
      }
      case Tok::End:
        fail("unexpected end of expression");
      default:
        fail("unexpected '" + tok_.text + "'");
    }
  }

  std::string_view text_;
  SourcePos at_;
  std::size_t pos_ = 0;
  Token tok_{Tok::End, "", 1};
};

struct Lowered {
  bool is_field = false;
  SuperPoly poly;
  std::vector<SuperPoly> coeffs;  // one per coordinate, evens then odds
};

std::string where(SourcePos at, int column) {
  return std::to_string(at.line) + ":" + std::to_string(column);
}

Var resolve(const ContextPtr& ctx, const std::string& name, SourcePos at, int column) {
  const auto v = ctx->find(name);
  if (!v) {
    throw Error(ErrorCode::UnknownIdentifier,
                "unknown identifier '" + name + "' at " + where(at, column));
  }
  return *v;
}

Lowered lower(const ExprNode& e, const ContextPtr& ctx, SourcePos at, const PolyLookup& lookup) {
  using K = ExprNode::Kind;
  Lowered out{false, SuperPoly(ctx), {}};
  switch (e.kind) {
    case K::Number:
      out.poly = SuperPoly::constant(ctx, e.value);
      return out;
    case K::Ident:
      if (!ctx->find(e.name) && lookup) {
        if (auto bound = lookup(e.name)) {
          out.poly = embed(*bound, ctx);
          return out;
        }
      }
      out.poly = SuperPoly::variable(ctx, resolve(ctx, e.name, at, e.column));
      return out;
    case K::Deriv: {
      const Var v = resolve(ctx, e.name, at, e.column);
      out.is_field = true;
      out.coeffs.assign(ctx->size(), SuperPoly(ctx));
      out.coeffs[v.kind == VarKind::Even ? v.index : ctx->even_count() + v.index] =
          SuperPoly::constant(ctx, Rational(1));
      return out;
    }
    case K::Neg: {
      out = lower(e.children.front(), ctx, at, lookup);
      out.poly = -out.poly;
      for (auto& c : out.coeffs) c = -c;
      return out;
    }
    case K::Sum: {
      out = lower(e.children.front(), ctx, at, lookup);
      for (std::size_t k = 1; k < e.children.size(); ++k) {
        Lowered rhs = lower(e.children[k], ctx, at, lookup);
        if (rhs.is_field != out.is_field) {
          throw SyntaxError("cannot add a function and a vector field", at.line,
                            e.children[k].column);
        }
        out.poly += rhs.poly;
        for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += rhs.coeffs[i];
      }
      return out;
    }
    case K::Product: {
      out = lower(e.children.front(), ctx, at, lookup);
      for (std::size_t k = 1; k < e.children.size(); ++k) {
        if (out.is_field) {
          throw SyntaxError("a d/d symbol must be the rightmost factor", at.line,
                            e.children[k].column);
        }
        Lowered rhs = lower(e.children[k], ctx, at, lookup);
        if (rhs.is_field) {
          for (auto& c : rhs.coeffs) c = out.poly * c;
          out = std::move(rhs);
        } else {
          out.poly *= rhs.poly;
        }
      }
      return out;
    }
    case K::Power: {
      out = lower(e.children.front(), ctx, at, lookup);
      if (out.is_field) throw SyntaxError("cannot raise a vector field to a power", at.line, e.column);
      out.poly = out.poly.pow(e.exponent);
      return out;
    }
  }
  return out;
}

}  // namespace

ExprNode parse_expr(std::string_view text, SourcePos at) { return ExprParser(text, at).parse(); }

SuperPoly lower_poly(const ExprNode& e, const ContextPtr& ctx, SourcePos at,
                     const PolyLookup& lookup) {
  Lowered l = lower(e, ctx, at, lookup);
  if (l.is_field) throw SyntaxError("expected a polynomial, found a vector field", at.line, e.column);
  return l.poly;
}

SuperDerivation lower_derivation(const ExprNode& e, const ContextPtr& ctx, SourcePos at,
                                 const PolyLookup& lookup) {
  Lowered l = lower(e, ctx, at, lookup);
  if (!l.is_field) {
    if (l.poly.is_zero()) return SuperDerivation::zero(ctx);
    throw SyntaxError("expected a vector field (terms ending in d/dx)", at.line, e.column);
  }
  const auto split = l.coeffs.begin() + static_cast<std::ptrdiff_t>(ctx->even_count());
  return SuperDerivation::from_coefficients(ctx, std::vector<SuperPoly>(l.coeffs.begin(), split),
                                            std::vector<SuperPoly>(split, l.coeffs.end()));
}

SuperPoly parse_poly(std::string_view text, const ContextPtr& ctx, SourcePos at,
                     const PolyLookup& lookup) {
  return lower_poly(parse_expr(text, at), ctx, at, lookup);
}

SuperDerivation parse_derivation(std::string_view text, const ContextPtr& ctx, SourcePos at,
                                 const PolyLookup& lookup) {
  return lower_derivation(parse_expr(text, at), ctx, at, lookup);
}

bool has_derivation(const ExprNode& e) {
  if (e.kind == ExprNode::Kind::Deriv) return true;
  for (const auto& c : e.children) {
    if (has_derivation(c)) return true;
  }
  return false;
}

// ---------------------------------------------------------------- LineCursor

void LineCursor::skip_ws() {
  while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
}

bool LineCursor::at_end() {
  skip_ws();
  return pos_ >= text_.size();
}

bool LineCursor::accept_word(std::string_view word) {
  skip_ws();
  if (text_.substr(pos_, word.size()) != word) return false;
  const std::size_t after = pos_ + word.size();
  if (after < text_.size() && (ident_char(text_[after]) || text_[after] == '\'')) return false;
  pos_ = after;
  return true;
}

void LineCursor::expect_word(std::string_view word) {
  if (!accept_word(word)) fail("expected '" + std::string(word) + "'");
}

bool LineCursor::accept(char c) {
  skip_ws();
  if (pos_ < text_.size() && text_[pos_] == c) {
    ++pos_;
    return true;
  }
  return false;
}

void LineCursor::expect(char c) {
  if (!accept(c)) fail(std::string("expected '") + c + "'");
}

bool LineCursor::peek(char c) {
  skip_ws();
  return pos_ < text_.size() && text_[pos_] == c;
}

std::string LineCursor::ident() {
  skip_ws();
  if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected a name");
  const std::size_t start = pos_;
  while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
  while (pos_ < text_.size() && text_[pos_] == '\'') ++pos_;
  return std::string(text_.substr(start, pos_ - start));
}

std::string LineCursor::natural_text() {
  skip_ws();
  const std::size_t start = pos_;
  while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
  if (start == pos_) fail("expected a natural number");
  return std::string(text_.substr(start, pos_ - start));
}

unsigned LineCursor::natural() {
  const std::string t = natural_text();
  if (t.size() > 6) fail("number too large");
  return static_cast<unsigned>(std::stoul(t));
}

SuperDim LineCursor::superdim() {
  SuperDim d;
  d.even = natural();
  if (pos_ >= text_.size() || text_[pos_] != '|') fail("expected 'p|q'");
  ++pos_;
  if (pos_ >= text_.size() || !digit(text_[pos_])) fail("expected 'p|q'");
  d.odd = natural();
  return d;
}

std::string_view LineCursor::group(char open, char close) {
  skip_ws();
  if (pos_ >= text_.size() || text_[pos_] != open) fail(std::string("expected '") + open + "'");
  const std::size_t start = ++pos_;
  int depth = 1;
  while (pos_ < text_.size()) {
    const char c = text_[pos_];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth == 0) {
      if (c != close) fail(std::string("expected '") + close + "'");
      const std::string_view inner = text_.substr(start, pos_ - start);
      ++pos_;
      return inner;
    }
    ++pos_;
  }
  fail(std::string("unbalanced '") + open + "'");
}

std::string_view LineCursor::keyed_group(std::string_view key, char open, char close) {
  expect_word(key);
  expect('=');
  return group(open, close);
}

std::string_view LineCursor::until_word(std::string_view word) {
  skip_ws();
  const std::size_t start = pos_;
  int depth = 0;
  while (pos_ < text_.size()) {
    const char c = text_[pos_];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth == 0 && text_.substr(pos_, word.size()) == word &&
        (pos_ == 0 || !ident_char(text_[pos_ - 1])) &&
        (pos_ + word.size() >= text_.size() || !ident_char(text_[pos_ + word.size()]))) {
      break;
    }
    ++pos_;
  }
  return trim(text_.substr(start, pos_ - start));
}

std::string_view LineCursor::rest() {
  skip_ws();
  const std::string_view r = trim(text_.substr(pos_));
  pos_ = text_.size();
  return r;
}

SourcePos LineCursor::position_of(std::string_view inner) const {
  return {at_.line, at_.column + static_cast<int>(inner.data() - text_.data())};
}

void LineCursor::fail(const std::string& message) const {
  throw SyntaxError(message, at_.line, position().column);
}

// ---------------------------------------------------------------- helpers

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_top_level(std::string_view text) {
  std::vector<std::string_view> out;
  if (trim(text).empty()) return out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(text.substr(start)));
  return out;
}

std::vector<Rational> parse_rational_list(std::string_view inner, SourcePos at) {
  std::vector<Rational> out;
  for (auto piece : split_top_level(inner)) {
    const SourcePos p{at.line, at.column + static_cast<int>(piece.data() - inner.data())};
    if (piece.empty()) throw SyntaxError("empty list entry", p.line, p.column);
    try {
      out.push_back(parse_rational(piece));
    } catch (const Error&) {
      throw SyntaxError("expected a rational number, got '" + std::string(piece) + "'", p.line,
                        p.column);
    }
  }
  return out;
}

SuperMatrix parse_matrix(std::string_view text, const ContextPtr& ctx, SourcePos at) {
  LineCursor cur(text, at);
  const Parity parity = cur.accept_word("odd") ? Parity::Odd : Parity::Even;
  cur.accept_word("even");
  cur.expect_word("dims");
  const SuperDim source = cur.superdim();
  cur.expect('-');
  cur.expect('>');
  const SuperDim target = cur.superdim();
  cur.expect_word("rows");
  const std::string_view rows_text = cur.group('[', ']');
  if (!cur.at_end()) cur.fail("unexpected text after matrix rows");

  std::vector<SuperPoly> entries;
  const auto rows = split_top_level(rows_text);
  if (rows.size() != target.total()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix has " + std::to_string(rows.size()) +
                                                  " rows, dims need " +
                                                  std::to_string(target.total()));
  }
  for (auto row : rows) {
    LineCursor rc(row, cur.position_of(row));
    const std::string_view inner = rc.group('[', ']');
    const auto cells = split_top_level(inner);
    if (cells.size() != source.total()) {
      throw Error(ErrorCode::DimensionMismatch, "matrix row has " + std::to_string(cells.size()) +
                                                    " entries, dims need " +
                                                    std::to_string(source.total()));
    }
    for (auto cell : cells) entries.push_back(parse_poly(cell, ctx, cur.position_of(cell)));
  }
  return SuperMatrix(ctx, source, target, parity, std::move(entries));
}

}  // namespace sg
