#include <algorithm>
#include <cctype>
#include <charconv>

#include "ecogen/spec.hpp"

namespace ecogen {

namespace {

struct Token {
  enum class Kind { ident, integer, punct, end };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Token::Kind::end, "", line_, col_});
        return out;
      }
      const std::size_t l = line_, c = col_;
      const char ch = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) advance();
        std::string word(src_.substr(start, pos_ - start));
        // `x3` is the multiplicity marker glued to an integer.
        if (word.size() > 1 && word[0] == 'x' &&
            std::all_of(word.begin() + 1, word.end(), [](unsigned char d) { return std::isdigit(d); })) {
          out.push_back({Token::Kind::ident, "x", l, c});
          out.push_back({Token::Kind::integer, word.substr(1), l, c + 1});
        } else {
          out.push_back({Token::Kind::ident, std::move(word), l, c});
        }
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        out.push_back({Token::Kind::integer, std::string(src_.substr(start, pos_ - start)), l, c});
      } else {
        std::string two(src_.substr(pos_, 2));
        if (two == ">=" || two == "<=" || two == "==") {
          advance();
          advance();
          out.push_back({Token::Kind::punct, two, l, c});
        } else if (std::string_view("{}(),;:*+-&!").find(ch) != std::string_view::npos) {
          advance();
          out.push_back({Token::Kind::punct, std::string(1, ch), l, c});
        } else {
          throw ParseError(l, c, std::string("unexpected character '") + ch + "'");
        }
      }
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      if (src_[pos_] == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  EcoSpec parse() {
    EcoSpec spec;
    expect_ident("system");
    spec.name = take_ident("system name");
    expect("{");
    bool have_axiom = false, have_mode = false;
    while (!peek_is("}")) {
      const Token& t = peek();
      if (t.kind != Token::Kind::ident) fail(t, "expected 'mode', 'axiom' or 'rule'");
      if (t.text == "mode") {
        next();
        if (have_mode) fail(t, "duplicate mode");
        have_mode = true;
        const Token& m = next();
        if (m.text == "eco")
          spec.mode = Mode::eco;
        else if (m.text == "walk")
          spec.mode = Mode::walk;
        else
          fail(m, "mode must be 'eco' or 'walk'");
        expect(";");
      } else if (t.text == "axiom") {
        next();
        if (have_axiom) fail(t, "duplicate axiom");
        have_axiom = true;
        spec.axiom = signed_integer();
        expect(";");
      } else if (t.text == "rule") {
        next();
        spec.clauses.push_back(clause());
      } else {
        fail(t, "expected 'mode', 'axiom' or 'rule', got '" + t.text + "'");
      }
    }
    const Token& close = next();
    if (!have_axiom) fail(close, "system has no axiom");
    if (spec.clauses.empty()) fail(close, "system has no rules");
    if (peek().kind != Token::Kind::end) fail(peek(), "trailing input after system");
    return spec;
  }

 private:
  Clause clause() {
    Clause c;
    c.guard = guard();
    expect(":");
    if (peek_is(";")) fail(peek(), "empty production list");
    c.productions.push_back(production());
    while (peek_is(",")) {
      next();
      c.productions.push_back(production());
    }
    expect(";");
    return c;
  }

  Guard guard() {
    Guard g;
    if (peek().kind == Token::Kind::ident && peek().text == "always") {
      next();
      return g;
    }
    g.atoms.push_back(atom());
    while (peek_is("&")) {
      next();
      g.atoms.push_back(atom());
    }
    return g;
  }

  GuardAtom atom() {
    GuardAtom a;
    if (peek_is("!")) {
      next();
      a.negated = true;
    }
    const Token& t = next();
    if (t.kind == Token::Kind::ident && (t.text == "pow2" || t.text == "prime")) {
      a.kind = t.text == "pow2" ? GuardAtom::Kind::pow2 : GuardAtom::Kind::prime;
      expect("(");
      expect_ident("k");
      expect(")");
      return a;
    }
    if (a.negated) fail(t, "'!' applies only to pow2(k) and prime(k)");
    if (t.kind != Token::Kind::ident || t.text != "k") fail(t, "guard atom must start with k");
    const Token& op = next();
    if (op.text == ">=") {
      a.kind = GuardAtom::Kind::ge;
      a.c = signed_integer();
    } else if (op.text == "<=") {
      a.kind = GuardAtom::Kind::le;
      a.c = signed_integer();
    } else if (op.kind == Token::Kind::ident && op.text == "mod") {
      a.kind = GuardAtom::Kind::mod_eq;
      const Token& mt = peek();
      a.m = signed_integer();
      if (a.m <= 0) fail(mt, "modulus must be positive");
      expect("==");
      const Token& rt = peek();
      a.r = signed_integer();
      if (a.r < 0 || a.r >= a.m) fail(rt, "residue out of range");
    } else {
      fail(op, "expected >=, <= or mod");
    }
    return a;
  }

  Production production() {
    const Token& t = peek();
    if (t.kind == Token::Kind::ident && t.text == "interval") {
      next();
      expect("(");
      Interval iv;
      iv.lo = expr();
      expect(",");
      iv.hi = expr();
      while (peek_is(",")) {
        next();
        const Token& kw = next();
        if (kw.text == "step") {
          const Token& st = peek();
          iv.step = signed_integer();
          if (iv.step <= 0) fail(st, "step must be positive");
        } else if (kw.text == "minus") {
          expect("{");
          iv.excluded.push_back(expr());
          while (peek_is(",")) {
            next();
            iv.excluded.push_back(expr());
          }
          expect("}");
        } else {
          fail(kw, "expected 'step' or 'minus'");
        }
      }
      expect(")");
      return iv;
    }
    if (!peek_is("(")) fail(t, "expected '(' or 'interval'");
    next();
    Item item;
    item.label = expr();
    expect(")");
    expect_ident("x");
    item.multiplicity = expr();
    return item;
  }

  // Sum of affine terms, or a single builtin call.
  Expr expr() {
    std::int64_t a = 0, b = 0;
    std::optional<Expr> call;
    std::size_t terms = 0;
    bool negative = false;
    if (peek_is("-")) {
      next();
      negative = true;
    }
    while (true) {
      const Token& t = peek();
      std::int64_t ta = 0, tb = 0;
      if (t.kind == Token::Kind::integer) {
        const std::int64_t v = integer();
        if (peek_is("*")) {
          next();
          expect_ident("k");
          ta = v;
        } else {
          tb = v;
        }
      } else if (t.kind == Token::Kind::ident && t.text == "k") {
        next();
        ta = 1;
        if (peek_is("*")) {
          next();
          ta = integer();
        }
      } else if (t.kind == Token::Kind::ident) {
        auto fn = builtin_from_name(t.text);
        if (!fn) fail(t, "unknown builtin '" + t.text + "'");
        next();
        expect("(");
        std::vector<Expr> args{expr()};
        while (peek_is(",")) {
          next();
          args.push_back(expr());
        }
        expect(")");
        const std::size_t want = (*fn == Builtin::ceil_div || *fn == Builtin::pow) ? 2 : 1;
        if (args.size() != want) fail(t, std::string(builtin_name(*fn)) + " takes " + std::to_string(want) + " argument(s)");
        if (negative || terms > 0) fail(t, "builtin calls cannot be combined with other terms");
        call = Expr::call(*fn, std::move(args));
      } else {
        fail(t, "expected an expression");
      }
      ++terms;
      if (call) {
        if (peek_is("+") || peek_is("-")) fail(peek(), "builtin calls cannot be combined with other terms");
        return *call;
      }
      if (negative) {
        ta = -ta;
        tb = -tb;
      }
      a += ta;
      b += tb;
      if (peek_is("+")) {
        next();
        negative = false;
      } else if (peek_is("-")) {
        next();
        negative = true;
      } else {
        break;
      }
    }
    return Expr::affine(a, b);
  }

  std::int64_t integer() {
    const Token& t = next();
    if (t.kind != Token::Kind::integer) fail(t, "expected an integer");
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc()) fail(t, "integer out of range");
    return v;
  }

  std::int64_t signed_integer() {
    if (peek_is("-")) {
      next();
      return -integer();
    }
    return integer();
  }

  const Token& peek() const { return toks_[pos_]; }
  bool peek_is(std::string_view p) const { return peek().kind == Token::Kind::punct && peek().text == p; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Token::Kind::end) ++pos_;
    return t;
  }
  void expect(std::string_view p) {
    const Token& t = next();
    if (t.kind != Token::Kind::punct || t.text != p) fail(t, "expected '" + std::string(p) + "'");
  }
  void expect_ident(std::string_view id) {
    const Token& t = next();
    if (t.kind != Token::Kind::ident || t.text != id) fail(t, "expected '" + std::string(id) + "'");
  }
  std::string take_ident(std::string_view what) {
    const Token& t = next();
    if (t.kind != Token::Kind::ident) fail(t, "expected " + std::string(what));
    return t.text;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.column, t.kind == Token::Kind::end ? msg + " (at end of input)" : msg);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

EcoSpec parse_spec(std::string_view text) { return Parser(Lexer(text).run()).parse(); }

std::string to_text(const EcoSpec& spec) {
  std::string s = "system " + spec.name + " {\n";
  s += std::string("  mode ") + (spec.mode == Mode::eco ? "eco" : "walk") + ";\n";
  s += "  axiom " + std::to_string(spec.axiom) + ";\n";
  for (const auto& c : spec.clauses) {
    s += "  rule " + c.guard.to_string() + " : ";
    for (std::size_t i = 0; i < c.productions.size(); ++i) {
      if (i) s += ", ";
      if (const auto* item = std::get_if<Item>(&c.productions[i])) {
        s += "(" + item->label.to_string() + ") x " + item->multiplicity.to_string();
      } else {
        const auto& iv = std::get<Interval>(c.productions[i]);
        s += "interval(" + iv.lo.to_string() + ", " + iv.hi.to_string();
        if (iv.step != 1) s += ", step " + std::to_string(iv.step);
        if (!iv.excluded.empty()) {
          s += ", minus {";
          for (std::size_t j = 0; j < iv.excluded.size(); ++j) {
            if (j) s += ", ";
            s += iv.excluded[j].to_string();
          }
          s += "}";
        }
        s += ")";
      }
    }
    s += ";\n";
  }
  return s + "}\n";
}

}  // namespace ecogen
