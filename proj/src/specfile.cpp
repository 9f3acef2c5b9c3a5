#include "linjac/specfile.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace linjac {

ParseError::ParseError(int line, int column, std::string message)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(std::move(message)) {}

namespace {

// Guards that keep hostile input cheap to reject.
constexpr std::size_t kMaxDigits = 200;
constexpr int kMaxExponent = 1000;
constexpr int kMaxDepth = 200;
constexpr std::size_t kMaxWork = 1000000;
constexpr int kMaxRank = 64;
constexpr std::size_t kMaxCoords = 64;

enum class Tok { number, ident, vbasis, plus, minus, star, slash, caret, lparen, rparen, lbracket, rbracket, comma, equals, colon, end };

struct Token {
  Tok kind;
  std::string text;
  int col;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end: return "end of line";
    case Tok::number: return "number " + t.text;
    case Tok::ident: return "identifier '" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const int col = static_cast<int>(i) + 1;
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (is_digit(c)) {
      std::size_t j = i;
      while (j < line.size() && is_digit(line[j])) ++j;
      if (j - i > kMaxDigits) throw ParseError(lineno, col, "number too long");
      out.push_back({Tok::number, std::string(line.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (line.substr(i, 3) == "d/d" && i + 3 < line.size() && ident_start(line[i + 3])) {
      std::size_t j = i + 3;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Tok::vbasis, std::string(line.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Tok::ident, std::string(line.substr(i, j - i)), col});
      i = j;
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case '[': kind = Tok::lbracket; break;
      case ']': kind = Tok::rbracket; break;
      case ',': kind = Tok::comma; break;
      case '=': kind = Tok::equals; break;
      case ':': kind = Tok::colon; break;
      default: {
        const auto u = static_cast<unsigned char>(c);
        if (u >= 0x20 && u < 0x7f) throw ParseError(lineno, col, std::string("unexpected character '") + c + "'");
        char buf[8];
        std::snprintf(buf, sizeof buf, "0x%02x", u);
        throw ParseError(lineno, col, std::string("unexpected byte ") + buf);
      }
    }
    out.push_back({kind, std::string(1, c), col});
    ++i;
  }
  out.push_back({Tok::end, "", static_cast<int>(line.size()) + 1});
  return out;
}

enum class Shape { scalar, vector, form, section };

struct Scope {
  ChartPtr chart;  // coefficients live here
  ChartPtr patch;  // every declared coordinate, for role diagnostics
  Shape shape = Shape::scalar;
  const std::vector<std::string>* basis = nullptr;
  std::string where;
  int line = 1;
};

// Homogeneous value under construction.  Zero (no components) fits any grade.
struct Value {
  int grade = 0;
  std::map<Index, ExpPoly> comps;
};

class ExprParser {
 public:
  ExprParser(const std::vector<Token>& toks, std::size_t pos, const Scope& scope)
      : toks_(toks), pos_(pos), scope_(scope) {}

  // Whole remainder of the line as a field of grade `want`.
  Value parse_rest(int want) {
    const Token start = peek();
    Value v = expr();
    if (peek().kind != Tok::end) expected("an operator or end of line");
    if (!v.comps.empty() && v.grade != want)
      fail(start, "expected " + grade_word(want) + ", found " + grade_word(v.grade));
    v.grade = want;
    return v;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(scope_.line, t.col, msg); }
  [[noreturn]] void expected(const std::string& what) const {
    fail(peek(), "expected " + what + ", found " + describe(peek()));
  }
  void expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) expected(what);
    ++pos_;
  }

  std::string grade_word(int g) const {
    if (scope_.shape == Shape::section) return g == 0 ? "a function" : "a section";
    if (g == 0) return "a function";
    const char* noun = scope_.shape == Shape::form ? "-form" : "-vector";
    return "a " + std::to_string(g) + noun;
  }

  Value scalar(const ExpPoly& f) const {
    Value v;
    if (!f.is_zero()) v.comps.emplace(Index{}, f);
    return v;
  }

  static void negate(Value& v) {
    for (auto& [idx, c] : v.comps) c = -c;
  }

  void add_into(Value& acc, const Value& t, const Token& op) const {
    if (t.comps.empty()) return;
    if (acc.comps.empty()) {
      acc = t;
      return;
    }
    if (acc.grade != t.grade) fail(op, "terms of different grades: " + grade_word(acc.grade) + " and " + grade_word(t.grade));
    for (const auto& [idx, c] : t.comps) {
      auto it = acc.comps.find(idx);
      if (it == acc.comps.end()) {
        acc.comps.emplace(idx, c);
        continue;
      }
      it->second += c;
      if (it->second.is_zero()) acc.comps.erase(it);
    }
  }

  Value multiply(const Value& a, const Value& b, const Token& op) const {
    Value out;
    out.grade = std::max(a.grade, b.grade);
    if (a.comps.empty() || b.comps.empty()) return out;
    if (a.grade > 0 && b.grade > 0) fail(op, "product of two basis elements (use '^' between basis vectors or forms)");
    std::size_t work = 0;
    for (const auto& [ia, ca] : a.comps)
      for (const auto& [ib, cb] : b.comps) work += ca.terms().size() * cb.terms().size();
    if (work > kMaxWork) fail(op, "expression too large");
    for (const auto& [ia, ca] : a.comps)
      for (const auto& [ib, cb] : b.comps) {
        Index idx = ia.empty() ? ib : ia;
        ExpPoly p = ca * cb;
        for (const auto& [m, c] : p.terms()) {
          if (m.degree() > kMaxExponent || std::abs(m.s) > kMaxExponent) fail(op, "exponent too large");
        }
        auto it = out.comps.find(idx);
        if (it == out.comps.end()) {
          if (!p.is_zero()) out.comps.emplace(std::move(idx), std::move(p));
          continue;
        }
        it->second += p;
        if (it->second.is_zero()) out.comps.erase(it);
      }
    return out;
  }

  Value expr() {
    Value acc;
    if (peek().kind == Tok::minus || peek().kind == Tok::plus) {
      const bool neg = peek().kind == Tok::minus;
      ++pos_;
      acc = term();
      if (neg) negate(acc);
    } else {
      acc = term();
    }
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const Token op = peek();
      ++pos_;
      Value t = term();
      if (op.kind == Tok::minus) negate(t);
      add_into(acc, t, op);
    }
    return acc;
  }

  // A basis element may follow its coefficient without '*'.
  bool starts_basis(const Token& t) const {
    if (t.kind == Tok::vbasis) return true;
    if (t.kind != Tok::ident) return false;
    return form_basis(t.text).has_value() || section_basis(t.text).has_value();
  }

  Value term() {
    Value acc = factor();
    for (;;) {
      const Token op = peek();
      if (op.kind == Tok::star) {
        ++pos_;
        Value f = factor();
        acc = multiply(acc, f, op);
      } else if (starts_basis(op)) {
        Value f = factor();
        acc = multiply(acc, f, op);
      } else {
        return acc;
      }
    }
  }

  Value factor() {
    const Token t = peek();
    if (++depth_ > kMaxDepth) fail(t, "expression nested too deeply");
    Value v;
    switch (t.kind) {
      case Tok::number: v = scalar(ExpPoly::constant(scope_.chart, rational())); break;
      case Tok::minus:
        ++pos_;
        v = factor();
        negate(v);
        break;
      case Tok::lparen:
        ++pos_;
        v = expr();
        expect(Tok::rparen, "')'");
        break;
      case Tok::vbasis: v = vector_wedge(); break;
      case Tok::ident: v = identifier(); break;
      default: expected("a number, identifier, 'exp' or '('");
    }
    --depth_;
    return v;
  }

  Rat rational() {
    std::string text = peek().text;
    ++pos_;
    if (peek().kind == Tok::slash) {
      ++pos_;
      const Token den = peek();
      if (den.kind != Tok::number) expected("a denominator");
      ++pos_;
      if (den.text.find_first_not_of('0') == std::string::npos) fail(den, "zero denominator");
      text += "/" + den.text;
    }
    return Rat::parse(text);
  }

  int small_int(const Token& t, int limit) const {
    if (t.text.size() > 6 || std::stoi(t.text) > limit) fail(t, "exponent too large");
    return std::stoi(t.text);
  }

  std::optional<std::size_t> form_basis(const std::string& name) const {
    if (scope_.shape != Shape::form || name.size() < 2 || name[0] != 'd' || scope_.chart->find(name)) return std::nullopt;
    return scope_.chart->find(std::string_view(name).substr(1));
  }

  std::optional<int> section_basis(const std::string& name) const {
    if (scope_.shape != Shape::section || !scope_.basis) return std::nullopt;
    const auto& b = *scope_.basis;
    auto it = std::find(b.begin(), b.end(), name);
    if (it == b.end()) return std::nullopt;
    return static_cast<int>(it - b.begin());
  }

  [[noreturn]] void undeclared(const Token& t, const std::string& name) const {
    if (auto k = scope_.patch->find(name))
      fail(t, "role misuse: " + std::string(role_name((*scope_.patch)[*k].role)) + " coordinate '" + name +
                  "' is not allowed in " + scope_.where);
    if (scope_.basis && std::find(scope_.basis->begin(), scope_.basis->end(), name) != scope_.basis->end())
      fail(t, "basis name '" + name + "' is not allowed in " + scope_.where);
    fail(t, "undeclared identifier '" + name + "'");
  }

  Value basis_value(Index idx) const {
    Value v;
    v.grade = static_cast<int>(idx.size());
    const int sign = sort_with_sign(idx);
    if (sign != 0) v.comps.emplace(std::move(idx), ExpPoly::constant(scope_.chart, Rat(sign)));
    return v;
  }

  Value vector_wedge() {
    if (scope_.shape != Shape::vector) fail(peek(), "vector basis '" + peek().text + "' is not allowed in " + scope_.where);
    Index idx;
    for (;;) {
      const Token t = peek();
      if (t.kind != Tok::vbasis) expected("a basis vector such as d/dx");
      const std::string name = t.text.substr(3);
      auto k = scope_.chart->find(name);
      if (!k) undeclared(t, name);
      ++pos_;
      idx.push_back(static_cast<int>(*k));
      if (peek().kind != Tok::caret) break;
      ++pos_;
    }
    return basis_value(std::move(idx));
  }

  Value form_wedge() {
    Index idx;
    for (;;) {
      const Token t = peek();
      auto k = t.kind == Tok::ident ? form_basis(t.text) : std::nullopt;
      if (!k) expected("a basis form such as dx");
      ++pos_;
      idx.push_back(static_cast<int>(*k));
      if (peek().kind != Tok::caret) break;
      ++pos_;
    }
    return basis_value(std::move(idx));
  }

  Value identifier() {
    const Token t = peek();
    if (t.text == "exp") return exponential();
    if (auto k = scope_.chart->find(t.text)) {
      ++pos_;
      Monomial m;
      m.exps.assign(scope_.chart->dim(), 0);
      m.exps[*k] = 1;
      if (peek().kind == Tok::caret) {
        ++pos_;
        const Token e = peek();
        if (e.kind != Tok::number) expected("an integer exponent");
        ++pos_;
        m.exps[*k] = small_int(e, kMaxExponent);
      }
      return scalar(ExpPoly::term(scope_.chart, std::move(m), Rat(1)));
    }
    if (form_basis(t.text)) return form_wedge();
    if (auto k = section_basis(t.text)) {
      ++pos_;
      return basis_value(Index{*k});
    }
    undeclared(t, t.text);
  }

  Value exponential() {
    ++pos_;
    expect(Tok::lparen, "'(' after exp");
    int k = 1;
    bool neg = false;
    if (peek().kind == Tok::minus) {
      neg = true;
      ++pos_;
    }
    if (peek().kind == Tok::number) {
      k = small_int(peek(), kMaxExponent);
      ++pos_;
      expect(Tok::star, "'*'");
    } else if (neg) {
      expected("an integer");
    }
    const Token t = peek();
    if (t.kind != Tok::ident) expected("the time coordinate");
    const auto ti = scope_.chart->time_index();
    if (!ti) fail(t, "exp(k*t) needs a time coordinate in " + scope_.where);
    const std::string& tname = (*scope_.chart)[*ti].name;
    if (t.text != tname) fail(t, "expected the time coordinate '" + tname + "', found " + describe(t));
    ++pos_;
    expect(Tok::rparen, "')'");
    return scalar(ExpPoly::exp_t(scope_.chart, neg ? -k : k));
  }

  const std::vector<Token>& toks_;
  std::size_t pos_;
  const Scope& scope_;
  int depth_ = 0;
};

enum class Part { none, patch, algebroid, cocycle, jacobi, contact };

constexpr const char* kPartNames[] = {"", "patch", "algebroid", "cocycle", "jacobi", "contact"};

std::optional<Part> part_named(std::string_view s) {
  for (int i = 1; i <= 5; ++i)
    if (s == kPartNames[i]) return static_cast<Part>(i);
  return std::nullopt;
}

template <class Kind>
Graded<Kind> to_field(const ChartPtr& chart, const Value& v) {
  Graded<Kind> g(chart, v.grade);
  for (const auto& [idx, c] : v.comps) g.add(idx, c);
  return g;
}

class SpecParser {
 public:
  SpecFile run(std::string_view text) {
    int lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++lineno;
      line_ = lineno;
      try {
        handle(text.substr(start, end - start));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(lineno, 1, e.what());
      }
      start = end + 1;
    }
    line_ = lineno;
    finish();
    return std::move(out_);
  }

 private:
  [[noreturn]] void fail(int col, const std::string& msg) const { throw ParseError(line_, col, msg); }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const { fail(t.col, msg); }
  [[noreturn]] void expected(const Token& t, const std::string& what) const {
    fail_at(t, "expected " + what + ", found " + describe(t));
  }

  void handle(std::string_view text) {
    toks_ = tokenize(text, line_);
    if (toks_.size() == 1) return;
    if (toks_.size() == 2 && toks_[0].kind == Tok::ident)
      if (auto p = part_named(toks_[0].text)) return enter(*p);
    switch (part_) {
      case Part::none: expected(toks_[0], "a section name (patch, algebroid, cocycle, jacobi or contact)");
      case Part::patch: return patch_line();
      case Part::algebroid: return algebroid_line();
      case Part::cocycle: return cocycle_line();
      case Part::jacobi: return jacobi_line();
      case Part::contact: return contact_line();
    }
  }

  void enter(Part p) {
    if (static_cast<int>(p) <= static_cast<int>(part_))
      fail_at(toks_[0], "section '" + toks_[0].text +
                            "' repeated or out of order (sections go patch, algebroid, cocycle, jacobi, contact)");
    if (p != Part::patch) close_patch();
    if (part_ == Part::algebroid) build_algebroid(alg_header_);
    part_ = p;
    switch (p) {
      case Part::algebroid: alg_header_ = line_; break;
      case Part::cocycle:
        if (!out_.algebroid) fail_at(toks_[0], "cocycle section needs an algebroid section before it");
        out_.cocycle = out_.algebroid->zero_cocycle();
        break;
      case Part::jacobi:
        out_.jacobi = JacobiStructure(Multivector(out_.patch, 2), Multivector(out_.patch, 1));
        break;
      case Part::contact: contact_header_ = line_; break;
      default: break;
    }
  }

  void close_patch() {
    if (patch_closed_) return;
    patch_closed_ = true;
    out_.patch = Chart::make(coords_);
    base_ = drop_role(out_.patch, Role::fiber);
  }

  void patch_line() {
    const Token& name = toks_[0];
    if (name.kind != Tok::ident) expected(name, "a coordinate name");
    if (toks_[1].kind != Tok::colon) expected(toks_[1], "':'");
    const Token& role = toks_[2];
    if (role.kind != Tok::ident) expected(role, "a role (base, fiber or time)");
    if (toks_[3].kind != Tok::end) expected(toks_[3], "end of line");
    Role r;
    if (role.text == "base")
      r = Role::base;
    else if (role.text == "fiber")
      r = Role::fiber;
    else if (role.text == "time")
      r = Role::time;
    else
      expected(role, "a role (base, fiber or time)");
    if (name.text == "exp") fail_at(name, "'exp' is reserved");
    for (const auto& c : coords_) {
      if (c.name == name.text) fail_at(name, "duplicate coordinate '" + name.text + "'");
      if (r == Role::time && c.role == Role::time) fail_at(role, "a patch has at most one time coordinate");
    }
    if (coords_.size() >= kMaxCoords) fail_at(name, "too many coordinates");
    coords_.push_back({name.text, r});
  }

  // KEY '=' ; returns the position after '='.
  std::size_t after_equals(std::size_t pos) const {
    if (toks_[pos].kind != Tok::equals) expected(toks_[pos], "'='");
    return pos + 1;
  }

  // '[' i (',' j)? ']' with 1-based range check against `n`.
  std::vector<int> indices(std::size_t& pos, int count, int n) const {
    std::vector<int> out;
    if (toks_[pos].kind != Tok::lbracket) expected(toks_[pos], "'['");
    ++pos;
    for (int k = 0; k < count; ++k) {
      if (k) {
        if (toks_[pos].kind != Tok::comma) expected(toks_[pos], "','");
        ++pos;
      }
      const Token& t = toks_[pos];
      if (t.kind != Tok::number) expected(t, "an index");
      if (t.text.size() > 3 || std::stoi(t.text) < 1 || std::stoi(t.text) > n)
        fail_at(t, "index " + t.text + " out of range 1.." + std::to_string(n));
      out.push_back(std::stoi(t.text) - 1);
      ++pos;
    }
    if (toks_[pos].kind != Tok::rbracket) expected(toks_[pos], "']'");
    ++pos;
    return out;
  }

  std::vector<std::string> name_list(std::size_t pos, std::size_t want, const std::string& what) const {
    std::vector<std::string> names;
    const Token& first = toks_[pos];
    for (;;) {
      const Token& t = toks_[pos];
      if (t.kind != Tok::ident) expected(t, "a " + what + " name");
      if (t.text == "exp") fail_at(t, "'exp' is reserved");
      if (std::find(names.begin(), names.end(), t.text) != names.end()) fail_at(t, "duplicate " + what + " name '" + t.text + "'");
      names.push_back(t.text);
      ++pos;
      if (toks_[pos].kind == Tok::end) break;
      if (toks_[pos].kind != Tok::comma) expected(toks_[pos], "',' or end of line");
      ++pos;
    }
    if (names.size() != want)
      fail_at(first, "expected " + std::to_string(want) + " " + what + " names, found " + std::to_string(names.size()));
    return names;
  }

  Value expression(std::size_t pos, const Scope& scope, int grade) const {
    return ExprParser(toks_, pos, scope).parse_rest(grade);
  }

  Scope algebroid_scope(Shape shape, const std::string& where) const {
    Scope s;
    s.chart = base_;
    s.patch = out_.patch;
    s.shape = shape;
    s.basis = &out_.algebroid->basis_names();
    s.where = where;
    s.line = line_;
    return s;
  }

  void build_algebroid(int header) {
    if (out_.algebroid) return;
    if (!rank_) throw ParseError(header, 1, "algebroid section needs 'rank = N'");
    out_.algebroid.emplace(base_, *rank_, basis_, fibers_);
  }

  void algebroid_line() {
    const Token& key = toks_[0];
    if (key.kind != Tok::ident) expected(key, "rank, basis, fibers, c or rho");
    if (key.text == "rank") {
      if (rank_) fail_at(key, "duplicate rank");
      const std::size_t pos = after_equals(1);
      const Token& n = toks_[pos];
      if (n.kind != Tok::number) expected(n, "a positive integer");
      if (toks_[pos + 1].kind != Tok::end) expected(toks_[pos + 1], "end of line");
      if (n.text.size() > 3 || std::stoi(n.text) < 1 || std::stoi(n.text) > kMaxRank)
        fail_at(n, "rank must be between 1 and " + std::to_string(kMaxRank));
      rank_ = std::stoi(n.text);
      return;
    }
    if (key.text == "basis" || key.text == "fibers") {
      if (!rank_) fail_at(key, "'rank = N' must come first");
      if (out_.algebroid) fail_at(key, key.text + " must come before c and rho");
      const bool basis = key.text == "basis";
      auto& slot = basis ? basis_ : fibers_;
      if (!slot.empty()) fail_at(key, "duplicate " + key.text);
      const std::size_t pos = after_equals(1);
      auto names = name_list(pos, static_cast<std::size_t>(*rank_), basis ? "basis" : "fiber");
      for (std::size_t k = 0; k < names.size(); ++k) {
        const bool clash = basis ? out_.patch->find(names[k]).has_value() : base_->find(names[k]).has_value();
        if (clash) {
          std::size_t tok = pos + 2 * k;
          fail_at(toks_[tok], (basis ? "basis" : "fiber") + std::string(" name '") + names[k] +
                                  "' collides with a coordinate");
        }
      }
      slot = std::move(names);
      return;
    }
    if (key.text == "c" || key.text == "rho") {
      if (!rank_) fail_at(key, "'rank = N' must come first");
      build_algebroid(alg_header_);
      auto& a = *out_.algebroid;
      std::size_t pos = 1;
      if (key.text == "c") {
        const std::size_t first = pos + 1;
        auto ij = indices(pos, 2, a.rank());
        if (ij[0] == ij[1]) fail_at(toks_[first], "diagonal structure function must be zero");
        Rat sign(1);
        if (ij[0] > ij[1]) {
          std::swap(ij[0], ij[1]);
          sign = Rat(-1);
        }
        if (!c_seen_.insert({ij[0], ij[1]}).second)
          fail_at(key, "duplicate entry c[" + std::to_string(ij[0] + 1) + "," + std::to_string(ij[1] + 1) + "]");
        Value v = expression(after_equals(pos), algebroid_scope(Shape::section, "algebroid data"), 1);
        for (const auto& [idx, c] : v.comps) a.set_structure(ij[0], ij[1], idx[0], sign * c);
      } else {
        auto i = indices(pos, 1, a.rank());
        if (!rho_seen_.insert(i[0]).second) fail_at(key, "duplicate entry rho[" + std::to_string(i[0] + 1) + "]");
        Value v = expression(after_equals(pos), algebroid_scope(Shape::vector, "algebroid data"), 1);
        a.set_anchor(i[0], to_field<VectorKind>(base_, v));
      }
      return;
    }
    expected(key, "rank, basis, fibers, c or rho");
  }

  void cocycle_line() {
    const Token& key = toks_[0];
    if (key.kind != Tok::ident || key.text != "phi") expected(key, "phi");
    std::size_t pos = 1;
    auto i = indices(pos, 1, out_.algebroid->rank());
    if (!phi_seen_.insert(i[0]).second) fail_at(key, "duplicate entry phi[" + std::to_string(i[0] + 1) + "]");
    Value v = expression(after_equals(pos), algebroid_scope(Shape::scalar, "cocycle data"), 0);
    out_.cocycle->components[static_cast<std::size_t>(i[0])] = to_field<VectorKind>(base_, v).scalar_value();
  }

  Scope patch_scope(Shape shape) const {
    Scope s;
    s.chart = out_.patch;
    s.patch = out_.patch;
    s.shape = shape;
    s.where = shape == Shape::form ? "contact data" : "jacobi data";
    s.line = line_;
    return s;
  }

  void jacobi_line() {
    const Token& key = toks_[0];
    const bool lambda = key.kind == Tok::ident && key.text == "lambda";
    if (!lambda && !(key.kind == Tok::ident && key.text == "efield")) expected(key, "lambda or efield");
    if (!jacobi_seen_.insert(key.text).second) fail_at(key, "duplicate " + key.text);
    Value v = expression(after_equals(1), patch_scope(Shape::vector), lambda ? 2 : 1);
    auto field = to_field<VectorKind>(out_.patch, v);
    const auto& j = *out_.jacobi;
    out_.jacobi = lambda ? JacobiStructure(field, j.e_field()) : JacobiStructure(j.lambda(), field);
  }

  void contact_line() {
    const Token& key = toks_[0];
    if (key.kind != Tok::ident || key.text != "eta") expected(key, "eta");
    if (out_.contact) fail_at(key, "duplicate eta");
    Value v = expression(after_equals(1), patch_scope(Shape::form), 1);
    out_.contact = to_field<FormKind>(out_.patch, v);
  }

  void finish() {
    close_patch();
    if (part_ == Part::algebroid) build_algebroid(alg_header_);
    if (part_ == Part::contact && !out_.contact) throw ParseError(contact_header_, 1, "contact section needs 'eta = ...'");
  }

  SpecFile out_;
  Part part_ = Part::none;
  int line_ = 0;
  std::vector<Token> toks_;

  std::vector<Coordinate> coords_;
  bool patch_closed_ = false;
  ChartPtr base_ = Chart::empty();

  int alg_header_ = 0;
  std::optional<int> rank_;
  std::vector<std::string> basis_, fibers_;
  std::set<std::pair<int, int>> c_seen_;
  std::set<int> rho_seen_, phi_seen_;
  std::set<std::string> jacobi_seen_;
  int contact_header_ = 0;
};

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
  return out;
}

std::string render_structure(const AlgebroidPatch& a, int i, int j) {
  std::vector<std::pair<bool, std::string>> pieces;
  for (int k = 0; k < a.rank(); ++k) {
    const ExpPoly c = a.structure(i, j, k);
    for (const auto& [m, coeff] : c.terms())
      pieces.emplace_back(coeff.sign() < 0, ExpPoly::render_abs_term(*c.chart(), m, coeff) + "*" +
                                                a.basis_names()[static_cast<std::size_t>(k)]);
  }
  return pieces.empty() ? std::string() : join_signed(pieces);
}

}  // namespace

SpecFile parse_spec(std::string_view text) { return SpecParser().run(text); }

ExpPoly parse_function(std::string_view text, const ChartPtr& chart) {
  auto toks = tokenize(text, 1);
  Scope s;
  s.chart = chart;
  s.patch = chart;
  s.where = "this expression";
  try {
    Value v = ExprParser(toks, 0, s).parse_rest(0);
    return to_field<VectorKind>(chart, v).scalar_value();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(1, 1, e.what());
  }
}

std::string emit_spec(const SpecFile& spec) {
  std::ostringstream os;
  os << "patch\n";
  for (const auto& c : spec.patch->coords()) os << "  " << c.name << " : " << role_name(c.role) << '\n';
  if (spec.algebroid) {
    const auto& a = *spec.algebroid;
    os << "algebroid\n";
    os << "  rank = " << a.rank() << '\n';
    os << "  basis = " << join_names(a.basis_names()) << '\n';
    os << "  fibers = " << join_names(a.fiber_names()) << '\n';
    for (int i = 0; i < a.rank(); ++i)
      for (int j = i + 1; j < a.rank(); ++j) {
        const std::string body = render_structure(a, i, j);
        if (!body.empty()) os << "  c[" << i + 1 << ',' << j + 1 << "] = " << body << '\n';
      }
    for (int i = 0; i < a.rank(); ++i)
      if (!a.anchor(i).is_zero()) os << "  rho[" << i + 1 << "] = " << a.anchor(i).str() << '\n';
  }
  if (spec.cocycle) {
    os << "cocycle\n";
    for (std::size_t i = 0; i < spec.cocycle->components.size(); ++i)
      os << "  phi[" << i + 1 << "] = " << spec.cocycle->components[i].str() << '\n';
  }
  if (spec.jacobi) {
    os << "jacobi\n";
    os << "  lambda = " << spec.jacobi->lambda().str() << '\n';
    os << "  efield = " << spec.jacobi->e_field().str() << '\n';
  }
  if (spec.contact) os << "contact\n  eta = " << spec.contact->str() << '\n';
  return os.str();
}

SpecFile spec_from_pair(const AlgebroidWithCocycle& in) {
  SpecFile s;
  s.patch = in.algebroid().base_chart();
  s.algebroid = in.algebroid();
  s.cocycle = in.cocycle();
  return s;
}

SpecFile spec_from_jacobi(const JacobiStructure& j) {
  SpecFile s;
  s.patch = j.chart();
  s.jacobi = j;
  return s;
}

}  // namespace linjac
