#pragma once

// Text format for sets, near-bijections and block permutations.
//
//   document  := { statement }
//   statement := [ "let" ] IDENT "=" object [ ";" ] | object [ ";" ]
//   object    := set | nearbij | blockperm | IDENT
//   set       := "set" [ "int" ] "{" [ item { ";" item } [ ";" ] ] "}" | IDENT
//   item      := "finite" ints | "except" ints
//              | "periodic" ( "from" | "to" ) INT "mod" INT ints
//              | "geometric" INT "*" INT "^" "k"
//   ints      := "{" [ INT { "," INT } ] "}"
//   nearbij   := "nearbij" "{" [ "except" "{" { INT "->" ( INT | "!" ) [ ";" ] } "}" ]
//                "tail" "from" INT "mod" INT "{" [ shift { ";" shift } [ ";" ] ] "}" "}"
//   shift     := INT ":" INT
//   blockperm := "blockperm" "sizes" ( "from" set
//              | "seq" "{" [ INT { "," INT } "|" ] "repeat" INT { "," INT } "}" )
//
// Comments run from '#' to the end of the line.

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "trivconj/blockperm.hpp"
#include "trivconj/nearbij.hpp"
#include "trivconj/setspec.hpp"

namespace trivconj {

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int col, const std::string& expected, const std::string& found)
      : Error("SyntaxError", std::to_string(line) + ":" + std::to_string(col) + ": expected " + expected +
                                 ", found " + found),
        line(line),
        col(col),
        expected(expected) {}
  int line;
  int col;
  std::string expected;
};

/// A module validator rejected a parsed object.
class ValidationError : public Error {
 public:
  ValidationError(int line, int col, const std::string& object, const Error& cause)
      : Error("ValidationError", std::to_string(line) + ":" + std::to_string(col) + ": " + object + ": " +
                                     cause.what()),
        line(line),
        col(col),
        cause_kind(cause.kind()) {}
  int line;
  int col;
  std::string cause_kind;
};

using SpecObject = std::variant<SetSpec, NearBijection, BlockPermutation>;

inline const char* kind_name(const SpecObject& o) {
  switch (o.index()) {
    case 0: return "set";
    case 1: return "nearbij";
    default: return "blockperm";
  }
}

inline std::string to_dsl(const SpecObject& o) {
  return std::visit([](const auto& v) { return to_dsl(v); }, o);
}

struct Definition {
  std::string name;  // empty for an anonymous statement
  SpecObject object;
  int line = 0;
  int col = 0;

  bool operator==(const Definition& o) const { return name == o.name && object == o.object; }
};

struct SpecDocument {
  std::vector<Definition> definitions;

  const Definition* find(std::string_view name) const {
    for (const auto& d : definitions)
      if (d.name == name) return &d;
    return nullptr;
  }

  bool operator==(const SpecDocument&) const = default;
};

inline std::string print(const SpecDocument& doc) {
  std::ostringstream os;
  for (const auto& d : doc.definitions) {
    if (!d.name.empty()) os << d.name << " = ";
    os << to_dsl(d.object) << ";\n";
  }
  return os.str();
}

namespace detail {

struct Token {
  enum class Type { Ident, Number, Symbol, End };
  Type type = Type::End;
  std::string text;
  Int value = 0;
  int line = 1;
  int col = 1;

  std::string describe() const {
    if (type == Type::End) return "end of input";
    return "'" + text + "'";
  }
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char ch = src[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    if (ch == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.type = Token::Type::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(ch)) ||
               ((ch == '-' || ch == '+') && i + 1 < src.size() &&
                std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.type = Token::Type::Number;
      t.text = std::string(src.substr(i, j - i));
      try {
        t.value = std::stoll(t.text);
      } catch (const std::out_of_range&) {
        throw SyntaxError(line, col, "a 64-bit integer", "'" + t.text + "'");
      }
      advance(j - i);
    } else if (ch == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.type = Token::Type::Symbol;
      t.text = "->";
      advance(2);
    } else if (std::string_view("{};,!*^:=|").find(ch) != std::string_view::npos) {
      t.type = Token::Type::Symbol;
      t.text = std::string(1, ch);
      advance(1);
    } else {
      throw SyntaxError(line, col, "a token", "'" + std::string(1, ch) + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

  SpecDocument document() {
    SpecDocument doc;
    while (peek().type != Token::Type::End) {
      Definition d;
      const Token& start = peek();
      d.line = start.line;
      d.col = start.col;
      bool named = false;
      if (is_word("let")) {
        next();
        named = true;
      } else if (peek().type == Token::Type::Ident && !is_keyword(peek().text) && peek_at(1).text == "=") {
        named = true;
      }
      if (named) {
        d.name = expect_ident("a definition name");
        if (doc.find(d.name)) throw SyntaxError(d.line, d.col, "a fresh name", "'" + d.name + "' (already defined)");
        expect("=");
      }
      d.object = object(doc);
      if (is_symbol(";")) next();
      doc.definitions.push_back(std::move(d));
    }
    return doc;
  }

 private:
  static bool is_keyword(const std::string& s) {
    return s == "set" || s == "nearbij" || s == "blockperm" || s == "let";
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& peek_at(std::size_t k) const { return tokens_[std::min(pos_ + k, tokens_.size() - 1)]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool is_symbol(std::string_view s) const { return peek().type == Token::Type::Symbol && peek().text == s; }
  bool is_word(std::string_view s) const { return peek().type == Token::Type::Ident && peek().text == s; }

  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(peek().line, peek().col, expected, peek().describe());
  }
  void expect(std::string_view s) {
    if (!is_symbol(s)) fail("'" + std::string(s) + "'");
    next();
  }
  void expect_word(std::string_view s) {
    if (!is_word(s)) fail("'" + std::string(s) + "'");
    next();
  }
  std::string expect_ident(const std::string& what) {
    if (peek().type != Token::Type::Ident) fail(what);
    return next().text;
  }
  Int expect_int(const std::string& what) {
    if (peek().type != Token::Type::Number) fail(what);
    return next().value;
  }

  std::set<Int> int_set() {
    std::set<Int> out;
    expect("{");
    if (!is_symbol("}")) {
      out.insert(expect_int("an integer"));
      while (is_symbol(",")) {
        next();
        out.insert(expect_int("an integer"));
      }
    }
    expect("}");
    return out;
  }

  template <class F>
  auto validated(const Token& at, const char* what, F&& build) {
    try {
      return build();
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& e) {
      throw ValidationError(at.line, at.col, what, e);
    }
  }

  SpecObject object(const SpecDocument& doc) {
    if (is_word("set")) return set_object(doc);
    if (is_word("nearbij")) return nearbij_object();
    if (is_word("blockperm")) return blockperm_object(doc);
    if (peek().type == Token::Type::Ident) return reference(doc)->object;
    fail("'set', 'nearbij', 'blockperm' or a defined name");
  }

  const Definition* reference(const SpecDocument& doc) {
    const Token& t = peek();
    auto name = expect_ident("a defined name");
    const Definition* d = doc.find(name);
    if (!d) throw SyntaxError(t.line, t.col, "a defined name", "unknown identifier '" + name + "'");
    return d;
  }

  SetSpec set_object(const SpecDocument& doc) {
    const Token at = peek();
    if (peek().type == Token::Type::Ident && !is_word("set")) {
      const Definition* d = reference(doc);
      if (const auto* s = std::get_if<SetSpec>(&d->object)) return *s;
      throw SyntaxError(at.line, at.col, "a set", "'" + d->name + "' (a " + kind_name(d->object) + ")");
    }
    expect_word("set");
    Universe u = Universe::Nat;
    if (is_word("int")) {
      next();
      u = Universe::Int;
    }
    std::vector<Atom> atoms;
    std::set<Int> include, exclude;
    expect("{");
    while (!is_symbol("}")) {
      if (is_word("finite")) {
        next();
        auto s = int_set();
        include.insert(s.begin(), s.end());
      } else if (is_word("except")) {
        next();
        auto s = int_set();
        exclude.insert(s.begin(), s.end());
      } else if (is_word("periodic")) {
        next();
        PeriodicAtom p;
        if (is_word("from")) p.direction = PeriodicAtom::Direction::Up;
        else if (is_word("to")) p.direction = PeriodicAtom::Direction::Down;
        else fail("'from' or 'to'");
        next();
        p.bound = expect_int("a bound");
        expect_word("mod");
        p.modulus = expect_int("a modulus");
        auto r = int_set();
        p.residues.assign(r.begin(), r.end());
        atoms.push_back(std::move(p));
      } else if (is_word("geometric")) {
        next();
        GeometricAtom g;
        g.coefficient = expect_int("a coefficient");
        expect("*");
        g.ratio = expect_int("a ratio");
        expect("^");
        expect_word("k");
        atoms.push_back(g);
      } else {
        fail("'finite', 'except', 'periodic', 'geometric' or '}'");
      }
      if (is_symbol(";")) next();
      else if (!is_symbol("}")) fail("';' or '}'");
    }
    expect("}");
    return validated(at, "set", [&] { return SetSpec(u, std::move(atoms), include, exclude); });
  }

  NearBijection nearbij_object() {
    const Token at = peek();
    expect_word("nearbij");
    expect("{");
    NearBijectionDraft d;
    if (is_word("except")) {
      next();
      expect("{");
      while (!is_symbol("}")) {
        const Token src = peek();
        Int a = expect_int("a point");
        expect("->");
        std::optional<Int> b;
        if (is_symbol("!")) next();
        else b = expect_int("an image or '!'");
        if (!d.exceptions.emplace(a, b).second)
          throw SyntaxError(src.line, src.col, "one entry per point", "a second entry for " + std::to_string(a));
        if (is_symbol(";")) next();
      }
      expect("}");
    }
    expect_word("tail");
    expect_word("from");
    d.threshold = expect_int("a threshold");
    expect_word("mod");
    d.modulus = expect_int("a modulus");
    std::map<Int, Int> shifts;
    expect("{");
    while (!is_symbol("}")) {
      const Token r = peek();
      Int res = expect_int("a residue");
      expect(":");
      Int c = expect_int("a shift");
      if (!shifts.emplace(res, c).second)
        throw SyntaxError(r.line, r.col, "one shift per residue", "a second shift for " + std::to_string(res));
      if (is_symbol(";")) next();
      else if (!is_symbol("}")) fail("';' or '}'");
    }
    expect("}");
    expect("}");
    return validated(at, "nearbij", [&] {
      if (d.modulus < 1) throw InvalidArgument("tail modulus must be >= 1");
      d.shifts.assign(d.modulus, 0);
      for (Int r = 0; r < d.modulus; ++r) {
        auto it = shifts.find(r);
        if (it == shifts.end()) throw InvalidArgument("no shift given for residue " + std::to_string(r));
        d.shifts[r] = it->second;
      }
      if (static_cast<Int>(shifts.size()) != d.modulus)
        throw InvalidArgument("shift given for a residue outside [0, " + std::to_string(d.modulus) + ")");
      return NearBijection::validate(d);
    });
  }

  std::vector<Int> int_list() {
    std::vector<Int> out{expect_int("a block size")};
    while (is_symbol(",")) {
      next();
      out.push_back(expect_int("a block size"));
    }
    return out;
  }

  BlockPermutation blockperm_object(const SpecDocument& doc) {
    const Token at = peek();
    expect_word("blockperm");
    expect_word("sizes");
    if (is_word("from")) {
      next();
      auto s = set_object(doc);
      return validated(at, "blockperm", [&] { return BlockPermutation::from_set(s); });
    }
    if (!is_word("seq")) fail("'from' or 'seq'");
    next();
    expect("{");
    std::vector<Int> prefix;
    if (!is_word("repeat")) {
      if (!is_symbol("|")) prefix = int_list();
      expect("|");
    }
    expect_word("repeat");
    auto period = int_list();
    expect("}");
    return validated(at, "blockperm", [&] { return BlockPermutation::from_sequence(prefix, period); });
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline SpecDocument parse(std::string_view text) { return detail::Parser(text).document(); }

}  // namespace trivconj
