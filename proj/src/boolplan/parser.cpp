// Copyright 2026 The cgplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <map>
#include <set>

#include "cgplan/boolplan.hpp"

namespace cgplan {

namespace {

enum class Tok {
  kIdent, kColon, kPrime, kNot, kAnd, kOr, kImplies, kIff,
  kLParen, kRParen, kLBrace, kRBrace, kComma, kEnd,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

const std::set<std::string>& Keywords() {
  static const std::set<std::string> k{"props", "init",  "goal",  "action",
                                       "true",  "false", "frame", "except"};
  return k;
}

std::vector<Token> Lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      t.kind = Tok::kIdent;
      t.text = text.substr(i, j - i);
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    std::size_t len = 1;
    switch (c) {
      case ':': t.kind = Tok::kColon; break;
      case '\'': t.kind = Tok::kPrime; break;
      case '!': t.kind = Tok::kNot; break;
      case '&': t.kind = Tok::kAnd; break;
      case '|': t.kind = Tok::kOr; break;
      case '(': t.kind = Tok::kLParen; break;
      case ')': t.kind = Tok::kRParen; break;
      case '{': t.kind = Tok::kLBrace; break;
      case '}': t.kind = Tok::kRBrace; break;
      case ',': t.kind = Tok::kComma; break;
      case '-':
        if (text.compare(i, 2, "->") != 0) {
          throw ParseError(line, col, "expected '->'");
        }
        t.kind = Tok::kImplies;
        len = 2;
        break;
      case '<':
        if (text.compare(i, 3, "<->") != 0) {
          throw ParseError(line, col, "expected '<->'");
        }
        t.kind = Tok::kIff;
        len = 3;
        break;
      default:
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    t.text = text.substr(i, len);
    advance(len);
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  BooleanSystem Parse() {
    BooleanSystem sys;
    ExpectKeyword("props");
    Expect(Tok::kColon, "':'");
    while (Peek().kind == Tok::kIdent && !Keywords().count(Peek().text)) {
      const Token& t = Next();
      if (index_.count(t.text)) {
        throw ParseError(t.line, t.column, "duplicate proposition '" + t.text + "'");
      }
      index_[t.text] = sys.props.size();
      sys.props.push_back(t.text);
    }
    if (sys.props.empty()) Fail(Peek(), "expected at least one proposition");
    ExpectKeyword("init");
    Expect(Tok::kColon, "':'");
    sys.init = Formula(false);
    ExpectKeyword("goal");
    Expect(Tok::kColon, "':'");
    sys.goal = Formula(false);
    std::set<std::string> names;
    do {
      ExpectKeyword("action");
      const Token& name = Peek();
      if (name.kind != Tok::kIdent || Keywords().count(name.text)) {
        Fail(name, "expected action name");
      }
      Next();
      if (!names.insert(name.text).second) {
        throw ParseError(name.line, name.column,
                         "duplicate action '" + name.text + "'");
      }
      Expect(Tok::kColon, "':'");
      sys.actions.push_back({name.text, Formula(true)});
    } while (Peek().kind != Tok::kEnd);
    return sys;
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }
  const Token& Next() { return tokens_[pos_++]; }

  [[noreturn]] static void Fail(const Token& t, const std::string& what) {
    std::string got = t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, what + ", got " + got);
  }

  void Expect(Tok kind, const char* what) {
    if (Peek().kind != kind) Fail(Peek(), std::string("expected ") + what);
    Next();
  }

  void ExpectKeyword(const std::string& word) {
    if (Peek().kind != Tok::kIdent || Peek().text != word) {
      Fail(Peek(), "expected '" + word + "'");
    }
    Next();
  }

  cgplan::Formula Formula(bool primes) {
    primes_ = primes;
    return Iff();
  }

  cgplan::Formula Iff() {
    auto f = Imp();
    while (Peek().kind == Tok::kIff) {
      Next();
      f = MakeIff(f, Imp());
    }
    return f;
  }

  cgplan::Formula Imp() {
    auto f = Or();
    if (Peek().kind == Tok::kImplies) {
      Next();
      return MakeImplies(f, Imp());
    }
    return f;
  }

  cgplan::Formula Or() {
    std::vector<cgplan::Formula> args{And()};
    while (Peek().kind == Tok::kOr) {
      Next();
      args.push_back(And());
    }
    return args.size() == 1 ? args[0] : MakeOr(std::move(args));
  }

  cgplan::Formula And() {
    std::vector<cgplan::Formula> args{Lit()};
    while (Peek().kind == Tok::kAnd) {
      Next();
      args.push_back(Lit());
    }
    return args.size() == 1 ? args[0] : MakeAnd(std::move(args));
  }

  cgplan::Formula Lit() {
    const Token& t = Peek();
    switch (t.kind) {
      case Tok::kNot:
        Next();
        return MakeNot(Lit());
      case Tok::kLParen: {
        Next();
        auto f = Iff();
        Expect(Tok::kRParen, "')'");
        return f;
      }
      case Tok::kIdent: break;
      default: Fail(t, "expected formula");
    }
    Next();
    if (t.text == "true") return MakeTrue();
    if (t.text == "false") return MakeFalse();
    if (t.text == "frame") return Frame(t);
    if (Keywords().count(t.text)) Fail(t, "expected formula");
    auto it = index_.find(t.text);
    if (it == index_.end()) {
      throw ParseError(t.line, t.column, "unknown proposition '" + t.text + "'");
    }
    std::size_t step = 0;
    if (Peek().kind == Tok::kPrime) {
      if (!primes_) {
        throw ParseError(Peek().line, Peek().column,
                         "primed variable outside an action");
      }
      Next();
      step = 1;
    }
    return MakeVar(it->second, step);
  }

  // frame except {p, q}: every other proposition keeps its value.
  cgplan::Formula Frame(const Token& at) {
    if (!primes_) {
      throw ParseError(at.line, at.column, "frame outside an action");
    }
    ExpectKeyword("except");
    Expect(Tok::kLBrace, "'{'");
    std::set<std::size_t> changed;
    while (Peek().kind != Tok::kRBrace) {
      const Token& t = Peek();
      if (t.kind != Tok::kIdent) Fail(t, "expected proposition");
      auto it = index_.find(t.text);
      if (it == index_.end()) {
        throw ParseError(t.line, t.column, "unknown proposition '" + t.text + "'");
      }
      changed.insert(it->second);
      Next();
      if (Peek().kind == Tok::kComma) Next();
    }
    Next();
    std::vector<cgplan::Formula> keep;
    for (std::size_t p = 0; p < index_.size(); ++p) {
      if (!changed.count(p)) keep.push_back(MakeIff(MakeVar(p, 1), MakeVar(p, 0)));
    }
    if (keep.empty()) return MakeTrue();
    return keep.size() == 1 ? keep[0] : MakeAnd(std::move(keep));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::map<std::string, std::size_t> index_;
  bool primes_ = false;
};

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& what)
    : InputError("line " + std::to_string(line) + ", column " +
                 std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

BooleanSystem ParseBooleanSystem(const std::string& text) {
  return Parser(Lex(text)).Parse();
}

std::string PrintBooleanSystem(const BooleanSystem& system) {
  auto name = [&](VarRef v) {
    return system.props.at(v.prop) + (v.step ? "'" : "");
  };
  std::string out = "props:";
  for (const auto& p : system.props) out += " " + p;
  out += "\ninit: " + PrintFormula(system.init, name);
  out += "\ngoal: " + PrintFormula(system.goal, name) + "\n";
  for (const auto& a : system.actions) {
    out += "action " + a.name + ": " + PrintFormula(a.formula, name) + "\n";
  }
  return out;
}

}  // namespace cgplan
