// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#include "ptapat/text.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ptapat {

std::string format_diagnostic(const Diagnostic& d) {
  std::ostringstream out;
  out << d.span.file << ':' << d.span.line << ':' << d.span.column << ": " << d.message;
  return out.str();
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Number, String, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t number = 0;
  SourceSpan span;
};

std::vector<Token> lex(std::string_view src, const std::string& file) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto span_at = [&](int l, int c, int len) { return SourceSpan{file, l, c, len}; };
  auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char ch = src[i];
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
      advance(1);
      continue;
    }
    if (ch == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    const int l0 = line;
    const int c0 = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Number;
      t.text = std::string(src.substr(i, j - i));
      if (t.text.size() > 15) throw ParseError({span_at(l0, c0, static_cast<int>(t.text.size())), "integer literal too large"});
      t.number = std::stoll(t.text);
    } else if (ch == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') throw ParseError({span_at(l0, c0, static_cast<int>(j - i)), "unterminated string"});
      t.kind = Tok::String;
      t.text = std::string(src.substr(i + 1, j - i - 1));
      t.span = span_at(l0, c0, static_cast<int>(j - i + 1));
      advance(j - i + 1);
      out.push_back(std::move(t));
      continue;
    } else {
      static const char* two[] = {"->", "&&", "||", "<=", ">=", "!="};
      t.kind = Tok::Punct;
      for (const char* p : two) {
        if (src.substr(i, 2) == p) t.text = p;
      }
      if (t.text.empty()) {
        if (std::string_view("{};()!<>=-+*#'").find(ch) == std::string_view::npos)
          throw ParseError({span_at(l0, c0, 1), std::string("unexpected character '") + ch + "'"});
        t.text = std::string(1, ch);
      }
    }
    t.span = span_at(l0, c0, static_cast<int>(t.text.size()));
    advance(t.text.size());
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.span = span_at(line, col, 0);
  out.push_back(end);
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool is(const char* punct) const { return peek().kind == Tok::Punct && peek().text == punct; }
  bool is_word(const char* word) const { return peek().kind == Tok::Ident && peek().text == word; }
  bool accept(const char* punct) {
    if (!is(punct)) return false;
    take();
    return true;
  }
  bool accept_word(const char* word) {
    if (!is_word(word)) return false;
    take();
    return true;
  }
  const Token& expect(const char* punct) {
    if (!is(punct)) fail(peek(), std::string("expected '") + punct + "'" + found());
    return take();
  }
  const Token& expect_word(const char* word) {
    if (!is_word(word)) fail(peek(), std::string("expected '") + word + "'" + found());
    return take();
  }
  const Token& expect_ident(const char* what) {
    if (peek().kind != Tok::Ident) fail(peek(), std::string("expected ") + what + found());
    return take();
  }
  std::string found() const {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::End: return ", found end of input";
      case Tok::String: return ", found string";
      default: return ", found '" + t.text + "'";
    }
  }
  [[noreturn]] static void fail(const Token& at, std::string message) { throw ParseError({at.span, std::move(message)}); }

  std::size_t pos() const { return pos_; }
  void reset(std::size_t p) { pos_ = p; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Automaton

class AutomatonParser {
 public:
  AutomatonParser(std::string_view text, const std::string& file) : cur_(lex(text, file)) {}

  PtaSpec parse() {
    const Token head = cur_.expect_word("pta");
    cur_.expect("{");
    while (!cur_.is("}")) {
      if (cur_.peek().kind == Tok::End) Cursor::fail(cur_.peek(), "expected '}'" + cur_.found());
      declaration();
    }
    cur_.take();
    if (cur_.peek().kind != Tok::End) Cursor::fail(cur_.peek(), "unexpected input after the automaton" + cur_.found());
    if (!clocks_declared_) Cursor::fail(head, "missing clocks declaration");
    if (spec_.states.empty()) Cursor::fail(head, "the automaton declares no states");
    for (auto& pe : pending_) {
      pe.edge.from = resolve_state(pe.from);
      pe.edge.to = resolve_state(pe.to);
      if (pe.edge.pop) {
        if (spec_.stack_alphabet.empty()) Cursor::fail(pe.pop_tok, "stack operation on an automaton without a stack declaration");
        if (spec_.stack_alphabet.find(*pe.edge.pop) == std::string::npos)
          Cursor::fail(pe.pop_sym, "unknown stack symbol '" + pe.pop_sym.text + "'");
        for (std::size_t i = 0; i < pe.edge.push.size(); ++i) {
          if (spec_.stack_alphabet.find(pe.edge.push[i]) == std::string::npos) {
            Token at = pe.push_tok;
            at.span.column += static_cast<int>(i) + 1;
            at.span.length = 1;
            Cursor::fail(at, std::string("unknown stack symbol '") + pe.edge.push[i] + "'");
          }
        }
      }
      spec_.edges.push_back(pe.edge);
    }
    try {
      validate_spec(spec_);
    } catch (const PreconditionError& e) {
      Cursor::fail(head, e.what());
    }
    return spec_;
  }

 private:
  struct PendingEdge {
    Token from;
    Token to;
    Token pop_tok;
    Token pop_sym;
    Token push_tok;
    Edge edge;
  };

  void declaration() {
    const Token& kw = cur_.expect_ident("a declaration (clocks, stack, state or edge)");
    if (kw.text == "clocks") {
      if (clocks_declared_) Cursor::fail(kw, "duplicate clocks declaration");
      clocks_declared_ = true;
      do {
        const Token& name = cur_.expect_ident("a clock name");
        if (name.text == "true" || name.text == "false") Cursor::fail(name, "'" + name.text + "' cannot name a clock");
        if (clock_index_.count(name.text)) Cursor::fail(name, "duplicate clock '" + name.text + "'");
        spec_.clocks.push_back(name.text);
        clock_index_[name.text] = static_cast<int>(spec_.clocks.size());
      } while (cur_.peek().kind == Tok::Ident);
      cur_.expect(";");
    } else if (kw.text == "stack") {
      if (stack_declared_) Cursor::fail(kw, "duplicate stack declaration");
      stack_declared_ = true;
      do {
        const Token& sym = cur_.expect_ident("a stack symbol");
        if (sym.text.size() != 1) Cursor::fail(sym, "stack symbols must be single characters");
        if (spec_.stack_alphabet.find(sym.text[0]) != std::string::npos)
          Cursor::fail(sym, "duplicate stack symbol '" + sym.text + "'");
        spec_.stack_alphabet += sym.text[0];
      } while (cur_.peek().kind == Tok::Ident);
      cur_.expect(";");
    } else if (kw.text == "state") {
      const Token& name = cur_.expect_ident("a state name");
      if (state_index_.count(name.text)) Cursor::fail(name, "duplicate state '" + name.text + "'");
      cur_.expect_word("invariant");
      ClockConstraint inv = cexpr();
      cur_.expect(";");
      state_index_[name.text] = static_cast<int>(spec_.states.size());
      spec_.states.push_back(name.text);
      spec_.invariants.push_back(std::move(inv));
    } else if (kw.text == "edge") {
      PendingEdge pe;
      pe.from = cur_.expect_ident("a source state");
      cur_.expect("->");
      pe.to = cur_.expect_ident("a target state");
      if (cur_.accept_word("guard")) pe.edge.guard = cexpr();
      if (cur_.accept_word("reset")) {
        cur_.expect("{");
        std::set<int> seen;
        while (cur_.peek().kind == Tok::Ident) {
          const Token& c = cur_.take();
          int idx = resolve_clock(c);
          if (!seen.insert(idx).second) Cursor::fail(c, "clock '" + c.text + "' is reset twice");
        }
        cur_.expect("}");
        pe.edge.resets.assign(seen.begin(), seen.end());
      }
      if (cur_.is_word("pop")) {
        pe.pop_tok = cur_.take();
        pe.pop_sym = cur_.expect_ident("a stack symbol");
        if (pe.pop_sym.text.size() != 1) Cursor::fail(pe.pop_sym, "stack symbols must be single characters");
        cur_.expect_word("push");
        if (cur_.peek().kind != Tok::String) Cursor::fail(cur_.peek(), "expected a quoted push word" + cur_.found());
        pe.push_tok = cur_.take();
        pe.edge.pop = pe.pop_sym.text[0];
        pe.edge.push = pe.push_tok.text;
      }
      cur_.expect(";");
      pending_.push_back(std::move(pe));
    } else {
      Cursor::fail(kw, "unknown declaration '" + kw.text + "'");
    }
  }

  int resolve_clock(const Token& t) {
    if (!clocks_declared_) Cursor::fail(t, "clock '" + t.text + "' used before the clocks declaration");
    auto it = clock_index_.find(t.text);
    if (it == clock_index_.end()) Cursor::fail(t, "unknown clock '" + t.text + "'");
    return it->second;
  }

  int resolve_state(const Token& t) {
    auto it = state_index_.find(t.text);
    if (it == state_index_.end()) Cursor::fail(t, "unknown state '" + t.text + "'");
    return it->second;
  }

  ClockConstraint cexpr() {
    ClockConstraint lhs = conj_expr();
    while (cur_.accept("||")) lhs = ClockConstraint::disj(lhs, conj_expr());
    return lhs;
  }

  ClockConstraint conj_expr() {
    ClockConstraint lhs = unary();
    while (cur_.accept("&&")) lhs = ClockConstraint::conj(lhs, unary());
    return lhs;
  }

  ClockConstraint unary() {
    if (cur_.accept("!")) return ClockConstraint::negate(unary());
    if (cur_.accept_word("true")) return ClockConstraint::truth(true);
    if (cur_.accept_word("false")) return ClockConstraint::truth(false);
    if (cur_.accept("(")) {
      ClockConstraint inner = cexpr();
      cur_.expect(")");
      return inner;
    }
    const Token& lhs = cur_.expect_ident("a clock constraint");
    ClockAtom a;
    a.i = resolve_clock(lhs);
    if (cur_.accept("-")) {
      const Token& rhs = cur_.expect_ident("a clock name");
      a.j = resolve_clock(rhs);
      if (a.j == a.i) Cursor::fail(rhs, "a difference constraint needs two distinct clocks");
    }
    const Token& op = cur_.peek();
    if (op.kind != Tok::Punct) Cursor::fail(op, "expected a comparison operator" + cur_.found());
    if (op.text == "<") a.op = CmpOp::Lt;
    else if (op.text == "<=") a.op = CmpOp::Le;
    else if (op.text == "=") a.op = CmpOp::Eq;
    else if (op.text == ">=") a.op = CmpOp::Ge;
    else if (op.text == ">") a.op = CmpOp::Gt;
    else Cursor::fail(op, "expected a comparison operator" + cur_.found());
    cur_.take();
    if (cur_.is("-")) Cursor::fail(cur_.peek(), "constants in clock constraints must be non-negative");
    if (cur_.peek().kind != Tok::Number) Cursor::fail(cur_.peek(), "expected a natural number" + cur_.found());
    a.d = cur_.take().number;
    return ClockConstraint::atom(a);
  }

  Cursor cur_;
  PtaSpec spec_;
  bool clocks_declared_ = false;
  bool stack_declared_ = false;
  std::map<std::string, int> clock_index_;
  std::map<std::string, int> state_index_;
  std::vector<PendingEdge> pending_;
};

// ---------------------------------------------------------------------------
// Query

class QueryParser {
 public:
  QueryParser(std::string_view text, int k, std::string alphabet)
      : cur_(lex(text, "<query>")), k_(k), alphabet_(std::move(alphabet)) {}

  MixedLinearRelation parse() {
    MixedLinearRelation l = formula();
    if (cur_.peek().kind != Tok::End) Cursor::fail(cur_.peek(), "unexpected input" + cur_.found());
    return l;
  }

 private:
  using L = MixedLinearRelation;

  L formula() {
    L lhs = conjunction();
    while (cur_.accept("||")) lhs = L::negate(L::conj(L::negate(lhs), L::negate(conjunction())));
    return lhs;
  }

  L conjunction() {
    L lhs = unary();
    while (cur_.accept("&&")) lhs = L::conj(lhs, unary());
    return lhs;
  }

  L unary() {
    if (cur_.accept("!")) return L::negate(unary());
    if (cur_.is_word("true") && !continues_term(1)) {
      cur_.take();
      return L::truth(true);
    }
    if (cur_.is_word("false") && !continues_term(1)) {
      cur_.take();
      return L::truth(false);
    }
    if (cur_.is("(")) {
      const std::size_t start = cur_.pos();
      std::optional<ParseError> furthest;
      std::size_t furthest_pos = 0;
      auto attempt = [&](auto&& fn) -> std::optional<L> {
        try {
          return fn();
        } catch (const ParseError& e) {
          if (!furthest || cur_.pos() >= furthest_pos) {
            furthest = e;
            furthest_pos = cur_.pos();
          }
          cur_.reset(start);
          return std::nullopt;
        }
      };
      if (auto r = attempt([&] { return mod_atom(); })) return *r;
      if (auto r = attempt([&] {
            cur_.take();
            L inner = formula();
            cur_.expect(")");
            if (is_relop()) Cursor::fail(cur_.peek(), "comparison after a parenthesized formula");
            return inner;
          }))
        return *r;
      if (auto r = attempt([&] { return comparison(); })) return *r;
      throw *furthest;
    }
    return comparison();
  }

  bool continues_term(std::size_t ahead) const {
    const Token& t = cur_.peek(ahead);
    return t.kind == Tok::Punct && (t.text == "<" || t.text == ">" || t.text == "=" || t.text == "<=" ||
                                    t.text == ">=" || t.text == "!=" || t.text == "+" || t.text == "-");
  }

  bool is_relop() const {
    const Token& t = cur_.peek();
    return t.kind == Tok::Punct &&
           (t.text == "<" || t.text == ">" || t.text == "=" || t.text == "<=" || t.text == ">=" || t.text == "!=");
  }

  L mod_atom() {
    cur_.expect("(");
    const Token start = cur_.peek();
    LinearTerm t = term();
    cur_.expect_word("mod");
    if (cur_.peek().kind != Tok::Number) Cursor::fail(cur_.peek(), "expected a modulus" + cur_.found());
    const Token& n = cur_.take();
    if (n.number == 0) Cursor::fail(n, "modulus must be positive");
    cur_.expect("=");
    const Token& zero = cur_.peek();
    if (zero.kind != Tok::Number || zero.number != 0) Cursor::fail(zero, "expected '0'" + cur_.found());
    cur_.take();
    cur_.expect(")");
    if (t.has_dense()) Cursor::fail(start, "dense variable inside mod; use integral parts uI instead");
    return L::atom({MixedAtom::Kind::Mod, t, n.number});
  }

  static LinearTerm minus(LinearTerm a, LinearTerm b) {
    if (b.kind() == LinearTerm::Kind::Const && b.value() == 0) return a;
    return LinearTerm::sub(std::move(a), std::move(b));
  }

  L comparison() {
    LinearTerm lhs = term();
    const Token op = cur_.peek();
    if (!is_relop()) Cursor::fail(op, "expected a comparison operator" + cur_.found());
    cur_.take();
    LinearTerm rhs = term();
    auto gt = [](LinearTerm t) { return L::atom({MixedAtom::Kind::Gt0, std::move(t), 0}); };
    auto eq = [](LinearTerm t) { return L::atom({MixedAtom::Kind::Eq0, std::move(t), 0}); };
    if (op.text == ">") return gt(minus(lhs, rhs));
    if (op.text == "<") return gt(minus(rhs, lhs));
    if (op.text == ">=") return L::negate(gt(minus(rhs, lhs)));
    if (op.text == "<=") return L::negate(gt(minus(lhs, rhs)));
    if (op.text == "=") return eq(minus(lhs, rhs));
    return L::negate(eq(minus(lhs, rhs)));
  }

  LinearTerm term() {
    LinearTerm lhs = product();
    while (true) {
      if (cur_.accept("+")) {
        lhs = LinearTerm::add(lhs, product());
      } else if (cur_.accept("-")) {
        lhs = LinearTerm::sub(lhs, product());
      } else {
        return lhs;
      }
    }
  }

  LinearTerm product() {
    if (cur_.peek().kind == Tok::Number && cur_.peek(1).kind == Tok::Punct && cur_.peek(1).text == "*") {
      const std::int64_t n = cur_.take().number;
      cur_.take();
      LinearTerm f = factor();
      if (n == 0) return LinearTerm::constant(0);
      if (n > 64) Cursor::fail(cur_.peek(), "coefficients above 64 are not supported");
      LinearTerm out = f;
      for (std::int64_t i = 1; i < n; ++i) out = LinearTerm::add(out, f);
      return out;
    }
    return factor();
  }

  LinearTerm factor() {
    const Token& t = cur_.peek();
    if (t.kind == Tok::Number) return LinearTerm::constant(cur_.take().number);
    if (cur_.accept("(")) {
      LinearTerm inner = term();
      cur_.expect(")");
      return inner;
    }
    if (cur_.is("#")) {
      cur_.take();
      const Token& sym = cur_.expect_ident("a stack symbol");
      if (sym.text.size() != 1 || alphabet_.find(sym.text[0]) == std::string::npos)
        Cursor::fail(sym, "unknown stack symbol '" + sym.text + "'");
      cur_.expect("(");
      const Token& w = cur_.expect_ident("'w'");
      if (w.text != "w") Cursor::fail(w, "expected 'w'");
      const bool primed = cur_.accept("'");
      cur_.expect(")");
      return LinearTerm::variable({TermVar::Kind::Count, 0, sym.text[0], primed});
    }
    if (t.kind != Tok::Ident) Cursor::fail(t, "expected a term" + cur_.found());
    const Token name = cur_.take();
    const char lead = name.text[0];
    const std::string digits = name.text.substr(1);
    const bool numeric = !digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if ((lead != 'x' && lead != 'u' && lead != 'y') || !numeric || digits.size() > 6)
      Cursor::fail(name, "unknown variable '" + name.text + "'");
    const int idx = std::stoi(digits);
    if (idx > k_) Cursor::fail(name, "clock index " + digits + " exceeds k = " + std::to_string(k_));
    const bool primed = cur_.accept("'");
    TermVar v;
    v.kind = lead == 'x' ? TermVar::Kind::Dense : TermVar::Kind::Integral;
    v.clock = idx;
    v.primed = primed;
    return LinearTerm::variable(v);
  }

  Cursor cur_;
  int k_;
  std::string alphabet_;
};

// ---------------------------------------------------------------------------
// Printing helpers

std::string atom_text(const ClockAtom& a, const PtaSpec& spec) {
  std::string s = spec.clocks.at(a.i - 1);
  if (a.j != 0) s += " - " + spec.clocks.at(a.j - 1);
  return s + " " + cmp_op_text(a.op) + " " + std::to_string(a.d);
}

std::string var_text(const TermVar& v) {
  const std::string prime = v.primed ? "'" : "";
  switch (v.kind) {
    case TermVar::Kind::Dense: return "x" + std::to_string(v.clock) + prime;
    case TermVar::Kind::Integral: return "u" + std::to_string(v.clock) + prime;
    case TermVar::Kind::Count: return std::string("#") + v.symbol + "(w" + prime + ")";
  }
  return "?";
}

using Json = nlohmann::ordered_json;

Json config_value(const PtaSpec& spec, const Configuration& c) {
  Json j;
  j["state"] = spec.states.at(c.state);
  Json vals = Json::array();
  for (const auto& r : c.valuation) vals.push_back(r.to_display());
  j["valuation"] = vals;
  j["stack"] = c.stack;
  return j;
}

Json steps_value(const PtaSpec& spec, const DenseRun& run) {
  Json steps = Json::array();
  for (const auto& st : run.steps) {
    Json s;
    if (st.kind == TraceStep::Kind::Progress) {
      s["kind"] = "progress";
      s["delta"] = st.delta.to_display();
    } else {
      s["kind"] = "fire";
      s["edge"] = st.edge;
      const Edge& e = spec.edges.at(st.edge);
      s["label"] = spec.states.at(e.from) + " -> " + spec.states.at(e.to);
    }
    steps.push_back(s);
  }
  return steps;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

PtaSpec parse_automaton(std::string_view text, const std::string& file) { return AutomatonParser(text, file).parse(); }

std::string print_clock_constraint(const ClockConstraint& c, const PtaSpec& spec) {
  switch (c.kind()) {
    case BoolKind::True: return "true";
    case BoolKind::False: return "false";
    case BoolKind::Atom: return atom_text(c.atom_value(), spec);
    case BoolKind::Not: return "!(" + print_clock_constraint(c.child(0), spec) + ")";
    case BoolKind::And:
      return "(" + print_clock_constraint(c.child(0), spec) + " && " + print_clock_constraint(c.child(1), spec) + ")";
    case BoolKind::Or:
      return "(" + print_clock_constraint(c.child(0), spec) + " || " + print_clock_constraint(c.child(1), spec) + ")";
  }
  return "";
}

std::string print_automaton(const PtaSpec& spec) {
  std::ostringstream out;
  out << "pta {\n  clocks";
  for (const auto& c : spec.clocks) out << ' ' << c;
  out << ";\n";
  if (!spec.stack_alphabet.empty()) {
    out << "  stack";
    for (char ch : spec.stack_alphabet) out << ' ' << ch;
    out << ";\n";
  }
  for (std::size_t s = 0; s < spec.states.size(); ++s)
    out << "  state " << spec.states[s] << " invariant " << print_clock_constraint(spec.invariants[s], spec) << ";\n";
  for (const Edge& e : spec.edges) {
    out << "  edge " << spec.states.at(e.from) << " -> " << spec.states.at(e.to);
    if (e.guard.kind() != BoolKind::True) out << " guard " << print_clock_constraint(e.guard, spec);
    if (!e.resets.empty()) {
      out << " reset {";
      for (int r : e.resets) out << ' ' << spec.clocks.at(r - 1);
      out << " }";
    }
    if (e.pop) out << " pop " << *e.pop << " push \"" << e.push << '"';
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

MixedLinearRelation parse_query(std::string_view text, int k, const std::string& stack_alphabet) {
  return QueryParser(text, k, stack_alphabet).parse();
}

std::string print_term(const LinearTerm& t) {
  auto operand = [](const LinearTerm& r) {
    const bool compound = r.kind() == LinearTerm::Kind::Add || r.kind() == LinearTerm::Kind::Sub;
    return compound ? "(" + print_term(r) + ")" : print_term(r);
  };
  switch (t.kind()) {
    case LinearTerm::Kind::Const:
      return t.value() < 0 ? "(0 - " + std::to_string(-t.value()) + ")" : std::to_string(t.value());
    case LinearTerm::Kind::Var: return var_text(t.var());
    case LinearTerm::Kind::Add: return print_term(t.lhs()) + " + " + operand(t.rhs());
    case LinearTerm::Kind::Sub: return print_term(t.lhs()) + " - " + operand(t.rhs());
  }
  return "";
}

std::string print_query(const MixedLinearRelation& l) {
  switch (l.kind()) {
    case BoolKind::True: return "true";
    case BoolKind::False: return "false";
    case BoolKind::Atom: {
      const MixedAtom& a = l.atom_value();
      switch (a.kind) {
        case MixedAtom::Kind::Gt0: return print_term(a.term) + " > 0";
        case MixedAtom::Kind::Eq0: return print_term(a.term) + " = 0";
        case MixedAtom::Kind::Mod: return "(" + print_term(a.term) + " mod " + std::to_string(a.modulus) + " = 0)";
      }
      return "";
    }
    case BoolKind::Not: return "!(" + print_query(l.child(0)) + ")";
    case BoolKind::And: return "(" + print_query(l.child(0)) + " && " + print_query(l.child(1)) + ")";
    case BoolKind::Or: return "(" + print_query(l.child(0)) + " || " + print_query(l.child(1)) + ")";
  }
  return "";
}

std::string config_json(const PtaSpec& spec, const Configuration& c) { return dump(config_value(spec, c)); }

std::string run_json(const PtaSpec& spec, const DenseRun& run) {
  Json j;
  j["steps"] = steps_value(spec, run);
  Json cps = Json::array();
  for (const auto& c : run.checkpoints) cps.push_back(config_value(spec, c));
  j["checkpoints"] = cps;
  return dump(j);
}

std::string query_json(const PtaSpec& spec, const QueryResult& r, const JsonOptions& opts) {
  Json j;
  j["verdict"] = verdict_name(r.verdict);
  if (r.witness) {
    Json w;
    w["steps"] = steps_value(spec, *r.witness);
    w["source_config"] = config_value(spec, r.witness->start());
    w["target_config"] = config_value(spec, r.witness->end());
    j["witness"] = w;
  }
  Json b;
  b["steps"] = r.bounds.max_steps;
  b["stack"] = r.bounds.max_stack;
  b["cap"] = r.bounds.clock_cap;
  j["bounds"] = b;
  Json d;
  d["nodes_explored"] = r.diagnostics.nodes_explored;
  d["patterns_seen"] = r.diagnostics.patterns_seen;
  d["evaluations"] = r.diagnostics.evaluations;
  d["starts"] = r.diagnostics.starts;
  d["steps_exceeded"] = r.diagnostics.steps_exceeded;
  d["stack_exceeded"] = r.diagnostics.stack_exceeded;
  d["cap_exceeded"] = r.diagnostics.cap_exceeded;
  d["time_ms"] = opts.timing ? r.diagnostics.time_ms : 0.0;
  j["diagnostics"] = d;
  return dump(j);
}

std::string reach_json(const PtaSpec& /*spec*/, const ControlReachResult& r, double time_ms, const JsonOptions& opts) {
  Json j;
  j["verdict"] = r.reachable ? "reachable" : "unreachable";
  Json d;
  d["nodes_explored"] = r.controls;
  d["patterns_seen"] = r.patterns;
  d["transitions"] = r.transitions;
  d["cap"] = r.cap;
  d["time_ms"] = opts.timing ? time_ms : 0.0;
  j["diagnostics"] = d;
  return dump(j);
}

std::string graph_dot(const PtaSpec& spec, const GReachResult& reach) {
  std::ostringstream out;
  out << "digraph G {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t n = 0; n < reach.nodes.size(); ++n) {
    const GConfiguration& g = reach.nodes[n];
    out << "  n" << n << " [label=\"" << spec.states.at(g.state) << "\\n" << encode_pattern(g.pattern) << "\\nu=(";
    for (std::size_t i = 0; i < g.discrete.size(); ++i) out << (i ? "," : "") << g.discrete[i];
    out << ")\\nw=" << g.stack << "\"];\n";
  }
  for (std::size_t n = 0; n < reach.nodes.size(); ++n) {
    for (const auto& [edge, succ] : g_successors(spec, reach.nodes[n])) {
      auto target = reach.find(succ);
      if (!target) continue;
      out << "  n" << n << " -> n" << *target << " [label=\"";
      if (edge.kind == GEdge::Kind::Reset) {
        out << "e" << edge.edge;
      } else {
        out << gedge_kind_name(edge.kind);
      }
      out << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace ptapat
