// Copyright 2026 The dca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dca/parser.hpp"

#include "dca/error.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace dca {

std::string velocity_name(const std::string& coordinate) {
  return "d(" + coordinate + ")";
}

std::string default_momentum_name(const std::string& coordinate) {
  return "p_" + coordinate;
}

namespace {

enum class Tok { Ident, Number, Op, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 0;
  int column = 0;
  bool line_start = false;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"var",  "param", "lagrangian", "gauge",
                                       "keep", "d",     "sin",        "cos"};
  return k;
}

bool is_directive(const Token& t) {
  return t.kind == Tok::Ident && t.line_start &&
         (t.text == "var" || t.text == "param" || t.text == "lagrangian" ||
          t.text == "gauge" || t.text == "keep");
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  bool at_line_start = true;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
        at_line_start = true;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == ';') { // same as a line break
      advance(1);
      at_line_start = true;
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    t.line_start = at_line_start;
    at_line_start = false;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      t.kind = Tok::Ident;
      t.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.'))
        ++j;
      t.kind = Tok::Number;
      t.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (std::string_view("+-*/^()=:,").find(c) != std::string_view::npos) {
      t.kind = Tok::Op;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw Error(ErrorCode::SyntaxError,
                  std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.column = col;
  end.line_start = true;
  out.push_back(end);
  return out;
}

[[noreturn]] void syntax_error(const Token& t, const std::string& message) {
  throw Error(ErrorCode::SyntaxError, message, t.line, t.column);
}

struct Scope {
  const PhaseSpaceChart* chart = nullptr;
  const std::map<std::string, Rational>* parameters = nullptr;
  const std::set<std::string>* unbound = nullptr;
  bool allow_velocities = false;
  bool allow_momenta = true;
};

/// Pratt parser over a token range [pos, end).
class ExpressionParser {
public:
  ExpressionParser(const std::vector<Token>& tokens, std::size_t begin, std::size_t end,
                   const Scope& scope)
      : tokens_(tokens), pos_(begin), end_(end), scope_(scope) {}

  Expression parse_all() {
    if (pos_ >= end_) syntax_error(peek(), "expected an expression");
    Expression e = parse(0);
    if (pos_ < end_) syntax_error(peek(), "unexpected '" + peek().text + "'");
    return e;
  }

private:
  static constexpr int kAdditive = 10;
  static constexpr int kMultiplicative = 20;
  static constexpr int kUnary = 25;
  static constexpr int kPower = 30;

  const Token& peek() const { return pos_ < end_ ? tokens_[pos_] : tokens_[end_]; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < end_) ++pos_;
    return t;
  }
  bool at_op(const char* op) const {
    return pos_ < end_ && peek().kind == Tok::Op && peek().text == op;
  }
  void expect(const char* op) {
    if (!at_op(op)) syntax_error(peek(), std::string("expected '") + op + "'");
    ++pos_;
  }

  Expression parse(int min_bp) {
    Expression lhs = prefix();
    while (pos_ < end_) {
      const Token& t = peek();
      if (t.kind != Tok::Op) syntax_error(t, "expected an operator before '" + t.text + "'");
      int bp = 0;
      if (t.text == "+" || t.text == "-") bp = kAdditive;
      else if (t.text == "*" || t.text == "/") bp = kMultiplicative;
      else if (t.text == "^") bp = kPower;
      else break;
      if (bp <= min_bp) break;
      const Token op = next();
      if (op.text == "^") {
        Expression rhs = parse(kPower - 1); // right associative
        auto e = rhs.as_constant();
        if (!e || e->get_den() != 1 || sgn(*e) < 0 || *e > 64)
          syntax_error(op, "exponent must be a non-negative integer constant");
        lhs = lhs.pow(static_cast<unsigned>(e->get_num().get_ui()));
        continue;
      }
      Expression rhs = parse(bp);
      if (op.text == "+") lhs += rhs;
      else if (op.text == "-") lhs -= rhs;
      else if (op.text == "*") lhs = lhs * rhs;
      else {
        auto d = rhs.as_constant();
        if (!d) syntax_error(op, "division is only supported by constants");
        if (sgn(*d) == 0) syntax_error(op, "division by zero");
        lhs *= Rational(1 / *d);
      }
    }
    return lhs;
  }

  Expression prefix() {
    const Token& t = next();
    if (t.kind == Tok::End) syntax_error(t, "unexpected end of input");
    if (t.kind == Tok::Number) {
      try {
        return Expression(parse_rational(t.text));
      } catch (const Error&) {
        syntax_error(t, "malformed number '" + t.text + "'");
      }
    }
    if (t.kind == Tok::Op) {
      if (t.text == "-") return -parse(kUnary);
      if (t.text == "+") return parse(kUnary);
      if (t.text == "(") {
        Expression e = parse(0);
        expect(")");
        return e;
      }
      syntax_error(t, "unexpected '" + t.text + "'");
    }
    // identifier
    if (t.text == "sin" || t.text == "cos") {
      expect("(");
      const Token& arg_start = peek();
      Expression arg = parse(0);
      expect(")");
      auto affine = arg.as_affine();
      if (!affine)
        throw Error(ErrorCode::UnsupportedExpression,
                    "argument of " + t.text + " must be affine", arg_start.line,
                    arg_start.column);
      try {
        return Expression::trig(t.text == "sin" ? TrigKind::Sin : TrigKind::Cos, *affine);
      } catch (const Error& e) {
        throw Error(e.code(), e.what(), t.line, t.column);
      }
    }
    if (t.text == "d") {
      expect("(");
      const Token& name = next();
      if (name.kind != Tok::Ident) syntax_error(name, "expected a coordinate inside d(...)");
      expect(")");
      auto v = scope_.chart->find(name.text);
      if (!v || v->kind != VarKind::Coordinate)
        throw Error(ErrorCode::UndeclaredIdentifier,
                    "d(" + name.text + ") refers to an undeclared coordinate", name.line,
                    name.column);
      if (!scope_.allow_velocities)
        throw Error(ErrorCode::SyntaxError, "velocities are not allowed here", t.line,
                    t.column);
      return Expression::variable(velocity_name(name.text));
    }
    if (keywords().count(t.text)) syntax_error(t, "unexpected keyword '" + t.text + "'");
    if (auto v = scope_.chart->find(t.text)) {
      if (v->kind == VarKind::Momentum && !scope_.allow_momenta)
        throw Error(ErrorCode::UndeclaredIdentifier,
                    "momentum '" + t.text + "' cannot appear in a Lagrangian", t.line,
                    t.column);
      return Expression::variable(t.text);
    }
    if (scope_.parameters) {
      if (auto it = scope_.parameters->find(t.text); it != scope_.parameters->end())
        return Expression(it->second);
    }
    if (scope_.unbound && scope_.unbound->count(t.text))
      throw Error(ErrorCode::UnboundParameter, "parameter '" + t.text + "' has no value",
                  t.line, t.column);
    throw Error(ErrorCode::UndeclaredIdentifier, "undeclared identifier '" + t.text + "'",
                t.line, t.column);
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_;
  std::size_t end_;
  const Scope& scope_;
};

std::size_t directive_end(const std::vector<Token>& tokens, std::size_t pos) {
  while (tokens[pos].kind != Tok::End && !is_directive(tokens[pos])) ++pos;
  return pos;
}

} // namespace

LagrangianSource parse(std::string_view text) {
  const std::vector<Token> tokens = tokenize(text);
  std::vector<std::string> coords;
  std::vector<std::string> momenta;
  std::map<std::string, Rational> params;
  std::vector<std::pair<std::string, Rational>> ordered_params;
  std::set<std::string> unbound;
  std::set<std::string> names;
  std::pair<std::size_t, std::size_t> lagrangian_range{0, 0};
  bool have_lagrangian = false;
  std::vector<std::pair<std::size_t, std::size_t>> gauge_ranges;
  std::vector<Token> keep_tokens;

  auto declare = [&](const Token& t) {
    if (keywords().count(t.text)) syntax_error(t, "'" + t.text + "' is reserved");
    if (!names.insert(t.text).second) syntax_error(t, "'" + t.text + "' declared twice");
  };

  std::size_t pos = 0;
  while (tokens[pos].kind != Tok::End) {
    const Token& head = tokens[pos];
    if (!is_directive(head))
      syntax_error(head, "expected a directive (var, param, lagrangian, gauge, keep)");
    ++pos;
    const std::size_t end = directive_end(tokens, pos);
    auto skip_colon = [&] {
      if (pos < end && tokens[pos].kind == Tok::Op && tokens[pos].text == ":") ++pos;
    };

    if (head.text == "var") {
      skip_colon();
      if (pos == end) syntax_error(head, "var needs at least one name");
      while (pos < end) {
        const Token& n = tokens[pos++];
        if (n.kind == Tok::Op && n.text == ",") continue;
        if (n.kind != Tok::Ident) syntax_error(n, "expected a variable name");
        declare(n);
        std::string mom = default_momentum_name(n.text);
        if (pos < end && tokens[pos].kind == Tok::Op && tokens[pos].text == ":") {
          ++pos;
          if (pos >= end || tokens[pos].kind != Tok::Ident)
            syntax_error(tokens[pos], "expected a momentum name after ':'");
          declare(tokens[pos]);
          mom = tokens[pos++].text;
        } else {
          if (!names.insert(mom).second) syntax_error(n, "'" + mom + "' declared twice");
        }
        coords.push_back(n.text);
        momenta.push_back(mom);
      }
    } else if (head.text == "param") {
      skip_colon();
      if (pos == end) syntax_error(head, "param needs at least one binding");
      while (pos < end) {
        const Token& n = tokens[pos++];
        if (n.kind == Tok::Op && n.text == ",") continue;
        if (n.kind != Tok::Ident) syntax_error(n, "expected a parameter name");
        declare(n);
        if (!(pos < end && tokens[pos].kind == Tok::Op && tokens[pos].text == "=")) {
          unbound.insert(n.text);
          throw Error(ErrorCode::UnboundParameter,
                      "parameter '" + n.text + "' must be bound to a rational value", n.line,
                      n.column);
        }
        ++pos;
        std::string literal;
        const Token& start = tokens[pos < end ? pos : end];
        if (pos < end && tokens[pos].kind == Tok::Op &&
            (tokens[pos].text == "-" || tokens[pos].text == "+"))
          literal += tokens[pos++].text;
        if (!(pos < end && tokens[pos].kind == Tok::Number))
          syntax_error(start, "expected a rational value for '" + n.text + "'");
        literal += tokens[pos++].text;
        if (pos + 1 < end && tokens[pos].kind == Tok::Op && tokens[pos].text == "/" &&
            tokens[pos + 1].kind == Tok::Number) {
          literal += "/" + tokens[pos + 1].text;
          pos += 2;
        }
        Rational value;
        try {
          value = parse_rational(literal);
        } catch (const Error&) {
          syntax_error(start, "malformed rational '" + literal + "'");
        }
        params[n.text] = value;
        ordered_params.emplace_back(n.text, value);
      }
    } else if (head.text == "lagrangian") {
      if (have_lagrangian) syntax_error(head, "lagrangian given twice");
      if (!(pos < end && tokens[pos].kind == Tok::Op && tokens[pos].text == ":"))
        syntax_error(tokens[pos], "expected ':' after lagrangian");
      ++pos;
      lagrangian_range = {pos, end};
      have_lagrangian = true;
    } else if (head.text == "gauge") {
      if (!(pos < end && tokens[pos].kind == Tok::Op && tokens[pos].text == ":"))
        syntax_error(tokens[pos], "expected ':' after gauge");
      ++pos;
      gauge_ranges.emplace_back(pos, end);
    } else { // keep
      skip_colon();
      while (pos < end) {
        const Token& n = tokens[pos++];
        if (n.kind == Tok::Op && n.text == ",") continue;
        if (n.kind != Tok::Ident) syntax_error(n, "expected a variable name");
        keep_tokens.push_back(n);
      }
    }
    pos = end;
  }

  if (coords.empty()) syntax_error(tokens[pos], "no variables declared (missing 'var')");
  if (!have_lagrangian) syntax_error(tokens[pos], "missing 'lagrangian:' section");

  LagrangianSource src;
  src.chart = PhaseSpaceChart(coords, momenta);
  src.parameters = ordered_params;

  Scope lag_scope{&src.chart, &params, &unbound, true, false};
  src.lagrangian = ExpressionParser(tokens, lagrangian_range.first, lagrangian_range.second,
                                    lag_scope)
                       .parse_all();

  Scope phase_scope{&src.chart, &params, &unbound, false, true};
  for (const auto& [b, e] : gauge_ranges) {
    Expression g = ExpressionParser(tokens, b, e, phase_scope).parse_all();
    auto affine = g.as_affine();
    if (!affine || affine->is_constant())
      throw Error(ErrorCode::UnsupportedExpression,
                  "gauge condition must be a non-constant affine expression", tokens[b].line,
                  tokens[b].column);
    src.gauges.push_back(*affine);
  }
  for (const auto& t : keep_tokens) {
    if (!src.chart.contains(t.text))
      throw Error(ErrorCode::UndeclaredIdentifier,
                  "keep refers to unknown variable '" + t.text + "'", t.line, t.column);
    src.keep.push_back(t.text);
  }
  return src;
}

Expression parse_expression(std::string_view text, const PhaseSpaceChart& chart,
                            const std::map<std::string, Rational>& parameters,
                            bool allow_velocities) {
  const std::vector<Token> tokens = tokenize(text);
  Scope scope{&chart, &parameters, nullptr, allow_velocities, true};
  return ExpressionParser(tokens, 0, tokens.size() - 1, scope).parse_all();
}

// ---------------------------------------------------------------- structure

StructuredLagrangian canonicalize(const LagrangianSource& source) {
  const PhaseSpaceChart& chart = source.chart;
  const std::size_t n = chart.size();
  std::map<std::string, std::size_t> vel_index;
  std::map<std::string, std::size_t> coord_index;
  for (std::size_t i = 0; i < n; ++i) {
    vel_index[velocity_name(chart.coordinates()[i])] = i;
    coord_index[chart.coordinates()[i]] = i;
  }

  StructuredLagrangian sl;
  sl.chart = chart;
  sl.kinetic = RationalMatrix(n, n);
  sl.coupling = RationalMatrix(n, n);
  sl.linear.assign(n, Rational(0));

  auto reject = [](const std::string& why) {
    throw Error(ErrorCode::UnsupportedVelocityStructure, why);
  };

  for (const Term& t : source.lagrangian.terms()) {
    for (const auto& f : t.trig)
      for (const auto& [name, c] : f.argument.coefficients())
        if (vel_index.count(name)) reject("velocity " + name + " inside a trigonometric factor");

    std::vector<std::size_t> vels; // with multiplicity
    Monomial coords;
    for (const auto& [name, e] : t.monomial) {
      if (auto it = vel_index.find(name); it != vel_index.end())
        for (int k = 0; k < e; ++k) vels.push_back(it->second);
      else
        coords[name] = e;
    }

    Expression single;
    if (vels.empty()) {
      Expression term(t.coefficient);
      for (const auto& [name, e] : t.monomial)
        term = term * Expression::variable(name).pow(static_cast<unsigned>(e));
      for (const auto& f : t.trig) term = term * Expression::trig(f.kind, f.argument);
      sl.potential -= term;
      continue;
    }
    if (vels.size() > 2) reject("velocity dependence beyond quadratic order");
    if (!t.trig.empty()) reject("velocity multiplied by a trigonometric factor");
    if (vels.size() == 2) {
      if (!coords.empty()) reject("quadratic velocity term with coordinate-dependent mass");
      const auto i = vels[0];
      const auto j = vels[1];
      if (i == j) {
        sl.kinetic(i, i) += 2 * t.coefficient;
      } else {
        sl.kinetic(i, j) += t.coefficient;
        sl.kinetic(j, i) += t.coefficient;
      }
      continue;
    }
    const auto i = vels[0];
    int cdeg = 0;
    for (const auto& [name, e] : coords) cdeg += e;
    if (cdeg == 0) {
      sl.linear[i] += t.coefficient;
    } else if (cdeg == 1) {
      sl.coupling(i, coord_index.at(coords.begin()->first)) += t.coefficient;
    } else {
      reject("velocity multiplied by a non-linear coordinate factor");
    }
  }
  return sl;
}

Expression StructuredLagrangian::to_expression() const {
  const std::size_t n = chart.size();
  std::vector<Expression> vel;
  std::vector<Expression> q;
  for (const auto& c : chart.coordinates()) {
    vel.push_back(Expression::variable(velocity_name(c)));
    q.push_back(Expression::variable(c));
  }
  Expression l = -potential;
  for (std::size_t i = 0; i < n; ++i) {
    l += vel[i] * vel[i] * Rational(kinetic(i, i) / 2);
    for (std::size_t j = i + 1; j < n; ++j) l += vel[i] * vel[j] * kinetic(i, j);
    for (std::size_t j = 0; j < n; ++j) l += vel[i] * q[j] * coupling(i, j);
    l += vel[i] * linear[i];
  }
  return l;
}

std::string print(const StructuredLagrangian& lagrangian) {
  std::ostringstream os;
  os << "var";
  const auto& chart = lagrangian.chart;
  for (std::size_t i = 0; i < chart.size(); ++i) {
    os << ' ' << chart.coordinates()[i];
    if (chart.momenta()[i] != default_momentum_name(chart.coordinates()[i]))
      os << ':' << chart.momenta()[i];
  }
  os << "\nlagrangian:\n  " << lagrangian.to_expression().to_string() << '\n';
  return os.str();
}

} // namespace dca
