#include "caff/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace caff {

ExprPtr make_const(double value) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Constant;
  e->number = value;
  return e;
}

ExprPtr make_var(int index) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Variable;
  e->var = index;
  return e;
}

ExprPtr make_neg(ExprPtr a) {
  if (a->kind == Expr::Kind::Constant) return make_const(-a->number);
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Neg;
  e->lhs = std::move(a);
  return e;
}

ExprPtr make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Binary;
  e->op = op;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

ExprPtr make_pow(ExprPtr base, double exponent) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Pow;
  e->number = exponent;
  e->lhs = std::move(base);
  return e;
}

ExprPtr make_call(Func f, ExprPtr arg) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Call;
  e->func = f;
  e->lhs = std::move(arg);
  return e;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Constant:
      return a->number == b->number;
    case Expr::Kind::Variable:
      return a->var == b->var;
    case Expr::Kind::Neg:
      return expr_equal(a->lhs, b->lhs);
    case Expr::Kind::Binary:
      return a->op == b->op && expr_equal(a->lhs, b->lhs) &&
             expr_equal(a->rhs, b->rhs);
    case Expr::Kind::Pow:
      return a->number == b->number && expr_equal(a->lhs, b->lhs);
    case Expr::Kind::Call:
      return a->func == b->func && expr_equal(a->lhs, b->lhs);
  }
  return false;
}

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* func_name(Func f) {
  switch (f) {
    case Func::Sqrt: return "sqrt";
    case Func::Ln: return "ln";
    case Func::Exp: return "exp";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
  }
  return "?";
}

const char* op_name(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
  }
  return "?";
}

}  // namespace

std::string print_expr(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Constant:
      return format_number(e->number);
    case Expr::Kind::Variable:
      return "u" + std::to_string(e->var + 1);
    case Expr::Kind::Neg:
      return "(-" + print_expr(e->lhs) + ")";
    case Expr::Kind::Binary:
      return "(" + print_expr(e->lhs) + op_name(e->op) + print_expr(e->rhs) +
             ")";
    case Expr::Kind::Pow:
      return "(" + print_expr(e->lhs) + "^" + format_number(e->number) + ")";
    case Expr::Kind::Call:
      return std::string(func_name(e->func)) + "(" + print_expr(e->lhs) + ")";
  }
  return "?";
}

double eval_value(const ExprPtr& e, const std::vector<double>& point) {
  switch (e->kind) {
    case Expr::Kind::Constant:
      return e->number;
    case Expr::Kind::Variable:
      if (e->var < 0 || e->var >= static_cast<int>(point.size())) {
        throw Error("variable index out of range for evaluation point");
      }
      return point[e->var];
    case Expr::Kind::Neg:
      return -eval_value(e->lhs, point);
    case Expr::Kind::Binary: {
      const double a = eval_value(e->lhs, point);
      const double b = eval_value(e->rhs, point);
      switch (e->op) {
        case BinOp::Add: return a + b;
        case BinOp::Sub: return a - b;
        case BinOp::Mul: return a * b;
        case BinOp::Div:
          if (b == 0.0) throw EvalDomainError("division by zero", print_expr(e));
          return a / b;
      }
      return 0.0;
    }
    case Expr::Kind::Pow: {
      const double a = eval_value(e->lhs, point);
      if (e->number != std::rint(e->number) && !(a > 0.0)) {
        throw EvalDomainError("fractional power of non-positive base",
                              print_expr(e));
      }
      return std::pow(a, e->number);
    }
    case Expr::Kind::Call: {
      const double a = eval_value(e->lhs, point);
      switch (e->func) {
        case Func::Sqrt:
          if (!(a > 0.0))
            throw EvalDomainError("sqrt of non-positive value", print_expr(e));
          return std::sqrt(a);
        case Func::Ln:
          if (!(a > 0.0))
            throw EvalDomainError("ln of non-positive value", print_expr(e));
          return std::log(a);
        case Func::Exp: return std::exp(a);
        case Func::Sin: return std::sin(a);
        case Func::Cos: return std::cos(a);
      }
      return 0.0;
    }
  }
  return 0.0;
}

Jet eval_jet(const ExprPtr& e, const std::vector<Jet>& vars) {
  switch (e->kind) {
    case Expr::Kind::Constant:
      return Jet(vars.at(0).nvars(), e->number);
    case Expr::Kind::Variable:
      if (e->var < 0 || e->var >= static_cast<int>(vars.size())) {
        throw Error("variable index out of range for evaluation point");
      }
      return vars[e->var];
    case Expr::Kind::Neg:
      return -eval_jet(e->lhs, vars);
    case Expr::Kind::Binary: {
      const Jet a = eval_jet(e->lhs, vars);
      const Jet b = eval_jet(e->rhs, vars);
      try {
        switch (e->op) {
          case BinOp::Add: return a + b;
          case BinOp::Sub: return a - b;
          case BinOp::Mul: return a * b;
          case BinOp::Div: return a / b;
        }
      } catch (const SingularJetError& err) {
        throw EvalDomainError(err.what(), print_expr(e));
      }
      return Jet(vars.at(0).nvars());
    }
    case Expr::Kind::Pow: {
      const Jet a = eval_jet(e->lhs, vars);
      try {
        return pow(a, e->number);
      } catch (const Error& err) {
        throw EvalDomainError(err.what(), print_expr(e));
      }
    }
    case Expr::Kind::Call: {
      const Jet a = eval_jet(e->lhs, vars);
      try {
        switch (e->func) {
          case Func::Sqrt: return sqrt(a);
          case Func::Ln: return log(a);
          case Func::Exp: return exp(a);
          case Func::Sin: return sin(a);
          case Func::Cos: return cos(a);
        }
      } catch (const JetDomainError& err) {
        throw EvalDomainError(err.what(), print_expr(e));
      }
      return Jet(vars.at(0).nvars());
    }
  }
  return Jet(vars.at(0).nvars());
}

Jet eval_jet_at(const ExprPtr& e, const std::vector<double>& point) {
  const int n = static_cast<int>(point.size());
  std::vector<Jet> vars;
  vars.reserve(point.size());
  for (int i = 0; i < n; ++i) vars.push_back(Jet::variable(i, point[i], n));
  return eval_jet(e, vars);
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Lexer {
  const std::string& text;
  int line;
  std::size_t pos = 0;
  int col_offset = 0;  // column of text[0] within the original line

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, line, col_offset + static_cast<int>(at) + 1);
  }

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      fail(std::string("expected '") + c + "'", pos);
    }
  }

  double number() {
    skip_ws();
    const std::size_t start = pos;
    std::size_t end = pos;
    while (end < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[end])) ||
            text[end] == '.')) {
      ++end;
    }
    if (end < text.size() && (text[end] == 'e' || text[end] == 'E')) {
      std::size_t e = end + 1;
      if (e < text.size() && (text[e] == '+' || text[e] == '-')) ++e;
      if (e < text.size() && std::isdigit(static_cast<unsigned char>(text[e]))) {
        ++e;
        while (e < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[e]))) {
          ++e;
        }
        end = e;
      }
    }
    if (end == start) fail("expected a number", pos);
    try {
      std::size_t used = 0;
      const double v = std::stod(text.substr(start, end - start), &used);
      if (used != end - start) fail("malformed number literal", start);
      pos = end;
      return v;
    } catch (const std::exception&) {
      fail("malformed number literal", start);
    }
  }

  std::string identifier() {
    skip_ws();
    std::size_t end = pos;
    while (end < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[end])) ||
            text[end] == '_')) {
      ++end;
    }
    std::string id = text.substr(pos, end - pos);
    pos = end;
    return id;
  }
};

struct ExprParser {
  Lexer lex;
  int nvars;  // -1 disables the range check

  ExprPtr parse() {
    ExprPtr e = expression();
    if (!lex.eof()) lex.fail("unexpected trailing input", lex.pos);
    return e;
  }

  ExprPtr expression() {
    ExprPtr e = term();
    while (true) {
      if (lex.accept('+')) {
        e = make_binary(BinOp::Add, e, term());
      } else if (lex.accept('-')) {
        e = make_binary(BinOp::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  ExprPtr term() {
    ExprPtr e = unary();
    while (true) {
      if (lex.accept('*')) {
        e = make_binary(BinOp::Mul, e, unary());
      } else if (lex.accept('/')) {
        e = make_binary(BinOp::Div, e, unary());
      } else {
        return e;
      }
    }
  }

  ExprPtr unary() {
    if (lex.accept('-')) return make_neg(unary());
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (lex.accept('^')) return make_pow(base, exponent());
    return base;
  }

  // `^` binds a real literal and associates to the right; a chain of
  // literal exponents folds numerically.
  double exponent() {
    double sign = 1.0;
    while (lex.accept('-')) sign = -sign;
    double v = lex.number();
    if (lex.accept('^')) v = std::pow(v, exponent());
    return sign * v;
  }

  ExprPtr atom() {
    const char c = lex.peek();
    if (c == '(') {
      lex.expect('(');
      ExprPtr e = expression();
      lex.expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return make_const(lex.number());
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t at = lex.pos;
      const std::string id = lex.identifier();
      if (id == "sqrt" || id == "ln" || id == "exp" || id == "sin" ||
          id == "cos") {
        Func f = Func::Sqrt;
        if (id == "ln") f = Func::Ln;
        if (id == "exp") f = Func::Exp;
        if (id == "sin") f = Func::Sin;
        if (id == "cos") f = Func::Cos;
        lex.expect('(');
        ExprPtr arg = expression();
        lex.expect(')');
        return make_call(f, arg);
      }
      if (id.size() >= 2 && id[0] == 'u') {
        bool digits = true;
        for (std::size_t i = 1; i < id.size(); ++i) {
          digits = digits && std::isdigit(static_cast<unsigned char>(id[i]));
        }
        if (digits && id[1] != '0') {
          const int index = std::stoi(id.substr(1)) - 1;
          if (nvars >= 0 && index >= nvars) {
            lex.fail("unknown identifier '" + id + "' (surface has " +
                         std::to_string(nvars) + " variables)",
                     at);
          }
          return make_var(index);
        }
      }
      lex.fail("unknown identifier '" + id + "'", at);
    }
    lex.fail("expected a number, variable, function or '('", lex.pos);
  }
};

std::string strip_comment(const std::string& line) {
  const std::size_t hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

ExprPtr parse_expression(const std::string& text, int nvars) {
  ExprParser p{Lexer{text, 1, 0, 0}, nvars};
  return p.parse();
}

SurfaceSpec parse_surface(const std::string& text) {
  struct RawLine {
    std::string key;
    std::string value;
    int line_no;
    int value_col;
  };
  std::vector<RawLine> entries;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = strip_comment(line);
    // Semicolons separate statements within a line, so one-liners like
    // "n=2; x1=u1; ..." parse the same as the multi-line form.
    std::size_t start = 0;
    while (start <= body.size()) {
      std::size_t end = body.find(';', start);
      if (end == std::string::npos) end = body.size();
      const std::string stmt = body.substr(start, end - start);
      if (!trim(stmt).empty()) {
        const std::size_t eq = stmt.find('=');
        if (eq == std::string::npos) {
          throw ParseError("expected key=value", line_no,
                           static_cast<int>(start) + 1);
        }
        RawLine raw;
        raw.key = trim(stmt.substr(0, eq));
        raw.value = stmt.substr(eq + 1);
        raw.line_no = line_no;
        raw.value_col = static_cast<int>(start + eq) + 1;
        if (raw.key.empty()) {
          throw ParseError("empty key", line_no, static_cast<int>(start) + 1);
        }
        entries.push_back(std::move(raw));
      }
      start = end + 1;
    }
  }

  SurfaceSpec spec;
  int n = -1;
  for (const RawLine& raw : entries) {
    if (raw.key == "n") {
      try {
        n = std::stoi(trim(raw.value));
      } catch (const std::exception&) {
        throw ParseError("n must be an integer", raw.line_no, raw.value_col);
      }
      if (n < 1) {
        throw ParseError("n must be >= 1", raw.line_no, raw.value_col);
      }
    }
  }
  if (n < 0) throw ParseError("missing n=<int> line", line_no ? line_no : 1, 1);
  spec.nvars = n;
  spec.components.assign(n + 1, nullptr);

  for (const RawLine& raw : entries) {
    if (raw.key == "n") continue;
    if (raw.key == "name") {
      spec.name = trim(raw.value);
      continue;
    }
    ExprParser parser{Lexer{raw.value, raw.line_no, 0, raw.value_col}, n};
    if (raw.key == "guard") {
      spec.guard = parser.parse();
      continue;
    }
    if (raw.key.size() >= 2 && raw.key[0] == 'x') {
      int idx = 0;
      try {
        idx = std::stoi(raw.key.substr(1));
      } catch (const std::exception&) {
        idx = 0;
      }
      if (idx >= 1 && idx <= n + 1) {
        if (spec.components[idx - 1]) {
          throw ParseError("duplicate component " + raw.key, raw.line_no, 1);
        }
        spec.components[idx - 1] = parser.parse();
        continue;
      }
      throw ParseError("component " + raw.key + " out of range (need x1..x" +
                           std::to_string(n + 1) + ")",
                       raw.line_no, 1);
    }
    throw ParseError("unknown key '" + raw.key + "'", raw.line_no, 1);
  }

  for (int i = 0; i <= n; ++i) {
    if (!spec.components[i]) {
      throw ParseError("missing component x" + std::to_string(i + 1),
                       line_no ? line_no : 1, 1);
    }
  }
  return spec;
}

std::string print_surface(const SurfaceSpec& spec) {
  std::ostringstream out;
  if (!spec.name.empty()) out << "name=" << spec.name << "\n";
  out << "n=" << spec.nvars << "\n";
  for (std::size_t i = 0; i < spec.components.size(); ++i) {
    out << "x" << (i + 1) << "=" << print_expr(spec.components[i]) << "\n";
  }
  if (spec.guard) out << "guard=" << print_expr(spec.guard) << "\n";
  return out.str();
}

bool spec_equal(const SurfaceSpec& a, const SurfaceSpec& b) {
  if (a.name != b.name || a.nvars != b.nvars ||
      a.components.size() != b.components.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    if (!expr_equal(a.components[i], b.components[i])) return false;
  }
  if (static_cast<bool>(a.guard) != static_cast<bool>(b.guard)) return false;
  return !a.guard || expr_equal(a.guard, b.guard);
}

}  // namespace caff
