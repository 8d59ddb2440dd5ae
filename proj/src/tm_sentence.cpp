#include <cctype>

#include "mtg/tm.hpp"

namespace mtg::tm {

void ArithmeticSentence::validate() const {
  for (size_t i = 0; i < quantifiers.size(); ++i) {
    Quantifier expect =
        (i % 2 == 0) ? Quantifier::Exists : Quantifier::ForAll;
    if (quantifiers[i] != expect)
      throw std::invalid_argument(
          "quantifier block must alternate starting with E");
  }
}

static BigInt eval_node(const Poly& p, const BigInt& x,
                        const std::vector<BigInt>& vals) {
  switch (p.kind) {
    case Poly::Kind::Const:
      return p.value;
    case Poly::Kind::Var:
      if (p.var == 0) return x;
      if (p.var < 1 || p.var > static_cast<int>(vals.size()))
        throw std::invalid_argument("variable arity mismatch");
      return vals[p.var - 1];
    case Poly::Kind::Add:
      return eval_node(p.args[0], x, vals) + eval_node(p.args[1], x, vals);
    case Poly::Kind::Sub:
      return eval_node(p.args[0], x, vals) - eval_node(p.args[1], x, vals);
    case Poly::Kind::Mul:
      return eval_node(p.args[0], x, vals) * eval_node(p.args[1], x, vals);
  }
  throw std::logic_error("bad poly node");
}

BigInt eval_polynomial(const ArithmeticSentence& s, const BigInt& x,
                       const std::vector<BigInt>& vals) {
  if (static_cast<int>(vals.size()) != s.n())
    throw std::invalid_argument("value list arity mismatch");
  return eval_node(s.polynomial, x, vals);
}

// ---------------------------------------------------------------------------
// Sentence grammar:  quantifier-prefix ':' '(' expr '=' '0' ')'
//   prefix := (('E'|'A') 'y'<k>)*     -- k = 1..n in order, alternating from E
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := integer | 'x' | 'y'<k> | '(' expr ')' | '-' factor

namespace {

struct Parser {
  const std::string& text;
  size_t pos = 0;
  int n = 0;

  explicit Parser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  char get() {
    skip_ws();
    if (pos >= text.size()) throw std::invalid_argument("unexpected end of sentence");
    return text[pos++];
  }
  void expect(char c) {
    char g = get();
    if (g != c)
      throw std::invalid_argument(std::string("expected '") + c + "' got '" + g +
                                  "'");
  }

  int parse_var_index() {
    // after 'y'
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw std::invalid_argument("expected index after 'y'");
    int k = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      k = k * 10 + (text[pos++] - '0');
    return k;
  }

  Poly parse_factor() {
    char c = peek();
    if (c == '-') {
      get();
      return Poly::node(Poly::Kind::Sub, Poly::constant(0), parse_factor());
    }
    if (c == '(') {
      get();
      Poly p = parse_expr();
      expect(')');
      return p;
    }
    if (c == 'x') {
      get();
      return Poly::variable(0);
    }
    if (c == 'y') {
      get();
      int k = parse_var_index();
      if (k < 1 || k > n)
        throw std::invalid_argument("y" + std::to_string(k) +
                                    " not bound by the quantifier prefix");
      return Poly::variable(k);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      BigInt v = 0;
      skip_ws();
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        v = v * 10 + (text[pos++] - '0');
      return Poly::constant(v);
    }
    throw std::invalid_argument(std::string("unexpected character '") + c + "'");
  }

  Poly parse_term() {
    Poly p = parse_factor();
    while (peek() == '*') {
      get();
      p = Poly::node(Poly::Kind::Mul, std::move(p), parse_factor());
    }
    return p;
  }

  Poly parse_expr() {
    Poly p = parse_term();
    while (true) {
      char c = peek();
      if (c == '+' || c == '-') {
        get();
        p = Poly::node(c == '+' ? Poly::Kind::Add : Poly::Kind::Sub,
                       std::move(p), parse_term());
      } else {
        return p;
      }
    }
  }
};

}  // namespace

ArithmeticSentence parse_sentence(const std::string& text) {
  Parser p(text);
  ArithmeticSentence s;
  s.source = text;
  while (true) {
    char c = p.peek();
    if (c != 'E' && c != 'A') break;
    p.get();
    p.expect('y');
    int k = p.parse_var_index();
    if (k != p.n + 1)
      throw std::invalid_argument("quantifier variables must be y1, y2, ... in order");
    s.quantifiers.push_back(c == 'E' ? Quantifier::Exists : Quantifier::ForAll);
    p.n = k;
  }
  p.expect(':');
  p.expect('(');
  s.polynomial = p.parse_expr();
  p.expect('=');
  if (p.get() != '0') throw std::invalid_argument("right-hand side must be 0");
  p.expect(')');
  if (p.peek() != '\0') throw std::invalid_argument("trailing input after sentence");
  s.validate();
  return s;
}

// ---------------------------------------------------------------------------
// Inverse-unary codec. Symbol ids here follow the search-machine alphabet:
// 0 = blank, kDivider = divider.

std::vector<Symbol> encode_inputs(const InputAssignment& vals) {
  std::vector<Symbol> cells;
  for (int64_t m : vals.values) {
    if (m < 0) throw std::invalid_argument("inputs are natural numbers");
    for (int64_t i = 0; i < m; ++i) cells.push_back(TuringMachineSpec::kBlank);
    cells.push_back(kDivider);
  }
  return cells;
}

InputAssignment decode_inputs(const std::vector<Symbol>& cells) {
  InputAssignment vals;
  int64_t run = 0;
  bool pending = false;
  for (Symbol c : cells) {
    if (c == TuringMachineSpec::kBlank) {
      ++run;
      pending = true;
    } else if (c == kDivider) {
      vals.values.push_back(run);
      run = 0;
      pending = false;
    } else {
      throw std::invalid_argument("unexpected symbol in input region");
    }
  }
  if (pending) throw std::invalid_argument("trailing blanks without divider");
  return vals;
}

}  // namespace mtg::tm
