#include "decoy/logic/scltl.hpp"

#include "decoy/arena.hpp"
#include "lexer.hpp"

namespace decoy::logic {

struct ScltlFormula::Node {
  Kind kind;
  std::string name;
  std::vector<ScltlFormula> args;
};

ScltlFormula ScltlFormula::truth() { return ScltlFormula(std::make_shared<const Node>(Node{Kind::True, {}, {}})); }
ScltlFormula ScltlFormula::falsity() {
  return ScltlFormula(std::make_shared<const Node>(Node{Kind::False, {}, {}}));
}
ScltlFormula ScltlFormula::atom(std::string name) {
  return ScltlFormula(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}}));
}
ScltlFormula ScltlFormula::neg_atom(std::string name) {
  return ScltlFormula(std::make_shared<const Node>(Node{Kind::NegAtom, std::move(name), {}}));
}
ScltlFormula ScltlFormula::conj(ScltlFormula a, ScltlFormula b) {
  return ScltlFormula(std::make_shared<const Node>(Node{Kind::And, {}, {std::move(a), std::move(b)}}));
}
ScltlFormula ScltlFormula::disj(ScltlFormula a, ScltlFormula b) {
  return ScltlFormula(std::make_shared<const Node>(Node{Kind::Or, {}, {std::move(a), std::move(b)}}));
}
ScltlFormula ScltlFormula::next(ScltlFormula a) {
  return ScltlFormula(std::make_shared<const Node>(Node{Kind::Next, {}, {std::move(a)}}));
}
ScltlFormula ScltlFormula::until(ScltlFormula a, ScltlFormula b) {
  return ScltlFormula(std::make_shared<const Node>(Node{Kind::Until, {}, {std::move(a), std::move(b)}}));
}
ScltlFormula ScltlFormula::eventually(ScltlFormula a) {
  return ScltlFormula(std::make_shared<const Node>(Node{Kind::Eventually, {}, {std::move(a)}}));
}

ScltlFormula::Kind ScltlFormula::kind() const { return node_->kind; }
const std::string& ScltlFormula::name() const { return node_->name; }
std::vector<ScltlFormula> ScltlFormula::args() const { return node_->args; }

std::set<std::string> ScltlFormula::atoms() const {
  std::set<std::string> out;
  if (node_->kind == Kind::Atom || node_->kind == Kind::NegAtom) out.insert(node_->name);
  for (const auto& a : node_->args) out.merge(a.atoms());
  return out;
}

std::string ScltlFormula::to_string() const {
  const auto& a = node_->args;
  switch (node_->kind) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Atom: return node_->name;
    case Kind::NegAtom: return "!" + node_->name;
    case Kind::And: return "(" + a[0].to_string() + " & " + a[1].to_string() + ")";
    case Kind::Or: return "(" + a[0].to_string() + " | " + a[1].to_string() + ")";
    case Kind::Next: return "X " + a[0].to_string();
    case Kind::Until: return "(" + a[0].to_string() + " U " + a[1].to_string() + ")";
    case Kind::Eventually: return "F " + a[0].to_string();
  }
  return {};
}

bool operator==(const ScltlFormula& x, const ScltlFormula& y) {
  if (x.node_ == y.node_) return true;
  if (x.node_->kind != y.node_->kind || x.node_->name != y.node_->name) return false;
  return x.node_->args == y.node_->args;
}

// ---------------------------------------------------------------------------

namespace {

using detail::Tok;
using detail::Token;
using Kind = ScltlFormula::Kind;

ScltlFormula negate_at(const ScltlFormula& f, std::size_t pos) {
  switch (f.kind()) {
    case Kind::Atom: return ScltlFormula::neg_atom(f.name());
    case Kind::NegAtom: return ScltlFormula::atom(f.name());
    case Kind::True: return ScltlFormula::falsity();
    case Kind::False: return ScltlFormula::truth();
    default:
      throw CoSafetyError("negation above a non-atomic formula is outside scLTL", pos);
  }
}

class ScltlParser {
 public:
  explicit ScltlParser(std::string_view text) : toks_(detail::tokenize(text)) {}

  ScltlFormula parse() {
    ScltlFormula f = implication();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& take() { return toks_[i_++]; }

  ScltlFormula implication() {
    const std::size_t pos = peek().pos;
    ScltlFormula lhs = disjunction();
    if (peek().kind != Tok::Implies) return lhs;
    take();
    ScltlFormula rhs = implication();
    // a -> b  ==  !a | b
    return ScltlFormula::disj(negate_at(lhs, pos), std::move(rhs));
  }

  ScltlFormula disjunction() {
    ScltlFormula f = conjunction();
    while (peek().kind == Tok::Or) {
      take();
      f = ScltlFormula::disj(std::move(f), conjunction());
    }
    return f;
  }

  ScltlFormula conjunction() {
    ScltlFormula f = until();
    while (peek().kind == Tok::And) {
      take();
      f = ScltlFormula::conj(std::move(f), until());
    }
    return f;
  }

  ScltlFormula until() {
    ScltlFormula lhs = unary();
    if (peek().kind == Tok::Reserved) reserved(peek());
    if (peek().kind != Tok::Until) return lhs;
    take();
    return ScltlFormula::until(std::move(lhs), until());
  }

  ScltlFormula unary() {
    const Token& t = take();
    switch (t.kind) {
      case Tok::Not: return negate_at(unary(), t.pos);
      case Tok::Next: return ScltlFormula::next(unary());
      case Tok::Eventually: return ScltlFormula::eventually(unary());
      case Tok::True: return ScltlFormula::truth();
      case Tok::False: return ScltlFormula::falsity();
      case Tok::Ident:
        if (t.text == kDecoyProp)
          throw ParseError("proposition 'decoy' is reserved and may not appear in a formula", t.pos);
        return ScltlFormula::atom(t.text);
      case Tok::LParen: {
        ScltlFormula f = implication();
        if (peek().kind != Tok::RParen) throw ParseError("expected ')'", peek().pos);
        take();
        return f;
      }
      case Tok::Reserved: reserved(t);
      case Tok::End: throw ParseError("unexpected end of formula", t.pos);
      default: throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  [[noreturn]] static void reserved(const Token& t) {
    throw ParseError("operator '" + t.text + "' is not part of scLTL", t.pos);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

ScltlFormula parse_scltl(std::string_view text) { return ScltlParser(text).parse(); }

}  // namespace decoy::logic
