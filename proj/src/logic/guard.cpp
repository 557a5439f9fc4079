#include "decoy/logic/guard.hpp"

#include <algorithm>

#include "lexer.hpp"

namespace decoy::logic {

struct Guard::Node {
  Kind kind;
  std::string name;
  std::vector<Guard> parts;
};

Guard Guard::truth() { return Guard(std::make_shared<const Node>(Node{Kind::True, {}, {}})); }
Guard Guard::falsity() { return Guard(std::make_shared<const Node>(Node{Kind::False, {}, {}})); }

Guard Guard::atom(std::string name) {
  return Guard(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}}));
}

Guard Guard::negate(Guard g) {
  switch (g.kind()) {
    case Kind::True: return falsity();
    case Kind::False: return truth();
    case Kind::Not: return g.node_->parts.front();
    default: return Guard(std::make_shared<const Node>(Node{Kind::Not, {}, {std::move(g)}}));
  }
}

Guard Guard::conj(std::vector<Guard> parts) {
  std::vector<Guard> kept;
  for (auto& p : parts) {
    if (p.kind() == Kind::False) return falsity();
    if (p.kind() == Kind::True) continue;
    if (p.kind() == Kind::And)
      kept.insert(kept.end(), p.node_->parts.begin(), p.node_->parts.end());
    else
      kept.push_back(std::move(p));
  }
  if (kept.empty()) return truth();
  if (kept.size() == 1) return kept.front();
  return Guard(std::make_shared<const Node>(Node{Kind::And, {}, std::move(kept)}));
}

Guard Guard::disj(std::vector<Guard> parts) {
  std::vector<Guard> kept;
  for (auto& p : parts) {
    if (p.kind() == Kind::True) return truth();
    if (p.kind() == Kind::False) continue;
    if (p.kind() == Kind::Or)
      kept.insert(kept.end(), p.node_->parts.begin(), p.node_->parts.end());
    else
      kept.push_back(std::move(p));
  }
  if (kept.empty()) return falsity();
  if (kept.size() == 1) return kept.front();
  return Guard(std::make_shared<const Node>(Node{Kind::Or, {}, std::move(kept)}));
}

Guard::Kind Guard::kind() const { return node_->kind; }

bool Guard::eval(const Valuation& sigma) const {
  switch (node_->kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: return sigma.contains(node_->name);
    case Kind::Not: return !node_->parts.front().eval(sigma);
    case Kind::And:
      return std::all_of(node_->parts.begin(), node_->parts.end(),
                         [&](const Guard& g) { return g.eval(sigma); });
    case Kind::Or:
      return std::any_of(node_->parts.begin(), node_->parts.end(),
                         [&](const Guard& g) { return g.eval(sigma); });
  }
  return false;
}

namespace {

int precedence(Guard::Kind k) {
  switch (k) {
    case Guard::Kind::Or: return 1;
    case Guard::Kind::And: return 2;
    default: return 3;
  }
}

}  // namespace

std::string Guard::to_string() const {
  switch (node_->kind) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Atom: return node_->name;
    case Kind::Not: {
      const Guard& inner = node_->parts.front();
      if (inner.kind() == Kind::Atom) return "!" + inner.to_string();
      return "!(" + inner.to_string() + ")";
    }
    case Kind::And:
    case Kind::Or: {
      const std::string sep = node_->kind == Kind::And ? " & " : " | ";
      std::string out;
      for (std::size_t i = 0; i < node_->parts.size(); ++i) {
        const Guard& p = node_->parts[i];
        if (i) out += sep;
        if (precedence(p.kind()) <= precedence(node_->kind))
          out += "(" + p.to_string() + ")";
        else
          out += p.to_string();
      }
      return out;
    }
  }
  return {};
}

void Guard::collect_props(std::set<std::string>& out) const {
  if (node_->kind == Kind::Atom) out.insert(node_->name);
  for (const auto& p : node_->parts) p.collect_props(out);
}

// ---------------------------------------------------------------------------

namespace {

using detail::Tok;
using detail::Token;

class GuardParser {
 public:
  explicit GuardParser(std::string_view text) : toks_(detail::tokenize(text)) {}

  Guard parse() {
    Guard g = disjunction();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return g;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& take() { return toks_[i_++]; }

  Guard disjunction() {
    std::vector<Guard> parts{conjunction()};
    while (peek().kind == Tok::Or) {
      take();
      parts.push_back(conjunction());
    }
    return parts.size() == 1 ? parts.front() : Guard::disj(std::move(parts));
  }

  Guard conjunction() {
    std::vector<Guard> parts{unary()};
    while (peek().kind == Tok::And) {
      take();
      parts.push_back(unary());
    }
    return parts.size() == 1 ? parts.front() : Guard::conj(std::move(parts));
  }

  Guard unary() {
    const Token& t = take();
    switch (t.kind) {
      case Tok::Not: return Guard::negate(unary());
      case Tok::True: return Guard::truth();
      case Tok::False: return Guard::falsity();
      case Tok::Ident: return Guard::atom(t.text);
      case Tok::LParen: {
        Guard g = disjunction();
        if (peek().kind != Tok::RParen) throw ParseError("expected ')'", peek().pos);
        take();
        return g;
      }
      case Tok::End: throw ParseError("unexpected end of guard", t.pos);
      case Tok::Next:
      case Tok::Eventually:
      case Tok::Until:
      case Tok::Reserved:
        throw ParseError("temporal operator '" + t.text + "' not allowed in a guard", t.pos);
      default: throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

// Shannon expansion on the first variable still in scope, so guards read in
// proposition order.
Guard build(std::span<const std::string> props, const std::vector<bool>& table) {
  const bool all_true = std::all_of(table.begin(), table.end(), [](bool b) { return b; });
  if (all_true) return Guard::truth();
  const bool all_false = std::none_of(table.begin(), table.end(), [](bool b) { return b; });
  if (all_false) return Guard::falsity();

  const std::size_t var = 0;
  const std::size_t half = table.size() / 2;
  std::vector<bool> lo(half), hi(half);
  for (std::size_t r = 0; r < half; ++r) {
    lo[r] = table[2 * r];
    hi[r] = table[2 * r + 1];
  }
  const auto rest = props.subspan(1);
  if (lo == hi) return build(rest, lo);

  const Guard x = Guard::atom(props[var]);
  const Guard g_lo = build(rest, lo);
  const Guard g_hi = build(rest, hi);
  if (g_lo.kind() == Guard::Kind::False) return Guard::conj({x, g_hi});
  if (g_hi.kind() == Guard::Kind::False) return Guard::conj({Guard::negate(x), g_lo});
  if (g_lo.kind() == Guard::Kind::True) return Guard::disj({Guard::negate(x), g_hi});
  if (g_hi.kind() == Guard::Kind::True) return Guard::disj({x, g_lo});
  return Guard::disj({Guard::conj({Guard::negate(x), g_lo}), Guard::conj({x, g_hi})});
}

}  // namespace

Guard parse_guard(std::string_view text) { return GuardParser(text).parse(); }

Guard guard_from_truth_table(std::span<const std::string> props, const std::vector<bool>& table) {
  if (table.size() != (std::size_t{1} << props.size()))
    throw std::invalid_argument("truth table size does not match proposition count");
  return build(props, table);
}

}  // namespace decoy::logic
