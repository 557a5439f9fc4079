#pragma once
// Syntactically co-safe LTL: negation only on atoms, no weak until.

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "decoy/error.hpp"

namespace decoy::logic {

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : InputError("syntax error at position " + std::to_string(pos) + ": " + what), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Negation above a non-atom (after desugaring implications).
class CoSafetyError : public ParseError {
 public:
  using ParseError::ParseError;
};

class ScltlFormula {
 public:
  enum class Kind { True, False, Atom, NegAtom, And, Or, Next, Until, Eventually };

  static ScltlFormula truth();
  static ScltlFormula falsity();
  static ScltlFormula atom(std::string name);
  static ScltlFormula neg_atom(std::string name);
  static ScltlFormula conj(ScltlFormula a, ScltlFormula b);
  static ScltlFormula disj(ScltlFormula a, ScltlFormula b);
  static ScltlFormula next(ScltlFormula a);
  static ScltlFormula until(ScltlFormula a, ScltlFormula b);
  static ScltlFormula eventually(ScltlFormula a);

  Kind kind() const;
  // Proposition name for Atom / NegAtom.
  const std::string& name() const;
  // Operands: 1 for Next/Eventually, 2 for And/Or/Until.
  std::vector<ScltlFormula> args() const;

  std::set<std::string> atoms() const;
  // Fully parenthesized, re-parseable rendering.
  std::string to_string() const;

  friend bool operator==(const ScltlFormula& a, const ScltlFormula& b);

 private:
  struct Node;
  explicit ScltlFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Grammar (loosest first): `->` (right assoc), `|`, `&`, `U` (right assoc),
// then prefix `!`, `X`, `F`. `W`, `G`, `R` and the proposition `decoy` are
// rejected.
ScltlFormula parse_scltl(std::string_view text);

}  // namespace decoy::logic
