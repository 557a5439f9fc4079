#pragma once
// Graphviz export. Attacker states are boxes, defender states ellipses,
// accepting product states double-bordered, decoy states red, DSWin blue.

#include <string>

#include "decoy/arena.hpp"
#include "decoy/logic/dfa.hpp"
#include "decoy/product.hpp"
#include "decoy/solver.hpp"

namespace decoy {

struct ProductDotOptions {
  const StateSet* only = nullptr;       // draw just these states (trimming)
  const StateSet* dswin = nullptr;      // filled blue
  const Strategy* strategy = nullptr;   // chosen edges drawn bold
  std::string name = "product";
};

std::string arena_dot(const Arena& arena);
std::string dfa_dot(const logic::Dfa& dfa);
std::string product_dot(const ProductGame& game, const ProductDotOptions& options = {});

}  // namespace decoy
