#pragma once
// Seeded random instances for the randomized property suites and the
// scalability check. Output depends only on the parameters and the seed.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "decoy/arena.hpp"
#include "decoy/logic/dfa.hpp"

namespace decoy {

// mt19937_64 with a fixed reduction, so instances are identical across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform-ish in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  // Uniform-ish in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  // True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

 private:
  std::mt19937_64 engine_;
};

struct ArenaParams {
  std::size_t states = 10;
  std::size_t branching = 3;  // max successors per state
  std::size_t aps = 2;        // propositions p0, p1, ...
  std::uint32_t label_percent = 20;  // chance a state carries a given proposition
  std::uint32_t attacker_percent = 50;  // chance a state belongs to P2
};

struct InstanceParams {
  std::size_t min_states = 6;
  std::size_t max_states = 12;
  std::size_t branching = 3;
  std::size_t aps = 2;
  std::uint32_t label_percent = 35;
  std::uint32_t attacker_percent = 60;
  std::size_t min_dfa_states = 2;
  std::size_t max_dfa_states = 4;
  std::size_t candidates = 4;
  std::size_t k = 2;
};

struct Instance {
  Arena arena;
  logic::Dfa dfa;
  std::vector<std::string> candidates;
  std::size_t k;
};

// States s0..s{n-1}, owners drawn per state, action "x->y" per edge owned by x's owner.
Arena random_arena(const ArenaParams& params, Rng& rng);
// States q0..q{n-1}; q{n-1} is the only accepting state and absorbs. Guards
// range over `props`.
logic::Dfa random_dfa(const std::vector<std::string>& props, std::size_t states, Rng& rng);

Instance random_instance(const InstanceParams& params, std::uint64_t seed);

// About product_states / 4 arena states with the 4-state DFA of F p0 & F p1,
// 20 candidates and budget 5.
Instance scalability_instance(std::size_t product_states, std::uint64_t seed);

}  // namespace decoy
