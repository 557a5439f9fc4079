#include <doctest.h>

#include <functional>
#include <random>

#include "decoy/error.hpp"
#include "decoy/logic/dfa.hpp"
#include "decoy/logic/guard.hpp"
#include "decoy/logic/scltl.hpp"
#include "oracles.hpp"

using namespace decoy;
using namespace decoy::logic;

namespace {

// Enumerates every word over `props` of length <= max_len.
void for_each_word(const std::vector<std::string>& props, std::size_t max_len,
                   const std::function<void(const std::vector<Valuation>&)>& fn, bool singletons = false) {
  std::vector<Valuation> letters;
  for (std::uint32_t m = 0; m < (1u << props.size()); ++m)
    if (!singletons || __builtin_popcount(m) <= 1) letters.push_back(oracle::letter(props, m));
  std::vector<Valuation> w;
  std::function<void()> rec = [&] {
    fn(w);
    if (w.size() == max_len) return;
    for (const auto& l : letters) {
      w.push_back(l);
      rec();
      w.pop_back();
    }
  };
  rec();
}

ScltlFormula random_formula(std::mt19937_64& rng, int depth) {
  const char* props[] = {"p", "q"};
  const auto pick = rng() % (depth <= 0 ? 3 : 10);
  const std::string a = props[rng() % 2];
  switch (pick) {
    case 0: return ScltlFormula::atom(a);
    case 1: return ScltlFormula::neg_atom(a);
    case 2: return rng() % 4 == 0 ? ScltlFormula::truth() : ScltlFormula::atom(a);
    case 3: return ScltlFormula::conj(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 4:
    case 5: return ScltlFormula::disj(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 6: return ScltlFormula::next(random_formula(rng, depth - 1));
    case 7: return ScltlFormula::until(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    default: return ScltlFormula::eventually(random_formula(rng, depth - 1));
  }
}

std::size_t syntax_error_position(std::string_view text) {
  try {
    parse_scltl(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  return std::string::npos;
}

const std::vector<std::string> kFig1Props{"f", "g", "n", "o"};

}  // namespace

TEST_CASE("guards") {
  const Guard g = parse_guard("!f & !g & (n | o)");
  CHECK(g.eval({"n"}));
  CHECK_FALSE(g.eval({"f", "n"}));
  CHECK_FALSE(g.eval({}));
  CHECK(g.to_string() == "!f & !g & (n | o)");
  CHECK(parse_guard("true").eval({}));
  CHECK_FALSE(parse_guard("a & false").eval({"a"}));
  CHECK(parse_guard("!!a").to_string() == "a");
  CHECK_THROWS_AS(parse_guard("F a"), ParseError);
  CHECK_THROWS_AS(parse_guard("a &"), ParseError);
  CHECK_THROWS_AS(parse_guard("(a"), ParseError);
}

TEST_CASE("guard from truth table agrees with the table") {
  const std::vector<std::string> props{"a", "b", "c"};
  std::mt19937_64 rng(3);
  for (int t = 0; t < 256; ++t) {
    std::vector<bool> table(8);
    for (std::size_t r = 0; r < 8; ++r) table[r] = (t >> r) & 1;
    const Guard g = guard_from_truth_table(props, table);
    for (std::uint32_t r = 0; r < 8; ++r) CHECK(g.eval(oracle::letter(props, r)) == table[r]);
    // the printed form parses back to the same function
    const Guard back = parse_guard(g.to_string());
    for (std::uint32_t r = 0; r < 8; ++r) CHECK(back.eval(oracle::letter(props, r)) == table[r]);
  }
}

TEST_CASE("scLTL parsing") {
  CHECK(parse_scltl("F(n | o) & (f -> F n)").to_string() == "(F (n | o) & (!f | F n))");
  CHECK(parse_scltl("a | b & c").to_string() == "(a | (b & c))");
  CHECK(parse_scltl("a U b U c").to_string() == "(a U (b U c))");
  CHECK(parse_scltl("a -> b -> c").to_string() == "(!a | (!b | c))");
  CHECK(parse_scltl("X F !a").to_string() == "X F !a");
  CHECK(parse_scltl("!true").kind() == ScltlFormula::Kind::False);
  CHECK(parse_scltl("!!p") == parse_scltl("p"));
  const auto f = parse_scltl("(a U !b) & X c");
  CHECK(parse_scltl(f.to_string()) == f);
  CHECK(f.atoms() == std::set<std::string>{"a", "b", "c"});
}

TEST_CASE("scLTL rejects non-co-safe input with a position") {
  CHECK(syntax_error_position("a & ") == 4);
  CHECK(syntax_error_position("a W b") == 2);
  CHECK(syntax_error_position("G a") == 0);
  CHECK(syntax_error_position("(a | b") == 6);
  CHECK(syntax_error_position("a $ b") == 2);
  CHECK_THROWS_AS(parse_scltl("!(a & b)"), CoSafetyError);
  CHECK_THROWS_AS(parse_scltl("F a -> b"), CoSafetyError);
  CHECK_THROWS_AS(parse_scltl("F decoy"), ParseError);
  try {
    parse_scltl("a R b");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("not part of scLTL") != std::string::npos);
  }
}

TEST_CASE("DFA validation reports a witness") {
  auto make = [](std::vector<Dfa::EdgeSpec> edges) {
    return Dfa::create({"0", "1"}, "0", {"1"}, edges);
  };
  try {
    make({{"0", "f", "1"}, {"0", "g", "0"}, {"0", "!f & !g", "0"}, {"1", "true", "1"}});
    FAIL("expected nondeterminism");
  } catch (const DfaValidationError& e) {
    CHECK(e.state() == "0");
    CHECK(e.sigma() == Valuation{"f", "g"});
  }
  try {
    make({{"0", "f", "1"}, {"1", "true", "1"}});
    FAIL("expected incompleteness");
  } catch (const DfaValidationError& e) {
    CHECK(e.sigma() == Valuation{});
  }
  try {
    make({{"0", "f", "1"}, {"0", "!f", "0"}, {"1", "f", "1"}, {"1", "!f", "0"}});
    FAIL("expected non-absorbing acceptance");
  } catch (const DfaValidationError& e) {
    CHECK(e.state() == "1");
  }
  CHECK_THROWS_AS(make({{"0", "decoy", "1"}, {"0", "!decoy", "0"}, {"1", "true", "1"}}), InputError);
}

TEST_CASE("bundled hand-drawn automaton") {
  const Dfa& d = fixture::fig2a();
  CHECK(d.num_states() == 4);
  CHECK(d.alphabet() == kFig1Props);
  CHECK(d.state_id(d.step(d.initial(), {"f"})) == "1");
  CHECK(d.state_id(d.step(d.initial(), {"g"})) == "2");
  CHECK(d.state_id(d.step(d.initial(), {"c"})) == "0");
  CHECK(d.state_id(d.step(d.initial(), {"n"})) == "3");
  CHECK(load_dfa(dump_dfa(d)).num_states() == 4);
}

TEST_CASE("to_dfa small cases") {
  SUBCASE("eventually") {
    const Dfa d = to_dfa(parse_scltl("F p"), {"p", "q"});
    CHECK(d.step(d.initial(), {"q"}) == d.initial());
    CHECK(d.is_accepting(d.step(d.initial(), {"p", "q"})));
    CHECK(d.num_states() == 2);
  }
  SUBCASE("atom") {
    // p must hold at the first position; a first letter without p is a dead end
    const Dfa d = to_dfa(parse_scltl("p"), {"p"});
    CHECK(d.num_states() == 3);
    CHECK(d.is_accepting(d.step(d.initial(), {"p"})));
    const auto dead = d.step(d.initial(), {});
    CHECK_FALSE(d.is_accepting(dead));
    CHECK(d.step(dead, {"p"}) == dead);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(to_dfa(parse_scltl("F z"), {"p"}), InputError);
  }
}

TEST_CASE("to_dfa agrees with informative-prefix semantics on random formulas") {
  std::mt19937_64 rng(2024);
  const std::vector<std::string> props{"p", "q"};
  for (int i = 0; i < 300; ++i) {
    const ScltlFormula f = random_formula(rng, 3);
    const Dfa d = to_dfa(f, props);
    std::size_t mismatches = 0;
    for_each_word(props, 4, [&](const std::vector<Valuation>& w) {
      if (oracle::dfa_accepts(d, w) != oracle::holds(f, w, 0)) ++mismatches;
    });
    INFO(f.to_string());
    CHECK(mismatches == 0);
    for (auto q : d.accepting_states())
      for (std::uint32_t m = 0; m < 4; ++m) CHECK(d.is_accepting(d.step(q, oracle::letter(props, m))));
  }
}

TEST_CASE("objective formula against the hand-drawn automaton") {
  const Dfa& fig = fixture::fig2a();
  const std::vector<std::string> aps(kFig1Props);
  // The implications in the written formula only constrain the first letter,
  // so a word that sees f later and then o is accepted by it but not by the
  // automaton.
  const ScltlFormula literal = parse_scltl("F(n | o) & (f -> F n) & (g -> F o)");
  const std::vector<Valuation> w{{}, {"f"}, {"o"}};
  CHECK(oracle::holds(literal, w, 0));
  CHECK(oracle::dfa_accepts(to_dfa(literal, aps), w));
  CHECK_FALSE(oracle::dfa_accepts(fig, w));

  // The automaton's language restricted to one proposition per letter is
  // captured by an until-formula.
  const ScltlFormula intent = parse_scltl("(!f & !g) U (n | o | (f & F n) | (g & F o))");
  const Dfa d = to_dfa(intent, aps);
  std::size_t words = 0, mismatches = 0;
  for_each_word(aps, 6, [&](const std::vector<Valuation>& word) {
    ++words;
    if (oracle::dfa_accepts(d, word) != oracle::dfa_accepts(fig, word)) ++mismatches;
  }, true);
  CHECK(words == 19531);
  CHECK(mismatches == 0);
}
