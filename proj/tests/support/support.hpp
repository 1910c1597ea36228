#pragma once

// Random instance generators and reference implementations used by the
// tests. The oracles here avoid the library's algorithms on purpose.

#include "pba/automaton.hpp"
#include "pba/rational.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace testkit {

using pba::Automaton;
using pba::LassoWord;
using pba::Rational;
using pba::StateId;
using pba::StateSet;
using pba::SymbolId;
using pba::Word;

class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) { }

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }
  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

/// Random weights over `targets`, reduced to a distribution with small
/// denominators.
std::vector<Rational> random_weights(Rng& rng, std::size_t count);

/// Alphabet "a", "b", ... of the given size.
std::vector<std::string> letters(std::size_t k);

/// Büchi PBA with n states over k letters; each row has 1..max_support targets.
Automaton random_pba(Rng& rng, std::size_t n, std::size_t k, std::size_t max_support = 3);

/// FPM with n states besides the reject state "r" (last).
Automaton random_fpm(Rng& rng, std::size_t n, std::size_t k, std::size_t max_support = 3);

/// FPM with no transition into its reject state.
Automaton leak_free_fpm(Rng& rng, std::size_t n, std::size_t k);

/// Hierarchical PBA (role hpba, ranks left for inference).
Automaton random_hpba(Rng& rng, std::size_t n, std::size_t k);

/// PRA with n states and the given number of pairs.
Automaton random_pra(Rng& rng, std::size_t n, std::size_t k, std::size_t pairs);

/// NBA with n states; every (q, a) gets 0..2 targets.
Automaton random_nba(Rng& rng, std::size_t n, std::size_t k, double final_density = 0.4);

LassoWord random_lasso(Rng& rng, std::size_t k, std::size_t max_stem, std::size_t max_cycle);

/// Every lasso with |stem| <= s and 1 <= |cycle| <= c (no particular order).
std::vector<LassoWord> all_lassos(std::size_t k, std::size_t s, std::size_t c);

/// Acceptance of a deterministic Rabin automaton, by running it until a
/// (state, cycle position) pair repeats.
bool dra_accepts(const Automaton& d, const LassoWord& w);

/// NBA membership on the unrolled word graph: stem positions, then cycle
/// positions with a back edge. Checks every reachable final vertex in the
/// cycle part for a return path.
bool nba_accepts(const Automaton& a, const LassoWord& w);

/// Acceptance probability computed on the chain of whole cycle blocks over
/// Q (instead of Q x positions), with its own elimination.
Rational oracle_acceptance(const Automaton& a, const LassoWord& w);

/// Whether some level assignment in {0..|Q|-1}^Q is compatible, by trying
/// them all.
bool brute_force_hierarchical(const Automaton& a);

/// Smallest maximum level over all compatible assignments, if any.
std::optional<unsigned> brute_force_min_level(const Automaton& a);

/// Value of the binary expansion stem . cycle^omega, from the closed form
/// (S (2^p - 1) + C) / (2^m (2^p - 1)).
Rational binary_value_oracle(const std::string& stem, const std::string& cycle);

/// Lasso over the alphabet of `a` written with symbol names.
LassoWord lasso_of(const Automaton& a, const std::string& text);

} // namespace testkit
