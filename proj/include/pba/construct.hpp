#pragma once

#include "pba/automaton.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace pba {

// Constructions. Every result passes validate(). Fresh states are named by
// suffixing ("q#rej", "q#init", primes on collision) and tuple states are
// rendered "(a,b)"; a tuple name that collides is an InputError.

/// FPM M with L_{=1}(b) = complement of L_{>0}(M): final states of b leak
/// half their mass to a fresh reject state.
Automaton complement_to_fpm(const Automaton& b);

/// Same machine with the reject state as the only final state, so that
/// L_{>0}(m) is the complement of L_{=1}(result).
Automaton reject_pba(const Automaton& m);

/// FPM whose acceptance probability is the product of the two inputs' on
/// every word. States are surviving pairs plus a fresh reject state.
Automaton fpm_product(const Automaton& m1, const Automaton& m2);

/// L_{=1}(result) = L_{=1}(b1) union L_{=1}(b2).
Automaton almost_sure_union(const Automaton& b1, const Automaton& b2);

/// L_{=1}(result) = L_{=1}(b1) intersect L_{=1}(b2). A fresh initial state
/// plays half of each machine's first step.
Automaton almost_sure_intersection(const Automaton& b1, const Automaton& b2);

/// HPBA with L_{>0}(result) = L(d) for a complete deterministic Rabin
/// automaton with k >= 1 pairs. The result carries the ranking
/// init -> 0, (i,q) -> i, reject -> k+1.
Automaton dra_to_hpba(const Automaton& d);

/// NBA over two copies of the states recognizing exactly L_{>0}(h).
Automaton hpba_to_nba(const Automaton& h);

/// All-final NBA over the states with nonempty probable language; it
/// recognizes the topological closure of L_{>0}(h).
Automaton safety_closure(const Automaton& h);

struct RabinDecompositionMember
{
  std::vector<std::size_t> index_set;  // I, 1-based pair indices
  std::size_t chosen = 0;              // j in I, 1-based
  Automaton positive;                  // final set Good_I
  Automaton negative;                  // final set Bad_{I,j}
};

inline constexpr std::size_t default_rabin_pair_cap = 6;

/// One member per (I, j) with j in I, ordered by I (as a bitmask) then j.
/// Throws ResourceLimit when the PRA has more than `pair_cap` pairs.
std::vector<RabinDecompositionMember> rabin_decomposition(const Automaton& r,
                                                          std::size_t pair_cap = default_rabin_pair_cap);

// Generators for the concrete machines used throughout the tests and docs.

/// Three-state FPM over {0,1} whose acceptance probability is the binary
/// value of the input.
Automaton gen_m_id();

/// fpm_product(gen_m_id(), gen_m_id()): acceptance is the squared value.
Automaton gen_m_id_squared();

/// FPM over {a,b,c} with n+4 states whose almost-sure language is "every a
/// is followed by c exactly n+1 positions later".
Automaton gen_succinct(unsigned n);

/// Four-state PBA over {a,@,sharp,$} with parameter lambda in (0,1).
Automaton gen_p3(const Rational& lambda);

/// gen_m_id with the roles of 0 and 1 swapped: almost-sure language {0^omega}.
Automaton gen_m_id_swapped();

/// One-state PBA over `alphabet` whose only state is final.
Automaton gen_all_final(const std::vector<std::string>& alphabet);

/// Dispatches on a generator name ("m_id", "m_id_squared", "succinct",
/// "p3", "m_id_swapped", "all_final") with string parameters.
Automaton generate_example(const std::string& name, const std::vector<std::string>& params);

} // namespace pba
