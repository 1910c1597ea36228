#pragma once

#include "pba/automaton.hpp"
#include "pba/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stop_token>
#include <string_view>
#include <vector>

namespace pba {

/// Caps for the complete (exponential) procedures. Exceeding one raises
/// ResourceLimit; answers never silently degrade.
struct Limits
{
  std::size_t monoid_cap = 1'000'000;          // transition-monoid elements
  std::size_t complement_state_cap = 10;       // NBA states accepted by nba_complement
  std::size_t complement_size_cap = 2'000'000; // macrostates explored by nba_complement
  std::size_t fast_path_bound = 3;             // |u|,|v| bound of the lasso pre-search
};

/// Defaults overridden by PBA_MONOID_CAP, PBA_COMPLEMENT_CAP and
/// PBA_COMPLEMENT_SIZE_CAP when set.
Limits default_limits();

/// Cooperative cancellation and progress reporting for long searches.
struct SearchControl
{
  std::stop_token stop;
  std::function<void(std::string_view stage, std::size_t explored)> on_progress;

  /// Throws Cancelled when a stop was requested; reports progress every
  /// 4096 calls.
  void checkpoint(std::string_view stage, std::size_t explored) const;
};

struct EmptinessAnswer
{
  bool empty = true;
  std::optional<LassoWord> witness;
  /// Exact acceptance probability of the witness (probabilistic procedures).
  std::optional<Rational> certificate;
};

struct UniversalityAnswer
{
  bool universal = true;
  std::optional<LassoWord> counterexample;
  std::optional<Rational> certificate;
};

// ---------------------------------------------------------------------------
// Nondeterministic Büchi automata

/// Whether some run on stem . cycle^omega visits a final state infinitely often.
bool nba_lasso_member(const Automaton& a, const LassoWord& w);

/// Exact emptiness. A witness goes from the initial state to a final state
/// on a cycle (stem) and around that cycle (cycle); among all final states
/// the canonically smallest such lasso is returned.
EmptinessAnswer nba_emptiness(const Automaton& a);

/// Rank-based complement over tight level rankings, ranks below
/// 2(|Q| - |F|), after dropping states that cannot reach an accepting cycle.
/// Throws ResourceLimit above limits.complement_state_cap remaining states or
/// limits.complement_size_cap macrostates.
Automaton nba_complement(const Automaton& a, const Limits& limits = default_limits(),
                         const SearchControl& control = {});

/// Bounded lasso search first, then emptiness of the complement.
UniversalityAnswer nba_universality(const Automaton& a, const Limits& limits = default_limits(),
                                    const SearchControl& control = {});

// ---------------------------------------------------------------------------
// Hierarchical PBAs, probable semantics

EmptinessAnswer hpba_probable_empty(const Automaton& h);
UniversalityAnswer hpba_probable_universal(const Automaton& h, const Limits& limits = default_limits(),
                                           const SearchControl& control = {});

// ---------------------------------------------------------------------------
// Finite probabilistic monitors and almost-sure semantics

/// Support of delta_v: row q holds post(q, v) as a bitset.
struct BooleanMatrix
{
  std::vector<std::uint64_t> rows;

  bool get(std::size_t r, std::size_t c) const { return (rows[r] >> c) & 1u; }
  BooleanMatrix operator*(const BooleanMatrix& rhs) const;
  bool operator==(const BooleanMatrix&) const = default;
};

/// Element of the transition monoid together with the shortest (then
/// lexicographically smallest) word realizing it.
struct MonoidElement
{
  BooleanMatrix matrix;
  Word word;
};

/// Breadth-first enumeration of the monoid generated by the symbol supports.
/// Throws ResourceLimit past limits.monoid_cap elements. At most 64 states.
std::vector<MonoidElement> transition_monoid(const Automaton& aut, const Limits& limits = default_limits(),
                                             const SearchControl& control = {});

/// (C, u, v): delta_u(q_s, C) > 0 and post(q, v) is inside C for every q in C.
struct SubsetWitness
{
  StateSet states;
  Word reach;
  Word cycle;
};

struct FpmEmptinessAnswer
{
  bool empty = true;
  std::optional<SubsetWitness> witness;
  /// Exact acceptance probability of reach . cycle^omega (> 0).
  std::optional<Rational> certificate;
};

FpmEmptinessAnswer fpm_positive_empty(const Automaton& m, const Limits& limits = default_limits(),
                                      const SearchControl& control = {});

/// Non-universal iff some lasso is rejected with probability 1; the returned
/// counterexample has exact acceptance probability 0.
UniversalityAnswer fpm_positive_universal(const Automaton& m, const Limits& limits = default_limits(),
                                          const SearchControl& control = {});

/// Witnesses have acceptance probability exactly 1.
EmptinessAnswer almost_sure_empty(const Automaton& b, const Limits& limits = default_limits(),
                                  const SearchControl& control = {});
/// Counterexamples have acceptance probability below 1.
UniversalityAnswer almost_sure_universal(const Automaton& b, const Limits& limits = default_limits(),
                                         const SearchControl& control = {});

// ---------------------------------------------------------------------------
// Bounded searches for the undecidable problems

/// C, u and segments u_{j0}, ..., u_J with delta_u(q_s, C) > x and, for the
/// j-th listed segment, delta^{Qf}_{u_j}(q, C) > 1 - 2^-j for every q in C.
struct AsymptoticWitness
{
  StateSet states;
  Word reach;
  std::vector<Word> segments;
  unsigned first_index = 1;  // j0
};

/// Empty string when `w` satisfies its invariants against `b` at threshold
/// x, otherwise the first failure.
std::string check_asymptotic_witness(const Automaton& b, const AsymptoticWitness& w, const Rational& x = 0);

/// Searches every C, u and u_j up to `max_len` symbols for j = 1..max_j.
/// nullopt means "unknown within these bounds", never "empty".
std::optional<AsymptoticWitness> pba_positive_nonempty_bounded(const Automaton& b, std::size_t max_len,
                                                               unsigned max_j, const Rational& x = 0,
                                                               const SearchControl& control = {});

struct AcceptanceBound
{
  Rational value;
  /// True when the last segment returns to C through a final state with
  /// probability 1, so `value` bounds the acceptance of `lasso`; otherwise it
  /// only bounds the finite prefix event.
  bool asymptotic = false;
  /// reach . u_{j0} ... u_J . (u_J)^omega
  LassoWord lasso;
};

/// z * prod_j min_{q in C} delta^{Qf}_{u_j}(q, C) with z = delta_u(q_s, C).
/// Throws InputError when the witness is invalid.
AcceptanceBound acceptance_lower_bound(const Automaton& b, const AsymptoticWitness& w);

enum class Semantics { positive, almost_sure };

struct Refutation
{
  LassoWord lasso;
  Rational left;   // acceptance probability in b1
  Rational right;  // acceptance probability in b2
};

/// A lasso (|u|, |v| <= bound) in L(b1) but not in L(b2) under `semantics`;
/// nullopt means unknown.
std::optional<Refutation> containment_refute(const Automaton& b1, const Automaton& b2, Semantics semantics,
                                             std::size_t bound, const SearchControl& control = {});

} // namespace pba
