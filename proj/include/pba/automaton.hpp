#pragma once

#include "pba/rational.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace pba {

using StateId = std::size_t;
using SymbolId = std::size_t;
using StateSet = std::set<StateId>;

/// A finite word as a sequence of symbol indices into an automaton's alphabet.
using Word = std::vector<SymbolId>;

enum class Role { pba, fpm, hpba, nba, dra, pra };

std::string_view role_name(Role role);
std::optional<Role> role_from_name(std::string_view name);

/// Probabilistic roles carry row-stochastic rational transitions.
bool is_probabilistic(Role role);
/// Rabin roles (DRA, PRA) carry pair lists instead of a final set.
bool has_rabin_acceptance(Role role);

struct RabinPair
{
  StateSet bad;   // visited finitely often
  StateSet good;  // visited infinitely often

  bool operator==(const RabinPair&) const = default;
};

struct Transition
{
  StateId target;
  Rational probability;  // always 1 for nondeterministic roles

  bool operator==(const Transition&) const = default;
};

/// Level assignment certifying that an automaton is hierarchical.
struct RankFunction
{
  std::vector<unsigned> levels;  // indexed by StateId
  unsigned max_level = 0;

  bool operator==(const RankFunction&) const = default;
};

/// An ultimately periodic word stem . cycle^omega.
struct LassoWord
{
  Word stem;
  Word cycle;

  auto operator<=>(const LassoWord&) const = default;
};

/// One model for every automaton kind. The role tag decides how transitions
/// and acceptance are read: probabilistic roles use exact rational weights,
/// nondeterministic roles ignore them.
///
/// Values are built once (by the parser, a construction or a generator) and
/// then treated as immutable.
class Automaton
{
public:
  Automaton() = default;
  Automaton(std::string name, Role role) : name_(std::move(name)), role_(role) { }

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  Role role() const { return role_; }
  void set_role(Role role) { role_ = role; }

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_symbols() const { return alphabet_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::string& state_name(StateId q) const { return states_.at(q); }
  const std::string& symbol_name(SymbolId a) const { return alphabet_.at(a); }

  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<SymbolId> find_symbol(std::string_view name) const;
  /// Throws InputError when absent.
  StateId state(std::string_view name) const;
  SymbolId symbol(std::string_view name) const;

  /// Throws InputError on a duplicate name.
  StateId add_state(std::string name);
  SymbolId add_symbol(std::string name);

  StateId initial() const { return initial_; }
  void set_initial(StateId q) { initial_ = q; }

  const StateSet& final_states() const { return final_; }
  void set_final_states(StateSet f) { final_ = std::move(f); }
  bool is_final(StateId q) const { return final_.count(q) != 0; }

  const std::vector<RabinPair>& rabin_pairs() const { return pairs_; }
  void set_rabin_pairs(std::vector<RabinPair> pairs) { pairs_ = std::move(pairs); }

  const std::optional<StateId>& reject() const { return reject_; }
  void set_reject(std::optional<StateId> q) { reject_ = q; }

  const std::optional<RankFunction>& ranks() const { return ranks_; }
  void set_ranks(std::optional<RankFunction> r) { ranks_ = std::move(r); }

  /// Outgoing edges of (q, a) in insertion order; never holds zero weights
  /// and never holds two edges to one target.
  const std::vector<Transition>& edges(StateId q, SymbolId a) const;

  /// Adds weight p to edge (q, a, target). Zero weights are dropped; a
  /// repeated target accumulates.
  void add_transition(StateId q, SymbolId a, StateId target, const Rational& p = 1);
  void clear_transitions(StateId q, SymbolId a);

  /// delta(q, a, target), zero when no edge exists.
  Rational probability(StateId q, SymbolId a, StateId target) const;

  bool is_probabilistic() const { return pba::is_probabilistic(role_); }
  bool has_rabin_acceptance() const { return pba::has_rabin_acceptance(role_); }

  bool operator==(const Automaton&) const = default;

private:
  std::string name_;
  Role role_ = Role::pba;
  std::vector<std::string> alphabet_;
  std::vector<std::string> states_;
  StateId initial_ = 0;
  StateSet final_;
  std::vector<RabinPair> pairs_;
  std::optional<StateId> reject_;
  std::optional<RankFunction> ranks_;
  std::vector<std::vector<std::vector<Transition>>> delta_;  // [state][symbol]
};

struct ValidationReport
{
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks every definitional invariant of the automaton's role. Problems are
/// reported, never thrown.
ValidationReport validate(const Automaton& aut);

/// Throws InputError carrying the first violations when `aut` is invalid.
void require_valid(const Automaton& aut);

/// Throws InputError unless `aut` is a valid probabilistic automaton.
void require_probabilistic(const Automaton& aut);
/// Throws InputError unless `aut` is a valid probabilistic Büchi automaton
/// (PBA, FPM or HPBA role).
void require_probabilistic_buchi(const Automaton& aut);

/// Support of delta_u(q, .). `u` must be nonempty.
StateSet post(const Automaton& aut, StateId q, const Word& u);
/// One-step support over a set of sources.
StateSet post(const Automaton& aut, const StateSet& from, SymbolId a);

/// Empty string when `ranks` is compatible with `aut`, otherwise a message
/// naming the first violating (state, symbol).
std::string check_ranking(const Automaton& aut, const RankFunction& ranks);

/// Compatible ranking with the fewest levels, or nullopt when `aut` is not
/// hierarchical. See hierarchy.cpp for the argument.
std::optional<RankFunction> infer_hierarchy(const Automaton& aut);

/// The ranking an HPBA-consuming operation should use: the declared one when
/// present and compatible, otherwise the inferred one. Throws InputError
/// naming a violating (state, symbol) when none exists.
RankFunction require_hierarchy(const Automaton& aut);

/// Turns "q" into a name not yet used in `aut`, appending primes as needed.
std::string fresh_state_name(const Automaton& aut, std::string base);

} // namespace pba
