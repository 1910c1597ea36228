#pragma once

#include "pba/automaton.hpp"
#include "pba/rational.hpp"

#include <cstddef>
#include <vector>

namespace pba {

/// Dense square matrix of exact rationals; rows are current states, columns
/// next states.
class RationalMatrix
{
public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t order) : order_(order), cells_(order * order) { }

  static RationalMatrix identity(std::size_t order);

  std::size_t order() const { return order_; }
  Rational& operator()(std::size_t r, std::size_t c) { return cells_[r * order_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return cells_[r * order_ + c]; }

  /// Sum of row r over the given columns.
  Rational row_mass(std::size_t r, const StateSet& columns) const;

  RationalMatrix operator*(const RationalMatrix& rhs) const;
  bool operator==(const RationalMatrix&) const = default;

private:
  std::size_t order_ = 0;
  std::vector<Rational> cells_;
};

/// Probability mass per state. Sub-distributions (total < 1) are allowed.
class Distribution
{
public:
  Distribution() = default;
  explicit Distribution(std::size_t order) : mass_(order) { }

  static Distribution dirac(std::size_t order, StateId q);

  std::size_t order() const { return mass_.size(); }
  Rational& operator[](StateId q) { return mass_[q]; }
  const Rational& operator[](StateId q) const { return mass_[q]; }
  Rational total() const;
  StateSet support() const;

  /// Row vector times matrix.
  Distribution operator*(const RationalMatrix& m) const;
  bool operator==(const Distribution&) const = default;

private:
  std::vector<Rational> mass_;
};

/// delta_a as a matrix.
RationalMatrix symbol_matrix(const Automaton& aut, SymbolId a);

/// delta_u = delta_{u0} ... delta_{un}; the identity for the empty word.
RationalMatrix word_matrix(const Automaton& aut, const Word& u);

/// delta^{Qf}_u: entry (q, q') is the probability of reading u from q and
/// ending in q' along a path that touches a final state (endpoints included).
/// Büchi acceptance only; `u` must be nonempty.
RationalMatrix final_passage_matrix(const Automaton& aut, const Word& u);

/// Distribution after reading `u` from the initial state.
Distribution run_distribution(const Automaton& aut, const Word& u);

/// Exact acceptance probability of stem . cycle^omega under the automaton's
/// Büchi or Rabin condition.
Rational lasso_acceptance(const Automaton& aut, const LassoWord& w);

/// Exact probability of ever reaching `targets` on stem . cycle^omega.
Rational lasso_reach_probability(const Automaton& aut, const LassoWord& w, const StateSet& targets);

/// Value of the binary expansion sum_i num(a_i) / 2^(i+1) of a lasso over the
/// symbols "0" and "1", given as characters.
Rational binary_value_lasso(std::string_view stem, std::string_view cycle);

namespace markov {

/// The finite chain a lasso induces: vertex (q, i) means "in state q about to
/// read cycle[i]". Exposed for the Monte Carlo engine.
struct CycleChain
{
  std::size_t num_states = 0;  // |Q|
  std::size_t period = 0;      // |cycle|
  std::vector<std::vector<std::pair<std::size_t, Rational>>> successors;
  std::vector<std::size_t> scc;          // component per vertex
  std::vector<bool> in_bottom;           // vertex lies in a bottom SCC
  std::vector<bool> accepting_bottom;    // vertex lies in an accepting bottom SCC

  std::size_t vertex(StateId q, std::size_t pos) const { return q * period + pos; }
};

CycleChain build_cycle_chain(const Automaton& aut, const Word& cycle);

} // namespace markov

} // namespace pba
