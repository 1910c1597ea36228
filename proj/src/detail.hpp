#pragma once

// Internal helpers shared between translation units. Not installed.

#include "pba/automaton.hpp"
#include "pba/graph.hpp"

#include <optional>
#include <string>

namespace pba::detail {

std::string at(const Automaton& aut, StateId q, SymbolId a);

ValidationReport validate_structure(const Automaton& aut, bool check_hierarchy);

/// infer_hierarchy without the validity check.
std::optional<RankFunction> infer_hierarchy_unchecked(const Automaton& aut);

/// Message naming an (state, symbol) with two successors inside the state's
/// own SCC; empty when there is none.
std::string hierarchy_obstruction(const Automaton& aut);

/// Positive-support graph over states (all symbols merged).
graph::Adjacency support_graph(const Automaton& aut);

} // namespace pba::detail
