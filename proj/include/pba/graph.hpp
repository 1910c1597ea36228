#pragma once

#include <cstddef>
#include <vector>

namespace pba::graph {

using Adjacency = std::vector<std::vector<std::size_t>>;

struct SccDecomposition
{
  /// component[v] is the SCC index of v. Indices follow a topological order
  /// of the condensation: every edge u -> v has component[u] <= component[v].
  std::vector<std::size_t> component;
  std::vector<std::vector<std::size_t>> members;

  std::size_t count() const { return members.size(); }
};

/// Iterative Tarjan. Ties are broken by vertex index, so the result is
/// deterministic for a given adjacency.
SccDecomposition strongly_connected_components(const Adjacency& adj);

/// Components with no edge leaving them (bottom SCCs), restricted to those
/// reachable from `sources`.
std::vector<std::size_t> reachable_bottom_components(const Adjacency& adj,
                                                     const SccDecomposition& scc,
                                                     const std::vector<std::size_t>& sources);

/// true at v iff v is reachable from some source (sources included).
std::vector<bool> reachable_from(const Adjacency& adj, const std::vector<std::size_t>& sources);

/// Whether component c contains a cycle (more than one member, or a self-loop).
bool is_nontrivial(const Adjacency& adj, const SccDecomposition& scc, std::size_t c);

} // namespace pba::graph
