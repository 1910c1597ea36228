#include "pba/decide.hpp"

#include "pba/error.hpp"
#include "pba/graph.hpp"
#include "pba/lasso.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <string>

namespace pba {

namespace {

std::size_t env_or(const char* name, std::size_t fallback)
{
  const char* v = std::getenv(name);
  if (!v || !*v)
    return fallback;
  char* end = nullptr;
  unsigned long long x = std::strtoull(v, &end, 10);
  if (*end != '\0')
    return fallback;
  return static_cast<std::size_t>(x);
}

void require_nba(const Automaton& a)
{
  if (a.role() != Role::nba)
    throw InputError("operation needs an NBA, got role " + std::string(role_name(a.role())));
  require_valid(a);
}

/// Shortest, then lexicographically smallest, word leading from any state in
/// `from` to `to`; `nonempty` forbids the empty word.
std::optional<Word> shortest_word(const Automaton& a, const std::vector<StateId>& from, StateId to, bool nonempty)
{
  const std::size_t n = a.num_states();
  std::vector<bool> seen(n, false);
  std::vector<std::pair<StateId, SymbolId>> parent(n, {n, 0});
  std::deque<StateId> queue;
  if (!nonempty) {
    for (StateId q : from) {
      if (q == to)
        return Word{};
    }
  }
  // Sources are expanded first but only marked seen when reached again, so
  // a nonempty path back to a source is still found.
  std::vector<std::pair<StateId, SymbolId>> first_hop;
  for (StateId q : from) {
    for (SymbolId s = 0; s < a.num_symbols(); ++s) {
      for (const auto& t : a.edges(q, s)) {
        if (!seen[t.target]) {
          seen[t.target] = true;
          parent[t.target] = {n, s};
          queue.push_back(t.target);
        }
      }
    }
  }
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    if (q == to) {
      Word w;
      for (StateId v = q;;) {
        auto [p, s] = parent[v];
        w.push_back(s);
        if (p == n)
          break;
        v = p;
      }
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (SymbolId s = 0; s < a.num_symbols(); ++s)
      for (const auto& t : a.edges(q, s))
        if (!seen[t.target]) {
          seen[t.target] = true;
          parent[t.target] = {q, s};
          queue.push_back(t.target);
        }
  }
  return std::nullopt;
}

} // namespace

Limits default_limits()
{
  Limits l;
  l.monoid_cap = env_or("PBA_MONOID_CAP", l.monoid_cap);
  l.complement_state_cap = env_or("PBA_COMPLEMENT_CAP", l.complement_state_cap);
  l.complement_size_cap = env_or("PBA_COMPLEMENT_SIZE_CAP", l.complement_size_cap);
  return l;
}

void SearchControl::checkpoint(std::string_view stage, std::size_t explored) const
{
  if (stop.stop_requested())
    throw Cancelled();
  if (on_progress && explored % 4096 == 0)
    on_progress(stage, explored);
}

bool nba_lasso_member(const Automaton& a, const LassoWord& w)
{
  if (a.is_probabilistic() || a.has_rabin_acceptance())
    throw InputError("lasso membership needs an NBA");
  if (w.cycle.empty())
    throw InputError("lasso cycle must be nonempty");
  for (SymbolId s : w.stem)
    if (s >= a.num_symbols())
      throw InputError("unknown symbol index " + std::to_string(s));
  for (SymbolId s : w.cycle)
    if (s >= a.num_symbols())
      throw InputError("unknown symbol index " + std::to_string(s));

  StateSet cur{a.initial()};
  for (SymbolId s : w.stem)
    cur = post(a, cur, s);

  // Vertex (q, i): in q about to read cycle[i].
  const std::size_t p = w.cycle.size();
  graph::Adjacency adj(a.num_states() * p);
  for (StateId q = 0; q < a.num_states(); ++q)
    for (std::size_t i = 0; i < p; ++i)
      for (const auto& t : a.edges(q, w.cycle[i]))
        adj[q * p + i].push_back(t.target * p + (i + 1) % p);

  std::vector<std::size_t> sources;
  for (StateId q : cur)
    sources.push_back(q * p);
  auto reach = graph::reachable_from(adj, sources);
  auto scc = graph::strongly_connected_components(adj);
  for (std::size_t v = 0; v < adj.size(); ++v)
    if (reach[v] && a.is_final(v / p) && graph::is_nontrivial(adj, scc, scc.component[v]))
      return true;
  return false;
}

EmptinessAnswer nba_emptiness(const Automaton& a)
{
  require_nba(a);
  graph::Adjacency adj(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q)
    for (SymbolId s = 0; s < a.num_symbols(); ++s)
      for (const auto& t : a.edges(q, s))
        adj[q].push_back(t.target);
  auto reach = graph::reachable_from(adj, {a.initial()});
  auto scc = graph::strongly_connected_components(adj);

  EmptinessAnswer ans;
  for (StateId f : a.final_states()) {
    if (!reach[f] || !graph::is_nontrivial(adj, scc, scc.component[f]))
      continue;
    auto stem = shortest_word(a, {a.initial()}, f, false);
    auto cycle = shortest_word(a, {f}, f, true);
    if (!stem || !cycle)
      throw InternalError("accepting cycle vanished during witness extraction");
    LassoWord w{*stem, *cycle};
    if (!ans.witness || lasso_less(w, *ans.witness))
      ans.witness = w;
  }
  if (ans.witness) {
    ans.empty = false;
    ans.witness = normalize_lasso(*ans.witness);
    if (!nba_lasso_member(a, *ans.witness))
      throw InternalError("NBA emptiness witness failed re-verification");
  }
  return ans;
}

UniversalityAnswer nba_universality(const Automaton& a, const Limits& limits, const SearchControl& control)
{
  require_nba(a);
  UniversalityAnswer ans;
  std::size_t explored = 0;
  for_each_lasso(a.num_symbols(), limits.fast_path_bound, limits.fast_path_bound, [&](const LassoWord& w) {
    control.checkpoint("lasso pre-search", ++explored);
    if (!nba_lasso_member(a, w)) {
      ans.universal = false;
      ans.counterexample = normalize_lasso(w);
      return false;
    }
    return true;
  });
  if (ans.universal) {
    auto e = nba_emptiness(nba_complement(a, limits, control));
    if (!e.empty) {
      ans.universal = false;
      ans.counterexample = e.witness;
    }
  }
  if (!ans.universal && nba_lasso_member(a, *ans.counterexample))
    throw InternalError("NBA universality counterexample failed re-verification");
  return ans;
}

} // namespace pba
