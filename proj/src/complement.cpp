// Rank-based complementation with tight level rankings.
//
// The complement first tracks the plain subset of reachable states. At any
// point it may guess a tight level ranking f on that subset: final states get
// even ranks, the largest rank r is odd and every odd rank up to r is used.
// From then on, reading a, each successor gets a rank no larger than the
// smallest rank of its predecessors, the ranking stays tight and r stays
// fixed. O tracks the even-ranked states that still have to reach an odd
// rank; the complement accepts each time O empties, after which it is
// refilled with all even-ranked states.
//
// A rejected word has an odd ranking of its run DAG whose level rankings are
// eventually tight with a constant maximum, so guessing late enough always
// succeeds.

#include "pba/decide.hpp"

#include "pba/error.hpp"
#include "pba/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

namespace pba {

namespace {

constexpr signed char absent = -1;

struct MacroState
{
  bool ranked = false;
  std::vector<signed char> rank;  // subset states use 0 for present
  std::uint64_t obligation = 0;

  bool operator==(const MacroState&) const = default;
};

struct MacroHash
{
  std::size_t operator()(const MacroState& m) const
  {
    std::size_t h = std::hash<std::uint64_t>{}(m.obligation) ^ (m.ranked ? 0x9e3779b97f4a7c15ULL : 0);
    for (signed char r : m.rank)
      h = h * 31 + static_cast<unsigned char>(r);
    return h;
  }
};

std::string macro_name(const Automaton& a, const MacroState& m)
{
  std::string s = "{";
  bool first = true;
  for (StateId q = 0; q < m.rank.size(); ++q) {
    if (m.rank[q] == absent)
      continue;
    if (!first)
      s += ',';
    first = false;
    s += a.state_name(q);
    if (m.ranked)
      s += ":" + std::to_string(m.rank[q]);
  }
  if (!m.ranked)
    return s + "}";
  s += "|";
  first = true;
  for (StateId q = 0; q < m.rank.size(); ++q) {
    if (!((m.obligation >> q) & 1u))
      continue;
    if (!first)
      s += ',';
    first = false;
    s += a.state_name(q);
  }
  return s + "}";
}

/// Keeps the initial state and every state that can reach a final state on a
/// cycle; the recognized language is unchanged.
Automaton trim(const Automaton& a)
{
  graph::Adjacency adj(a.num_states()), rev(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q)
    for (SymbolId s = 0; s < a.num_symbols(); ++s)
      for (const auto& t : a.edges(q, s)) {
        adj[q].push_back(t.target);
        rev[t.target].push_back(q);
      }
  auto scc = graph::strongly_connected_components(adj);
  std::vector<std::size_t> live_finals;
  for (StateId f : a.final_states())
    if (graph::is_nontrivial(adj, scc, scc.component[f]))
      live_finals.push_back(f);
  auto useful = graph::reachable_from(rev, live_finals);

  Automaton out(a.name(), a.role());
  for (const auto& s : a.alphabet())
    out.add_symbol(s);
  std::vector<StateId> id(a.num_states(), a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q)
    if (useful[q] || q == a.initial())
      id[q] = out.add_state(a.state_name(q));
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (id[q] == a.num_states())
      continue;
    for (SymbolId s = 0; s < a.num_symbols(); ++s)
      for (const auto& t : a.edges(q, s))
        if (useful[t.target])
          out.add_transition(id[q], s, id[t.target]);
  }
  out.set_initial(id[a.initial()]);
  StateSet finals;
  for (StateId f : a.final_states())
    if (useful[f])
      finals.insert(id[f]);
  out.set_final_states(std::move(finals));
  return out;
}

/// Calls `emit` with every tight ranking of `targets` whose largest rank is
/// exactly `top`, each rank at most `bound`. An empty target list has the
/// single empty ranking, reported for top = -1.
void tight_rankings(const Automaton& a, const std::vector<StateId>& targets, const std::vector<int>& bound, int top,
                    std::vector<signed char>& rank, const std::function<void()>& emit)
{
  if (targets.empty()) {
    if (top < 0)
      emit();
    return;
  }
  if (top < 1 || top % 2 == 0)
    return;
  std::vector<int> used(top + 1, 0);
  int missing = (top + 1) / 2;
  // Only non-final targets can fill the odd ranks still missing.
  std::vector<int> free_from(targets.size() + 1, 0);
  for (std::size_t i = targets.size(); i-- > 0;)
    free_from[i] = free_from[i + 1] + (a.is_final(targets[i]) ? 0 : 1);

  std::function<void(std::size_t)> place = [&](std::size_t i) {
    if (missing > free_from[i])
      return;
    if (i == targets.size()) {
      emit();
      return;
    }
    const StateId q = targets[i];
    const int hi = std::min(bound[q], top);
    const bool fin = a.is_final(q);
    for (int v = fin ? hi - hi % 2 : hi; v >= 0; v -= fin ? 2 : 1) {
      rank[q] = static_cast<signed char>(v);
      const bool fills = v % 2 == 1 && used[v]++ == 0;
      missing -= fills;
      place(i + 1);
      missing += fills;
      if (v % 2 == 1)
        --used[v];
    }
    rank[q] = absent;
  };
  place(0);
}

int top_rank(const MacroState& m)
{
  int top = -1;
  for (signed char r : m.rank)
    top = std::max<int>(top, r);
  return top;
}

Automaton rank_complement(const Automaton& a, const Limits& limits, const SearchControl& control)
{
  const std::size_t n = a.num_states();
  if (n > limits.complement_state_cap || n > 64)
    throw ResourceLimit("complementation state cap", std::min<std::size_t>(limits.complement_state_cap, 64),
                        "--complement-cap");

  // Each odd rank needs its own non-final state.
  const int max_rank = static_cast<int>(2 * (n - a.final_states().size())) - 1;

  std::unordered_map<MacroState, StateId, MacroHash> index;
  std::vector<MacroState> macros;
  std::deque<StateId> queue;
  std::vector<std::vector<std::vector<StateId>>> succ;  // [macro][symbol]

  auto intern = [&](const MacroState& m) {
    auto [it, inserted] = index.emplace(m, macros.size());
    if (inserted) {
      if (macros.size() >= limits.complement_size_cap)
        throw ResourceLimit("complement size cap", limits.complement_size_cap, "--complement-size-cap");
      macros.push_back(m);
      succ.emplace_back(a.num_symbols());
      queue.push_back(it->second);
    }
    return it->second;
  };

  MacroState init;
  init.rank.assign(n, absent);
  init.rank[a.initial()] = 0;
  intern(init);

  const std::vector<int> unbounded(n, max_rank);
  std::vector<int> bound(n);
  std::vector<StateId> targets;
  MacroState next;
  while (!queue.empty()) {
    StateId id = queue.front();
    queue.pop_front();
    control.checkpoint("rank complementation", macros.size());
    const MacroState cur = macros[id];
    for (SymbolId s = 0; s < a.num_symbols(); ++s) {
      std::fill(bound.begin(), bound.end(), -1);
      for (StateId q = 0; q < n; ++q) {
        if (cur.rank[q] == absent)
          continue;
        for (const auto& t : a.edges(q, s)) {
          int& b = bound[t.target];
          b = b < 0 ? cur.rank[q] : std::min<int>(b, cur.rank[q]);
        }
      }
      targets.clear();
      std::uint64_t obligation_post = 0;
      for (StateId q = 0; q < n; ++q) {
        if (bound[q] >= 0)
          targets.push_back(q);
        if ((cur.obligation >> q) & 1u)
          for (const auto& t : a.edges(q, s))
            obligation_post |= std::uint64_t{1} << t.target;
      }

      std::vector<StateId> found;
      auto emit = [&] {
        std::uint64_t even = 0;
        for (StateId q : targets)
          if (next.rank[q] % 2 == 0)
            even |= std::uint64_t{1} << q;
        next.obligation = cur.obligation != 0 ? (obligation_post & even) : even;
        found.push_back(intern(next));
      };

      next.rank.assign(n, absent);
      next.obligation = 0;
      if (!cur.ranked) {
        next.ranked = false;
        for (StateId q : targets)
          next.rank[q] = 0;
        found.push_back(intern(next));
        next.rank.assign(n, absent);
        next.ranked = true;
        if (targets.empty())
          tight_rankings(a, targets, unbounded, -1, next.rank, emit);
        for (int top = 1; top <= max_rank; top += 2)
          tight_rankings(a, targets, unbounded, top, next.rank, emit);
      } else {
        next.ranked = true;
        // A ranking that loses all its states, or its top rank, has a
        // counterpart guessed later from the subset phase.
        tight_rankings(a, targets, bound, top_rank(cur), next.rank, emit);
      }
      succ[id][s] = std::move(found);
    }
  }

  Automaton out(a.name() + "_complement", Role::nba);
  for (const auto& s : a.alphabet())
    out.add_symbol(s);
  for (const auto& m : macros)
    out.add_state(macro_name(a, m));
  StateSet finals;
  for (StateId id = 0; id < macros.size(); ++id) {
    if (macros[id].ranked && macros[id].obligation == 0)
      finals.insert(id);
    for (SymbolId s = 0; s < a.num_symbols(); ++s)
      for (StateId t : succ[id][s])
        out.add_transition(id, s, t);
  }
  out.set_initial(0);
  out.set_final_states(std::move(finals));
  return trim(out);
}

} // namespace

Automaton nba_complement(const Automaton& a, const Limits& limits, const SearchControl& control)
{
  if (a.role() != Role::nba)
    throw InputError("complementation needs an NBA, got role " + std::string(role_name(a.role())));
  require_valid(a);
  return rank_complement(trim(a), limits, control);
}

} // namespace pba
