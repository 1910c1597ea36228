// Hierarchy inference.
//
// A ranking rk is compatible when, for every state q and symbol a, every
// positive-probability successor q' has rk(q') >= rk(q) and at most one of
// them has rk(q') == rk(q).
//
// Levels never decrease along positive edges, so a compatible ranking is
// constant on every strongly connected component of the support graph. In
// particular each (q, a) may have at most one successor inside SCC(q); this
// is necessary. It is also sufficient: giving every SCC its own level in a
// topological order of the condensation leaves each (q, a) with at most its
// one same-SCC successor at level rk(q), and every other successor strictly
// higher.
//
// Among the compatible rankings we return one with the fewest distinct
// levels. SCCs are visited in topological order and assigned a level no
// smaller than any predecessor's; the search deepens the level bound until
// an assignment satisfies every (q, a). The topological-numbering ranking
// bounds the depth from above. A node budget keeps pathological inputs
// tractable; when it runs out the best ranking found so far is returned.

#include "pba/automaton.hpp"
#include "pba/error.hpp"
#include "detail.hpp"

#include <algorithm>

namespace pba {

namespace detail {

graph::Adjacency support_graph(const Automaton& aut)
{
  graph::Adjacency adj(aut.num_states());
  for (StateId q = 0; q < aut.num_states(); ++q) {
    for (SymbolId a = 0; a < aut.num_symbols(); ++a)
      for (const auto& t : aut.edges(q, a))
        adj[q].push_back(t.target);
    std::sort(adj[q].begin(), adj[q].end());
    adj[q].erase(std::unique(adj[q].begin(), adj[q].end()), adj[q].end());
  }
  return adj;
}

std::string hierarchy_obstruction(const Automaton& aut)
{
  auto scc = graph::strongly_connected_components(support_graph(aut));
  for (StateId q = 0; q < aut.num_states(); ++q) {
    for (SymbolId a = 0; a < aut.num_symbols(); ++a) {
      std::size_t same = 0;
      for (const auto& t : aut.edges(q, a))
        if (scc.component[t.target] == scc.component[q])
          ++same;
      if (same > 1)
        return "two successors in the same strongly connected component at " + at(aut, q, a);
    }
  }
  return {};
}

namespace {

constexpr std::size_t search_budget = 200000;

class LevelSearch
{
public:
  LevelSearch(const Automaton& aut, const graph::SccDecomposition& scc)
    : aut_(aut), scc_(scc), level_(scc.count(), unassigned)
  {
    // For every component, the rows (q, a) whose successors touch it.
    rows_touching_.resize(scc.count());
    preds_.resize(scc.count());
    for (StateId q = 0; q < aut.num_states(); ++q) {
      for (SymbolId a = 0; a < aut.num_symbols(); ++a) {
        for (const auto& t : aut.edges(q, a)) {
          std::size_t c = scc.component[t.target];
          rows_touching_[c].push_back({q, a});
          if (c != scc.component[q])
            preds_[c].push_back(scc.component[q]);
        }
      }
    }
  }

  /// Assignment with every level <= bound, or nullopt.
  std::optional<std::vector<unsigned>> solve(unsigned bound)
  {
    bound_ = bound;
    std::fill(level_.begin(), level_.end(), unassigned);
    if (assign(0))
      return level_;
    return std::nullopt;
  }

  bool exhausted() const { return nodes_ > search_budget; }

private:
  static constexpr unsigned unassigned = ~0u;

  struct Row { StateId q; SymbolId a; };

  bool row_ok(const Row& r) const
  {
    unsigned own = level_[scc_.component[r.q]];
    std::size_t same = 0;
    for (const auto& t : aut_.edges(r.q, r.a)) {
      unsigned l = level_[scc_.component[t.target]];
      if (l == own)
        ++same;
    }
    return same <= 1;
  }

  bool assign(std::size_t c)
  {
    if (c == level_.size())
      return true;
    if (++nodes_ > search_budget)
      return false;
    unsigned lo = 0;
    for (std::size_t p : preds_[c])
      lo = std::max(lo, level_[p]);
    for (unsigned l = lo; l <= bound_; ++l) {
      level_[c] = l;
      bool ok = true;
      for (const Row& r : rows_touching_[c]) {
        if (level_[scc_.component[r.q]] != unassigned && !row_ok(r)) {
          ok = false;
          break;
        }
      }
      if (ok && assign(c + 1))
        return true;
      if (exhausted())
        break;
    }
    level_[c] = unassigned;
    return false;
  }

  const Automaton& aut_;
  const graph::SccDecomposition& scc_;
  std::vector<unsigned> level_;
  std::vector<std::vector<Row>> rows_touching_;
  std::vector<std::vector<std::size_t>> preds_;
  unsigned bound_ = 0;
  std::size_t nodes_ = 0;
};

RankFunction to_ranking(const graph::SccDecomposition& scc, const std::vector<unsigned>& comp_level)
{
  RankFunction rf;
  rf.levels.resize(scc.component.size());
  for (std::size_t v = 0; v < scc.component.size(); ++v) {
    rf.levels[v] = comp_level[scc.component[v]];
    rf.max_level = std::max(rf.max_level, rf.levels[v]);
  }
  return rf;
}

} // namespace

std::optional<RankFunction> infer_hierarchy_unchecked(const Automaton& aut)
{
  if (!hierarchy_obstruction(aut).empty())
    return std::nullopt;
  auto scc = graph::strongly_connected_components(support_graph(aut));

  // Topological numbering: always compatible (see header comment).
  std::vector<unsigned> best(scc.count());
  for (std::size_t c = 0; c < scc.count(); ++c)
    best[c] = static_cast<unsigned>(c);
  unsigned best_max = scc.count() == 0 ? 0 : static_cast<unsigned>(scc.count() - 1);

  LevelSearch search(aut, scc);
  for (unsigned bound = 0; bound < best_max; ++bound) {
    if (auto found = search.solve(bound)) {
      best = *found;
      break;
    }
    if (search.exhausted())
      break;
  }
  return to_ranking(scc, best);
}

} // namespace detail

std::string check_ranking(const Automaton& aut, const RankFunction& ranks)
{
  if (ranks.levels.size() != aut.num_states())
    return "ranking does not cover every state";
  for (StateId q = 0; q < aut.num_states(); ++q) {
    if (ranks.levels[q] > ranks.max_level)
      return "rank of " + aut.state_name(q) + " exceeds the declared maximum";
    for (SymbolId a = 0; a < aut.num_symbols(); ++a) {
      std::size_t same = 0;
      for (const auto& t : aut.edges(q, a)) {
        if (ranks.levels[t.target] < ranks.levels[q])
          return "successor " + aut.state_name(t.target) + " has a lower rank at " + detail::at(aut, q, a);
        if (ranks.levels[t.target] == ranks.levels[q])
          ++same;
      }
      if (same > 1)
        return "more than one same-level successor at " + detail::at(aut, q, a);
    }
  }
  return {};
}

std::optional<RankFunction> infer_hierarchy(const Automaton& aut)
{
  if (!aut.is_probabilistic())
    throw InputError("hierarchy inference needs a probabilistic automaton");
  auto rep = detail::validate_structure(aut, false);
  if (!rep.ok())
    throw InputError("invalid automaton: " + rep.violations.front());
  return detail::infer_hierarchy_unchecked(aut);
}

RankFunction require_hierarchy(const Automaton& aut)
{
  if (aut.ranks() && check_ranking(aut, *aut.ranks()).empty())
    return *aut.ranks();
  if (auto r = infer_hierarchy(aut))
    return *r;
  throw InputError("automaton is not hierarchical: " + detail::hierarchy_obstruction(aut));
}

} // namespace pba
