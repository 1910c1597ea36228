#include "pba/graph.hpp"

#include <algorithm>
#include <limits>

namespace pba::graph {

SccDecomposition strongly_connected_components(const Adjacency& adj)
{
  const std::size_t n = adj.size();
  constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();

  std::vector<std::size_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> found;  // reverse topological order
  std::size_t counter = 0;

  struct Frame { std::size_t v; std::size_t next; };
  std::vector<Frame> call;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited)
      continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < adj[f.v].size()) {
        std::size_t w = adj[f.v][f.next++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      std::size_t v = f.v;
      call.pop_back();
      if (!call.empty())
        low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        found.push_back(std::move(comp));
      }
    }
  }

  SccDecomposition out;
  out.component.assign(n, 0);
  out.members.assign(found.rbegin(), found.rend());
  for (std::size_t c = 0; c < out.members.size(); ++c)
    for (std::size_t v : out.members[c])
      out.component[v] = c;
  return out;
}

std::vector<bool> reachable_from(const Adjacency& adj, const std::vector<std::size_t>& sources)
{
  std::vector<bool> seen(adj.size(), false);
  std::vector<std::size_t> todo;
  for (std::size_t s : sources) {
    if (!seen[s]) {
      seen[s] = true;
      todo.push_back(s);
    }
  }
  while (!todo.empty()) {
    std::size_t v = todo.back();
    todo.pop_back();
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<std::size_t> reachable_bottom_components(const Adjacency& adj,
                                                     const SccDecomposition& scc,
                                                     const std::vector<std::size_t>& sources)
{
  std::vector<bool> seen = reachable_from(adj, sources);
  std::vector<bool> bottom(scc.count(), true), hit(scc.count(), false);
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (!seen[v])
      continue;
    hit[scc.component[v]] = true;
    for (std::size_t w : adj[v])
      if (scc.component[w] != scc.component[v])
        bottom[scc.component[v]] = false;
  }
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < scc.count(); ++c)
    if (hit[c] && bottom[c])
      out.push_back(c);
  return out;
}

bool is_nontrivial(const Adjacency& adj, const SccDecomposition& scc, std::size_t c)
{
  const auto& m = scc.members[c];
  if (m.size() > 1)
    return true;
  const auto& out = adj[m.front()];
  return std::find(out.begin(), out.end(), m.front()) != out.end();
}

} // namespace pba::graph
