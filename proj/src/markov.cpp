#include "pba/markov.hpp"

#include "pba/error.hpp"
#include "pba/graph.hpp"

#include <algorithm>

namespace pba {

RationalMatrix RationalMatrix::identity(std::size_t order)
{
  RationalMatrix m(order);
  for (std::size_t i = 0; i < order; ++i)
    m(i, i) = 1;
  return m;
}

Rational RationalMatrix::row_mass(std::size_t r, const StateSet& columns) const
{
  Rational s = 0;
  for (StateId c : columns)
    s += (*this)(r, c);
  return s;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const
{
  if (order_ != rhs.order_)
    throw InputError("matrix order mismatch");
  RationalMatrix out(order_);
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t k = 0; k < order_; ++k) {
      const Rational& lhs = (*this)(i, k);
      if (lhs == 0)
        continue;
      for (std::size_t j = 0; j < order_; ++j)
        if (rhs(k, j) != 0)
          out(i, j) += lhs * rhs(k, j);
    }
  return out;
}

Distribution Distribution::dirac(std::size_t order, StateId q)
{
  Distribution d(order);
  d[q] = 1;
  return d;
}

Rational Distribution::total() const
{
  Rational s = 0;
  for (const auto& m : mass_)
    s += m;
  return s;
}

StateSet Distribution::support() const
{
  StateSet s;
  for (StateId q = 0; q < mass_.size(); ++q)
    if (mass_[q] != 0)
      s.insert(q);
  return s;
}

Distribution Distribution::operator*(const RationalMatrix& m) const
{
  if (order() != m.order())
    throw InputError("distribution/matrix order mismatch");
  Distribution out(order());
  for (std::size_t i = 0; i < order(); ++i) {
    if (mass_[i] == 0)
      continue;
    for (std::size_t j = 0; j < order(); ++j)
      if (m(i, j) != 0)
        out.mass_[j] += mass_[i] * m(i, j);
  }
  return out;
}

namespace {

void check_word(const Automaton& aut, const Word& u)
{
  for (SymbolId a : u)
    if (a >= aut.num_symbols())
      throw InputError("unknown symbol index " + std::to_string(a));
}

/// Exact solution of the absorption system
///   x_v = 1                      for goal vertices
///   x_v = 0                      when v cannot reach a goal vertex
///   x_v = sum_w p(v,w) x_w       otherwise
/// for every vertex reachable from `sources`.
std::vector<Rational> absorption_probabilities(
    const std::vector<std::vector<std::pair<std::size_t, Rational>>>& succ,
    const std::vector<bool>& goal,
    const std::vector<std::size_t>& sources)
{
  const std::size_t n = succ.size();
  graph::Adjacency fwd(n), bwd(n);
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& [w, p] : succ[v]) {
      fwd[v].push_back(w);
      bwd[w].push_back(v);
    }
  std::vector<std::size_t> goals;
  for (std::size_t v = 0; v < n; ++v)
    if (goal[v])
      goals.push_back(v);
  auto reachable = graph::reachable_from(fwd, sources);
  auto can_reach = graph::reachable_from(bwd, goals);

  std::vector<Rational> x(n);
  std::vector<std::size_t> unknown_index(n, n), unknowns;
  for (std::size_t v = 0; v < n; ++v) {
    if (goal[v])
      x[v] = 1;
    else if (reachable[v] && can_reach[v]) {
      unknown_index[v] = unknowns.size();
      unknowns.push_back(v);
    }
  }

  const std::size_t m = unknowns.size();
  if (m == 0)
    return x;
  // Augmented system (I - P_uu) x = P_u,goal.
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t v = unknowns[i];
    a[i][i] = 1;
    for (const auto& [w, p] : succ[v]) {
      if (goal[w])
        a[i][m] += p;
      else if (unknown_index[w] != n)
        a[i][unknown_index[w]] -= p;
    }
  }
  // Gauss-Jordan elimination. The system is nonsingular: every unknown
  // reaches a goal vertex, so I - P_uu is invertible.
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (piv < m && a[piv][col] == 0)
      ++piv;
    if (piv == m)
      throw InternalError("singular absorption system");
    std::swap(a[piv], a[col]);
    Rational inv = 1 / a[col][col];
    for (std::size_t k = col; k <= m; ++k)
      a[col][k] *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0)
        continue;
      Rational f = a[r][col];
      for (std::size_t k = col; k <= m; ++k)
        if (a[col][k] != 0)
          a[r][k] -= f * a[col][k];
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    x[unknowns[i]] = a[i][m];
  return x;
}

void check_lasso(const Automaton& aut, const LassoWord& w)
{
  if (w.cycle.empty())
    throw InputError("lasso cycle must be nonempty");
  check_word(aut, w.stem);
  check_word(aut, w.cycle);
}

} // namespace

RationalMatrix symbol_matrix(const Automaton& aut, SymbolId a)
{
  if (a >= aut.num_symbols())
    throw InputError("unknown symbol index " + std::to_string(a));
  RationalMatrix m(aut.num_states());
  for (StateId q = 0; q < aut.num_states(); ++q)
    for (const auto& t : aut.edges(q, a))
      m(q, t.target) += t.probability;
  return m;
}

RationalMatrix word_matrix(const Automaton& aut, const Word& u)
{
  check_word(aut, u);
  RationalMatrix m = RationalMatrix::identity(aut.num_states());
  for (SymbolId a : u)
    m = m * symbol_matrix(aut, a);
  return m;
}

RationalMatrix final_passage_matrix(const Automaton& aut, const Word& u)
{
  if (aut.has_rabin_acceptance())
    throw InputError("final-passage matrices need Büchi acceptance");
  if (u.empty())
    throw InputError("final-passage matrix needs a nonempty word");
  check_word(aut, u);
  const std::size_t n = aut.num_states();
  RationalMatrix out(n);
  // Product chain over (state, touched-final flag); index state + n * flag.
  for (StateId start = 0; start < n; ++start) {
    std::vector<Rational> cur(2 * n);
    cur[start + (aut.is_final(start) ? n : 0)] = 1;
    for (SymbolId a : u) {
      std::vector<Rational> next(2 * n);
      for (std::size_t v = 0; v < 2 * n; ++v) {
        if (cur[v] == 0)
          continue;
        StateId q = v % n;
        bool seen = v >= n;
        for (const auto& t : aut.edges(q, a)) {
          bool flag = seen || aut.is_final(t.target);
          next[t.target + (flag ? n : 0)] += cur[v] * t.probability;
        }
      }
      cur = std::move(next);
    }
    for (StateId q = 0; q < n; ++q)
      out(start, q) = cur[q + n];
  }
  return out;
}

Distribution run_distribution(const Automaton& aut, const Word& u)
{
  check_word(aut, u);
  Distribution d = Distribution::dirac(aut.num_states(), aut.initial());
  for (SymbolId a : u) {
    Distribution next(aut.num_states());
    for (StateId q = 0; q < aut.num_states(); ++q) {
      if (d[q] == 0)
        continue;
      for (const auto& t : aut.edges(q, a))
        next[t.target] += d[q] * t.probability;
    }
    d = std::move(next);
  }
  return d;
}

namespace markov {

CycleChain build_cycle_chain(const Automaton& aut, const Word& cycle)
{
  CycleChain ch;
  ch.num_states = aut.num_states();
  ch.period = cycle.size();
  const std::size_t nv = ch.num_states * ch.period;
  ch.successors.resize(nv);
  graph::Adjacency adj(nv);
  for (StateId q = 0; q < ch.num_states; ++q)
    for (std::size_t i = 0; i < ch.period; ++i) {
      std::size_t v = ch.vertex(q, i);
      std::size_t next_pos = (i + 1) % ch.period;
      for (const auto& t : aut.edges(q, cycle[i])) {
        ch.successors[v].push_back({ch.vertex(t.target, next_pos), t.probability});
        adj[v].push_back(ch.vertex(t.target, next_pos));
      }
    }

  auto scc = graph::strongly_connected_components(adj);
  ch.scc = scc.component;
  std::vector<bool> bottom(scc.count(), true);
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t w : adj[v])
      if (scc.component[w] != scc.component[v])
        bottom[scc.component[v]] = false;

  std::vector<bool> accepting(scc.count(), false);
  for (std::size_t c = 0; c < scc.count(); ++c) {
    if (!bottom[c])
      continue;
    StateSet in;
    for (std::size_t v : scc.members[c])
      in.insert(v / ch.period);
    auto meets = [&](const StateSet& s) {
      return std::any_of(s.begin(), s.end(), [&](StateId q) { return in.count(q) != 0; });
    };
    if (aut.has_rabin_acceptance()) {
      for (const auto& p : aut.rabin_pairs())
        if (!meets(p.bad) && meets(p.good))
          accepting[c] = true;
    } else {
      accepting[c] = meets(aut.final_states());
    }
  }
  ch.in_bottom.resize(nv);
  ch.accepting_bottom.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    ch.in_bottom[v] = bottom[scc.component[v]];
    ch.accepting_bottom[v] = accepting[scc.component[v]];
  }
  return ch;
}

} // namespace markov

Rational lasso_acceptance(const Automaton& aut, const LassoWord& w)
{
  require_probabilistic(aut);
  check_lasso(aut, w);
  Distribution start = run_distribution(aut, w.stem);
  auto chain = markov::build_cycle_chain(aut, w.cycle);
  std::vector<std::size_t> sources;
  for (StateId q : start.support())
    sources.push_back(chain.vertex(q, 0));
  auto x = absorption_probabilities(chain.successors, chain.accepting_bottom, sources);
  Rational mu = 0;
  for (StateId q : start.support())
    mu += start[q] * x[chain.vertex(q, 0)];
  return mu;
}

Rational lasso_reach_probability(const Automaton& aut, const LassoWord& w, const StateSet& targets)
{
  require_probabilistic(aut);
  check_lasso(aut, w);
  // Reaching a target during the stem counts as well: track it separately.
  const std::size_t n = aut.num_states();
  Rational reached = 0;
  Distribution d = Distribution::dirac(n, aut.initial());
  if (targets.count(aut.initial()))
    return 1;
  for (SymbolId a : w.stem) {
    Distribution next(n);
    for (StateId q = 0; q < n; ++q) {
      if (d[q] == 0)
        continue;
      for (const auto& t : aut.edges(q, a)) {
        if (targets.count(t.target))
          reached += d[q] * t.probability;
        else
          next[t.target] += d[q] * t.probability;
      }
    }
    d = std::move(next);
  }
  auto chain = markov::build_cycle_chain(aut, w.cycle);
  std::vector<bool> goal(chain.successors.size(), false);
  for (StateId q : targets)
    for (std::size_t i = 0; i < chain.period; ++i)
      goal[chain.vertex(q, i)] = true;
  std::vector<std::size_t> sources;
  for (StateId q : d.support())
    sources.push_back(chain.vertex(q, 0));
  auto x = absorption_probabilities(chain.successors, goal, sources);
  for (StateId q : d.support())
    reached += d[q] * x[chain.vertex(q, 0)];
  return reached;
}

Rational binary_value_lasso(std::string_view stem, std::string_view cycle)
{
  if (cycle.empty())
    throw InputError("lasso cycle must be nonempty");
  auto as_integer = [](std::string_view bits) {
    mpz_class v = 0;
    for (char b : bits) {
      if (b != '0' && b != '1')
        throw InputError(std::string("non-binary symbol '") + b + "'");
      v = 2 * v + (b - '0');
    }
    return v;
  };
  mpz_class stem_value = as_integer(stem);
  mpz_class cycle_value = as_integer(cycle);
  mpz_class stem_scale = 1, cycle_scale = 1;
  stem_scale <<= stem.size();
  cycle_scale <<= cycle.size();
  // stem/2^m + cycle / ((2^p - 1) 2^m)
  Rational r = Rational(stem_value, stem_scale) + Rational(cycle_value, (cycle_scale - 1) * stem_scale);
  r.canonicalize();
  return r;
}

} // namespace pba
