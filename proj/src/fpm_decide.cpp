// Qualitative procedures for finite probabilistic monitors.
//
// Whether a run stays out of the reject state with positive probability, or
// is absorbed by it almost surely, depends only on supports. On v^omega the
// states at the start of each v-block form a finite Markov chain with matrix
// delta_v; it is absorbed into its bottom SCCs with probability 1, and those
// are the bottom SCCs of the support graph B_v. Hence
//
//   mu(u v^omega) = 0  iff  from every q in supp(delta_u) minus r, every
//                           bottom SCC of B_v reachable from q is {r}.
//
// Some word survives with positive probability iff there are u, v and a set
// C avoiding r, closed under B_v and meeting supp(delta_u): a surviving
// bottom SCC D of the v-chain is such a C once u is extended by enough
// copies of v to hit D. Both conditions range over finitely many supports
// and monoid elements, so enumerating them is complete.

#include "pba/decide.hpp"

#include "pba/construct.hpp"
#include "pba/error.hpp"
#include "pba/graph.hpp"
#include "pba/lasso.hpp"
#include "pba/markov.hpp"

#include <bit>
#include <deque>
#include <map>
#include <unordered_map>

namespace pba {

namespace {

using Mask = std::uint64_t;

Mask bit(StateId q)
{
  return Mask{1} << q;
}

struct VecHash
{
  std::size_t operator()(const std::vector<Mask>& v) const
  {
    std::size_t h = v.size();
    for (Mask m : v)
      h ^= std::hash<Mask>{}(m) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

void require_fpm(const Automaton& m)
{
  if (m.role() != Role::fpm)
    throw InputError("operation needs an FPM, got role " + std::string(role_name(m.role())));
  require_valid(m);
  if (m.num_states() > 64)
    throw InputError("support-based procedures handle at most 64 states");
}

BooleanMatrix letter_matrix(const Automaton& a, SymbolId s)
{
  BooleanMatrix b;
  b.rows.assign(a.num_states(), 0);
  for (StateId q = 0; q < a.num_states(); ++q)
    for (const auto& t : a.edges(q, s))
      b.rows[q] |= bit(t.target);
  return b;
}

Mask image(const BooleanMatrix& b, Mask from)
{
  Mask out = 0;
  for (; from; from &= from - 1)
    out |= b.rows[std::countr_zero(from)];
  return out;
}

StateSet to_set(Mask m)
{
  StateSet s;
  for (; m; m &= m - 1)
    s.insert(static_cast<StateId>(std::countr_zero(m)));
  return s;
}

/// Supports of delta_u(q_s, .) for every word u, each with its shortest then
/// lexicographically smallest word. The empty word is included only when
/// `with_empty` is set.
std::vector<std::pair<Mask, Word>> reachable_supports(const Automaton& a, bool with_empty)
{
  std::vector<BooleanMatrix> letters;
  for (SymbolId s = 0; s < a.num_symbols(); ++s)
    letters.push_back(letter_matrix(a, s));

  std::vector<std::pair<Mask, Word>> out;
  std::unordered_map<Mask, std::size_t> seen;
  std::deque<std::pair<Mask, Word>> queue;
  if (with_empty) {
    seen.emplace(bit(a.initial()), 0);
    out.push_back({bit(a.initial()), {}});
  }
  queue.push_back({bit(a.initial()), {}});
  while (!queue.empty()) {
    auto [m, w] = queue.front();
    queue.pop_front();
    for (SymbolId s = 0; s < a.num_symbols(); ++s) {
      Mask next = image(letters[s], m);
      if (seen.count(next))
        continue;
      seen.emplace(next, out.size());
      Word nw = w;
      nw.push_back(s);
      out.push_back({next, nw});
      queue.push_back({next, std::move(nw)});
    }
  }
  return out;
}

/// Greatest C inside `allowed` with post(C, e) inside C.
Mask greatest_closed(const BooleanMatrix& e, Mask allowed)
{
  Mask c = allowed;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Mask rest = c; rest; rest &= rest - 1) {
      auto q = static_cast<StateId>(std::countr_zero(rest));
      if (e.rows[q] & ~c) {
        c &= ~bit(q);
        changed = true;
      }
    }
  }
  return c;
}

/// States from which the e-chain is absorbed by {r} almost surely.
Mask surely_rejected(const BooleanMatrix& e, StateId r)
{
  const std::size_t n = e.rows.size();
  graph::Adjacency adj(n), rev(n);
  for (StateId q = 0; q < n; ++q)
    for (Mask m = e.rows[q]; m; m &= m - 1) {
      auto t = static_cast<std::size_t>(std::countr_zero(m));
      adj[q].push_back(t);
      rev[t].push_back(q);
    }
  auto scc = graph::strongly_connected_components(adj);
  std::vector<bool> bottom(scc.count(), true);
  for (StateId q = 0; q < n; ++q)
    for (std::size_t t : adj[q])
      if (scc.component[t] != scc.component[q])
        bottom[scc.component[q]] = false;
  std::vector<std::size_t> bad;
  for (std::size_t c = 0; c < scc.count(); ++c)
    if (bottom[c] && !(scc.members[c].size() == 1 && scc.members[c][0] == r))
      bad.insert(bad.end(), scc.members[c].begin(), scc.members[c].end());
  auto reaches_bad = graph::reachable_from(rev, bad);
  Mask good = 0;
  for (StateId q = 0; q < n; ++q)
    if (!reaches_bad[q])
      good |= bit(q);
  return good;
}

Mask closure_under(const BooleanMatrix& e, Mask from)
{
  Mask c = from;
  while (true) {
    Mask next = c | image(e, c);
    if (next == c)
      return c;
    c = next;
  }
}

} // namespace

BooleanMatrix BooleanMatrix::operator*(const BooleanMatrix& rhs) const
{
  BooleanMatrix out;
  out.rows.resize(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    out.rows[r] = image(rhs, rows[r]);
  return out;
}

std::vector<MonoidElement> transition_monoid(const Automaton& aut, const Limits& limits, const SearchControl& control)
{
  if (aut.num_states() > 64)
    throw InputError("transition monoid handles at most 64 states");
  std::vector<BooleanMatrix> letters;
  for (SymbolId s = 0; s < aut.num_symbols(); ++s)
    letters.push_back(letter_matrix(aut, s));

  std::vector<MonoidElement> out;
  std::unordered_map<std::vector<Mask>, std::size_t, VecHash> index;
  auto add = [&](BooleanMatrix m, Word w) {
    if (index.count(m.rows))
      return;
    if (out.size() >= limits.monoid_cap)
      throw ResourceLimit("transition monoid cap", limits.monoid_cap, "--monoid-cap");
    index.emplace(m.rows, out.size());
    out.push_back({std::move(m), std::move(w)});
  };
  for (SymbolId s = 0; s < aut.num_symbols(); ++s)
    add(letters[s], Word{s});
  // Breadth-first in discovery order, which is shortlex order of the words.
  for (std::size_t i = 0; i < out.size(); ++i) {
    control.checkpoint("transition monoid", i);
    for (SymbolId s = 0; s < aut.num_symbols(); ++s) {
      BooleanMatrix m = out[i].matrix * letters[s];
      Word w = out[i].word;
      w.push_back(s);
      add(std::move(m), std::move(w));
    }
  }
  return out;
}

FpmEmptinessAnswer fpm_positive_empty(const Automaton& m, const Limits& limits, const SearchControl& control)
{
  require_fpm(m);
  const StateId r = *m.reject();
  const Mask all = m.num_states() == 64 ? ~Mask{0} : (bit(m.num_states()) - 1);
  const Mask allowed = all & ~bit(r);

  auto supports = reachable_supports(m, false);
  auto monoid = transition_monoid(m, limits, control);

  FpmEmptinessAnswer ans;
  std::optional<LassoWord> best;
  Mask best_c = 0;
  for (std::size_t i = 0; i < monoid.size(); ++i) {
    control.checkpoint("subset witness search", i);
    const auto& e = monoid[i];
    if (best && e.word.size() + 1 > best->stem.size() + best->cycle.size())
      break;  // elements come in shortlex order
    Mask g = greatest_closed(e.matrix, allowed);
    if (!g)
      continue;
    for (const auto& [s, u] : supports) {
      if (best && u.size() + e.word.size() > best->stem.size() + best->cycle.size())
        break;
      if (!(s & g))
        continue;
      LassoWord w{u, e.word};
      if (!best || lasso_less(w, *best)) {
        best = w;
        best_c = closure_under(e.matrix, s & g);
      }
    }
  }
  if (!best)
    return ans;

  ans.empty = false;
  ans.witness = SubsetWitness{to_set(best_c), best->stem, best->cycle};
  // Re-verify: C is reached, closed under the cycle, and the lasso survives.
  Distribution d = run_distribution(m, best->stem);
  Rational reach = 0;
  for (StateId q : ans.witness->states)
    reach += d[q];
  for (StateId q : ans.witness->states)
    for (StateId t : post(m, q, best->cycle))
      if (!ans.witness->states.count(t))
        throw InternalError("subset witness is not closed under its cycle");
  Rational mu = lasso_acceptance(m, *best);
  if (reach <= 0 || mu < reach)
    throw InternalError("subset witness failed re-verification");
  ans.certificate = mu;
  return ans;
}

UniversalityAnswer fpm_positive_universal(const Automaton& m, const Limits& limits, const SearchControl& control)
{
  require_fpm(m);
  const StateId r = *m.reject();

  auto supports = reachable_supports(m, true);
  auto monoid = transition_monoid(m, limits, control);

  UniversalityAnswer ans;
  std::optional<LassoWord> best;
  for (std::size_t i = 0; i < monoid.size(); ++i) {
    control.checkpoint("absorption search", i);
    const auto& e = monoid[i];
    if (best && e.word.size() > best->stem.size() + best->cycle.size())
      break;
    Mask good = surely_rejected(e.matrix, r);
    for (const auto& [s, u] : supports) {
      if (best && u.size() + e.word.size() > best->stem.size() + best->cycle.size())
        break;
      if ((s & ~bit(r) & ~good) != 0)
        continue;
      LassoWord w{u, e.word};
      if (!best || lasso_less(w, *best))
        best = w;
    }
  }
  if (!best)
    return ans;

  ans.universal = false;
  ans.counterexample = normalize_lasso(*best);
  Rational mu = lasso_acceptance(m, *ans.counterexample);
  if (mu != 0)
    throw InternalError("FPM universality counterexample failed re-verification");
  ans.certificate = mu;
  return ans;
}

EmptinessAnswer almost_sure_empty(const Automaton& b, const Limits& limits, const SearchControl& control)
{
  require_probabilistic_buchi(b);
  // L_{=1}(b) is empty iff the complement monitor accepts every word with
  // positive probability.
  auto u = fpm_positive_universal(complement_to_fpm(b), limits, control);
  EmptinessAnswer ans;
  if (u.universal)
    return ans;
  ans.empty = false;
  ans.witness = u.counterexample;
  Rational mu = lasso_acceptance(b, *ans.witness);
  if (mu != 1)
    throw InternalError("almost-sure witness failed re-verification");
  ans.certificate = mu;
  return ans;
}

UniversalityAnswer almost_sure_universal(const Automaton& b, const Limits& limits, const SearchControl& control)
{
  require_probabilistic_buchi(b);
  auto e = fpm_positive_empty(complement_to_fpm(b), limits, control);
  UniversalityAnswer ans;
  if (e.empty)
    return ans;
  ans.universal = false;
  ans.counterexample = normalize_lasso({e.witness->reach, e.witness->cycle});
  Rational mu = lasso_acceptance(b, *ans.counterexample);
  if (mu >= 1)
    throw InternalError("almost-sure counterexample failed re-verification");
  ans.certificate = mu;
  return ans;
}

} // namespace pba
