#include "support.hpp"

#include "pba/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace testkit {

namespace {

std::vector<StateId> pick_distinct(Rng& rng, std::vector<StateId> pool, std::size_t count)
{
  std::shuffle(pool.begin(), pool.end(), rng.engine());
  pool.resize(std::min(count, pool.size()));
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<StateId> range(std::size_t n)
{
  std::vector<StateId> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

void fill_row(Rng& rng, Automaton& a, StateId q, SymbolId s, const std::vector<StateId>& targets)
{
  auto w = random_weights(rng, targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i)
    a.add_transition(q, s, targets[i], w[i]);
}

Automaton skeleton(const std::string& name, pba::Role role, std::size_t n, std::size_t k)
{
  Automaton a(name, role);
  for (const auto& s : letters(k))
    a.add_symbol(s);
  for (std::size_t i = 0; i < n; ++i)
    a.add_state("q" + std::to_string(i));
  a.set_initial(0);
  return a;
}

/// Solves x = M x + b restricted to `unknown` states (others fixed in x).
void solve_in_place(std::vector<std::vector<Rational>> m, std::vector<Rational>& x, const std::vector<bool>& unknown)
{
  const std::size_t n = x.size();
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i)
    if (unknown[i])
      idx.push_back(i);
  const std::size_t k = idx.size();
  // (I - M_uu) x_u = M_uf x_f
  std::vector<std::vector<Rational>> aug(k, std::vector<Rational>(k + 1));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c)
      aug[r][c] = (r == c ? Rational(1) : Rational(0)) - m[idx[r]][idx[c]];
    Rational rhs = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (!unknown[j])
        rhs += m[idx[r]][j] * x[j];
    aug[r][k] = rhs;
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    while (piv < k && aug[piv][col] == 0)
      ++piv;
    if (piv == k)
      throw pba::InternalError("oracle: singular system");
    std::swap(aug[piv], aug[col]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || aug[r][col] == 0)
        continue;
      Rational f = aug[r][col] / aug[col][col];
      for (std::size_t c = col; c <= k; ++c)
        aug[r][c] -= f * aug[col][c];
    }
  }
  for (std::size_t r = 0; r < k; ++r)
    x[idx[r]] = aug[r][k] / aug[r][r];
}

} // namespace

std::vector<Rational> random_weights(Rng& rng, std::size_t count)
{
  std::vector<Rational> w(count);
  Rational total = 0;
  for (auto& x : w) {
    x = static_cast<long>(rng.between(1, 4));
    total += x;
  }
  for (auto& x : w)
    x /= total;
  return w;
}

std::vector<std::string> letters(std::size_t k)
{
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i)
    out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

Automaton random_pba(Rng& rng, std::size_t n, std::size_t k, std::size_t max_support)
{
  Automaton a = skeleton("rand_pba", pba::Role::pba, n, k);
  for (StateId q = 0; q < n; ++q)
    for (SymbolId s = 0; s < k; ++s)
      fill_row(rng, a, q, s, pick_distinct(rng, range(n), rng.between(1, max_support)));
  StateSet f;
  for (StateId q = 0; q < n; ++q)
    if (rng.coin(0.4))
      f.insert(q);
  a.set_final_states(f);
  return a;
}

Automaton random_fpm(Rng& rng, std::size_t n, std::size_t k, std::size_t max_support)
{
  Automaton a = skeleton("rand_fpm", pba::Role::fpm, n, k);
  StateId r = a.add_state("r");
  for (StateId q = 0; q < n; ++q)
    for (SymbolId s = 0; s < k; ++s)
      fill_row(rng, a, q, s, pick_distinct(rng, range(n + 1), rng.between(1, max_support)));
  for (SymbolId s = 0; s < k; ++s)
    a.add_transition(r, s, r, 1);
  StateSet f;
  for (StateId q = 0; q < n; ++q)
    f.insert(q);
  a.set_final_states(f);
  a.set_reject(r);
  return a;
}

Automaton leak_free_fpm(Rng& rng, std::size_t n, std::size_t k)
{
  Automaton a = skeleton("leak_free", pba::Role::fpm, n, k);
  StateId r = a.add_state("r");
  for (StateId q = 0; q < n; ++q)
    for (SymbolId s = 0; s < k; ++s)
      fill_row(rng, a, q, s, pick_distinct(rng, range(n), rng.between(1, 2)));
  for (SymbolId s = 0; s < k; ++s)
    a.add_transition(r, s, r, 1);
  StateSet f;
  for (StateId q = 0; q < n; ++q)
    f.insert(q);
  a.set_final_states(f);
  a.set_reject(r);
  return a;
}

Automaton random_hpba(Rng& rng, std::size_t n, std::size_t k)
{
  Automaton a = skeleton("rand_hpba", pba::Role::hpba, n, k);
  std::vector<unsigned> level(n, 0);
  for (std::size_t i = 1; i < n; ++i)
    level[i] = level[i - 1] + (rng.coin(0.6) ? 1 : 0);
  for (StateId q = 0; q < n; ++q) {
    std::vector<StateId> same, higher;
    for (StateId t = 0; t < n; ++t) {
      if (level[t] == level[q])
        same.push_back(t);
      else if (level[t] > level[q])
        higher.push_back(t);
    }
    for (SymbolId s = 0; s < k; ++s) {
      std::vector<StateId> targets;
      if (higher.empty() || rng.coin(0.5))
        targets.push_back(same[rng.below(same.size())]);
      if (!higher.empty()) {
        auto extra = pick_distinct(rng, higher, rng.between(targets.empty() ? 1 : 0, 2));
        targets.insert(targets.end(), extra.begin(), extra.end());
      }
      fill_row(rng, a, q, s, targets);
    }
  }
  StateSet f;
  for (StateId q = 0; q < n; ++q)
    if (rng.coin(0.4))
      f.insert(q);
  a.set_final_states(f);
  return a;
}

Automaton random_pra(Rng& rng, std::size_t n, std::size_t k, std::size_t pairs)
{
  Automaton a = random_pba(rng, n, k);
  a.set_role(pba::Role::pra);
  a.set_name("rand_pra");
  a.set_final_states({});
  std::vector<pba::RabinPair> ps;
  for (std::size_t i = 0; i < pairs; ++i) {
    pba::RabinPair p;
    for (StateId q = 0; q < n; ++q) {
      if (rng.coin(0.3))
        p.bad.insert(q);
      else if (rng.coin(0.4))
        p.good.insert(q);
    }
    ps.push_back(p);
  }
  a.set_rabin_pairs(ps);
  return a;
}

Automaton random_nba(Rng& rng, std::size_t n, std::size_t k, double final_density)
{
  Automaton a = skeleton("rand_nba", pba::Role::nba, n, k);
  for (StateId q = 0; q < n; ++q)
    for (SymbolId s = 0; s < k; ++s)
      for (StateId t : pick_distinct(rng, range(n), rng.between(0, 2)))
        a.add_transition(q, s, t);
  StateSet f;
  for (StateId q = 0; q < n; ++q)
    if (rng.coin(final_density))
      f.insert(q);
  a.set_final_states(f);
  return a;
}

LassoWord random_lasso(Rng& rng, std::size_t k, std::size_t max_stem, std::size_t max_cycle)
{
  LassoWord w;
  w.stem.resize(rng.between(0, max_stem));
  w.cycle.resize(rng.between(1, max_cycle));
  for (auto& s : w.stem)
    s = rng.below(k);
  for (auto& s : w.cycle)
    s = rng.below(k);
  return w;
}

std::vector<LassoWord> all_lassos(std::size_t k, std::size_t s, std::size_t c)
{
  std::vector<Word> words{Word{}};
  std::size_t longest = std::max(s, c);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i].size() == longest)
      continue;
    for (SymbolId a = 0; a < k; ++a) {
      Word w = words[i];
      w.push_back(a);
      words.push_back(w);
    }
  }
  std::vector<LassoWord> out;
  for (const auto& u : words)
    if (u.size() <= s)
      for (const auto& v : words)
        if (!v.empty() && v.size() <= c)
          out.push_back({u, v});
  return out;
}

bool dra_accepts(const Automaton& d, const LassoWord& w)
{
  auto step = [&](StateId q, SymbolId a) { return d.edges(q, a).at(0).target; };
  StateId q = d.initial();
  for (SymbolId a : w.stem)
    q = step(q, a);
  std::map<std::pair<StateId, std::size_t>, std::size_t> seen;
  std::vector<StateId> trace;
  std::size_t pos = 0;
  while (!seen.count({q, pos})) {
    seen[{q, pos}] = trace.size();
    trace.push_back(q);
    q = step(q, w.cycle[pos]);
    pos = (pos + 1) % w.cycle.size();
  }
  StateSet inf(trace.begin() + static_cast<std::ptrdiff_t>(seen[{q, pos}]), trace.end());
  for (const auto& p : d.rabin_pairs()) {
    bool bad = std::any_of(p.bad.begin(), p.bad.end(), [&](StateId s) { return inf.count(s); });
    bool good = std::any_of(p.good.begin(), p.good.end(), [&](StateId s) { return inf.count(s); });
    if (!bad && good)
      return true;
  }
  return false;
}

bool nba_accepts(const Automaton& a, const LassoWord& w)
{
  const std::size_t len = w.stem.size() + w.cycle.size();
  auto symbol_at = [&](std::size_t i) { return i < w.stem.size() ? w.stem[i] : w.cycle[i - w.stem.size()]; };
  auto next_pos = [&](std::size_t i) { return i + 1 < len ? i + 1 : w.stem.size(); };
  using Vertex = std::pair<StateId, std::size_t>;
  auto successors = [&](Vertex v) {
    std::vector<Vertex> out;
    for (const auto& t : a.edges(v.first, symbol_at(v.second)))
      out.push_back({t.target, next_pos(v.second)});
    return out;
  };
  auto reach = [&](std::vector<Vertex> frontier) {
    std::set<Vertex> seen(frontier.begin(), frontier.end());
    while (!frontier.empty()) {
      Vertex v = frontier.back();
      frontier.pop_back();
      for (Vertex t : successors(v))
        if (seen.insert(t).second)
          frontier.push_back(t);
    }
    return seen;
  };
  for (Vertex v : reach({{a.initial(), 0}}))
    if (a.is_final(v.first) && v.second >= w.stem.size() && reach(successors(v)).count(v))
      return true;
  return false;
}

Rational oracle_acceptance(const Automaton& a, const LassoWord& w)
{
  const std::size_t n = a.num_states();
  auto apply = [&](const std::vector<Rational>& d, SymbolId s) {
    std::vector<Rational> out(n);
    for (StateId q = 0; q < n; ++q)
      if (d[q] != 0)
        for (const auto& t : a.edges(q, s))
          out[t.target] += d[q] * t.probability;
    return out;
  };
  std::vector<Rational> d0(n);
  d0[a.initial()] = 1;
  for (SymbolId s : w.stem)
    d0 = apply(d0, s);

  // Block matrix, row by row.
  std::vector<std::vector<Rational>> m(n);
  for (StateId q = 0; q < n; ++q) {
    std::vector<Rational> row(n);
    row[q] = 1;
    for (SymbolId s : w.cycle)
      row = apply(row, s);
    m[q] = row;
  }
  // Reachability closure of the block graph.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (StateId i = 0; i < n; ++i) {
    reach[i][i] = true;
    for (StateId j = 0; j < n; ++j)
      if (m[i][j] != 0)
        reach[i][j] = true;
  }
  for (StateId k = 0; k < n; ++k)
    for (StateId i = 0; i < n; ++i)
      for (StateId j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j])
          reach[i][j] = true;
  auto in_bottom = [&](StateId q) {
    for (StateId j = 0; j < n; ++j)
      if (reach[q][j] && !reach[j][q])
        return false;
    return true;
  };
  // States visited inside blocks that start in q's class.
  auto visited_from = [&](StateId q) {
    StateSet cls, all;
    for (StateId j = 0; j < n; ++j)
      if (reach[q][j])
        cls.insert(j);
    StateSet cur = cls;
    all = cls;
    for (SymbolId s : w.cycle) {
      StateSet next;
      for (StateId x : cur)
        for (const auto& t : a.edges(x, s))
          next.insert(t.target);
      all.insert(next.begin(), next.end());
      cur = next;
    }
    return all;
  };
  auto meets = [](const StateSet& x, const StateSet& y) {
    return std::any_of(x.begin(), x.end(), [&](StateId s) { return y.count(s) != 0; });
  };

  std::vector<Rational> x(n);
  std::vector<bool> unknown(n, false);
  std::vector<bool> good_bottom(n, false);
  for (StateId q = 0; q < n; ++q) {
    if (!in_bottom(q))
      continue;
    StateSet v = visited_from(q);
    bool acc = false;
    if (a.has_rabin_acceptance()) {
      for (const auto& p : a.rabin_pairs())
        if (!meets(v, p.bad) && meets(v, p.good))
          acc = true;
    } else {
      acc = meets(v, a.final_states());
    }
    good_bottom[q] = acc;
    x[q] = acc ? 1 : 0;
  }
  for (StateId q = 0; q < n; ++q) {
    if (in_bottom(q))
      continue;
    bool can = false;
    for (StateId j = 0; j < n; ++j)
      if (reach[q][j] && good_bottom[j])
        can = true;
    unknown[q] = can;
  }
  solve_in_place(m, x, unknown);
  Rational mu = 0;
  for (StateId q = 0; q < n; ++q)
    mu += d0[q] * x[q];
  return mu;
}

bool brute_force_hierarchical(const Automaton& a)
{
  return brute_force_min_level(a).has_value();
}

std::optional<unsigned> brute_force_min_level(const Automaton& a)
{
  const std::size_t n = a.num_states();
  std::vector<unsigned> lv(n, 0);
  std::optional<unsigned> best;
  while (true) {
    bool ok = true;
    for (StateId q = 0; q < n && ok; ++q)
      for (SymbolId s = 0; s < a.num_symbols() && ok; ++s) {
        std::size_t same = 0;
        for (const auto& t : a.edges(q, s)) {
          if (lv[t.target] < lv[q])
            ok = false;
          if (lv[t.target] == lv[q])
            ++same;
        }
        if (same > 1)
          ok = false;
      }
    if (ok) {
      unsigned top = *std::max_element(lv.begin(), lv.end());
      if (!best || top < *best)
        best = top;
    }
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++lv[i] < n)
        break;
      lv[i] = 0;
    }
    if (i == n)
      return best;
  }
}

Rational binary_value_oracle(const std::string& stem, const std::string& cycle)
{
  mpz_class s = 0, c = 0;
  for (char ch : stem)
    s = s * 2 + (ch - '0');
  for (char ch : cycle)
    c = c * 2 + (ch - '0');
  mpz_class two_m = 1, two_p = 1;
  for (std::size_t i = 0; i < stem.size(); ++i)
    two_m *= 2;
  for (std::size_t i = 0; i < cycle.size(); ++i)
    two_p *= 2;
  Rational v(s * (two_p - 1) + c, two_m * (two_p - 1));
  v.canonicalize();
  return v;
}

LassoWord lasso_of(const Automaton& a, const std::string& text)
{
  auto semi = text.find(';');
  LassoWord w;
  for (char ch : text.substr(0, semi))
    w.stem.push_back(a.symbol(std::string(1, ch)));
  for (char ch : text.substr(semi + 1))
    w.cycle.push_back(a.symbol(std::string(1, ch)));
  return w;
}

} // namespace testkit
