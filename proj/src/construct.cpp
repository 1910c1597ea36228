#include "pba/construct.hpp"

#include "pba/decide.hpp"
#include "pba/error.hpp"

#include <set>

namespace pba {

namespace {

std::string tuple_name(const std::string& a, const std::string& b)
{
  return "(" + a + "," + b + ")";
}

std::string fresh_avoiding(const std::set<std::string>& taken, std::string base)
{
  while (taken.count(base))
    base += '\'';
  return base;
}

/// Symbol index in `other` for every symbol of `ref`; both alphabets must be
/// the same set.
std::vector<SymbolId> align_alphabets(const Automaton& ref, const Automaton& other)
{
  if (ref.num_symbols() != other.num_symbols())
    throw InputError("alphabet mismatch");
  std::vector<SymbolId> map;
  for (const auto& s : ref.alphabet()) {
    auto b = other.find_symbol(s);
    if (!b)
      throw InputError("alphabet mismatch: '" + s + "' missing from " + other.name());
    map.push_back(*b);
  }
  return map;
}

Automaton with_same_alphabet(const Automaton& ref, std::string name, Role role)
{
  Automaton out(std::move(name), role);
  for (const auto& s : ref.alphabet())
    out.add_symbol(s);
  return out;
}

void make_absorbing(Automaton& aut, StateId q)
{
  for (SymbolId a = 0; a < aut.num_symbols(); ++a)
    aut.add_transition(q, a, q, 1);
}

void require_fpm(const Automaton& m)
{
  if (m.role() != Role::fpm)
    throw InputError("operation needs an FPM, got role " + std::string(role_name(m.role())));
  require_valid(m);
}

} // namespace

Automaton complement_to_fpm(const Automaton& b)
{
  require_probabilistic_buchi(b);
  Automaton m = with_same_alphabet(b, b.name() + "_cofpm", Role::fpm);
  for (const auto& q : b.states())
    m.add_state(q);
  StateId rej = m.add_state(fresh_state_name(b, "q#rej"));
  m.set_initial(b.initial());
  StateSet finals;
  for (StateId q = 0; q < b.num_states(); ++q) {
    finals.insert(q);
    for (SymbolId a = 0; a < b.num_symbols(); ++a) {
      if (b.is_final(q)) {
        m.add_transition(q, a, rej, Rational(1, 2));
        for (const auto& t : b.edges(q, a))
          m.add_transition(q, a, t.target, t.probability / 2);
      } else {
        for (const auto& t : b.edges(q, a))
          m.add_transition(q, a, t.target, t.probability);
      }
    }
  }
  make_absorbing(m, rej);
  m.set_final_states(std::move(finals));
  m.set_reject(rej);
  return m;
}

Automaton reject_pba(const Automaton& m)
{
  require_fpm(m);
  Automaton out = m;
  out.set_name(m.name() + "_rej");
  out.set_role(Role::pba);
  out.set_final_states({*m.reject()});
  out.set_reject(std::nullopt);
  return out;
}

Automaton fpm_product(const Automaton& m1, const Automaton& m2)
{
  require_fpm(m1);
  require_fpm(m2);
  auto sym2 = align_alphabets(m1, m2);
  const StateId r1 = *m1.reject(), r2 = *m2.reject();

  Automaton out = with_same_alphabet(m1, m1.name() + "_x_" + m2.name(), Role::fpm);
  std::vector<std::vector<StateId>> pair_id(m1.num_states(), std::vector<StateId>(m2.num_states()));
  std::set<std::string> names;
  for (StateId p = 0; p < m1.num_states(); ++p) {
    if (p == r1)
      continue;
    for (StateId q = 0; q < m2.num_states(); ++q) {
      if (q == r2)
        continue;
      auto name = tuple_name(m1.state_name(p), m2.state_name(q));
      if (!names.insert(name).second)
        throw InputError("product state name collision: " + name);
      pair_id[p][q] = out.add_state(name);
    }
  }
  StateId rej = out.add_state(fresh_avoiding(names, "q#rej"));

  for (StateId p = 0; p < m1.num_states(); ++p) {
    if (p == r1)
      continue;
    for (StateId q = 0; q < m2.num_states(); ++q) {
      if (q == r2)
        continue;
      for (SymbolId a = 0; a < m1.num_symbols(); ++a) {
        Rational kept = 0;
        for (const auto& t1 : m1.edges(p, a)) {
          if (t1.target == r1)
            continue;
          for (const auto& t2 : m2.edges(q, sym2[a])) {
            if (t2.target == r2)
              continue;
            Rational w = t1.probability * t2.probability;
            out.add_transition(pair_id[p][q], a, pair_id[t1.target][t2.target], w);
            kept += w;
          }
        }
        out.add_transition(pair_id[p][q], a, rej, 1 - kept);
      }
    }
  }
  make_absorbing(out, rej);
  out.set_initial(pair_id[m1.initial()][m2.initial()]);
  StateSet finals;
  for (StateId s = 0; s < out.num_states(); ++s)
    if (s != rej)
      finals.insert(s);
  out.set_final_states(std::move(finals));
  out.set_reject(rej);
  return out;
}

Automaton almost_sure_union(const Automaton& b1, const Automaton& b2)
{
  require_probabilistic_buchi(b1);
  require_probabilistic_buchi(b2);
  align_alphabets(b1, b2);
  Automaton out = reject_pba(fpm_product(complement_to_fpm(b1), complement_to_fpm(b2)));
  out.set_name(b1.name() + "_or_" + b2.name());
  return out;
}

Automaton almost_sure_intersection(const Automaton& b1, const Automaton& b2)
{
  require_probabilistic_buchi(b1);
  require_probabilistic_buchi(b2);
  auto sym2 = align_alphabets(b1, b2);

  std::set<std::string> names;
  for (const auto& q : b1.states())
    names.insert(tuple_name("1", q));
  for (const auto& q : b2.states())
    if (!names.insert(tuple_name("2", q)).second)
      throw InputError("intersection state name collision: " + tuple_name("2", q));

  Automaton out = with_same_alphabet(b1, b1.name() + "_and_" + b2.name(), Role::pba);
  StateId init = out.add_state(fresh_avoiding(names, "q#init"));
  std::vector<StateId> left, right;
  for (const auto& q : b1.states())
    left.push_back(out.add_state(tuple_name("1", q)));
  for (const auto& q : b2.states())
    right.push_back(out.add_state(tuple_name("2", q)));

  StateSet finals;
  for (StateId q : b1.final_states())
    finals.insert(left[q]);
  for (StateId q : b2.final_states())
    finals.insert(right[q]);

  const Rational half(1, 2);
  for (SymbolId a = 0; a < b1.num_symbols(); ++a) {
    for (const auto& t : b1.edges(b1.initial(), a))
      out.add_transition(init, a, left[t.target], half * t.probability);
    for (const auto& t : b2.edges(b2.initial(), sym2[a]))
      out.add_transition(init, a, right[t.target], half * t.probability);
    for (StateId q = 0; q < b1.num_states(); ++q)
      for (const auto& t : b1.edges(q, a))
        out.add_transition(left[q], a, left[t.target], t.probability);
    for (StateId q = 0; q < b2.num_states(); ++q)
      for (const auto& t : b2.edges(q, sym2[a]))
        out.add_transition(right[q], a, right[t.target], t.probability);
  }
  out.set_initial(init);
  out.set_final_states(std::move(finals));
  return out;
}

Automaton dra_to_hpba(const Automaton& d)
{
  if (d.role() != Role::dra)
    throw InputError("operation needs a DRA, got role " + std::string(role_name(d.role())));
  require_valid(d);
  const std::size_t k = d.rabin_pairs().size();
  if (k == 0)
    throw InputError("DRA needs at least one Rabin pair");

  std::set<std::string> names;
  for (std::size_t i = 1; i <= k; ++i)
    for (const auto& q : d.states())
      names.insert(tuple_name(std::to_string(i), q));
  if (names.size() != k * d.num_states())
    throw InputError("copy state name collision");

  Automaton out = with_same_alphabet(d, d.name() + "_hpba", Role::hpba);
  StateId init = out.add_state(fresh_avoiding(names, "q#init"));
  names.insert(out.state_name(init));
  std::vector<std::vector<StateId>> copy(k + 1);
  for (std::size_t i = 1; i <= k; ++i)
    for (const auto& q : d.states())
      copy[i].push_back(out.add_state(tuple_name(std::to_string(i), q)));
  StateId rej = out.add_state(fresh_avoiding(names, "q#rej"));

  const Rational fan(1, static_cast<long>(k));
  const Rational half(1, 2);
  StateSet finals;
  for (std::size_t i = 1; i <= k; ++i) {
    const auto& pair = d.rabin_pairs()[i - 1];
    for (StateId g : pair.good)
      finals.insert(copy[i][g]);
    for (SymbolId a = 0; a < d.num_symbols(); ++a) {
      out.add_transition(init, a, copy[i][d.edges(d.initial(), a).front().target], fan);
      for (StateId q = 0; q < d.num_states(); ++q) {
        StateId next = copy[i][d.edges(q, a).front().target];
        if (pair.bad.count(q)) {
          out.add_transition(copy[i][q], a, next, half);
          out.add_transition(copy[i][q], a, rej, half);
        } else {
          out.add_transition(copy[i][q], a, next, 1);
        }
      }
    }
  }
  make_absorbing(out, rej);
  out.set_initial(init);
  out.set_final_states(std::move(finals));

  RankFunction rk;
  rk.levels.resize(out.num_states());
  rk.levels[init] = 0;
  for (std::size_t i = 1; i <= k; ++i)
    for (StateId s : copy[i])
      rk.levels[s] = static_cast<unsigned>(i);
  rk.levels[rej] = static_cast<unsigned>(k + 1);
  rk.max_level = static_cast<unsigned>(k + 1);
  out.set_ranks(std::move(rk));
  return out;
}

Automaton hpba_to_nba(const Automaton& h)
{
  require_probabilistic_buchi(h);
  require_hierarchy(h);

  Automaton out = with_same_alphabet(h, h.name() + "_nba", Role::nba);
  const std::size_t n = h.num_states();
  std::set<std::string> names;
  for (int level = 0; level < 2; ++level)
    for (const auto& q : h.states())
      if (!names.insert(tuple_name(q, std::to_string(level))).second)
        throw InputError("copy state name collision");
  for (int level = 0; level < 2; ++level)
    for (const auto& q : h.states())
      out.add_state(tuple_name(q, std::to_string(level)));

  for (StateId q = 0; q < n; ++q)
    for (SymbolId a = 0; a < h.num_symbols(); ++a)
      for (const auto& t : h.edges(q, a)) {
        out.add_transition(q, a, t.target);
        out.add_transition(q, a, n + t.target);
        if (t.probability == 1)
          out.add_transition(n + q, a, n + t.target);
      }
  out.set_initial(h.initial());
  StateSet finals;
  for (StateId f : h.final_states())
    finals.insert(n + f);
  out.set_final_states(std::move(finals));
  return out;
}

Automaton safety_closure(const Automaton& h)
{
  require_probabilistic_buchi(h);
  RankFunction rk = require_hierarchy(h);

  // Q_{>0}: states from which the probable language is nonempty.
  Automaton from = h;
  from.set_role(Role::hpba);
  from.set_reject(std::nullopt);
  from.set_ranks(rk);
  std::vector<bool> positive(h.num_states());
  for (StateId q = 0; q < h.num_states(); ++q) {
    from.set_initial(q);
    positive[q] = !hpba_probable_empty(from).empty;
  }

  Automaton out = with_same_alphabet(h, h.name() + "_closure", Role::nba);
  if (!positive[h.initial()]) {
    out.add_state(h.state_name(h.initial()));
    out.set_initial(0);
    return out;
  }
  std::vector<StateId> id(h.num_states());
  StateSet finals;
  for (StateId q = 0; q < h.num_states(); ++q)
    if (positive[q]) {
      id[q] = out.add_state(h.state_name(q));
      finals.insert(id[q]);
    }
  for (StateId q = 0; q < h.num_states(); ++q) {
    if (!positive[q])
      continue;
    for (SymbolId a = 0; a < h.num_symbols(); ++a)
      for (const auto& t : h.edges(q, a))
        if (positive[t.target])
          out.add_transition(id[q], a, id[t.target]);
  }
  out.set_initial(id[h.initial()]);
  out.set_final_states(std::move(finals));
  return out;
}

std::vector<RabinDecompositionMember> rabin_decomposition(const Automaton& r, std::size_t pair_cap)
{
  if (r.role() != Role::pra)
    throw InputError("operation needs a PRA, got role " + std::string(role_name(r.role())));
  require_valid(r);
  const std::size_t n = r.rabin_pairs().size();
  if (n > pair_cap)
    throw ResourceLimit("Rabin pair cap", pair_cap, "--pair-cap");

  auto as_pba = [&](std::string name, StateSet finals) {
    Automaton b = r;
    b.set_role(Role::pba);
    b.set_rabin_pairs({});
    b.set_final_states(std::move(finals));
    b.set_name(std::move(name));
    return b;
  };

  std::vector<RabinDecompositionMember> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> index_set;
    StateSet good;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) {
        index_set.push_back(i + 1);
        good.insert(r.rabin_pairs()[i].good.begin(), r.rabin_pairs()[i].good.end());
      }
    for (std::size_t j : index_set) {
      StateSet bad = r.rabin_pairs()[j - 1].bad;
      for (std::size_t i : index_set)
        if (i != j)
          bad.insert(r.rabin_pairs()[i - 1].good.begin(), r.rabin_pairs()[i - 1].good.end());
      std::string tag = "_I" + std::to_string(mask) + "_j" + std::to_string(j);
      out.push_back({index_set, j, as_pba(r.name() + tag + "_pos", good), as_pba(r.name() + tag + "_neg", bad)});
    }
  }
  return out;
}

} // namespace pba
