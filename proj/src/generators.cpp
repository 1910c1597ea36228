#include "pba/construct.hpp"

#include "pba/error.hpp"

#include <charconv>

namespace pba {

namespace {

Automaton m_id_variant(std::string name, const char* keep_symbol, const char* accept_symbol)
{
  // From q0, one symbol keeps half the mass in q0 and leaks half to the
  // reject state; the other keeps half and moves half to the absorbing
  // accepting q1.
  Automaton m(std::move(name), Role::fpm);
  SymbolId zero = m.add_symbol("0");
  SymbolId one = m.add_symbol("1");
  StateId q0 = m.add_state("q0");
  StateId q1 = m.add_state("q1");
  StateId qr = m.add_state("qr");
  SymbolId leak = std::string_view(keep_symbol) == "0" ? zero : one;
  SymbolId win = std::string_view(accept_symbol) == "1" ? one : zero;
  const Rational half(1, 2);
  m.add_transition(q0, leak, q0, half);
  m.add_transition(q0, leak, qr, half);
  m.add_transition(q0, win, q0, half);
  m.add_transition(q0, win, q1, half);
  for (SymbolId a : {zero, one}) {
    m.add_transition(q1, a, q1, 1);
    m.add_transition(qr, a, qr, 1);
  }
  m.set_initial(q0);
  m.set_final_states({q0, q1});
  m.set_reject(qr);
  return m;
}

unsigned parse_unsigned(const std::string& s, const char* what)
{
  unsigned v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw InputError(std::string("bad ") + what + " '" + s + "'");
  return v;
}

} // namespace

Automaton gen_m_id()
{
  return m_id_variant("m_id", "0", "1");
}

Automaton gen_m_id_swapped()
{
  return m_id_variant("m_id_swapped", "1", "0");
}

Automaton gen_m_id_squared()
{
  Automaton m = fpm_product(gen_m_id(), gen_m_id());
  m.set_name("m_id_squared");
  return m;
}

Automaton gen_succinct(unsigned n)
{
  if (n < 1)
    throw InputError("succinct needs n >= 1");
  // scan --a--> scan (1/2) | chk1 (1/2); chk_i --*--> chk_{i+1};
  // chk_{n+1} --c--> done, --a,b--> rej.
  Automaton m("succinct" + std::to_string(n), Role::fpm);
  SymbolId a = m.add_symbol("a");
  SymbolId b = m.add_symbol("b");
  SymbolId c = m.add_symbol("c");
  StateId scan = m.add_state("scan");
  std::vector<StateId> chk;
  for (unsigned i = 1; i <= n + 1; ++i)
    chk.push_back(m.add_state("chk" + std::to_string(i)));
  StateId done = m.add_state("done");
  StateId rej = m.add_state("rej");

  const Rational half(1, 2);
  m.add_transition(scan, a, scan, half);
  m.add_transition(scan, a, chk.front(), half);
  m.add_transition(scan, b, scan, 1);
  m.add_transition(scan, c, scan, 1);
  for (unsigned i = 0; i + 1 < chk.size(); ++i)
    for (SymbolId s : {a, b, c})
      m.add_transition(chk[i], s, chk[i + 1], 1);
  m.add_transition(chk.back(), c, done, 1);
  m.add_transition(chk.back(), a, rej, 1);
  m.add_transition(chk.back(), b, rej, 1);
  for (SymbolId s : {a, b, c}) {
    m.add_transition(done, s, done, 1);
    m.add_transition(rej, s, rej, 1);
  }
  m.set_initial(scan);
  StateSet finals;
  for (StateId q = 0; q < m.num_states(); ++q)
    if (q != rej)
      finals.insert(q);
  m.set_final_states(std::move(finals));
  m.set_reject(rej);
  return m;
}

Automaton gen_p3(const Rational& lambda)
{
  if (lambda <= 0 || lambda >= 1)
    throw InputError("p3 needs lambda in (0,1)");
  Automaton m("p3", Role::pba);
  SymbolId plain = m.add_symbol("a");
  SymbolId at = m.add_symbol("@");
  SymbolId sharp = m.add_symbol("sharp");
  SymbolId dollar = m.add_symbol("$");
  StateId s0 = m.add_state("s0");
  StateId s1 = m.add_state("s1");
  StateId s2 = m.add_state("s2");
  StateId sr = m.add_state("sr");

  m.add_transition(s0, plain, s0, lambda);
  m.add_transition(s0, plain, s1, 1 - lambda);
  for (SymbolId s : {at, sharp, dollar})
    m.add_transition(s0, s, sr, 1);

  m.add_transition(s1, at, s0, 1);
  m.add_transition(s1, sharp, s0, 1);
  m.add_transition(s1, dollar, s2, 1);
  m.add_transition(s1, plain, s1, 1);

  m.add_transition(s2, dollar, s0, 1);
  for (SymbolId s : {plain, at, sharp})
    m.add_transition(s2, s, sr, 1);

  for (SymbolId s : {plain, at, sharp, dollar})
    m.add_transition(sr, s, sr, 1);

  m.set_initial(s0);
  m.set_final_states({s0});
  return m;
}

Automaton gen_all_final(const std::vector<std::string>& alphabet)
{
  Automaton m("all_final", Role::pba);
  for (const auto& s : alphabet)
    m.add_symbol(s);
  StateId q = m.add_state("q");
  for (SymbolId a = 0; a < m.num_symbols(); ++a)
    m.add_transition(q, a, q, 1);
  m.set_initial(q);
  m.set_final_states({q});
  return m;
}

Automaton generate_example(const std::string& name, const std::vector<std::string>& params)
{
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (params.size() < lo || params.size() > hi)
      throw InputError("wrong number of parameters for generator '" + name + "'");
  };
  if (name == "m_id") {
    arity(0, 0);
    return gen_m_id();
  }
  if (name == "m_id_squared") {
    arity(0, 0);
    return gen_m_id_squared();
  }
  if (name == "m_id_swapped") {
    arity(0, 0);
    return gen_m_id_swapped();
  }
  if (name == "succinct") {
    arity(1, 1);
    return gen_succinct(parse_unsigned(params[0], "n"));
  }
  if (name == "p3") {
    arity(0, 1);
    Rational lambda(1, 4);
    if (!params.empty()) {
      auto r = parse_rational(params[0]);
      if (!r)
        throw InputError("bad lambda '" + params[0] + "'");
      lambda = *r;
    }
    return gen_p3(lambda);
  }
  if (name == "all_final") {
    arity(1, 64);
    return gen_all_final(params);
  }
  throw InputError("unknown generator '" + name + "'");
}

} // namespace pba
