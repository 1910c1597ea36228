#include "pba/automaton.hpp"

#include "pba/error.hpp"
#include "detail.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace pba {

namespace {

constexpr std::array<std::pair<Role, std::string_view>, 6> role_names{{
  {Role::pba, "pba"},
  {Role::fpm, "fpm"},
  {Role::hpba, "hpba"},
  {Role::nba, "nba"},
  {Role::dra, "dra"},
  {Role::pra, "pra"},
}};

const std::vector<Transition> no_edges;

} // namespace

std::string_view role_name(Role role)
{
  for (auto [r, n] : role_names)
    if (r == role)
      return n;
  return "?";
}

std::optional<Role> role_from_name(std::string_view name)
{
  for (auto [r, n] : role_names)
    if (n == name)
      return r;
  return std::nullopt;
}

bool is_probabilistic(Role role)
{
  return role != Role::nba && role != Role::dra;
}

bool has_rabin_acceptance(Role role)
{
  return role == Role::dra || role == Role::pra;
}

std::optional<StateId> Automaton::find_state(std::string_view name) const
{
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end())
    return std::nullopt;
  return static_cast<StateId>(it - states_.begin());
}

std::optional<SymbolId> Automaton::find_symbol(std::string_view name) const
{
  auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
  if (it == alphabet_.end())
    return std::nullopt;
  return static_cast<SymbolId>(it - alphabet_.begin());
}

StateId Automaton::state(std::string_view name) const
{
  if (auto q = find_state(name))
    return *q;
  throw InputError("unknown state '" + std::string(name) + "'");
}

SymbolId Automaton::symbol(std::string_view name) const
{
  if (auto a = find_symbol(name))
    return *a;
  throw InputError("unknown symbol '" + std::string(name) + "'");
}

StateId Automaton::add_state(std::string name)
{
  if (find_state(name))
    throw InputError("duplicate state name '" + name + "'");
  states_.push_back(std::move(name));
  delta_.emplace_back(alphabet_.size());
  return states_.size() - 1;
}

SymbolId Automaton::add_symbol(std::string name)
{
  if (find_symbol(name))
    throw InputError("duplicate symbol '" + name + "'");
  alphabet_.push_back(std::move(name));
  for (auto& row : delta_)
    row.emplace_back();
  return alphabet_.size() - 1;
}

const std::vector<Transition>& Automaton::edges(StateId q, SymbolId a) const
{
  if (q >= delta_.size() || a >= alphabet_.size())
    return no_edges;
  return delta_[q][a];
}

void Automaton::add_transition(StateId q, SymbolId a, StateId target, const Rational& p)
{
  if (q >= states_.size() || target >= states_.size())
    throw InputError("transition endpoint out of range");
  if (a >= alphabet_.size())
    throw InputError("transition symbol out of range");
  if (p == 0)
    return;
  auto& row = delta_[q][a];
  for (auto& t : row) {
    if (t.target == target) {
      if (is_probabilistic())
        t.probability += p;
      return;
    }
  }
  row.push_back({target, is_probabilistic() ? p : Rational(1)});
}

void Automaton::clear_transitions(StateId q, SymbolId a)
{
  delta_.at(q).at(a).clear();
}

Rational Automaton::probability(StateId q, SymbolId a, StateId target) const
{
  for (const auto& t : edges(q, a))
    if (t.target == target)
      return t.probability;
  return 0;
}

namespace detail {

std::string at(const Automaton& aut, StateId q, SymbolId a)
{
  return "(" + aut.state_name(q) + "," + aut.symbol_name(a) + ")";
}

ValidationReport validate_structure(const Automaton& aut, bool check_hierarchy)
{
  ValidationReport rep;
  auto report = [&](std::string msg) { rep.violations.push_back(std::move(msg)); };

  const std::size_t n = aut.num_states();
  if (n == 0) {
    report("no states declared");
    return rep;
  }
  if (aut.num_symbols() == 0)
    report("empty alphabet");
  if (aut.initial() >= n) {
    report("initial state out of range");
    return rep;
  }

  auto check_members = [&](const StateSet& s, const std::string& what) {
    for (StateId q : s)
      if (q >= n)
        report(what + " refers to an undeclared state");
  };

  if (aut.has_rabin_acceptance()) {
    if (!aut.final_states().empty())
      report("Rabin role declares a final set");
    for (const auto& p : aut.rabin_pairs()) {
      check_members(p.bad, "Rabin pair");
      check_members(p.good, "Rabin pair");
    }
  } else {
    if (!aut.rabin_pairs().empty())
      report("Büchi role declares Rabin pairs");
    check_members(aut.final_states(), "final set");
  }

  if (aut.is_probabilistic()) {
    for (StateId q = 0; q < n; ++q) {
      for (SymbolId a = 0; a < aut.num_symbols(); ++a) {
        Rational sum = 0;
        for (const auto& t : aut.edges(q, a)) {
          if (t.probability < 0 || t.probability > 1)
            report("probability " + to_string(t.probability) + " outside [0,1] at " + at(aut, q, a) +
                   " -> " + aut.state_name(t.target));
          sum += t.probability;
        }
        if (sum != 1)
          report("row sum " + to_string(sum) + " at " + at(aut, q, a));
      }
    }
  }

  if (aut.role() == Role::dra) {
    for (StateId q = 0; q < n; ++q)
      for (SymbolId a = 0; a < aut.num_symbols(); ++a)
        if (aut.edges(q, a).size() != 1)
          report("DRA needs exactly one successor at " + at(aut, q, a) + ", found " +
                 std::to_string(aut.edges(q, a).size()));
  }

  if (aut.role() == Role::fpm) {
    if (!aut.reject()) {
      report("FPM without reject state");
    } else if (*aut.reject() >= n) {
      report("reject state out of range");
    } else {
      StateId r = *aut.reject();
      if (r == aut.initial())
        report("reject equals initial");
      StateSet expected;
      for (StateId q = 0; q < n; ++q)
        if (q != r)
          expected.insert(q);
      if (aut.final_states() != expected)
        report("FPM final set must be every state except the reject state");
      for (SymbolId a = 0; a < aut.num_symbols(); ++a) {
        const auto& e = aut.edges(r, a);
        if (e.size() != 1 || e.front().target != r || e.front().probability != 1)
          report("reject state not absorbing at " + at(aut, r, a));
      }
    }
  } else if (aut.reject()) {
    report("reject state declared for non-FPM role");
  }

  if (aut.ranks() && aut.role() != Role::hpba)
    report("ranks declared for non-HPBA role");

  if (aut.role() == Role::hpba && check_hierarchy && rep.ok()) {
    if (aut.ranks()) {
      if (aut.ranks()->levels.size() != n)
        report("ranks do not cover every state");
      else if (auto why = check_ranking(aut, *aut.ranks()); !why.empty())
        report(why);
    } else if (!infer_hierarchy_unchecked(aut)) {
      report("automaton is not hierarchical: " + hierarchy_obstruction(aut));
    }
  }
  return rep;
}

} // namespace detail

ValidationReport validate(const Automaton& aut)
{
  return detail::validate_structure(aut, true);
}

namespace {

[[noreturn]] void throw_report(const ValidationReport& rep)
{
  std::ostringstream os;
  os << "invalid automaton: " << rep.violations.front();
  if (rep.violations.size() > 1)
    os << " (and " << rep.violations.size() - 1 << " more)";
  throw InputError(os.str());
}

} // namespace

void require_valid(const Automaton& aut)
{
  auto rep = validate(aut);
  if (!rep.ok())
    throw_report(rep);
}

void require_probabilistic(const Automaton& aut)
{
  if (!aut.is_probabilistic())
    throw InputError("operation needs a probabilistic automaton, got role " +
                     std::string(role_name(aut.role())));
  require_valid(aut);
}

void require_probabilistic_buchi(const Automaton& aut)
{
  require_probabilistic(aut);
  if (aut.has_rabin_acceptance())
    throw InputError("operation needs Büchi acceptance, got role " +
                     std::string(role_name(aut.role())));
}

StateSet post(const Automaton& aut, const StateSet& from, SymbolId a)
{
  if (a >= aut.num_symbols())
    throw InputError("unknown symbol index " + std::to_string(a));
  StateSet out;
  for (StateId q : from)
    for (const auto& t : aut.edges(q, a))
      out.insert(t.target);
  return out;
}

StateSet post(const Automaton& aut, StateId q, const Word& u)
{
  if (u.empty())
    throw InputError("post needs a nonempty word");
  StateSet cur{q};
  for (SymbolId a : u)
    cur = post(aut, cur, a);
  return cur;
}

std::string fresh_state_name(const Automaton& aut, std::string base)
{
  while (aut.find_state(base))
    base += '\'';
  return base;
}

} // namespace pba
