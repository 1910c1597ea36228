#include "pba/decide.hpp"

#include "pba/error.hpp"
#include "pba/lasso.hpp"
#include "pba/markov.hpp"

#include <algorithm>

namespace pba {

namespace {

/// Every word of length 0..max_len in shortlex order.
std::vector<Word> words_up_to(std::size_t alphabet_size, std::size_t max_len)
{
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == max_len)
      continue;
    for (SymbolId s = 0; s < alphabet_size; ++s) {
      Word w = out[i];
      w.push_back(s);
      out.push_back(std::move(w));
    }
  }
  return out;
}

/// min over q in C of delta^{Qf}_u(q, C).
Rational min_return(const RationalMatrix& m, const StateSet& c)
{
  std::optional<Rational> lo;
  for (StateId q : c) {
    Rational r = m.row_mass(q, c);
    if (!lo || r < *lo)
      lo = r;
  }
  return lo.value_or(0);
}

Rational threshold(unsigned j)
{
  return 1 - inverse_power_of_two(j);
}

} // namespace

std::string check_asymptotic_witness(const Automaton& b, const AsymptoticWitness& w, const Rational& x)
{
  if (b.has_rabin_acceptance())
    return "asymptotic witnesses need Büchi acceptance";
  if (w.states.empty())
    return "C is empty";
  for (StateId q : w.states)
    if (q >= b.num_states())
      return "C names an unknown state";
  if (w.first_index < 1)
    return "segment indices start at 1";
  if (w.segments.empty())
    return "no segments";
  for (SymbolId s : w.reach)
    if (s >= b.num_symbols())
      return "u uses an unknown symbol";
  Distribution d = run_distribution(b, w.reach);
  Rational z = 0;
  for (StateId q : w.states)
    z += d[q];
  if (!(z > x))
    return "delta_u(q_s, C) = " + to_string(z) + " is not above " + to_string(x);
  for (std::size_t i = 0; i < w.segments.size(); ++i) {
    if (w.segments[i].empty())
      return "segment " + std::to_string(i) + " is empty";
    auto j = static_cast<unsigned>(w.first_index + i);
    Rational lo = min_return(final_passage_matrix(b, w.segments[i]), w.states);
    if (!(lo > threshold(j)))
      return "segment " + std::to_string(j) + " returns to C through a final state with probability " +
             to_string(lo) + ", not above " + to_string(threshold(j));
  }
  return {};
}

std::optional<AsymptoticWitness> pba_positive_nonempty_bounded(const Automaton& b, std::size_t max_len,
                                                               unsigned max_j, const Rational& x,
                                                               const SearchControl& control)
{
  require_probabilistic_buchi(b);
  if (b.num_states() > 20)
    throw InputError("bounded witness search enumerates subsets of at most 20 states");
  if (max_j < 1)
    throw InputError("max-j must be at least 1");
  const std::size_t n = b.num_states();

  auto words = words_up_to(b.num_symbols(), max_len);
  std::vector<Distribution> reach;
  std::vector<RationalMatrix> passage;  // for nonempty words only, index shifted by 1
  for (const auto& w : words)
    reach.push_back(run_distribution(b, w));
  for (std::size_t i = 1; i < words.size(); ++i)
    passage.push_back(final_passage_matrix(b, words[i]));

  // Subsets by size, then lexicographically by member list.
  std::vector<StateSet> subsets;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    StateSet c;
    for (StateId q = 0; q < n; ++q)
      if (mask & (std::size_t{1} << q))
        c.insert(q);
    subsets.push_back(std::move(c));
  }
  std::stable_sort(subsets.begin(), subsets.end(), [](const StateSet& a, const StateSet& c) {
    return a.size() != c.size() ? a.size() < c.size() : a < c;
  });

  std::size_t explored = 0;
  for (const auto& c : subsets) {
    control.checkpoint("asymptotic witness search", ++explored);
    std::optional<std::size_t> u;
    for (std::size_t i = 0; i < words.size() && !u; ++i) {
      Rational z = 0;
      for (StateId q : c)
        z += reach[i][q];
      if (z > x)
        u = i;
    }
    if (!u)
      continue;
    AsymptoticWitness w;
    w.states = c;
    w.reach = words[*u];
    w.first_index = 1;
    for (unsigned j = 1; j <= max_j; ++j) {
      const Rational t = threshold(j);
      std::optional<std::size_t> seg;
      for (std::size_t i = 0; i < passage.size() && !seg; ++i)
        if (min_return(passage[i], c) > t)
          seg = i;
      if (!seg)
        break;
      w.segments.push_back(words[*seg + 1]);
    }
    if (w.segments.size() != max_j)
      continue;
    std::string err = check_asymptotic_witness(b, w, x);
    if (!err.empty())
      throw InternalError("asymptotic witness failed re-verification: " + err);
    return w;
  }
  return std::nullopt;
}

AcceptanceBound acceptance_lower_bound(const Automaton& b, const AsymptoticWitness& w)
{
  std::string err = check_asymptotic_witness(b, w, 0);
  if (!err.empty())
    throw InputError("invalid asymptotic witness: " + err);
  Distribution d = run_distribution(b, w.reach);
  AcceptanceBound out;
  out.value = 0;
  for (StateId q : w.states)
    out.value += d[q];
  Rational last;
  for (const auto& seg : w.segments) {
    last = min_return(final_passage_matrix(b, seg), w.states);
    out.value *= last;
  }
  out.asymptotic = last == 1;
  out.lasso.stem = w.reach;
  for (const auto& seg : w.segments)
    out.lasso.stem.insert(out.lasso.stem.end(), seg.begin(), seg.end());
  out.lasso.cycle = w.segments.back();
  return out;
}

} // namespace pba
