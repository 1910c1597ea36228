#pragma once

#include "pba/automaton.hpp"

#include <cstddef>

namespace pba {

/// Canonical order on lassos: total length, then stem length, then stem and
/// cycle lexicographically by symbol index.
bool lasso_less(const LassoWord& x, const LassoWord& y);

/// Same infinite word, smallest representation: the cycle is reduced to its
/// primitive root and trailing stem symbols are rotated into the cycle.
LassoWord normalize_lasso(LassoWord w);

/// Calls fn(w) for every lasso with |stem| <= max_stem and
/// 1 <= |cycle| <= max_cycle over symbols {0..alphabet_size-1}, in canonical
/// order. Stops early when fn returns false. Returns whether it ran to the end.
template <typename Fn>
bool for_each_lasso(std::size_t alphabet_size, std::size_t max_stem, std::size_t max_cycle, Fn&& fn)
{
  if (alphabet_size == 0)
    return true;
  // Advance `w` to the next word of the same length; false on wrap-around.
  auto next_word = [&](Word& w) {
    for (std::size_t i = w.size(); i-- > 0;) {
      if (++w[i] < alphabet_size)
        return true;
      w[i] = 0;
    }
    return false;
  };
  for (std::size_t total = 1; total <= max_stem + max_cycle; ++total) {
    for (std::size_t s = 0; s <= max_stem && s < total; ++s) {
      std::size_t c = total - s;
      if (c > max_cycle)
        continue;
      LassoWord w{Word(s, 0), Word(c, 0)};
      do {
        do {
          if (!fn(static_cast<const LassoWord&>(w)))
            return false;
        } while (next_word(w.cycle));
        w.cycle.assign(c, 0);
      } while (next_word(w.stem));
    }
  }
  return true;
}

} // namespace pba
