#include "pba/lasso.hpp"

#include <algorithm>
#include <tuple>

namespace pba {

bool lasso_less(const LassoWord& x, const LassoWord& y)
{
  auto key = [](const LassoWord& w) {
    return std::make_tuple(w.stem.size() + w.cycle.size(), w.stem.size(), std::cref(w.stem), std::cref(w.cycle));
  };
  return key(x) < key(y);
}

LassoWord normalize_lasso(LassoWord w)
{
  // Primitive root of the cycle.
  const std::size_t p = w.cycle.size();
  for (std::size_t d = 1; d < p; ++d) {
    if (p % d != 0)
      continue;
    bool periodic = true;
    for (std::size_t i = d; i < p && periodic; ++i)
      periodic = w.cycle[i] == w.cycle[i - d];
    if (periodic) {
      w.cycle.resize(d);
      break;
    }
  }
  // u a (v' a)^omega == u (a v')^omega
  while (!w.stem.empty() && w.stem.back() == w.cycle.back()) {
    std::rotate(w.cycle.rbegin(), w.cycle.rbegin() + 1, w.cycle.rend());
    w.stem.pop_back();
  }
  return w;
}

} // namespace pba
