#include "pba/decide.hpp"

#include "pba/construct.hpp"
#include "pba/error.hpp"
#include "pba/lasso.hpp"
#include "pba/markov.hpp"

namespace pba {

namespace {

void require_hpba(const Automaton& h)
{
  require_probabilistic_buchi(h);
  require_hierarchy(h);
}

bool member(const Rational& mu, Semantics semantics)
{
  return semantics == Semantics::positive ? mu > 0 : mu == 1;
}

} // namespace

EmptinessAnswer hpba_probable_empty(const Automaton& h)
{
  require_hpba(h);
  EmptinessAnswer ans = nba_emptiness(hpba_to_nba(h));
  if (!ans.empty) {
    ans.certificate = lasso_acceptance(h, *ans.witness);
    if (*ans.certificate <= 0)
      throw InternalError("probable-emptiness witness failed re-verification");
  }
  return ans;
}

UniversalityAnswer hpba_probable_universal(const Automaton& h, const Limits& limits, const SearchControl& control)
{
  require_hpba(h);
  UniversalityAnswer ans = nba_universality(hpba_to_nba(h), limits, control);
  if (!ans.universal) {
    ans.certificate = lasso_acceptance(h, *ans.counterexample);
    if (*ans.certificate != 0)
      throw InternalError("probable-universality counterexample failed re-verification");
  }
  return ans;
}

std::optional<Refutation> containment_refute(const Automaton& b1, const Automaton& b2, Semantics semantics,
                                             std::size_t bound, const SearchControl& control)
{
  require_probabilistic(b1);
  require_probabilistic(b2);
  if (b1.alphabet() != b2.alphabet())
    throw InputError("containment needs identical alphabets");
  std::optional<Refutation> found;
  std::size_t explored = 0;
  for_each_lasso(b1.num_symbols(), bound, bound, [&](const LassoWord& w) {
    control.checkpoint("containment refutation", ++explored);
    Rational left = lasso_acceptance(b1, w);
    if (!member(left, semantics))
      return true;
    Rational right = lasso_acceptance(b2, w);
    if (member(right, semantics))
      return true;
    found = Refutation{normalize_lasso(w), left, right};
    return false;
  });
  if (found) {
    if (!member(lasso_acceptance(b1, found->lasso), semantics) || member(lasso_acceptance(b2, found->lasso), semantics))
      throw InternalError("containment refutation failed re-verification");
  }
  return found;
}

} // namespace pba
