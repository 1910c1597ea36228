#include "doctest.h"

#include "pba/automaton.hpp"
#include "pba/construct.hpp"
#include "pba/error.hpp"
#include "pba/graph.hpp"
#include "pba/lasso.hpp"
#include "pba/rational.hpp"
#include "support/support.hpp"

#include <algorithm>

using namespace pba;

namespace {

bool mentions(const ValidationReport& rep, const std::string& text)
{
  return std::any_of(rep.violations.begin(), rep.violations.end(),
                     [&](const std::string& v) { return v.find(text) != std::string::npos; });
}

StateSet names(const Automaton& a, std::initializer_list<const char*> list)
{
  StateSet s;
  for (const char* n : list)
    s.insert(a.state(n));
  return s;
}

} // namespace

TEST_CASE("rationals parse and print canonically")
{
  CHECK(to_string(Rational(6, 8)) == "3/4");
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK(to_string(Rational(-1, 3)) == "-1/3");
  CHECK(*parse_rational("2/4") == Rational(1, 2));
  CHECK(*parse_rational("-3") == Rational(-3));
  CHECK_FALSE(parse_rational("0.5"));
  CHECK_FALSE(parse_rational("1/0"));
  CHECK_FALSE(parse_rational("x"));
  CHECK_FALSE(parse_rational(""));
  CHECK(inverse_power_of_two(3) == Rational(1, 8));
}

TEST_CASE("generators validate")
{
  CHECK(validate(gen_m_id()).ok());
  CHECK(validate(gen_m_id_squared()).ok());
  CHECK(validate(gen_succinct(1)).ok());
  CHECK(validate(gen_succinct(3)).ok());
  CHECK(validate(gen_p3(Rational(1, 3))).ok());
  CHECK(validate(gen_all_final({"a", "b"})).ok());
}

TEST_CASE("validate reports row sums with coordinates")
{
  Automaton m = gen_m_id();
  StateId q0 = m.state("q0");
  SymbolId one = m.symbol("1");
  m.clear_transitions(q0, one);
  m.add_transition(q0, one, q0, Rational(3, 4));
  m.add_transition(q0, one, m.state("q1"), Rational(1, 2));
  auto rep = validate(m);
  REQUIRE_FALSE(rep.ok());
  CHECK(mentions(rep, "row sum 5/4 at (q0,1)"));
}

TEST_CASE("validate rejects an FPM whose reject state is initial")
{
  Automaton m = gen_m_id();
  m.set_initial(m.state("qr"));
  CHECK(mentions(validate(m), "reject equals initial"));
}

TEST_CASE("validate checks the other role invariants")
{
  Automaton m = gen_m_id();
  m.set_final_states({m.state("q0")});
  CHECK(mentions(validate(m), "FPM final set"));

  Automaton d("d", Role::dra);
  d.add_symbol("a");
  d.add_symbol("b");
  StateId p = d.add_state("p");
  d.add_transition(p, 0, p);
  d.set_rabin_pairs({RabinPair{{}, {p}}});
  CHECK(mentions(validate(d), "DRA needs exactly one successor at (p,b)"));

  Automaton b = gen_all_final({"a"});
  b.set_rabin_pairs({RabinPair{}});
  CHECK(mentions(validate(b), "Rabin pairs"));
  CHECK_THROWS_AS(require_valid(b), InputError);
}

TEST_CASE("post follows supports")
{
  Automaton m = gen_m_id();
  Word one{m.symbol("1")};
  CHECK(post(m, m.state("q0"), one) == names(m, {"q0", "q1"}));
  CHECK(post(m, m.state("qr"), Word{1, 0, 1}) == names(m, {"qr"}));
  CHECK(post(m, m.state("q0"), Word{1, 1}) == names(m, {"q0", "q1"}));
  CHECK(post(m, m.state("q0"), Word{0}) == names(m, {"q0", "qr"}));
}

TEST_CASE("post composes over concatenation")
{
  testkit::Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    Automaton a = testkit::random_pba(rng, rng.between(1, 5), 2);
    Word u(rng.between(1, 3)), w(rng.between(1, 3));
    for (auto& s : u)
      s = rng.below(2);
    for (auto& s : w)
      s = rng.below(2);
    Word uw = u;
    uw.insert(uw.end(), w.begin(), w.end());
    for (StateId q = 0; q < a.num_states(); ++q) {
      StateSet expect;
      for (StateId mid : post(a, q, u))
        for (StateId t : post(a, mid, w))
          expect.insert(t);
      CHECK(post(a, q, uw) == expect);
    }
  }
}

TEST_CASE("hierarchy of the binary value monitor")
{
  Automaton m = gen_m_id();
  auto r = infer_hierarchy(m);
  REQUIRE(r);
  // Fewest levels: the reject state can share q1's level.
  CHECK(r->levels == std::vector<unsigned>{0, 1, 1});
  CHECK(r->max_level == 1);
  CHECK(check_ranking(m, *r).empty());
  // The three-level assignment is compatible too.
  CHECK(check_ranking(m, RankFunction{{0, 1, 2}, 2}).empty());
  CHECK_FALSE(check_ranking(m, RankFunction{{0, 0, 1}, 1}).empty());
}

TEST_CASE("two same-SCC successors defeat every ranking")
{
  Automaton a("loop", Role::pba);
  a.add_symbol("a");
  StateId q0 = a.add_state("q0"), q1 = a.add_state("q1");
  for (StateId s : {q0, q1})
    for (StateId t : {q0, q1})
      a.add_transition(s, 0, t, Rational(1, 2));
  a.set_final_states({q0});
  CHECK_FALSE(infer_hierarchy(a));
  CHECK_FALSE(testkit::brute_force_hierarchical(a));
  CHECK_THROWS_AS(require_hierarchy(a), InputError);
}

TEST_CASE("deterministic automata sit on one level")
{
  testkit::Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    Automaton a = testkit::random_pba(rng, rng.between(1, 5), 2, 1);
    auto r = infer_hierarchy(a);
    REQUIRE(r);
    CHECK(r->max_level == 0);
  }
}

TEST_CASE("hierarchy inference matches brute force up to five states")
{
  testkit::Rng rng(99);
  for (int i = 0; i < 300; ++i) {
    Automaton a = testkit::random_pba(rng, rng.between(1, 5), 2, 2);
    auto r = infer_hierarchy(a);
    CHECK(r.has_value() == testkit::brute_force_hierarchical(a));
    if (r) {
      CHECK(check_ranking(a, *r).empty());
      CHECK(r->max_level == *testkit::brute_force_min_level(a));
    }
  }
}

TEST_CASE("declared ranks win when compatible")
{
  Automaton m = gen_m_id();
  m.set_role(Role::hpba);
  m.set_reject(std::nullopt);
  m.set_ranks(RankFunction{{0, 1, 2}, 2});
  CHECK(require_hierarchy(m).max_level == 2);
  m.set_ranks(RankFunction{{1, 0, 0}, 1});
  CHECK(require_hierarchy(m).max_level == 1);
}

TEST_CASE("fresh names append primes")
{
  Automaton m = gen_m_id();
  CHECK(fresh_state_name(m, "x") == "x");
  CHECK(fresh_state_name(m, "q0") == "q0'");
  m.add_state("q0'");
  CHECK(fresh_state_name(m, "q0") == "q0''");
  CHECK_THROWS_AS(m.add_state("q1"), InputError);
}

TEST_CASE("repeated targets accumulate and zero weights vanish")
{
  Automaton a("acc", Role::pba);
  a.add_symbol("a");
  StateId q = a.add_state("q");
  a.add_transition(q, 0, q, Rational(1, 2));
  a.add_transition(q, 0, q, Rational(1, 2));
  a.add_transition(q, 0, q, 0);
  REQUIRE(a.edges(q, 0).size() == 1);
  CHECK(a.probability(q, 0, q) == 1);
}

TEST_CASE("strongly connected components and bottom components")
{
  graph::Adjacency adj{{1}, {0, 2}, {2}, {}};
  auto scc = graph::strongly_connected_components(adj);
  CHECK(scc.component[0] == scc.component[1]);
  CHECK(scc.component[1] != scc.component[2]);
  CHECK(graph::is_nontrivial(adj, scc, scc.component[2]));
  CHECK_FALSE(graph::is_nontrivial(adj, scc, scc.component[3]));
  auto bottoms = graph::reachable_bottom_components(adj, scc, {0});
  REQUIRE(bottoms.size() == 1);
  CHECK(bottoms[0] == scc.component[2]);
  auto r = graph::reachable_from(adj, {2});
  CHECK(r == std::vector<bool>{false, false, true, false});
}

TEST_CASE("lasso normalization and enumeration")
{
  CHECK(normalize_lasso({{0, 1}, {0, 1, 0, 1}}) == LassoWord{{}, {0, 1}});
  CHECK(normalize_lasso({{1}, {0, 1}}) == LassoWord{{}, {1, 0}});
  CHECK(normalize_lasso({{0}, {1}}) == LassoWord{{0}, {1}});
  CHECK(lasso_less({{}, {1}}, {{0}, {0}}));
  CHECK(lasso_less({{}, {0, 1}}, {{0}, {1}}));

  std::size_t count = 0;
  LassoWord prev;
  bool ordered = true;
  for_each_lasso(2, 2, 2, [&](const LassoWord& w) {
    if (count > 0 && !lasso_less(prev, w))
      ordered = false;
    prev = w;
    ++count;
    return true;
  });
  // (1 + 2 + 4) stems times (2 + 4) cycles.
  CHECK(count == 42);
  CHECK(ordered);
  CHECK(testkit::all_lassos(2, 2, 2).size() == 42);
}
