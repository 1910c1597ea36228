#include "doctest.h"

#include "pba/construct.hpp"
#include "pba/error.hpp"
#include "pba/format.hpp"
#include "support/support.hpp"

using namespace pba;

namespace {

std::size_t error_line(std::string_view text)
{
  try {
    parse_automaton(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

} // namespace

TEST_CASE("generated automata survive a round trip")
{
  for (const Automaton& a : {gen_m_id(), gen_m_id_squared(), gen_succinct(2), gen_p3(Rational(2, 5)),
                             gen_all_final({"x", "y"})}) {
    std::string text = serialize_automaton(a);
    Automaton back = parse_automaton(text);
    CHECK(back == a);
    CHECK(serialize_automaton(back) == text);
  }
}

TEST_CASE("constructed automata survive a round trip")
{
  testkit::Rng rng(71);
  for (int i = 0; i < 40; ++i) {
    Automaton a = i % 4 == 0   ? testkit::random_pra(rng, rng.between(1, 4), 2, 2)
                  : i % 4 == 1 ? testkit::random_nba(rng, rng.between(1, 4), 2)
                  : i % 4 == 2 ? hpba_to_nba(testkit::random_hpba(rng, rng.between(1, 3), 2))
                               : complement_to_fpm(testkit::random_pba(rng, rng.between(1, 4), 2));
    CHECK(parse_automaton(serialize_automaton(a)) == a);
  }
  Automaton h = dra_to_hpba(parse_automaton(R"(type: dra
alphabet: a b
states: A B
init: B
pair: {} {A}
A -a-> A
A -b-> B
B -a-> A
B -b-> B
)"));
  REQUIRE(h.ranks());
  CHECK(parse_automaton(serialize_automaton(h)) == h);
}

TEST_CASE("serialized form of the binary value monitor")
{
  CHECK(serialize_automaton(gen_m_id()) == R"(type: fpm
name: m_id
alphabet: 0 1
states: q0 q1 qr
init: q0
final: q0 q1
reject: qr
q0 -0-> q0 : 1/2
q0 -0-> qr : 1/2
q0 -1-> q0 : 1/2
q0 -1-> q1 : 1/2
q1 -0-> q1 : 1
q1 -1-> q1 : 1
qr -0-> qr : 1
qr -1-> qr : 1
)");
}

TEST_CASE("comments and defaults")
{
  Automaton a = parse_automaton(R"(# a monitor
type: fpm   # role
alphabet: a
states: s r#1
init: s
reject: r#1
s -a-> s : 2/4
s -a-> r#1 : 1/2
r#1 -a-> r#1 : 1
)");
  CHECK(a.find_state("r#1"));
  CHECK(a.final_states() == StateSet{a.state("s")});
  CHECK(a.probability(a.state("s"), 0, a.state("s")) == Rational(1, 2));
  CHECK(validate(a).ok());
}

TEST_CASE("hierarchical ranks are optional")
{
  Automaton h = parse_automaton(R"(type: hpba
alphabet: a
states: p q
init: p
final: q
ranks: p=0 q=1
p -a-> p : 1/2
p -a-> q : 1/2
q -a-> q : 1
)");
  REQUIRE(h.ranks());
  CHECK(h.ranks()->levels == std::vector<unsigned>{0, 1});
  Automaton bare = parse_automaton(R"(type: hpba
alphabet: a
states: p
init: p
final: p
p -a-> p : 1
)");
  CHECK_FALSE(bare.ranks());
  CHECK(validate(bare).ok());
}

TEST_CASE("syntax errors carry positions")
{
  CHECK(error_line("type: fpm\nalphabet: a\nstates: s r\ninit: s\ns -a-> r : 1\nr -a-> r : 1\n") > 0);
  try {
    parse_automaton("type: pba\nalphabet: a\nstates: s\ninit: s\nfinal: s\ns -a-> s : 0.5\n");
    FAIL("floats must be rejected");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
    CHECK(e.column() == 12);
  }
  CHECK(error_line("alphabet: a\n") == 1);
  CHECK(error_line("type: pba\nalphabet: a\nstates: s\ninit: s\nbogus: 1\n") == 5);
  CHECK(error_line("type: pba\nalphabet: a\nstates: s\ninit: t\n") == 4);
  CHECK(error_line("type: nba\nalphabet: a\nstates: s\ninit: s\ns -a-> s : 1\n") == 5);
  CHECK(error_line("type: nba\nalphabet: a\nstates: s\ninit: s\ns -a-> s\ns -a-> s\n") == 6);
  CHECK(error_line("type: pba\nalphabet: a\nstates: s\ninit: s\ns -b-> s : 1\n") == 5);
  CHECK(error_line("type: dra\nalphabet: a\nstates: s\ninit: s\ns -a-> s\n") > 0);
  CHECK(error_line("type: pba\nalphabet: a\nstates: s\ninit: s\nranks: s=0\n") == 5);
}

TEST_CASE("semantic problems are left to validation")
{
  Automaton a = parse_automaton("type: pba\nalphabet: a\nstates: s t\ninit: s\nfinal: s\ns -a-> t : 1/2\n");
  CHECK_FALSE(validate(a).ok());
}

TEST_CASE("lasso syntax")
{
  Automaton m = gen_m_id();
  LassoWord w = parse_lasso(m, "01;10");
  CHECK(w == LassoWord{{0, 1}, {1, 0}});
  CHECK(format_lasso(m, w) == "01;10");
  CHECK(parse_lasso(m, ";1") == LassoWord{{}, {1}});
  CHECK_THROWS_AS(parse_lasso(m, "01"), InputError);
  CHECK_THROWS_AS(parse_lasso(m, "0;"), InputError);
  CHECK_THROWS_AS(parse_lasso(m, ";2"), InputError);

  Automaton p = gen_p3(Rational(1, 2));
  LassoWord pw = parse_lasso(p, "a,sharp;$,a");
  CHECK(pw == LassoWord{{0, 2}, {3, 0}});
  CHECK(format_lasso(p, pw) == "a,sharp;$,a");
  CHECK(format_word(p, Word{1, 1}) == "@,@");
  CHECK(parse_word(p, "") == Word{});
}
