#include "pba/format.hpp"

#include "pba/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace pba {

namespace {

struct Token
{
  std::string text;
  std::size_t column;  // 1-based
};

bool is_space(char c)
{
  return c == ' ' || c == '\t' || c == '\r';
}

/// Strips a trailing comment and splits on whitespace.
std::vector<Token> tokenize(std::string_view line)
{
  std::size_t end = line.size();
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] != '#')
      continue;
    bool before = i == 0 || is_space(line[i - 1]);
    bool after = i + 1 == line.size() || is_space(line[i + 1]);
    if (before && after) {
      end = i;
      break;
    }
  }
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < end) {
    while (i < end && is_space(line[i]))
      ++i;
    std::size_t start = i;
    while (i < end && !is_space(line[i]))
      ++i;
    if (i > start)
      out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

class Parser
{
public:
  explicit Parser(std::string_view text) : text_(text) { }

  Automaton run()
  {
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t nl = text_.find('\n', pos);
      if (nl == std::string_view::npos)
        nl = text_.size();
      ++line_;
      line(text_.substr(pos, nl - pos));
      pos = nl + 1;
    }
    if (!role_)
      fail(line_, 1, "missing 'type:' line");
    need(have_alphabet_, "alphabet");
    need(have_states_, "states");
    need(have_init_, "init");
    if (*role_ == Role::fpm) {
      if (!aut_.reject())
        fail(line_, 1, "fpm requires a 'reject:' line");
      if (!have_final_) {
        StateSet f;
        for (StateId q = 0; q < aut_.num_states(); ++q)
          if (q != *aut_.reject())
            f.insert(q);
        aut_.set_final_states(std::move(f));
      }
    }
    if (has_rabin_acceptance(*role_) && aut_.rabin_pairs().empty())
      fail(line_, 1, "Rabin roles need at least one 'pair:' line");
    return std::move(aut_);
  }

private:
  [[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& msg) const
  {
    throw ParseError(line, column, msg);
  }

  void need(bool present, const char* key) const
  {
    if (!present)
      fail(line_, 1, std::string("missing '") + key + ":' line");
  }

  StateId state(const Token& t) const
  {
    auto q = aut_.find_state(t.text);
    if (!q)
      fail(line_, t.column, "undeclared state '" + t.text + "'");
    return *q;
  }

  void line(std::string_view raw)
  {
    auto toks = tokenize(raw);
    if (toks.empty())
      return;
    const Token& head = toks.front();
    if (head.text.size() > 1 && head.text.back() == ':') {
      keyword(head.text.substr(0, head.text.size() - 1), head, toks, raw);
      return;
    }
    transition(toks);
  }

  void once(bool& flag, const Token& head)
  {
    if (flag)
      fail(line_, head.column, "duplicate '" + head.text + "' line");
    flag = true;
  }

  void require_type(const Token& head) const
  {
    if (!role_)
      fail(line_, head.column, "'type:' must come first");
  }

  void keyword(const std::string& key, const Token& head, const std::vector<Token>& toks, std::string_view raw)
  {
    if (key == "type") {
      if (role_)
        fail(line_, head.column, "duplicate 'type:' line");
      if (toks.size() != 2)
        fail(line_, head.column, "'type:' takes exactly one role");
      role_ = role_from_name(toks[1].text);
      if (!role_)
        fail(line_, toks[1].column, "unknown role '" + toks[1].text + "'");
      aut_ = Automaton("automaton", *role_);
      return;
    }
    require_type(head);
    if (key == "name") {
      once(have_name_, head);
      if (toks.size() != 2)
        fail(line_, head.column, "'name:' takes exactly one identifier");
      aut_.set_name(toks[1].text);
    } else if (key == "alphabet") {
      once(have_alphabet_, head);
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (aut_.find_symbol(toks[i].text))
          fail(line_, toks[i].column, "duplicate symbol '" + toks[i].text + "'");
        aut_.add_symbol(toks[i].text);
      }
    } else if (key == "states") {
      once(have_states_, head);
      if (!have_alphabet_)
        fail(line_, head.column, "'alphabet:' must precede 'states:'");
      if (toks.size() < 2)
        fail(line_, head.column, "at least one state is required");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (aut_.find_state(toks[i].text))
          fail(line_, toks[i].column, "duplicate state '" + toks[i].text + "'");
        aut_.add_state(toks[i].text);
      }
    } else if (key == "init") {
      once(have_init_, head);
      need_states(head);
      if (toks.size() != 2)
        fail(line_, head.column, "'init:' takes exactly one state");
      aut_.set_initial(state(toks[1]));
    } else if (key == "final") {
      once(have_final_, head);
      need_states(head);
      if (has_rabin_acceptance(*role_))
        fail(line_, head.column, "Rabin roles use 'pair:' instead of 'final:'");
      StateSet f;
      for (std::size_t i = 1; i < toks.size(); ++i)
        f.insert(state(toks[i]));
      aut_.set_final_states(std::move(f));
    } else if (key == "reject") {
      once(have_reject_, head);
      need_states(head);
      if (*role_ != Role::fpm)
        fail(line_, head.column, "'reject:' is only allowed for fpm");
      if (toks.size() != 2)
        fail(line_, head.column, "'reject:' takes exactly one state");
      aut_.set_reject(state(toks[1]));
    } else if (key == "pair") {
      need_states(head);
      if (!has_rabin_acceptance(*role_))
        fail(line_, head.column, "'pair:' is only allowed for dra and pra");
      pair(head, raw);
    } else if (key == "ranks") {
      once(have_ranks_, head);
      need_states(head);
      if (*role_ != Role::hpba)
        fail(line_, head.column, "'ranks:' is only allowed for hpba");
      ranks(toks);
    } else {
      fail(line_, head.column, "unknown key '" + key + "'");
    }
  }

  void need_states(const Token& head) const
  {
    if (!have_states_)
      fail(line_, head.column, "'states:' must precede '" + head.text + "'");
  }

  void pair(const Token& head, std::string_view raw)
  {
    // Work on the raw text after the key so braces need no surrounding spaces.
    std::size_t pos = head.column - 1 + head.text.size();
    std::size_t end = raw.size();
    auto toks = tokenize(raw);
    if (!toks.empty()) {
      const Token& last = toks.back();
      end = last.column - 1 + last.text.size();
    }
    RabinPair p;
    for (StateSet* side : {&p.bad, &p.good}) {
      while (pos < end && is_space(raw[pos]))
        ++pos;
      if (pos >= end || raw[pos] != '{')
        fail(line_, pos + 1, "expected '{'");
      std::size_t close = raw.find('}', pos);
      if (close == std::string_view::npos || close >= end)
        fail(line_, pos + 1, "unterminated '{'");
      std::string_view inner = raw.substr(pos + 1, close - pos - 1);
      for (const auto& t : tokenize(inner)) {
        Token shifted{t.text, t.column + pos + 1};
        side->insert(state(shifted));
      }
      pos = close + 1;
    }
    while (pos < end && is_space(raw[pos]))
      ++pos;
    if (pos < end)
      fail(line_, pos + 1, "unexpected text after pair");
    auto pairs = aut_.rabin_pairs();
    pairs.push_back(std::move(p));
    aut_.set_rabin_pairs(std::move(pairs));
  }

  void ranks(const std::vector<Token>& toks)
  {
    RankFunction rk;
    rk.levels.assign(aut_.num_states(), 0);
    std::vector<bool> seen(aut_.num_states(), false);
    for (std::size_t i = 1; i < toks.size(); ++i) {
      const auto& t = toks[i];
      auto eq = t.text.rfind('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == t.text.size())
        fail(line_, t.column, "expected state=level");
      StateId q = state({t.text.substr(0, eq), t.column});
      std::string lv = t.text.substr(eq + 1);
      if (!std::all_of(lv.begin(), lv.end(), [](char c) { return c >= '0' && c <= '9'; }) || lv.size() > 9)
        fail(line_, t.column + eq + 1, "bad level '" + lv + "'");
      if (seen[q])
        fail(line_, t.column, "state ranked twice");
      seen[q] = true;
      rk.levels[q] = static_cast<unsigned>(std::stoul(lv));
      rk.max_level = std::max(rk.max_level, rk.levels[q]);
    }
    for (StateId q = 0; q < aut_.num_states(); ++q)
      if (!seen[q])
        fail(line_, toks.front().column, "state '" + aut_.state_name(q) + "' has no rank");
    aut_.set_ranks(std::move(rk));
  }

  void transition(const std::vector<Token>& toks)
  {
    if (!role_)
      fail(line_, toks.front().column, "'type:' must come first");
    if (!have_states_)
      fail(line_, toks.front().column, "transitions must follow 'states:'");
    if (toks.size() < 3)
      fail(line_, toks.front().column, "expected 'q -sym-> q'' or a key");
    const Token& arrow = toks[1];
    if (arrow.text.size() < 4 || arrow.text.front() != '-' || arrow.text.compare(arrow.text.size() - 2, 2, "->") != 0)
      fail(line_, arrow.column, "expected '-sym->'");
    std::string sym = arrow.text.substr(1, arrow.text.size() - 3);
    auto a = aut_.find_symbol(sym);
    if (!a)
      fail(line_, arrow.column + 1, "undeclared symbol '" + sym + "'");
    StateId q = state(toks[0]);
    StateId t = state(toks[2]);
    const bool probabilistic = is_probabilistic(*role_);
    Rational p = 1;
    if (probabilistic) {
      if (toks.size() != 5 || toks[3].text != ":")
        fail(line_, toks.size() > 3 ? toks[3].column : toks[2].column, "expected ': p/q' after the target");
      auto r = parse_rational(toks[4].text);
      if (!r)
        fail(line_, toks[4].column, "bad probability '" + toks[4].text + "' (use p/q or an integer)");
      p = *r;
    } else if (toks.size() != 3) {
      fail(line_, toks[3].column, "nondeterministic transitions carry no probability");
    }
    if (!declared_.insert({q, *a, t}).second)
      fail(line_, toks.front().column, "duplicate transition");
    aut_.add_transition(q, *a, t, p);
  }

  std::string_view text_;
  std::size_t line_ = 0;
  std::optional<Role> role_;
  Automaton aut_;
  bool have_name_ = false, have_alphabet_ = false, have_states_ = false, have_init_ = false;
  bool have_final_ = false, have_reject_ = false, have_ranks_ = false;
  std::set<std::tuple<StateId, SymbolId, StateId>> declared_;
};

bool single_char_alphabet(const Automaton& aut)
{
  return std::all_of(aut.alphabet().begin(), aut.alphabet().end(),
                     [](const std::string& s) { return s.size() == 1 && s != "," && s != ";"; });
}

std::string join(const std::vector<std::string>& names, const char* sep)
{
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i)
      out += sep;
    out += names[i];
  }
  return out;
}

std::string state_list(const Automaton& aut, const StateSet& s)
{
  std::vector<std::string> names;
  for (StateId q : s)
    names.push_back(aut.state_name(q));
  return join(names, " ");
}

} // namespace

Automaton parse_automaton(std::string_view text)
{
  return Parser(text).run();
}

std::string serialize_automaton(const Automaton& aut)
{
  std::ostringstream out;
  out << "type: " << role_name(aut.role()) << '\n';
  out << "name: " << aut.name() << '\n';
  out << "alphabet: " << join(aut.alphabet(), " ") << '\n';
  out << "states: " << join(aut.states(), " ") << '\n';
  if (aut.num_states() > 0)
    out << "init: " << aut.state_name(aut.initial()) << '\n';
  if (aut.has_rabin_acceptance()) {
    for (const auto& p : aut.rabin_pairs())
      out << "pair: {" << state_list(aut, p.bad) << "} {" << state_list(aut, p.good) << "}\n";
  } else {
    std::string f = state_list(aut, aut.final_states());
    out << "final:" << (f.empty() ? "" : " ") << f << '\n';
  }
  if (aut.role() == Role::fpm && aut.reject())
    out << "reject: " << aut.state_name(*aut.reject()) << '\n';
  if (aut.role() == Role::hpba && aut.ranks()) {
    out << "ranks:";
    for (StateId q = 0; q < aut.num_states(); ++q)
      out << ' ' << aut.state_name(q) << '=' << aut.ranks()->levels.at(q);
    out << '\n';
  }
  for (StateId q = 0; q < aut.num_states(); ++q)
    for (SymbolId a = 0; a < aut.num_symbols(); ++a)
      for (const auto& t : aut.edges(q, a)) {
        out << aut.state_name(q) << " -" << aut.symbol_name(a) << "-> " << aut.state_name(t.target);
        if (aut.is_probabilistic())
          out << " : " << to_string(t.probability);
        out << '\n';
      }
  return out.str();
}

Word parse_word(const Automaton& aut, std::string_view text)
{
  Word w;
  if (text.empty())
    return w;
  auto lookup = [&](std::string_view name) {
    auto s = aut.find_symbol(name);
    if (!s)
      throw InputError("unknown symbol '" + std::string(name) + "'");
    return *s;
  };
  const bool commas = text.find(',') != std::string_view::npos && !aut.find_symbol(",");
  if (!commas && single_char_alphabet(aut)) {
    for (char c : text)
      w.push_back(lookup(std::string_view(&c, 1)));
    return w;
  }
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = commas ? text.find(',', pos) : std::string_view::npos;
    std::string_view part = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    w.push_back(lookup(part));
    if (comma == std::string_view::npos)
      break;
    pos = comma + 1;
  }
  return w;
}

std::string format_word(const Automaton& aut, const Word& w)
{
  std::vector<std::string> names;
  for (SymbolId s : w)
    names.push_back(aut.symbol_name(s));
  return join(names, single_char_alphabet(aut) ? "" : ",");
}

LassoWord parse_lasso(const Automaton& aut, std::string_view text)
{
  std::size_t semi = text.find(';');
  if (semi == std::string_view::npos || text.find(';', semi + 1) != std::string_view::npos)
    throw InputError("lasso must have the form STEM;CYCLE");
  LassoWord w{parse_word(aut, text.substr(0, semi)), parse_word(aut, text.substr(semi + 1))};
  if (w.cycle.empty())
    throw InputError("lasso cycle must be nonempty");
  return w;
}

std::string format_lasso(const Automaton& aut, const LassoWord& w)
{
  return format_word(aut, w.stem) + ";" + format_word(aut, w.cycle);
}

} // namespace pba
