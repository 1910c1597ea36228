// Command-line front end. Each invocation prints one JSON document on stdout
// (construction commands print the resulting automaton instead) and a short
// human-readable summary on stderr.
//
// Exit status: 0 answered, 1 input error, 2 unknown or resource limit.

#include "pba/construct.hpp"
#include "pba/decide.hpp"
#include "pba/error.hpp"
#include "pba/format.hpp"
#include "pba/lasso.hpp"
#include "pba/markov.hpp"
#include "pba/sim.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace pba;

namespace {

constexpr int exit_answered = 0;
constexpr int exit_input = 1;
constexpr int exit_unknown = 2;

std::string read_source(const std::string& path)
{
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open '" + path + "'");
  buf << in.rdbuf();
  return buf.str();
}

Automaton load(const std::string& path)
{
  try {
    return parse_automaton(read_source(path));
  } catch (const ParseError& e) {
    throw InputError((path == "-" ? std::string("<stdin>") : path) + ": " + e.what());
  }
}

json state_names(const Automaton& a, const StateSet& s)
{
  json out = json::array();
  for (StateId q : s)
    out.push_back(a.state_name(q));
  return out;
}

json lasso_json(const Automaton& a, const LassoWord& w)
{
  return format_lasso(a, w);
}

void emit(const json& doc)
{
  std::cout << doc.dump(2) << '\n';
}

struct Options
{
  std::string file, file2, lasso, name;
  std::vector<std::string> params;
  std::string semantics = "positive";
  std::uint64_t samples = 10000, seed = 1;
  unsigned workers = 1;
  std::size_t max_len = 3, max_j = 3, bound = 3;
  std::size_t pair_cap = default_rabin_pair_cap;
  Limits limits = default_limits();
};

Semantics parse_semantics(const std::string& s)
{
  if (s == "positive")
    return Semantics::positive;
  if (s == "almost-sure")
    return Semantics::almost_sure;
  throw InputError("semantics must be 'positive' or 'almost-sure'");
}

bool hierarchical(const Automaton& a)
{
  if (a.role() == Role::hpba)
    return true;
  return (a.role() == Role::pba || a.role() == Role::fpm) && validate(a).ok() && infer_hierarchy(a).has_value();
}

int cmd_validate(const Options& o)
{
  Automaton a = load(o.file);
  auto report = validate(a);
  json doc{{"command", "validate"}, {"role", role_name(a.role())}, {"valid", report.ok()},
           {"violations", report.violations}};
  emit(doc);
  if (report.ok())
    std::cerr << "valid " << role_name(a.role()) << '\n';
  for (const auto& v : report.violations)
    std::cerr << "violation: " << v << '\n';
  return report.ok() ? exit_answered : exit_input;
}

int cmd_rank(const Options& o)
{
  Automaton a = load(o.file);
  require_probabilistic(a);
  auto rk = infer_hierarchy(a);
  json doc{{"command", "rank"}, {"hierarchical", rk.has_value()}};
  if (rk) {
    json ranks = json::object();
    for (StateId q = 0; q < a.num_states(); ++q)
      ranks[a.state_name(q)] = rk->levels[q];
    doc["ranks"] = ranks;
    doc["max_level"] = rk->max_level;
    std::cerr << "hierarchical with levels 0.." << rk->max_level << '\n';
  } else {
    std::cerr << "not hierarchical\n";
  }
  emit(doc);
  return exit_answered;
}

int cmd_prob(const Options& o)
{
  Automaton a = load(o.file);
  LassoWord w = parse_lasso(a, o.lasso);
  Rational mu = lasso_acceptance(a, w);
  emit({{"command", "prob"}, {"lasso", lasso_json(a, w)}, {"probability", to_string(mu)}});
  std::cerr << to_string(mu) << '\n';
  return exit_answered;
}

int cmd_mc(const Options& o)
{
  Automaton a = load(o.file);
  LassoWord w = parse_lasso(a, o.lasso);
  auto est = mc_lasso_estimate(a, w, o.samples, o.seed, o.workers);
  emit({{"command", "mc"},
        {"lasso", lasso_json(a, w)},
        {"mean", est.mean},
        {"stderr", est.std_error},
        {"samples", est.samples},
        {"seed", est.seed}});
  std::cerr << est.mean << " +- " << est.std_error << " (" << est.samples << " samples)\n";
  return exit_answered;
}

int cmd_monitor(const Options& o)
{
  if (o.file == "-")
    throw InputError("monitor reads symbols from stdin; the automaton must come from a file");
  Automaton a = load(o.file);
  MonitorSession session(a);
  json emissions = json::array({to_string(session.reject_mass())});
  std::string line;
  int status = exit_answered;
  json doc{{"command", "monitor"}};
  while (std::getline(std::cin, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty())
      continue;
    try {
      Rational r = session.feed(line);
      emissions.push_back(to_string(r));
      std::cerr << line << " -> " << to_string(r) << '\n';
    } catch (const InputError& e) {
      doc["error"] = e.what();
      doc["position"] = session.position();
      std::cerr << "error: " << e.what() << '\n';
      status = exit_input;
      break;
    }
  }
  doc["emissions"] = emissions;
  emit(doc);
  return status;
}

int print_automaton(const Automaton& a, const std::string& what)
{
  std::cout << serialize_automaton(a);
  std::cerr << what << ": " << role_name(a.role()) << " with " << a.num_states() << " states\n";
  return exit_answered;
}

int cmd_complement(const Options& o)
{
  Automaton a = load(o.file);
  if (a.role() == Role::nba)
    return print_automaton(nba_complement(a, o.limits), "complement");
  return print_automaton(complement_to_fpm(a), "complement monitor");
}

int cmd_decompose(const Options& o)
{
  Automaton a = load(o.file);
  auto members = rabin_decomposition(a, o.pair_cap);
  json list = json::array();
  for (const auto& m : members)
    list.push_back({{"I", m.index_set},
                    {"j", m.chosen},
                    {"positive", serialize_automaton(m.positive)},
                    {"negative", serialize_automaton(m.negative)}});
  emit({{"command", "decompose"}, {"members", list}});
  std::cerr << members.size() << " members\n";
  return exit_answered;
}

json emptiness_json(const Automaton& a, const EmptinessAnswer& e)
{
  json doc{{"empty", e.empty}};
  if (e.witness)
    doc["witness"] = lasso_json(a, *e.witness);
  if (e.certificate)
    doc["certificate"] = to_string(*e.certificate);
  return doc;
}

json universality_json(const Automaton& a, const UniversalityAnswer& u)
{
  json doc{{"universal", u.universal}};
  if (u.counterexample)
    doc["counterexample"] = lasso_json(a, *u.counterexample);
  if (u.certificate)
    doc["certificate"] = to_string(*u.certificate);
  return doc;
}

int cmd_empty(const Options& o)
{
  Automaton a = load(o.file);
  Semantics sem = parse_semantics(o.semantics);
  json doc{{"command", "empty"}, {"semantics", o.semantics}};
  int status = exit_answered;
  if (sem == Semantics::almost_sure) {
    auto e = almost_sure_empty(a, o.limits);
    doc["method"] = "support monoid";
    doc.update(emptiness_json(a, e));
  } else if (a.role() == Role::nba) {
    auto e = nba_emptiness(a);
    doc["method"] = "accepting cycle search";
    doc.update(emptiness_json(a, e));
    if (e.witness)
      doc["certificate"] = nba_lasso_member(a, *e.witness);
  } else if (a.role() == Role::fpm) {
    auto e = fpm_positive_empty(a, o.limits);
    doc["method"] = "support monoid";
    doc["empty"] = e.empty;
    if (e.witness) {
      doc["witness"] = {{"C", state_names(a, e.witness->states)},
                        {"u", format_word(a, e.witness->reach)},
                        {"v", format_word(a, e.witness->cycle)},
                        {"lasso", lasso_json(a, {e.witness->reach, e.witness->cycle})}};
      doc["certificate"] = to_string(*e.certificate);
    }
  } else if (hierarchical(a)) {
    auto e = hpba_probable_empty(a);
    doc["method"] = "hierarchical to NBA";
    doc.update(emptiness_json(a, e));
  } else {
    require_probabilistic_buchi(a);
    auto w = pba_positive_nonempty_bounded(a, o.max_len, static_cast<unsigned>(o.max_j));
    doc["method"] = "bounded asymptotic witness search";
    if (w) {
      auto bound = acceptance_lower_bound(a, *w);
      doc["empty"] = false;
      doc["witness"] = {{"C", state_names(a, w->states)},
                        {"u", format_word(a, w->reach)},
                        {"segments", [&] {
                           json s = json::array();
                           for (const auto& seg : w->segments)
                             s.push_back(format_word(a, seg));
                           return s;
                         }()}};
      doc["lower_bound"] = to_string(bound.value);
    } else {
      doc["empty"] = nullptr;
      doc["unknown"] = true;
      status = exit_unknown;
    }
  }
  emit(doc);
  if (status == exit_unknown)
    std::cerr << "unknown within bounds\n";
  else if (doc["empty"].get<bool>())
    std::cerr << "empty\n";
  else
    std::cerr << "nonempty\n";
  return status;
}

int cmd_universal(const Options& o)
{
  Automaton a = load(o.file);
  Semantics sem = parse_semantics(o.semantics);
  json doc{{"command", "universal"}, {"semantics", o.semantics}};
  int status = exit_answered;
  if (sem == Semantics::almost_sure) {
    doc["method"] = "support monoid";
    doc.update(universality_json(a, almost_sure_universal(a, o.limits)));
  } else if (a.role() == Role::nba) {
    auto u = nba_universality(a, o.limits);
    doc["method"] = "rank-based complement";
    doc.update(universality_json(a, u));
    if (u.counterexample)
      doc["certificate"] = nba_lasso_member(a, *u.counterexample);
  } else if (a.role() == Role::fpm) {
    doc["method"] = "support monoid";
    doc.update(universality_json(a, fpm_positive_universal(a, o.limits)));
  } else if (hierarchical(a)) {
    doc["method"] = "hierarchical to NBA";
    doc.update(universality_json(a, hpba_probable_universal(a, o.limits)));
  } else {
    // Only refutation is possible: a lasso accepted with probability 0.
    require_probabilistic_buchi(a);
    std::optional<LassoWord> found;
    for_each_lasso(a.num_symbols(), o.bound, o.bound, [&](const LassoWord& w) {
      if (lasso_acceptance(a, w) == 0) {
        found = w;
        return false;
      }
      return true;
    });
    doc["method"] = "bounded lasso search";
    if (found) {
      doc["universal"] = false;
      doc["counterexample"] = lasso_json(a, *found);
      doc["certificate"] = "0";
    } else {
      doc["universal"] = nullptr;
      doc["unknown"] = true;
      status = exit_unknown;
    }
  }
  emit(doc);
  if (status == exit_unknown)
    std::cerr << "unknown within bounds\n";
  else
    std::cerr << (doc["universal"].get<bool>() ? "universal\n" : "not universal\n");
  return status;
}

int cmd_witness(const Options& o)
{
  Automaton a = load(o.file);
  auto w = pba_positive_nonempty_bounded(a, o.max_len, static_cast<unsigned>(o.max_j));
  json doc{{"command", "witness"}, {"max_len", o.max_len}, {"max_j", o.max_j}};
  if (!w) {
    doc["found"] = false;
    emit(doc);
    std::cerr << "no witness within bounds (unknown)\n";
    return exit_unknown;
  }
  auto bound = acceptance_lower_bound(a, *w);
  json segs = json::array();
  for (const auto& s : w->segments)
    segs.push_back(format_word(a, s));
  doc["found"] = true;
  doc["C"] = state_names(a, w->states);
  doc["u"] = format_word(a, w->reach);
  doc["first_index"] = w->first_index;
  doc["segments"] = segs;
  doc["lower_bound"] = to_string(bound.value);
  doc["asymptotic"] = bound.asymptotic;
  doc["lasso"] = lasso_json(a, bound.lasso);
  if (bound.asymptotic)
    doc["certificate"] = to_string(lasso_acceptance(a, bound.lasso));
  emit(doc);
  std::cerr << "witness found, lower bound " << to_string(bound.value) << '\n';
  return exit_answered;
}

int cmd_contain(const Options& o)
{
  Automaton a = load(o.file);
  Automaton b = load(o.file2);
  auto r = containment_refute(a, b, parse_semantics(o.semantics), o.bound);
  json doc{{"command", "contain"}, {"semantics", o.semantics}, {"bound", o.bound}};
  if (!r) {
    doc["refuted"] = false;
    doc["unknown"] = true;
    emit(doc);
    std::cerr << "no refutation within bound (unknown)\n";
    return exit_unknown;
  }
  doc["refuted"] = true;
  doc["lasso"] = lasso_json(a, r->lasso);
  doc["left"] = to_string(r->left);
  doc["right"] = to_string(r->right);
  emit(doc);
  std::cerr << "refuted by " << format_lasso(a, r->lasso) << '\n';
  return exit_answered;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Probabilistic Büchi automata toolkit"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--monoid-cap", o.limits.monoid_cap, "Maximum transition-monoid size");
  app.add_option("--complement-cap", o.limits.complement_state_cap, "Maximum NBA states for complementation");
  app.add_option("--complement-size-cap", o.limits.complement_size_cap, "Maximum complement macrostates");

  auto file = [&](CLI::App* c) { c->add_option("FILE", o.file, "Automaton file, '-' for stdin")->required(); };
  auto two_files = [&](CLI::App* c) {
    file(c);
    c->add_option("FILE2", o.file2, "Second automaton file")->required();
  };
  auto semantics = [&](CLI::App* c) {
    c->add_option("--semantics", o.semantics, "positive | almost-sure")
      ->check(CLI::IsMember({"positive", "almost-sure"}));
  };

  std::map<CLI::App*, std::function<int()>> handlers;
  auto sub = [&](const char* name, const char* help, std::function<int()> fn) {
    CLI::App* c = app.add_subcommand(name, help);
    handlers[c] = std::move(fn);
    return c;
  };

  file(sub("validate", "Check every invariant of the automaton's role", [&] { return cmd_validate(o); }));
  file(sub("rank", "Infer a hierarchy ranking with the fewest levels", [&] { return cmd_rank(o); }));
  {
    auto c = sub("prob", "Exact acceptance probability of a lasso", [&] { return cmd_prob(o); });
    file(c);
    c->add_option("LASSO", o.lasso, "STEM;CYCLE")->required();
  }
  {
    auto c = sub("mc", "Monte Carlo estimate of a lasso's acceptance", [&] { return cmd_mc(o); });
    file(c);
    c->add_option("LASSO", o.lasso, "STEM;CYCLE")->required();
    c->add_option("--samples", o.samples, "Number of samples")->check(CLI::PositiveNumber);
    c->add_option("--seed", o.seed, "Root seed");
    c->add_option("--workers", o.workers, "Worker threads");
  }
  file(sub("monitor", "Stream symbols from stdin through an FPM", [&] { return cmd_monitor(o); }));
  file(sub("complement", "Complement monitor (PBA) or complement NBA", [&] { return cmd_complement(o); }));
  two_files(sub("product", "Product of two FPMs", [&] {
    return print_automaton(fpm_product(load(o.file), load(o.file2)), "product");
  }));
  two_files(sub("union", "Almost-sure union", [&] {
    return print_automaton(almost_sure_union(load(o.file), load(o.file2)), "union");
  }));
  two_files(sub("intersect", "Almost-sure intersection", [&] {
    return print_automaton(almost_sure_intersection(load(o.file), load(o.file2)), "intersection");
  }));
  file(sub("dra2hpba", "Hierarchical PBA for a deterministic Rabin automaton",
           [&] { return print_automaton(dra_to_hpba(load(o.file)), "hpba"); }));
  file(sub("hpba2nba", "NBA for the probable language of an HPBA",
           [&] { return print_automaton(hpba_to_nba(load(o.file)), "nba"); }));
  file(sub("closure", "Safety closure of an HPBA's probable language",
           [&] { return print_automaton(safety_closure(load(o.file)), "closure"); }));
  {
    auto c = sub("decompose", "Rabin decomposition of a PRA", [&] { return cmd_decompose(o); });
    file(c);
    c->add_option("--pair-cap", o.pair_cap, "Maximum number of Rabin pairs");
  }
  for (const char* name : {"empty", "universal"}) {
    bool is_empty = std::string_view(name) == "empty";
    auto c = sub(name, is_empty ? "Emptiness" : "Universality",
                 [&, is_empty] { return is_empty ? cmd_empty(o) : cmd_universal(o); });
    file(c);
    semantics(c);
    c->add_option("--max-len", o.max_len, "Word length bound for bounded searches");
    c->add_option("--max-j", o.max_j, "Segment count for bounded searches");
    c->add_option("--bound", o.bound, "Lasso bound for bounded searches");
  }
  {
    auto c = sub("witness", "Bounded search for an asymptotic witness", [&] { return cmd_witness(o); });
    file(c);
    c->add_option("--max-len", o.max_len, "Maximum word length");
    c->add_option("--max-j", o.max_j, "Number of segments")->check(CLI::PositiveNumber);
  }
  {
    auto c = sub("contain", "Bounded refutation of language containment", [&] { return cmd_contain(o); });
    two_files(c);
    semantics(c);
    c->add_option("--bound", o.bound, "Maximum stem and cycle length");
  }
  {
    auto c = sub("gen", "Print a generated example automaton", [&] {
      return print_automaton(generate_example(o.name, o.params), o.name);
    });
    c->add_option("NAME", o.name, "m_id | m_id_squared | m_id_swapped | succinct | p3 | all_final")->required();
    c->add_option("PARAMS", o.params, "Generator parameters");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exit_input;
  }

  std::string command;
  try {
    for (auto& [c, fn] : handlers)
      if (c->parsed()) {
        command = c->get_name();
        return fn();
      }
  } catch (const ResourceLimit& e) {
    emit({{"command", command}, {"error", "resource limit"}, {"cap", e.cap_name()}, {"limit", e.cap()},
          {"flag", e.flag()}, {"message", e.what()}});
    std::cerr << "resource limit: " << e.what() << '\n';
    return exit_unknown;
  } catch (const InputError& e) {
    emit({{"command", command}, {"error", "input"}, {"message", e.what()}});
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const InternalError& e) {
    emit({{"command", command}, {"error", "internal"}, {"message", e.what()}});
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return exit_input;
}
