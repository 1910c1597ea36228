#include "pba/sim.hpp"

#include "pba/error.hpp"

#include <cmath>
#include <random>
#include <thread>

namespace pba {

namespace {

/// Cumulative double weights per (vertex) for sampling.
struct Sampler
{
  std::vector<std::vector<std::pair<std::size_t, double>>> cumulative;

  explicit Sampler(const std::vector<std::vector<std::pair<std::size_t, Rational>>>& succ)
  {
    cumulative.resize(succ.size());
    for (std::size_t v = 0; v < succ.size(); ++v) {
      double acc = 0;
      for (const auto& [t, p] : succ[v]) {
        acc += p.get_d();
        cumulative[v].push_back({t, acc});
      }
    }
  }

  std::size_t step(std::size_t v, std::mt19937_64& rng) const
  {
    const auto& row = cumulative[v];
    double x = std::uniform_real_distribution<double>(0.0, row.back().second)(rng);
    for (const auto& [t, c] : row)
      if (x < c)
        return t;
    return row.back().first;
  }
};

void require_monitor(const Automaton& fpm)
{
  if (fpm.role() != Role::fpm)
    throw InputError("monitor needs an FPM, got role " + std::string(role_name(fpm.role())));
  require_valid(fpm);
}

SymbolId resolve(const Automaton& a, std::string_view symbol, std::size_t position)
{
  auto s = a.find_symbol(symbol);
  if (!s)
    throw InputError("unknown symbol '" + std::string(symbol) + "' at stream position " + std::to_string(position));
  return *s;
}

} // namespace

std::uint64_t sample_seed(std::uint64_t root, std::uint64_t index)
{
  std::uint64_t z = root + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

McEstimate mc_lasso_estimate(const Automaton& aut, const LassoWord& w, std::uint64_t samples, std::uint64_t seed,
                             unsigned workers)
{
  require_probabilistic(aut);
  if (samples == 0)
    throw InputError("sample count must be positive");
  if (w.cycle.empty())
    throw InputError("lasso cycle must be nonempty");
  for (const Word* part : {&w.stem, &w.cycle})
    for (SymbolId s : *part)
      if (s >= aut.num_symbols())
        throw InputError("unknown symbol index " + std::to_string(s));

  const std::size_t n = aut.num_states();
  // Stem steps use one sampler per symbol over plain states.
  std::vector<Sampler> stem_samplers;
  for (SymbolId a = 0; a < aut.num_symbols(); ++a) {
    std::vector<std::vector<std::pair<std::size_t, Rational>>> succ(n);
    for (StateId q = 0; q < n; ++q)
      for (const auto& t : aut.edges(q, a))
        succ[q].push_back({t.target, t.probability});
    stem_samplers.emplace_back(succ);
  }
  const auto chain = markov::build_cycle_chain(aut, w.cycle);
  const Sampler cycle_sampler(chain.successors);

  auto run = [&](std::uint64_t i) {
    std::mt19937_64 rng(sample_seed(seed, i));
    StateId q = aut.initial();
    for (SymbolId a : w.stem)
      q = stem_samplers[a].step(q, rng);
    std::size_t v = chain.vertex(q, 0);
    while (!chain.in_bottom[v])
      v = cycle_sampler.step(v, rng);
    return chain.accepting_bottom[v];
  };

  workers = std::max(1u, workers);
  std::vector<std::uint64_t> hits(workers, 0);
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < workers; ++k)
      pool.emplace_back([&, k] {
        for (std::uint64_t i = k; i < samples; i += workers)
          hits[k] += run(i) ? 1 : 0;
      });
  }
  std::uint64_t total = 0;
  for (auto h : hits)
    total += h;

  McEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.mean = static_cast<double>(total) / static_cast<double>(samples);
  est.std_error = samples > 1 ? std::sqrt(est.mean * (1 - est.mean) / static_cast<double>(samples - 1)) : 0.0;
  return est;
}

MonitorSession::MonitorSession(const Automaton& fpm) : fpm_(fpm)
{
  require_monitor(fpm_);
  reject_ = *fpm_.reject();
  dist_ = Distribution::dirac(fpm_.num_states(), fpm_.initial());
}

Rational MonitorSession::feed(std::string_view symbol)
{
  return feed(resolve(fpm_, symbol, position_));
}

Rational MonitorSession::feed(SymbolId a)
{
  if (a >= fpm_.num_symbols())
    throw InputError("unknown symbol index " + std::to_string(a) + " at stream position " + std::to_string(position_));
  Distribution next(fpm_.num_states());
  for (StateId q = 0; q < fpm_.num_states(); ++q) {
    if (dist_[q] == 0)
      continue;
    for (const auto& t : fpm_.edges(q, a))
      next[t.target] += dist_[q] * t.probability;
  }
  dist_ = std::move(next);
  ++position_;
  return reject_mass();
}

std::vector<Rational> monitor_stream(const Automaton& fpm, const std::vector<std::string>& symbols)
{
  MonitorSession s(fpm);
  std::vector<Rational> out{s.reject_mass()};
  for (const auto& sym : symbols)
    out.push_back(s.feed(sym));
  return out;
}

FastMonitorSession::FastMonitorSession(const Automaton& fpm) : fpm_(fpm)
{
  require_monitor(fpm_);
  reject_ = *fpm_.reject();
  dist_.assign(fpm_.num_states(), 0.0);
  dist_[fpm_.initial()] = 1.0;
}

double FastMonitorSession::feed(std::string_view symbol)
{
  SymbolId a = resolve(fpm_, symbol, position_);
  std::vector<double> next(dist_.size(), 0.0);
  for (StateId q = 0; q < dist_.size(); ++q) {
    if (dist_[q] == 0)
      continue;
    for (const auto& t : fpm_.edges(q, a))
      next[t.target] += dist_[q] * t.probability.get_d();
  }
  dist_ = std::move(next);
  ++position_;
  return reject_mass();
}

} // namespace pba
