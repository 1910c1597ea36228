#pragma once

#include "pba/automaton.hpp"
#include "pba/markov.hpp"
#include "pba/rational.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pba {

struct McEstimate
{
  double mean = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Seed of sample i, derived from the root seed with splitmix64.
std::uint64_t sample_seed(std::uint64_t root, std::uint64_t index);

/// Monte Carlo estimate of the acceptance probability of `w`. Sample i uses
/// its own generator seeded by sample_seed(seed, i), so the result does not
/// depend on `workers`.
McEstimate mc_lasso_estimate(const Automaton& aut, const LassoWord& w, std::uint64_t samples, std::uint64_t seed,
                             unsigned workers = 1);

/// Streaming FPM monitor over an exact state distribution. One owner feeds it;
/// distinct sessions are independent.
class MonitorSession
{
public:
  explicit MonitorSession(const Automaton& fpm);

  /// Reads one symbol and returns the new reject mass. An unknown symbol
  /// throws InputError naming the stream position; the state is unchanged.
  Rational feed(std::string_view symbol);
  Rational feed(SymbolId symbol);

  Rational reject_mass() const { return dist_[reject_]; }
  const Distribution& distribution() const { return dist_; }
  /// Number of symbols consumed so far.
  std::size_t position() const { return position_; }

private:
  Automaton fpm_;
  StateId reject_;
  Distribution dist_;
  std::size_t position_ = 0;
};

/// Emissions for a whole stream: the initial 0, then one per symbol.
std::vector<Rational> monitor_stream(const Automaton& fpm, const std::vector<std::string>& symbols);

/// Same session in double precision. Not used where exact answers matter.
class FastMonitorSession
{
public:
  explicit FastMonitorSession(const Automaton& fpm);
  double feed(std::string_view symbol);
  double reject_mass() const { return dist_[reject_]; }

private:
  Automaton fpm_;
  StateId reject_;
  std::vector<double> dist_;
  std::size_t position_ = 0;
};

} // namespace pba
