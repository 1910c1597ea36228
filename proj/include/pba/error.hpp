#pragma once

#include <stdexcept>
#include <string>

namespace pba {

/// Malformed input: bad automaton, unknown symbol, wrong role for an operation.
class InputError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A configurable cap was exceeded. `cap_name` names the limit and `flag`
/// the CLI option that raises it.
class ResourceLimit : public std::runtime_error
{
public:
  ResourceLimit(std::string cap_name, std::size_t cap, std::string flag)
    : std::runtime_error(cap_name + " exceeded (limit " + std::to_string(cap) +
                         "); raise it with " + flag),
      cap_name_(std::move(cap_name)),
      cap_(cap),
      flag_(std::move(flag))
  { }

  const std::string& cap_name() const { return cap_name_; }
  std::size_t cap() const { return cap_; }
  const std::string& flag() const { return flag_; }

private:
  std::string cap_name_;
  std::size_t cap_;
  std::string flag_;
};

/// A cooperative stop request interrupted a long search.
class Cancelled : public std::runtime_error
{
public:
  Cancelled() : std::runtime_error("search cancelled") { }
};

/// A certificate failed independent re-verification. Always a bug.
class InternalError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

} // namespace pba
