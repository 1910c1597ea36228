#include "pba/rational.hpp"

#include <cctype>

namespace pba {

std::string to_string(const Rational& r)
{
  Rational c = r;
  c.canonicalize();
  return c.get_str();
}

namespace {

bool is_integer_literal(std::string_view s)
{
  if (!s.empty() && (s.front() == '-' || s.front() == '+'))
    s.remove_prefix(1);
  if (s.empty())
    return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      return false;
  return true;
}

} // namespace

std::optional<Rational> parse_rational(std::string_view text)
{
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
    return std::nullopt;
  mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0)
    return std::nullopt;
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Rational inverse_power_of_two(unsigned k)
{
  mpz_class d = 1;
  d <<= k;
  return Rational(mpz_class(1), d);
}

} // namespace pba
