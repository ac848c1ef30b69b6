#include "rational.hpp"

#include <cctype>

#include "error.hpp"

namespace okkit {

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
    throw Error(ErrorCode::Parse, "invalid rational '" + std::string(text) + "'");
  std::string n(num[0] == '+' ? num.substr(1) : num);
  BigInt d{std::string(den)};
  if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational q(BigInt(n), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace okkit
