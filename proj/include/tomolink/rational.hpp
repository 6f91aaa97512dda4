#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "tomolink/error.hpp"

namespace tomolink {

using Rational = mpq_class;

// Always "p/q" with q >= 1, including integers ("-2/1").
inline std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

// Accepts "p/q" or a bare integer "p".
inline Rational parse_rational(std::string_view text) {
  auto is_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  auto strip_plus = [](std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return std::string(s);
  };

  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view("1")
                                                   : text.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den) || den.front() == '-' ||
      den.front() == '+') {
    throw Error(ErrorKind::MalformedInput,
                "not a rational: '" + std::string(text) + "'");
  }
  const mpz_class n{strip_plus(num)};
  const mpz_class d{std::string(den)};
  if (d == 0) {
    throw Error(ErrorKind::MalformedInput,
                "zero denominator: '" + std::string(text) + "'");
  }
  Rational value{n, d};
  value.canonicalize();
  return value;
}

}  // namespace tomolink
