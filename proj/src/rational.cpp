#include "stablepgf/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace stablepgf {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

/// Decimal or scientific literal -> exact rational.
Rational parse_decimal(const std::string& text) {
  std::string s = text;
  bool neg = false;
  std::size_t pos = 0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    neg = (s[pos] == '-');
    ++pos;
  }
  std::string digits;
  long frac_len = 0;
  bool seen_dot = false, seen_digit = false;
  for (; pos < s.size(); ++pos) {
    char ch = s[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
      seen_digit = true;
      if (seen_dot) ++frac_len;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else if (ch == 'e' || ch == 'E') {
      break;
    } else {
      throw InputError("cannot parse rational from \"" + text + "\"");
    }
  }
  long expo = 0;
  if (pos < s.size()) {  // exponent part
    std::string tail = s.substr(pos + 1);
    if (tail.empty() ||
        !(all_digits(tail) ||
          ((tail[0] == '+' || tail[0] == '-') && all_digits(tail.substr(1)))))
      throw InputError("cannot parse rational from \"" + text + "\"");
    expo = std::strtol(tail.c_str(), nullptr, 10);
  }
  if (!seen_digit) throw InputError("cannot parse rational from \"" + text + "\"");

  Integer num(digits.empty() ? "0" : digits, 10);
  if (neg) num = -num;
  long ten_pow = expo - frac_len;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(ten_pow)));
  Rational q;
  if (ten_pow >= 0)
    q = Rational(num * scale);
  else
    q = Rational(num, scale);
  q.canonicalize();
  return q;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw InputError("cannot parse rational from empty string");

  if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos)
    return parse_decimal(s);

  Rational q;
  if (q.set_str(s, 10) != 0)
    throw InputError("cannot parse rational from \"" + text + "\"");
  if (q.get_den() == 0)
    throw InputError("zero denominator in \"" + text + "\"");
  q.canonicalize();
  return q;
}

std::string rational_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace stablepgf
