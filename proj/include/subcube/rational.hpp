#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace subcube {

// Base class for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arbitrary-precision exact rational. Always kept canonical.
using Rational = mpq_class;
using BigInt = mpz_class;

// Parses "num/den", "num", or a decimal-free integer. Whitespace is not
// accepted. Throws Error on malformed input or a zero denominator.
inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw Error("empty rational");
  auto valid_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string num(text.substr(0, slash));
  std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw Error("malformed rational: " + std::string(text));
  BigInt n(num, 10), d(den, 10);
  if (d == 0) throw Error("zero denominator: " + std::string(text));
  Rational q(n, d);
  q.canonicalize();
  return q;
}

// Always "num/den", including integers ("1/1"), so files are uniform.
inline std::string format_rational(Rational q) {
  q.canonicalize();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw Error("zero denominator");
  Rational q(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

// Smallest integer >= q.
inline BigInt ceil(const Rational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline std::uint64_t to_u64(const BigInt& z) {
  if (z < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 64) throw Error("integer does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, z.get_mpz_t());
  return out;
}

inline BigInt from_u64(std::uint64_t v) {
  BigInt z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return z;
}

}  // namespace subcube
