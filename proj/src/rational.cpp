#include "ncf/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace ncf {

BigInt floor(const Rational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

std::int64_t to_int64(const BigInt& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + v.get_str());
  return static_cast<std::int64_t>(v.get_si());
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const BigInt& v) { return v.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty number");

  auto parse_int = [](const std::string& t) {
    if (t.empty()) throw std::invalid_argument("malformed number");
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) throw std::invalid_argument("malformed number: " + t);
    for (std::size_t k = i; k < t.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(t[k]))) throw std::invalid_argument("malformed number: " + t);
    return BigInt(t[0] == '+' ? t.substr(1) : t);
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt num = parse_int(s.substr(0, slash));
    BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    BigInt scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    BigInt w = parse_int(whole);
    BigInt f = frac.empty() ? BigInt(0) : parse_int(frac);
    if (!frac.empty() && (frac[0] == '-' || frac[0] == '+')) throw std::invalid_argument("malformed number: " + s);
    BigInt num = abs(w) * scale + f;
    if (negative) num = -num;
    Rational r(num, scale);
    r.canonicalize();
    return r;
  }
  return Rational(parse_int(s));
}

double to_double(const Rational& r) {
  double d = r.get_d();
  if (!std::isfinite(d)) return d;
  double other = sgn(r) >= 0 ? std::nextafter(d, HUGE_VAL) : std::nextafter(d, -HUGE_VAL);
  if (!std::isfinite(other)) return d;
  return abs(exact(other) - r) < abs(exact(d) - r) ? other : d;
}

Rational exact(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value has no exact rational form");
  return Rational(v);
}

}  // namespace ncf
