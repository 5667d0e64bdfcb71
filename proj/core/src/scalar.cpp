#include "qcenter/scalar.hpp"

#include <cctype>

#include "qcenter/errors.hpp"

namespace qcenter {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den))
    throw ParseError("malformed rational '" + std::string(text) + "'");
  mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den.front() == '+' ? den.substr(1) : den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Scalar r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Scalar& s) {
  if (s.get_den() == 1) return s.get_num().get_str();
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

Scalar factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Scalar(f);
}

Scalar falling_factorial(unsigned n, unsigned k) {
  if (k > n) return Scalar(0);
  mpz_class r = 1;
  for (unsigned i = 0; i < k; ++i) r *= (n - i);
  return Scalar(r);
}

}  // namespace qcenter
