#include "qcenter/monomial.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "qcenter/errors.hpp"

namespace qcenter {

Monomial Monomial::from_exponents(std::span<const unsigned> exponents) {
  if (exponents.size() > kMaxVariables)
    throw DimensionError("monomial over " + std::to_string(exponents.size()) + " variables exceeds the limit of " +
                         std::to_string(kMaxVariables));
  Monomial m;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    m.degree_ += exponents[i];
    if (exponents[i] > kMaxDegree || m.degree_ > kMaxDegree) throw DimensionError("monomial degree exceeds 63");
    m.bits_ |= static_cast<std::uint64_t>(exponents[i]) << shift(i);
  }
  return m;
}

Monomial Monomial::variable(std::size_t index, unsigned power) {
  if (index >= kMaxVariables) throw DimensionError("variable index out of range");
  if (power > kMaxDegree) throw DimensionError("monomial degree exceeds 63");
  Monomial m;
  m.bits_ = static_cast<std::uint64_t>(power) << shift(index);
  m.degree_ = power;
  return m;
}

Monomial Monomial::from_bits(std::uint64_t bits) {
  Monomial m;
  m.bits_ = bits;
  for (std::size_t i = 0; i < kMaxVariables; ++i) m.degree_ += m.exponent(i);
  return m;
}

std::vector<unsigned> Monomial::exponents(std::size_t nvars) const {
  std::vector<unsigned> e(nvars);
  for (std::size_t i = 0; i < nvars; ++i) e[i] = exponent(i);
  return e;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (exponent(i) > other.exponent(i)) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (degree_ + other.degree_ > kMaxDegree) throw DimensionError("monomial degree exceeds 63");
  Monomial m;
  m.bits_ = bits_ + other.bits_;
  m.degree_ = degree_ + other.degree_;
  return m;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial m;
  m.bits_ = bits_ - other.bits_;
  m.degree_ = degree_ - other.degree_;
  return m;
}

std::size_t Monomial::support_size() const {
  for (std::size_t i = kMaxVariables; i > 0; --i)
    if (exponent(i - 1) != 0) return i;
  return 0;
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  std::vector<unsigned> e(nvars, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == nvars) {
      e[i] = left;
      out.push_back(Monomial::from_exponents(e));
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, degree);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qcenter
