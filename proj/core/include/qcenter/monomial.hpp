#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qcenter {

inline constexpr std::size_t kMaxVariables = 10;
inline constexpr unsigned kMaxDegree = 63;

/// Exponent vector packed 6 bits per variable, variable 0 in the most
/// significant field. Comparing packed words compares exponent vectors
/// lexicographically starting from variable 0, so graded-lex order is
/// (degree, bits).
class Monomial {
 public:
  constexpr Monomial() = default;

  static Monomial from_exponents(std::span<const unsigned> exponents);
  static Monomial variable(std::size_t index, unsigned power = 1);
  static Monomial from_bits(std::uint64_t bits);

  unsigned exponent(std::size_t index) const {
    return static_cast<unsigned>((bits_ >> shift(index)) & kFieldMask);
  }
  unsigned degree() const { return degree_; }
  std::uint64_t bits() const { return bits_; }
  bool is_one() const { return bits_ == 0; }

  std::vector<unsigned> exponents(std::size_t nvars) const;

  /// Componentwise exponent comparison.
  bool divides(const Monomial& other) const;

  /// Throws DimensionError when the product exceeds kMaxDegree.
  Monomial operator*(const Monomial& other) const;
  /// Requires divides(*this, other).
  Monomial operator/(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

  /// Highest variable index with a nonzero exponent plus one.
  std::size_t support_size() const;

 private:
  static constexpr unsigned kFieldBits = 6;
  static constexpr std::uint64_t kFieldMask = (1u << kFieldBits) - 1;
  static constexpr unsigned shift(std::size_t index) {
    return static_cast<unsigned>(kFieldBits * index);
  }

  std::uint64_t bits_ = 0;
  std::uint32_t degree_ = 0;
};

/// All monomials of the given total degree in nvars variables, ascending.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree);

}  // namespace qcenter
