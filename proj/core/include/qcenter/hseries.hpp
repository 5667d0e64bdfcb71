#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcenter/poly.hpp"

namespace qcenter {

/// Element of K[X][[hbar]] modulo hbar^(N+1): exactly N+1 dense coefficient slots.
class HSeries {
 public:
  HSeries(std::size_t nvars, int order);
  /// f + 0*hbar + ... + 0*hbar^N.
  HSeries(const Poly& f, int order);

  std::size_t nvars() const { return nvars_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Poly& operator[](int m) const { return coeffs_.at(static_cast<std::size_t>(m)); }
  Poly& operator[](int m) { return coeffs_.at(static_cast<std::size_t>(m)); }
  const std::vector<Poly>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  /// Lowest m with a nonzero coefficient.
  std::optional<int> lowest_order() const;

  HSeries& operator+=(const HSeries& o);
  HSeries& operator-=(const HSeries& o);
  HSeries& operator*=(const Scalar& c);
  friend HSeries operator+(HSeries a, const HSeries& b) { return a += b; }
  friend HSeries operator-(HSeries a, const HSeries& b) { return a -= b; }
  friend HSeries operator*(HSeries a, const Scalar& c) { return a *= c; }
  friend HSeries operator*(const Scalar& c, HSeries a) { return a *= c; }
  HSeries operator-() const;
  friend bool operator==(const HSeries&, const HSeries&) = default;

  /// Multiplication by hbar^j, dropping orders beyond N.
  HSeries hbar_shifted(int j) const;
  /// Same series viewed at another truncation order (drops or zero-pads slots).
  HSeries truncated(int order) const;
  /// Sum of all coefficients (hbar = 1).
  Poly at_hbar_one() const;

 private:
  std::size_t nvars_;
  std::vector<Poly> coeffs_;
};

/// Commutative (pointwise) product, truncated at the common order.
HSeries pointwise_mul(const HSeries& a, const HSeries& b);

/// Renders sum_m f_m hbar^m with "hbar" as the formal parameter.
std::string to_string(const HSeries& f, std::span<const std::string> names);

/// Parses a polynomial expression that may use `hbar`; orders above `order` are dropped.
HSeries parse_hseries(std::string_view text, std::span<const std::string> names, int order);

}  // namespace qcenter
