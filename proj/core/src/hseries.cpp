#include "qcenter/hseries.hpp"

#include "qcenter/errors.hpp"

namespace qcenter {

namespace {

void require_compatible(const HSeries& a, const HSeries& b) {
  if (a.nvars() != b.nvars()) throw DimensionError("series over different variable counts");
  if (a.order() != b.order())
    throw DimensionError("truncation mismatch: " + std::to_string(a.order()) + " vs " + std::to_string(b.order()));
}

}  // namespace

HSeries::HSeries(std::size_t nvars, int order) : nvars_(nvars) {
  if (order < 0) throw PreconditionError("negative truncation order");
  coeffs_.assign(static_cast<std::size_t>(order) + 1, Poly(nvars));
}

HSeries::HSeries(const Poly& f, int order) : HSeries(f.nvars(), order) { coeffs_[0] = f; }

bool HSeries::is_zero() const { return !lowest_order().has_value(); }

std::optional<int> HSeries::lowest_order() const {
  for (std::size_t m = 0; m < coeffs_.size(); ++m)
    if (!coeffs_[m].is_zero()) return static_cast<int>(m);
  return std::nullopt;
}

HSeries& HSeries::operator+=(const HSeries& o) {
  require_compatible(*this, o);
  for (std::size_t m = 0; m < coeffs_.size(); ++m) coeffs_[m] += o.coeffs_[m];
  return *this;
}

HSeries& HSeries::operator-=(const HSeries& o) {
  require_compatible(*this, o);
  for (std::size_t m = 0; m < coeffs_.size(); ++m) coeffs_[m] -= o.coeffs_[m];
  return *this;
}

HSeries& HSeries::operator*=(const Scalar& c) {
  for (auto& p : coeffs_) p *= c;
  return *this;
}

HSeries HSeries::operator-() const {
  HSeries r = *this;
  for (auto& p : r.coeffs_) p = -p;
  return r;
}

HSeries HSeries::hbar_shifted(int j) const {
  HSeries r(nvars_, order());
  for (int m = 0; m + j <= order(); ++m)
    if (m + j >= 0) r[m + j] = coeffs_[static_cast<std::size_t>(m)];
  return r;
}

HSeries HSeries::truncated(int new_order) const {
  HSeries r(nvars_, new_order);
  for (int m = 0; m <= std::min(order(), new_order); ++m) r[m] = coeffs_[static_cast<std::size_t>(m)];
  return r;
}

Poly HSeries::at_hbar_one() const {
  Poly sum(nvars_);
  for (const auto& p : coeffs_) sum += p;
  return sum;
}

HSeries pointwise_mul(const HSeries& a, const HSeries& b) {
  require_compatible(a, b);
  HSeries r(a.nvars(), a.order());
  for (int i = 0; i <= a.order(); ++i)
    for (int j = 0; i + j <= a.order(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::string to_string(const HSeries& f, std::span<const std::string> names) {
  std::string out;
  for (int m = 0; m <= f.order(); ++m) {
    if (f[m].is_zero()) continue;
    std::string body = to_string(f[m], names);
    std::string hbar = m == 0 ? "" : (m == 1 ? "hbar" : "hbar^" + std::to_string(m));
    std::string piece;
    if (hbar.empty())
      piece = body;
    else if (f[m].size() == 1 && f[m].is_constant())
      piece = f[m].constant_term() == 1 ? hbar : (f[m].constant_term() == -1 ? "-" + hbar : body + "*" + hbar);
    else
      piece = "(" + body + ")*" + hbar;
    if (out.empty()) {
      out = piece;
    } else if (piece.front() == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out.empty() ? "0" : out;
}

HSeries parse_hseries(std::string_view text, std::span<const std::string> names, int order) {
  std::vector<std::string> extended(names.begin(), names.end());
  extended.emplace_back("hbar");
  const Poly p = parse_poly(text, extended);
  const std::size_t h = names.size();
  HSeries out(names.size(), order);
  std::vector<PolyBuilder> slots(static_cast<std::size_t>(order) + 1, PolyBuilder(names.size()));
  for (const auto& [m, c] : p.terms()) {
    const int e = static_cast<int>(m.exponent(h));
    if (e > order) continue;
    slots[static_cast<std::size_t>(e)].add(m / Monomial::variable(h, static_cast<unsigned>(e)), c);
  }
  for (int m = 0; m <= order; ++m) out[m] = slots[static_cast<std::size_t>(m)].build();
  return out;
}

}  // namespace qcenter
