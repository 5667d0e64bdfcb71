#include "qcenter/poly.hpp"

#include <algorithm>
#include <cctype>

#include "qcenter/errors.hpp"

namespace qcenter {

namespace {

void require_same_space(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars())
    throw DimensionError("polynomials over " + std::to_string(a.nvars()) + " and " + std::to_string(b.nvars()) +
                         " variables");
}

template <typename Combine>
std::vector<Poly::Term> merge_terms(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b,
                                    Combine combine) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, combine(Scalar(0), ib->second));
      ++ib;
    } else {
      Scalar c = combine(ia->second, ib->second);
      if (!qcenter::is_zero(c)) out.emplace_back(ia->first, std::move(c));
      ++ia;
      ++ib;
    }
  }
  return out;
}

}  // namespace

Poly Poly::constant(std::size_t nvars, const Scalar& c) { return term(nvars, Monomial(), c); }

Poly Poly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw DimensionError("variable index " + std::to_string(index) + " out of range");
  return term(nvars, Monomial::variable(index), Scalar(1));
}

Poly Poly::term(std::size_t nvars, const Monomial& m, const Scalar& c) {
  if (nvars > kMaxVariables) throw DimensionError("too many variables");
  Poly p(nvars);
  if (!qcenter::is_zero(c)) p.terms_.emplace_back(m, c);
  return p;
}

Poly Poly::from_sorted_terms(std::size_t nvars, std::vector<Term> terms) {
  Poly p(nvars);
  p.terms_ = std::move(terms);
  return p;
}

Scalar Poly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) return it->second;
  return Scalar(0);
}

Scalar Poly::constant_term() const { return coefficient(Monomial()); }

Poly& Poly::operator+=(const Poly& o) {
  require_same_space(*this, o);
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, [](const Scalar& x, const Scalar& y) { return Scalar(x + y); });
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_same_space(*this, o);
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, [](const Scalar& x, const Scalar& y) { return Scalar(x - y); });
  return *this;
}

Poly& Poly::operator*=(const Scalar& c) {
  if (qcenter::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_space(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(a.nvars());
  if (b.size() == 1) return a.shifted(b.terms_.front().first) * b.terms_.front().second;
  if (a.size() == 1) return b.shifted(a.terms_.front().first) * a.terms_.front().second;
  PolyBuilder acc(a.nvars());
  Scalar prod;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      prod = ca * cb;
      acc.add(ma * mb, prod);
    }
  return acc.build();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(nvars_, Scalar(1));
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::homogeneous_part(unsigned d) const {
  Poly r(nvars_);
  for (const auto& t : terms_)
    if (t.first.degree() == d) r.terms_.push_back(t);
  return r;
}

Poly Poly::shifted(const Monomial& m) const {
  Poly r(nvars_);
  r.terms_.reserve(terms_.size());
  for (const auto& [mono, c] : terms_) r.terms_.emplace_back(mono * m, c);
  // Multiplication by a monomial is monotone in graded-lex order.
  return r;
}

void PolyBuilder::add(const Monomial& m, const Scalar& c) {
  if (qcenter::is_zero(c)) return;
  auto [it, inserted] = acc_.try_emplace(m.bits(), c);
  if (!inserted) it->second += c;
}

void PolyBuilder::add(const Poly& p, const Scalar& scale) {
  if (p.nvars() != nvars_) throw DimensionError("builder variable count mismatch");
  if (qcenter::is_zero(scale)) return;
  for (const auto& [m, c] : p.terms()) add(m, c * scale);
}

Poly PolyBuilder::build() const {
  std::vector<Poly::Term> terms;
  terms.reserve(acc_.size());
  for (const auto& [bits, c] : acc_)
    if (!qcenter::is_zero(c)) terms.emplace_back(Monomial::from_bits(bits), c);
  std::sort(terms.begin(), terms.end(), [](const Poly::Term& x, const Poly::Term& y) { return x.first < y.first; });
  return Poly::from_sorted_terms(nvars_, std::move(terms));
}

Poly poly_arith(const Poly& a, const Poly& b, ArithOp op) {
  require_same_space(a, b);
  switch (op) {
    case ArithOp::add:
      return a + b;
    case ArithOp::sub:
      return a - b;
    case ArithOp::mul:
      return a * b;
    case ArithOp::scale:
      if (!b.is_constant()) throw PreconditionError("scale requires a constant factor");
      return a * b.constant_term();
  }
  return Poly(a.nvars());
}

Scalar derivative_factor(const Monomial& a, const Monomial& multi_index, std::size_t nvars) {
  if (!multi_index.divides(a)) return Scalar(0);
  mpz_class r = 1;
  for (std::size_t i = 0; i < nvars; ++i) {
    const unsigned e = a.exponent(i);
    const unsigned k = multi_index.exponent(i);
    for (unsigned j = 0; j < k; ++j) r *= (e - j);
  }
  return Scalar(r);
}

Poly partial_derivative(const Poly& f, std::size_t var_index) {
  if (var_index >= f.nvars())
    throw DimensionError("derivative index " + std::to_string(var_index) + " out of range for " +
                         std::to_string(f.nvars()) + " variables");
  return derivative(f, Monomial::variable(var_index));
}

Poly derivative(const Poly& f, const Monomial& multi_index) {
  if (multi_index.support_size() > f.nvars()) throw DimensionError("derivative multi-index out of range");
  if (multi_index.is_one()) return f;
  PolyBuilder acc(f.nvars());
  for (const auto& [m, c] : f.terms()) {
    if (!multi_index.divides(m)) continue;
    acc.add(m / multi_index, c * derivative_factor(m, multi_index, f.nvars()));
  }
  return acc.build();
}

long weighted_degree(const Monomial& m, std::span<const int> weights) {
  long d = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) d += static_cast<long>(weights[i]) * m.exponent(i);
  return d;
}

std::map<long, Poly> grade_decompose(const Poly& f, std::span<const int> weights) {
  if (weights.size() != f.nvars()) throw DimensionError("weight vector length does not match variable count");
  std::map<long, std::vector<Poly::Term>> parts;
  for (const auto& t : f.terms()) parts[weighted_degree(t.first, weights)].push_back(t);
  std::map<long, Poly> out;
  for (auto& [w, terms] : parts) out.emplace(w, Poly::from_sorted_terms(f.nvars(), std::move(terms)));
  return out;
}

Poly substitute(const Poly& f, std::span<const Poly> images) {
  if (images.size() != f.nvars()) throw DimensionError("substitution needs one image per variable");
  if (images.empty()) return f;
  const std::size_t target = images.front().nvars();
  for (const auto& img : images)
    if (img.nvars() != target) throw DimensionError("substitution images over different spaces");
  // powers[i][e] = images[i]^e, grown on demand.
  std::vector<std::vector<Poly>> powers(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) powers[i].push_back(Poly::constant(target, Scalar(1)));
  auto power = [&](std::size_t i, unsigned e) -> const Poly& {
    while (powers[i].size() <= e) powers[i].push_back(powers[i].back() * images[i]);
    return powers[i][e];
  };
  Poly out(target);
  for (const auto& [m, c] : f.terms()) {
    Poly t = Poly::constant(target, c);
    for (std::size_t i = 0; i < images.size(); ++i)
      if (unsigned e = m.exponent(i); e > 0) t = t * power(i, e);
    out += t;
  }
  return out;
}

DivisionResult divide(const Poly& dividend, const Poly& divisor) {
  require_same_space(dividend, divisor);
  if (divisor.is_zero()) throw PreconditionError("division by the zero polynomial");
  const auto& [lm, lc] = divisor.leading_term();
  PolyBuilder quotient(dividend.nvars());
  std::vector<Poly::Term> remainder;
  Poly p = dividend;
  while (!p.is_zero()) {
    const auto [m, c] = p.leading_term();
    if (lm.divides(m)) {
      const Monomial qm = m / lm;
      const Scalar qc = c / lc;
      quotient.add(qm, qc);
      p -= divisor.shifted(qm) * qc;
    } else {
      remainder.emplace_back(m, c);
      p -= Poly::term(p.nvars(), m, c);
    }
  }
  std::reverse(remainder.begin(), remainder.end());
  return {quotient.build(), Poly::from_sorted_terms(dividend.nvars(), std::move(remainder))};
}

std::string to_string(const Poly& f, std::span<const std::string> names) {
  if (names.size() < f.nvars()) throw DimensionError("not enough variable names to print polynomial");
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = sgn(c) < 0;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    const Scalar a = abs(c);
    std::string mono;
    for (std::size_t i = 0; i < f.nvars(); ++i) {
      const unsigned e = m.exponent(i);
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty())
      out += to_string(a);
    else if (a == 1)
      out += mono;
    else
      out += to_string(a) + "*" + mono;
  }
  return out;
}

namespace {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, std::span<const std::string> names) : text_(text), names_(names) {}

  Poly parse() {
    Poly p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  Poly expr() {
    Poly acc = term();
    for (;;) {
      skip_space();
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      skip_space();
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        Poly d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division only by a nonzero constant");
        acc *= Scalar(1) / d.constant_term();
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    skip_space();
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    skip_space();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > kMaxDegree) fail("exponent too large");
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Poly atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (accept('(')) {
      Poly inner = expr();
      skip_space();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Poly::constant(names_.size(), Scalar(mpz_class(std::string(text_.substr(start, pos_ - start)), 10)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view ident = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == ident) return Poly::variable(names_.size(), i);
      fail("unknown variable '" + std::string(ident) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("in expression '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, std::span<const std::string> names) {
  if (names.size() > kMaxVariables) throw DimensionError("too many variables");
  return ExpressionParser(text, names).parse();
}

}  // namespace qcenter
