#include "qcenter/envalg.hpp"

#include <algorithm>
#include <mutex>

#include "qcenter/errors.hpp"

namespace qcenter {

namespace {

std::vector<std::uint8_t> expand_word(const Monomial& m, std::size_t dim) {
  std::vector<std::uint8_t> w;
  for (std::size_t i = 0; i < dim; ++i)
    for (unsigned e = 0; e < m.exponent(i); ++e) w.push_back(static_cast<std::uint8_t>(i));
  return w;
}

Monomial word_monomial(const std::vector<std::uint8_t>& w) {
  Monomial m;
  for (auto i : w) m = m * Monomial::variable(i);
  return m;
}

UEnvElement::HbarPoly hbar_mul(const UEnvElement::HbarPoly& a, const UEnvElement::HbarPoly& b, int order) {
  UEnvElement::HbarPoly r(static_cast<std::size_t>(order) + 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(order); ++j)
      if (!is_zero(b[j])) r[i + j] += a[i] * b[j];
  }
  return r;
}

UEnvElement scaled(const UEnvElement& a, const UEnvElement::HbarPoly& c) {
  UEnvElement r(a.dim(), a.order());
  for (const auto& [m, coeff] : a.terms()) r.add(m, hbar_mul(coeff, c, a.order()));
  return r;
}

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

// ---------------------------------------------------------------- LieAlgebraData

LieAlgebraData::LieAlgebraData(std::vector<std::string> labels, Constants constants,
                               std::vector<Poly> invariant_generators)
    : labels_(std::move(labels)), c_(std::move(constants)), generators_(std::move(invariant_generators)) {
  const std::size_t d = labels_.size();
  if (d > kMaxVariables) throw ValidationError("Lie algebra dimension exceeds " + std::to_string(kMaxVariables));
  if (c_.size() != d) throw ValidationError("structure constants must be a d x d x d array");
  for (const auto& row : c_) {
    if (row.size() != d) throw ValidationError("structure constants must be a d x d x d array");
    for (const auto& v : row)
      if (v.size() != d) throw ValidationError("structure constants must be a d x d x d array");
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (c_[i][j][k] != -c_[j][i][k])
          throw ValidationError("structure constants not antisymmetric in [" + labels_[i] + ", " + labels_[j] + "]");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t l = j + 1; l < d; ++l)
        for (std::size_t m = 0; m < d; ++m) {
          Scalar s = 0;
          for (std::size_t k = 0; k < d; ++k)
            s += c_[i][j][k] * c_[k][l][m] + c_[j][l][k] * c_[k][i][m] + c_[l][i][k] * c_[k][j][m];
          if (!is_zero(s))
            throw ValidationError("Jacobi identity fails for (" + labels_[i] + ", " + labels_[j] + ", " + labels_[l] +
                                  ")");
        }
  for (const auto& z : generators_) {
    if (z.nvars() != d) throw ValidationError("invariant generator over the wrong number of variables");
    if (!is_invariant(z)) throw ValidationError("designated generator " + format(z) + " is not ad-invariant");
  }
}

LieAlgebraData LieAlgebraData::abelian(std::size_t d, std::vector<std::string> labels) {
  if (labels.empty())
    for (std::size_t i = 0; i < d; ++i) labels.push_back("x" + std::to_string(i + 1));
  Constants c(d, std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d)));
  std::vector<Poly> gens;
  for (std::size_t i = 0; i < d; ++i) gens.push_back(Poly::variable(d, i));
  return LieAlgebraData(std::move(labels), std::move(c), std::move(gens));
}

LieAlgebraData LieAlgebraData::sl2() {
  enum { e = 0, h = 1, f = 2 };
  Constants c(3, std::vector<std::vector<Scalar>>(3, std::vector<Scalar>(3)));
  c[h][e][e] = 2;
  c[e][h][e] = -2;
  c[h][f][f] = -2;
  c[f][h][f] = 2;
  c[e][f][h] = 1;
  c[f][e][h] = -1;
  std::vector<std::string> labels{"e", "h", "f"};
  Poly casimir = parse_poly("h^2 + 4*e*f", labels);
  return LieAlgebraData(std::move(labels), std::move(c), {casimir});
}

Poly LieAlgebraData::ad(std::size_t i, const Poly& s) const {
  const std::size_t d = dim();
  if (s.nvars() != d) throw DimensionError("element of S(g) over the wrong number of variables");
  Poly out(d);
  for (std::size_t j = 0; j < d; ++j) {
    PolyBuilder img(d);
    for (std::size_t k = 0; k < d; ++k) img.add(Monomial::variable(k), c_[i][j][k]);
    const Poly bracket = img.build();
    if (bracket.is_zero()) continue;
    out += partial_derivative(s, j) * bracket;
  }
  return out;
}

bool LieAlgebraData::is_invariant(const Poly& s) const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (!ad(i, s).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------- UEnvElement

UEnvElement UEnvElement::one(std::size_t dim, int order) {
  UEnvElement u(dim, order);
  u.add(Monomial(), Scalar(1));
  return u;
}

UEnvElement UEnvElement::generator(std::size_t dim, int order, std::size_t i) {
  if (i >= dim) throw DimensionError("generator index out of range");
  UEnvElement u(dim, order);
  u.add(Monomial::variable(i), Scalar(1));
  return u;
}

void UEnvElement::add(const Monomial& m, const HbarPoly& coeff) {
  auto [it, inserted] = terms_.try_emplace(m, HbarPoly(static_cast<std::size_t>(order_) + 1));
  auto& slot = it->second;
  for (std::size_t j = 0; j < coeff.size() && j < slot.size(); ++j) slot[j] += coeff[j];
  if (std::all_of(slot.begin(), slot.end(), [](const Scalar& s) { return qcenter::is_zero(s); })) terms_.erase(it);
}

void UEnvElement::add(const Monomial& m, const Scalar& c, int hbar_power) {
  if (hbar_power > order_) return;
  HbarPoly p(static_cast<std::size_t>(hbar_power) + 1);
  p[static_cast<std::size_t>(hbar_power)] = c;
  add(m, p);
}

UEnvElement& UEnvElement::operator+=(const UEnvElement& o) {
  if (o.dim_ != dim_ || o.order_ != order_) throw DimensionError("enveloping algebra elements are incompatible");
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

UEnvElement& UEnvElement::operator-=(const UEnvElement& o) {
  if (o.dim_ != dim_ || o.order_ != order_) throw DimensionError("enveloping algebra elements are incompatible");
  for (const auto& [m, c] : o.terms_) {
    HbarPoly neg = c;
    for (auto& s : neg) s = -s;
    add(m, neg);
  }
  return *this;
}

UEnvElement& UEnvElement::operator*=(const Scalar& c) {
  if (qcenter::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_)
    for (auto& s : coeff) s *= c;
  return *this;
}

UEnvElement UEnvElement::hbar_shifted(int j) const {
  UEnvElement r(dim_, order_);
  for (const auto& [m, coeff] : terms_) {
    HbarPoly shifted(coeff.size());
    for (std::size_t i = 0; i + static_cast<std::size_t>(j) < coeff.size(); ++i) shifted[i + j] = coeff[i];
    r.add(m, shifted);
  }
  return r;
}

std::string UEnvElement::format(std::span<const std::string> labels) const {
  std::vector<std::string> names(labels.begin(), labels.end());
  names.emplace_back("hbar");
  PolyBuilder b(dim_ + 1);
  for (const auto& [m, coeff] : terms_)
    for (std::size_t j = 0; j < coeff.size(); ++j)
      b.add(m * Monomial::variable(dim_, static_cast<unsigned>(j)), coeff[j]);
  return to_string(b.build(), names);
}

// ---------------------------------------------------------------- EnvelopingAlgebra

struct EnvelopingAlgebra::Memo {
  std::mutex mutex;
  std::map<std::vector<std::uint8_t>, UEnvElement> words;
};

EnvelopingAlgebra::EnvelopingAlgebra(LieAlgebraData lie, int order)
    : lie_(std::move(lie)), order_(order), memo_(std::make_shared<Memo>()) {
  if (order_ < 0) throw PreconditionError("negative truncation order");
}

void EnvelopingAlgebra::require(const UEnvElement& a) const {
  if (a.dim() != lie_.dim() || a.order() != order_)
    throw DimensionError("enveloping algebra element does not match the algebra or truncation");
}

UEnvElement EnvelopingAlgebra::normal_form(const std::vector<std::uint8_t>& word, RewriteOrder strategy,
                                           std::uint64_t& state) const {
  const bool memoize = strategy == RewriteOrder::leftmost;
  if (memoize) {
    std::lock_guard lock(memo_->mutex);
    if (auto it = memo_->words.find(word); it != memo_->words.end()) return it->second;
  }
  std::vector<std::size_t> descents;
  for (std::size_t p = 0; p + 1 < word.size(); ++p)
    if (word[p] > word[p + 1]) descents.push_back(p);

  UEnvElement result(lie_.dim(), order_);
  if (descents.empty()) {
    result.add(word_monomial(word), Scalar(1));
  } else {
    std::size_t p = descents.front();
    if (strategy == RewriteOrder::rightmost) p = descents.back();
    if (strategy == RewriteOrder::random) p = descents[splitmix(state) % descents.size()];
    const std::size_t j = word[p], i = word[p + 1];
    std::vector<std::uint8_t> swapped = word;
    std::swap(swapped[p], swapped[p + 1]);
    result = normal_form(swapped, strategy, state);
    if (order_ >= 1) {
      for (std::size_t k = 0; k < lie_.dim(); ++k) {
        const Scalar& c = lie_.constant(j, i, k);
        if (is_zero(c)) continue;
        std::vector<std::uint8_t> shorter = word;
        shorter[p] = static_cast<std::uint8_t>(k);
        shorter.erase(shorter.begin() + static_cast<std::ptrdiff_t>(p) + 1);
        result += normal_form(shorter, strategy, state).hbar_shifted(1) * c;
      }
    }
  }
  if (memoize) {
    std::lock_guard lock(memo_->mutex);
    memo_->words.emplace(word, result);
  }
  return result;
}

UEnvElement EnvelopingAlgebra::normalize(std::span<const std::size_t> word, const UEnvElement::HbarPoly& coeff,
                                         RewriteOrder strategy, std::uint64_t seed) const {
  std::vector<std::uint8_t> w;
  for (auto i : word) {
    if (i >= lie_.dim()) throw PreconditionError("word index " + std::to_string(i) + " out of range");
    w.push_back(static_cast<std::uint8_t>(i));
  }
  std::uint64_t state = seed;
  return scaled(normal_form(w, strategy, state), coeff);
}

UEnvElement EnvelopingAlgebra::mul(const UEnvElement& a, const UEnvElement& b) const {
  require(a);
  require(b);
  UEnvElement out(lie_.dim(), order_);
  std::uint64_t state = 0;
  for (const auto& [ma, ca] : a.terms()) {
    auto wa = expand_word(ma, lie_.dim());
    for (const auto& [mb, cb] : b.terms()) {
      auto w = wa;
      auto wb = expand_word(mb, lie_.dim());
      w.insert(w.end(), wb.begin(), wb.end());
      out += scaled(normal_form(w, RewriteOrder::leftmost, state), hbar_mul(ca, cb, order_));
    }
  }
  return out;
}

UEnvElement EnvelopingAlgebra::symmetrize(const Poly& s) const {
  if (s.nvars() != lie_.dim()) throw DimensionError("symmetrize: element of S(g) over the wrong number of variables");
  UEnvElement out(lie_.dim(), order_);
  std::uint64_t state = 0;
  for (const auto& [m, c] : s.terms()) {
    auto w = expand_word(m, lie_.dim());
    UEnvElement sum(lie_.dim(), order_);
    std::size_t count = 0;
    do {
      sum += normal_form(w, RewriteOrder::leftmost, state);
      ++count;
    } while (std::next_permutation(w.begin(), w.end()));
    out += sum * (c / Scalar(static_cast<unsigned long>(count)));
  }
  return out;
}

UEnvElement pbw_normalize(const EnvelopingAlgebra& U, std::span<const std::size_t> word,
                          const UEnvElement::HbarPoly& coeff) {
  return U.normalize(word, coeff);
}

UEnvElement u_mul(const EnvelopingAlgebra& U, const UEnvElement& a, const UEnvElement& b) { return U.mul(a, b); }

UEnvElement symmetrize(const EnvelopingAlgebra& U, const Poly& s) { return U.symmetrize(s); }

Poly classical_limit(const UEnvElement& a) {
  PolyBuilder b(a.dim());
  for (const auto& [m, coeff] : a.terms()) b.add(m, coeff.front());
  return b.build();
}

bool adjoint_invariant_check(const EnvelopingAlgebra& U, const UEnvElement& a) {
  for (std::size_t i = 0; i < U.lie().dim(); ++i) {
    const UEnvElement x = U.generator(i);
    if (!(U.mul(x, a) - U.mul(a, x)).is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------- HamiltonianAction

HamiltonianAction::HamiltonianAction(LieAlgebraData lie, StarProduct star, std::vector<Poly> classical,
                                     std::optional<std::vector<HSeries>> quantum)
    : lie_(std::move(lie)), star_(std::move(star)), H_(std::move(classical)) {
  const std::size_t d = lie_.dim();
  if (H_.size() != d) throw DimensionError("need one hamiltonian per basis element of g");
  for (const auto& h : H_)
    if (h.nvars() != star_.space().dim()) throw DimensionError("hamiltonian over the wrong space");
  if (quantum) {
    Hhat_ = std::move(*quantum);
    if (Hhat_.size() != d) throw DimensionError("need one quantum hamiltonian per basis element of g");
    for (const auto& h : Hhat_)
      if (h.nvars() != star_.space().dim() || h.order() != star_.order())
        throw DimensionError("quantum hamiltonian over the wrong space or truncation");
  } else {
    for (const auto& h : H_) Hhat_.push_back(star_.embed(h));
  }
  for (std::size_t i = 0; i < d && !bracket_defect_; ++i)
    for (std::size_t j = i + 1; j < d && !bracket_defect_; ++j) {
      HSeries rhs(star_.space().dim(), star_.order());
      for (std::size_t k = 0; k < d; ++k)
        if (!is_zero(lie_.constant(i, j, k))) rhs += Hhat_[k] * lie_.constant(i, j, k);
      const HSeries defect = star_.star_commutator(Hhat_[i], Hhat_[j]) - rhs.hbar_shifted(1);
      if (auto m = defect.lowest_order())
        bracket_defect_ = "quantum bracket [" + lie_.labels()[i] + ", " + lie_.labels()[j] + "] fails at hbar^" +
                          std::to_string(*m);
    }
}

HamiltonianAction HamiltonianAction::with_order(int order) const {
  std::vector<HSeries> q;
  for (const auto& h : Hhat_) q.push_back(h.truncated(order));
  return HamiltonianAction(lie_, star_.with_order(order), H_, std::move(q));
}

Poly HamiltonianAction::pullback(const Poly& z) const {
  if (z.nvars() != lie_.dim()) throw DimensionError("pullback: element of S(g) over the wrong number of variables");
  if (lie_.dim() == 0) return Poly::constant(space().dim(), z.constant_term());
  return substitute(z, H_);
}

std::vector<std::string> validate_action(const HamiltonianAction& act, int test_degree) {
  std::vector<std::string> issues;
  const auto& lie = act.lie();
  const auto& star = act.star();
  const std::size_t d = lie.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      Poly rhs = act.space().zero();
      for (std::size_t k = 0; k < d; ++k) rhs += act.classical()[k] * lie.constant(i, j, k);
      if (star.poisson(act.classical()[i], act.classical()[j]) != rhs)
        issues.push_back("equivariance fails: {H_" + lie.labels()[i] + ", H_" + lie.labels()[j] +
                         "} != sum_k c^k H_k");
    }
  for (std::size_t i = 0; i < d; ++i)
    if (act.quantum()[i][0] != act.classical()[i])
      issues.push_back("quantum hamiltonian of " + lie.labels()[i] + " does not reduce to H mod hbar");
  if (act.quantum_bracket_defect()) issues.push_back(*act.quantum_bracket_defect());
  for (int deg = 0; deg <= test_degree; ++deg)
    for (const auto& m : monomials_of_degree(act.space().dim(), static_cast<unsigned>(deg))) {
      const Poly f = Poly::term(act.space().dim(), m, Scalar(1));
      for (std::size_t i = 0; i < d; ++i) {
        HSeries r = star.star_commutator(act.quantum()[i], star.embed(f));
        r -= star.embed(act.velocity(i, f)).hbar_shifted(1);
        if (auto o = r.lowest_order())
          issues.push_back("quantum hamiltonian identity fails for " + lie.labels()[i] + " on " +
                           act.space().format(f) + " at hbar^" + std::to_string(*o));
      }
    }
  return issues;
}

HSeries comoment(const UEnvElement& a, const HamiltonianAction& act) {
  if (a.dim() != act.lie().dim()) throw DimensionError("comoment: element of a different enveloping algebra");
  if (a.order() != act.order())
    throw DimensionError("comoment: truncation " + std::to_string(a.order()) + " does not match action order " +
                         std::to_string(act.order()));
  if (act.quantum_bracket_defect()) throw InvalidActionError(*act.quantum_bracket_defect());
  const auto& star = act.star();
  HSeries out(act.space().dim(), act.order());
  std::map<std::vector<std::uint8_t>, HSeries> products;
  for (const auto& [m, coeff] : a.terms()) {
    const auto word = expand_word(m, a.dim());
    auto it = products.find(word);
    if (it == products.end()) {
      HSeries prod = star.unit();
      for (auto i : word) prod = star.star(prod, act.quantum()[i]);
      it = products.emplace(word, std::move(prod)).first;
    }
    for (std::size_t j = 0; j < coeff.size(); ++j)
      if (!is_zero(coeff[j])) out += it->second.hbar_shifted(static_cast<int>(j)) * coeff[j];
  }
  return out;
}

bool Eq25Report::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const Eq25Row& r) { return r.passed; });
}

Eq25Report check_eq25(const HamiltonianAction& act, std::span<const Poly> samples) {
  Eq25Report report;
  report.order = act.order();
  const auto& star = act.star();
  for (std::size_t s = 0; s < samples.size(); ++s)
    for (std::size_t i = 0; i < act.lie().dim(); ++i) {
      HSeries r = star.star_commutator(act.quantum()[i], star.embed(samples[s]));
      r -= star.embed(act.velocity(i, samples[s])).hbar_shifted(1);
      Eq25Row row{i, s, true, r.lowest_order()};
      row.passed = !row.residual_order.has_value();
      report.rows.push_back(row);
    }
  return report;
}

Diagram1Report check_diagram1(const Poly& z, const HamiltonianAction& act) {
  if (!act.lie().is_invariant(z))
    throw PreconditionError("diagram check needs an ad-invariant element, got " + act.lie().format(z));
  EnvelopingAlgebra U(act.lie(), act.order());
  const UEnvElement s = U.symmetrize(z);
  Diagram1Report r;
  r.z = z;
  r.section_residual = classical_limit(s) - z;
  r.pullback_residual = comoment(s, act)[0] - act.pullback(z);
  r.section = r.section_residual.is_zero();
  r.pullback = r.pullback_residual.is_zero();
  return r;
}

}  // namespace qcenter
