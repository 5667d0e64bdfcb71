#include <doctest.h>

#include "oracle.hpp"
#include "qcenter/errors.hpp"
#include "qcenter/starprod.hpp"

using namespace qcenter;

namespace {

const SymplecticSpace k2 = SymplecticSpace::standard(1);
const SymplecticSpace k4 = SymplecticSpace::standard(2);

HSeries H(const SymplecticSpace& s, const char* text, int order) {
  return parse_hseries(text, s.variable_names(), order);
}

}  // namespace

TEST_CASE("moyal examples") {
  StarProduct star(k2, 4);
  CHECK(star.moyal(k2.parse("q1"), k2.parse("p1")) == H(k2, "q1*p1 + hbar/2", 4));
  const Poly f = k2.parse("3*q1^2*p1 - p1 + 2");
  CHECK(star.moyal(k2.one(), f) == star.embed(f));
  CHECK(star.moyal(f, k2.one()) == star.embed(f));
  CHECK(star.moyal(k2.parse("q1*p1"), k2.parse("q1*p1")) == H(k2, "q1^2*p1^2 - hbar^2/4", 4));
  CHECK_THROWS_AS(star.moyal(k2.parse("q1"), k4.parse("q1")), DimensionError);
}

TEST_CASE("moyal agrees with the binomial-expansion oracle") {
  oracle::Rng rng(21);
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto space = SymplecticSpace::standard(n);
    for (int trial = 0; trial < 15; ++trial) {
      const Poly f = oracle::random_poly(2 * n, 5, 3, rng);
      const Poly g = oracle::random_poly(2 * n, 5, 3, rng);
      const auto exact = StarProduct(space, 10).moyal_exact(f, g);
      const auto ref = oracle::moyal(oracle::from(f), oracle::from(g), n, 10);
      for (int l = 0; l <= 10; ++l) {
        const Poly mine = l < static_cast<int>(exact.size()) ? exact[static_cast<std::size_t>(l)] : space.zero();
        CHECK(oracle::from(mine) == ref[static_cast<std::size_t>(l)]);
      }
    }
  }
}

TEST_CASE("star on series") {
  StarProduct star(k2, 3);
  const Poly f = k2.parse("q1^2 + p1"), g = k2.parse("q1*p1^2");
  CHECK(star.star(star.embed(f), star.embed(g)) == star.moyal(f, g));
  CHECK(star.star(star.embed(f).hbar_shifted(1), star.embed(g)) == star.moyal(f, g).hbar_shifted(1));
  const HSeries F = H(k2, "q1 + hbar*p1^2 + hbar^3*q1", 3);
  CHECK(star.star(F, star.unit()) == F);
  CHECK(star.star(star.unit(), F) == F);
  CHECK_THROWS_AS(star.star(F, HSeries(2, 4)), DimensionError);
  // truncation at N agrees with truncating a longer computation
  StarProduct longer(k2, 6);
  const HSeries G = H(k2, "p1^3 + hbar*q1^2*p1", 6);
  CHECK(star.star(F, G.truncated(3)) == longer.star(F.truncated(6), G).truncated(3));
}

TEST_CASE("poisson bracket") {
  StarProduct star(k4, 2);
  CHECK(star.poisson(k4.parse("q1"), k4.parse("p1")) == k4.one());
  CHECK(star.poisson(k4.parse("q1"), k4.parse("q2")).is_zero());
  CHECK(star.poisson(k4.parse("q1*p1"), k4.parse("q1")) == k4.parse("-q1"));
  oracle::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Poly f = oracle::random_poly(4, 4, 3, rng), g = oracle::random_poly(4, 4, 3, rng),
               h = oracle::random_poly(4, 4, 3, rng);
    CHECK(oracle::from(star.poisson(f, g)) == oracle::bracket(oracle::from(f), oracle::from(g), 2));
    CHECK(star.poisson(f, g) == -star.poisson(g, f));
    CHECK(star.poisson(f, g * h) == star.poisson(f, g) * h + g * star.poisson(f, h));
    const Poly jac = star.poisson(f, star.poisson(g, h)) + star.poisson(g, star.poisson(h, f)) +
                     star.poisson(h, star.poisson(f, g));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("star commutator") {
  StarProduct star(k4, 5);
  CHECK(star.star_commutator(star.embed(k4.q(0)), star.embed(k4.p(0))) == H(k4, "hbar", 5));
  const HSeries F = H(k4, "q1*p2^2 + hbar*q2", 5);
  CHECK(star.star_commutator(F, F).is_zero());
  CHECK(star.star_commutator(star.embed(k4.q(0)), star.embed(k4.q(1))).is_zero());
  oracle::Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const Poly f = oracle::random_poly(4, 5, 3, rng), g = oracle::random_poly(4, 5, 3, rng);
    const HSeries c = star.star_commutator(star.embed(f), star.embed(g));
    CHECK(c == star.commutator(f, g));
    CHECK(c[0].is_zero());
    CHECK(c[1] == star.poisson(f, g));
  }
}

TEST_CASE("general constant bivector") {
  // P[q1,p1] = 2: q1 * p1 = q1 p1 + hbar
  std::vector<std::vector<Scalar>> P{{0, 2}, {-2, 0}};
  SymplecticSpace s(1, P, {-1, -1}, 2);
  StarProduct star(s, 3);
  CHECK(star.moyal(s.q(0), s.p(0)) == H(s, "q1*p1 + hbar", 3));
  oracle::Rng rng(2);
  std::vector<PolyTriple> samples;
  for (int i = 0; i < 5; ++i)
    samples.push_back({oracle::random_poly(2, 4, 3, rng), oracle::random_poly(2, 4, 3, rng),
                       oracle::random_poly(2, 4, 3, rng)});
  CHECK(check_axioms(star, samples).passed());
}

TEST_CASE("check_axioms examples") {
  StarProduct star(k4, 10);
  std::vector<PolyTriple> samples{{k4.parse("q1"), k4.parse("p1"), k4.parse("q1*p1")},
                                  {k4.one(), k4.parse("q1^2 + p2"), k4.parse("p1*q2")}};
  const auto rep = check_axioms(star, samples);
  CHECK(rep.passed());
  CHECK(rep.samples.size() == 2);
  // associator of (q1, p1, q1 p1) vanishes, checked against the oracle
  const auto q = oracle::from(k4.parse("q1")), p = oracle::from(k4.parse("p1")), qp = oracle::from(k4.parse("q1*p1"));
  auto times = [](const std::vector<oracle::OPoly>& A, const std::vector<oracle::OPoly>& B) {
    std::vector<oracle::OPoly> out(8);
    for (std::size_t i = 0; i < A.size(); ++i)
      for (std::size_t j = 0; j < B.size(); ++j) {
        const auto part = oracle::moyal(A[i], B[j], 2, 4);
        for (std::size_t l = 0; l < part.size() && i + j + l < out.size(); ++l)
          out[i + j + l] = oracle::add(out[i + j + l], part[l]);
      }
    return out;
  };
  CHECK(times(times({q}, {p}), {qp}) == times({q}, times({p}, {qp})));
}

TEST_CASE("check_homogeneity") {
  StarProduct star(k2, 4);
  std::vector<std::pair<Poly, Poly>> samples{{k2.q(0), k2.p(0)}};
  CHECK(check_homogeneity(star, samples).passed());
  CHECK(star.bidifferential(1, k2.q(0), k2.p(0)) == Poly::constant(2, Scalar(1, 2)));
  // D_1 = 1/2 has weight 0 = (-1) + (-1) + 2
  CHECK(grade_decompose(star.bidifferential(1, k2.q(0), k2.p(0)), k2.weights()).begin()->first == 0);
  std::vector<std::pair<Poly, Poly>> with_zero{{k2.zero(), k2.q(0)}};
  CHECK(check_homogeneity(star, with_zero).passed());
  std::vector<std::pair<Poly, Poly>> bad{{k2.parse("q1 + q1*p1"), k2.q(0)}};
  CHECK_THROWS_AS(check_homogeneity(star, bad), PreconditionError);
  // torus weights also grade the product when P pairs opposite weights
  SymplecticSpace torus(1, k2.bivector(), {1, -1}, 0);
  StarProduct ts(torus, 4);
  std::vector<std::pair<Poly, Poly>> tsamples{{torus.parse("q1^2"), torus.parse("p1^3")}};
  CHECK(check_homogeneity(ts, tsamples).passed());
}

TEST_CASE("continuity: order m ignores perturbations above m") {
  StarProduct star(k2, 5);
  oracle::Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    HSeries F(2, 5), G(2, 5);
    for (int m = 0; m <= 5; ++m) {
      F[m] = oracle::random_poly(2, 3, 2, rng);
      G[m] = oracle::random_poly(2, 3, 2, rng);
    }
    const HSeries base = star.star(F, G);
    for (int m = 0; m < 5; ++m) {
      HSeries F2 = F, G2 = G;
      F2[m + 1] += oracle::random_poly(2, 3, 2, rng);
      G2[m + 1] += oracle::random_poly(2, 3, 2, rng);
      const HSeries pert = star.star(F2, G2);
      for (int j = 0; j <= m; ++j) CHECK(pert[j] == base[j]);
    }
  }
}
