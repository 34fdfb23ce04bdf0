#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpa/laurent.hpp"

#include <random>

using namespace mpa;

namespace {

Laurent q(int i, int p = 1) { return Laurent::monomial(2, i, p); }

Laurent random_scalar(std::mt19937_64 &rng, int nvars) {
  std::uniform_int_distribution<int> nterms(0, 3), expo(-2, 2), num(-5, 5), den(1, 4);
  Laurent s(nvars);
  int k = nterms(rng);
  for (int t = 0; t < k; ++t) {
    Laurent::Exponents e(static_cast<size_t>(nvars));
    for (int i = 0; i < nvars; ++i) e[static_cast<size_t>(i)] = expo(rng);
    Laurent mono(nvars);
    Rational c(num(rng), den(rng));
    if (c.is_zero()) continue;
    Laurent m = Laurent::constant(nvars, c);
    for (int i = 0; i < nvars; ++i)
      if (e[static_cast<size_t>(i)] != 0)
        m = m * Laurent::monomial(nvars, i, e[static_cast<size_t>(i)]);
    s += m;
  }
  return s;
}

std::vector<Rational> random_assignment(std::mt19937_64 &rng, int nvars) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  std::vector<Rational> vals;
  for (int i = 0; i < nvars; ++i) {
    Rational v(num(rng), den(rng));
    if (v.is_zero()) v = Rational(1, 2);
    vals.push_back(v);
  }
  return vals;
}

} // namespace

TEST_CASE("rational arithmetic basics") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK(Rational::parse("-7/21") == Rational(-1, 3));
  CHECK(Rational(3, 2).inverse() == Rational(2, 3));
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("scalar_arith cancellation and monomial inverse") {
  // add(q_0, -q_0) = 0
  CHECK((q(0) + (-q(0))).is_zero());
  // mul(q_0, q_0^{-1}) = 1
  CHECK((q(0) * q(0, -1)).is_one());
  // the coefficient pair of rr' -> -q r' - q^{-1} r
  Laurent minus_q = -q(0);
  Laurent minus_qinv = -q(0, -1);
  CHECK(minus_q + minus_qinv == Laurent::parse("-q0 - q0^-1", 2));
}

TEST_CASE("scalar_invert_monomial") {
  CHECK(q(0, 2).invert_monomial() == q(0, -2));
  Laurent s = Laurent::constant(2, Rational(3, 2)) * q(1);
  CHECK(s.invert_monomial() == Laurent::constant(2, Rational(2, 3)) * q(1, -1));
  CHECK_THROWS_AS((Laurent::one(2) + q(0)).invert_monomial(), NotAMonomial);
}

TEST_CASE("scalar_eval") {
  Laurent s = q(0) + q(0, -1);
  CHECK(s.eval({Rational(2), Rational(1)}) == Rational(5, 2));
  CHECK(Laurent::one(2).eval({Rational(7), Rational(9)}) == Rational(1));
  Laurent t = -q(0) - q(0, -1);
  CHECK(t.eval({Rational(1), Rational(1)}) == Rational(-2));
  CHECK_THROWS_AS(s.eval({Rational(0), Rational(1)}), ZeroParameter);
}

TEST_CASE("canonical equality: a+b-b = a, 1000 random pairs") {
  std::mt19937_64 rng(20260810);
  for (int i = 0; i < 1000; ++i) {
    Laurent a = random_scalar(rng, 2), b = random_scalar(rng, 2);
    CHECK(a + b - b == a);
  }
}

TEST_CASE("evaluation is a homomorphism, 1000 random pairs") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    Laurent a = random_scalar(rng, 2), b = random_scalar(rng, 2);
    auto v = random_assignment(rng, 2);
    CHECK((a + b).eval(v) == a.eval(v) + b.eval(v));
    CHECK((a * b).eval(v) == a.eval(v) * b.eval(v));
  }
}

TEST_CASE("monomial inverse property suite") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> expo(-3, 3), num(1, 9), den(1, 9), sign(0, 1);
  for (int i = 0; i < 200; ++i) {
    Rational c(num(rng) * (sign(rng) ? 1 : -1), den(rng));
    Laurent m = Laurent::constant(3, c);
    for (int v = 0; v < 3; ++v) {
      int e = expo(rng);
      if (e != 0) m = m * Laurent::monomial(3, v, e);
    }
    CHECK((m * m.invert_monomial()).is_one());
  }
}

TEST_CASE("parse round trip") {
  for (const char *text : {"-q0 - q0^-1", "1 + q0", "3/2*q1", "q0^2*q1^-3 - 2", "0"}) {
    Laurent s = Laurent::parse(text, 2);
    CHECK(Laurent::parse(s.str(), 2) == s);
  }
}
