#pragma once

#include "mpa/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpa {

struct NotAMonomial : std::domain_error {
  using std::domain_error::domain_error;
};
struct ZeroCoefficient : std::domain_error {
  using std::domain_error::domain_error;
};
struct ZeroParameter : std::domain_error {
  using std::domain_error::domain_error;
};

// Laurent polynomial over Q in the vertex parameters q_0..q_{nvars-1}.
// Exponent vectors are dense; the term map is kept canonical (sorted keys,
// no zero coefficients), so operator== is structural equality.
class Laurent {
public:
  using Exponents = std::vector<int>;

  Laurent() : nvars_(0) {}
  explicit Laurent(int nvars) : nvars_(nvars) {}

  static Laurent zero(int nvars) { return Laurent(nvars); }
  static Laurent constant(int nvars, const Rational &c) {
    Laurent s(nvars);
    if (!c.is_zero()) s.terms_[Exponents(static_cast<size_t>(nvars), 0)] = c;
    return s;
  }
  static Laurent one(int nvars) { return constant(nvars, Rational(1)); }
  // c * q_var^power
  static Laurent monomial(int nvars, int var, int power, const Rational &c = Rational(1));

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  const std::map<Exponents, Rational> &terms() const { return terms_; }

  Laurent operator-() const;
  friend Laurent operator+(const Laurent &a, const Laurent &b);
  friend Laurent operator-(const Laurent &a, const Laurent &b);
  friend Laurent operator*(const Laurent &a, const Laurent &b);
  Laurent &operator+=(const Laurent &b) { return *this = *this + b; }
  Laurent &operator*=(const Laurent &b) { return *this = *this * b; }

  friend bool operator==(const Laurent &a, const Laurent &b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Laurent &a, const Laurent &b) { return !(a == b); }
  friend bool operator<(const Laurent &a, const Laurent &b);

  // Multiplicative inverse of a one-term scalar: exponents negated,
  // coefficient inverted. Throws NotAMonomial / ZeroCoefficient.
  Laurent invert_monomial() const;

  // Exact substitution q_i := assignment[i]; every value must be nonzero.
  Rational eval(const std::vector<Rational> &assignment) const;

  std::string str() const;

  // Grammar: signed rational, q<i> with optional ^<int>, '*' products,
  // '+'/'-' sums, e.g. "-q0 - q0^-1", "3/2*q1".
  static Laurent parse(const std::string &text, int nvars);

private:
  void add_term(const Exponents &e, const Rational &c);

  int nvars_;
  std::map<Exponents, Rational> terms_;
};

std::ostream &operator<<(std::ostream &os, const Laurent &s);

} // namespace mpa
