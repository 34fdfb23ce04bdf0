#pragma once

#include "mpa/presentation.hpp"

namespace mpa {

struct UnsupportedLetter : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckItem {
  std::string name;
  bool pass = true;
  std::string residual; // canonical normal form of the failed difference
};

struct CheckReport {
  std::vector<CheckItem> items;
  bool all_pass = true;
  void add(const std::string &name, bool pass, const std::string &residual = "") {
    items.push_back({name, pass, residual});
    if (!pass) all_pass = false;
  }
};

// Which side the q^{-1} of theta(a) = q^{-1} l_a a r_{a*} multiplies on. With
// vertex-dependent q the two readings differ by conjugation by q; the
// opposite-order theta must take the opposite side for theta_>= o theta to be
// the identity on the nose.
enum class QSide { Left, Right };

// A doubled quiver with a total arrow ordering and the derived products
// rho, l_a, r_a; hosts the algebra map theta(a) = q^{-1} l_a a r_{a*}.
class OrderedContext {
public:
  OrderedContext(const Presentation &p, std::vector<int> order, QSide qside = QSide::Left);

  static OrderedContext engine_order(const Presentation &p);
  OrderedContext reversed() const; // reverses the order and flips the q side

  const std::vector<int> &order() const { return order_; }

  // g_d^{sign} as an element over the presentation letters (x letters).
  Element g_el(int d, int sign) const;
  // 1 + d d* over arrow letters only (no localization), for the raw checks.
  Element g_free(int d) const;

  Element l_el(int d) const;     // prod_{b < d} g_b^{eps(b)}
  Element r_prod(int d) const;   // prod_{b > d} g_b^{eps(b)}
  Element l_inv(int d) const;
  Element r_inv(int d) const;
  Element rho() const;

  Element theta(const Element &e) const;

private:
  const Presentation *p_;
  std::vector<int> order_;
  std::vector<int> rank_;
  QSide qside_;
};

CheckReport verify_theta_properties(const Presentation &p);
// Order-generic variant for pure cycles: checks with the given ascending
// order and its reverse.
CheckReport verify_theta_properties_with_order(const Presentation &p,
                                               const std::vector<int> &order);
CheckReport verify_local_identities(const Presentation &p);
CheckReport verify_quantum_weyl(const std::optional<Rational> &qval);

} // namespace mpa
