#include "mpa/laurent.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace mpa {

Laurent Laurent::monomial(int nvars, int var, int power, const Rational &c) {
  Laurent s(nvars);
  if (var < 0 || var >= nvars) throw std::out_of_range("Laurent: variable index");
  if (c.is_zero()) return s;
  Exponents e(static_cast<size_t>(nvars), 0);
  e[static_cast<size_t>(var)] = power;
  s.terms_[e] = c;
  return s;
}

bool Laurent::is_one() const {
  if (terms_.size() != 1) return false;
  const auto &[e, c] = *terms_.begin();
  for (int x : e)
    if (x != 0) return false;
  return c.is_one();
}

bool Laurent::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  for (int x : terms_.begin()->first)
    if (x != 0) return false;
  return true;
}

void Laurent::add_term(const Exponents &e, const Rational &c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Laurent Laurent::operator-() const {
  Laurent r(nvars_);
  for (const auto &[e, c] : terms_) r.terms_[e] = -c;
  return r;
}

Laurent operator+(const Laurent &a, const Laurent &b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("Laurent: nvars mismatch");
  Laurent r = a;
  for (const auto &[e, c] : b.terms_) r.add_term(e, c);
  return r;
}

Laurent operator-(const Laurent &a, const Laurent &b) { return a + (-b); }

Laurent operator*(const Laurent &a, const Laurent &b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("Laurent: nvars mismatch");
  Laurent r(a.nvars_);
  for (const auto &[ea, ca] : a.terms_)
    for (const auto &[eb, cb] : b.terms_) {
      Laurent::Exponents e = ea;
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

bool operator<(const Laurent &a, const Laurent &b) {
  if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
  auto ia = a.terms_.begin(), ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ia == a.terms_.end() && ib != b.terms_.end();
}

Laurent Laurent::invert_monomial() const {
  if (terms_.size() != 1)
    throw NotAMonomial("invert_monomial: scalar has " + std::to_string(terms_.size()) +
                       " terms");
  const auto &[e, c] = *terms_.begin();
  if (c.is_zero()) throw ZeroCoefficient("invert_monomial: zero coefficient");
  Exponents ne = e;
  for (int &x : ne) x = -x;
  Laurent r(nvars_);
  r.terms_[ne] = c.inverse();
  return r;
}

Rational Laurent::eval(const std::vector<Rational> &assignment) const {
  if (static_cast<int>(assignment.size()) != nvars_)
    throw std::invalid_argument("Laurent::eval: assignment size mismatch");
  for (const auto &v : assignment)
    if (v.is_zero()) throw ZeroParameter("Laurent::eval: q must be nonzero at every vertex");
  Rational total(0);
  for (const auto &[e, c] : terms_) {
    Rational term = c;
    for (size_t i = 0; i < e.size(); ++i) {
      int p = e[i];
      Rational base = p >= 0 ? assignment[i] : assignment[i].inverse();
      for (int k = 0; k < (p >= 0 ? p : -p); ++k) term *= base;
    }
    total += term;
  }
  return total;
}

std::string Laurent::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[e, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < Rational(0)) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < Rational(0) ? " - " : " + ");
      if (a < Rational(0)) a = -a;
    }
    first = false;
    bool any_var = false;
    std::ostringstream vars;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (any_var) vars << "*";
      vars << "q" << i;
      if (e[i] != 1) vars << "^" << e[i];
      any_var = true;
    }
    if (!any_var) {
      os << a.str();
    } else if (a.is_one()) {
      os << vars.str();
    } else {
      os << a.str() << "*" << vars.str();
    }
  }
  return os.str();
}

namespace {

struct ScalarLexer {
  const std::string &s;
  size_t pos = 0;
  explicit ScalarLexer(const std::string &text) : s(text) {}
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  long long integer() {
    skip_ws();
    bool neg = accept('-');
    if (!neg) accept('+');
    skip_ws();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      throw std::invalid_argument("Laurent::parse: expected integer in '" + s + "'");
    long long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      v = v * 10 + (s[pos++] - '0');
    return neg ? -v : v;
  }
};

Laurent parse_factor(ScalarLexer &lx, int nvars) {
  if (lx.accept('(')) {
    // nested sums inside products
    std::string rest = lx.s.substr(lx.pos);
    int depth = 1;
    size_t i = 0;
    for (; i < rest.size(); ++i) {
      if (rest[i] == '(') ++depth;
      if (rest[i] == ')' && --depth == 0) break;
    }
    if (depth != 0) throw std::invalid_argument("Laurent::parse: unbalanced parens");
    Laurent inner = Laurent::parse(rest.substr(0, i), nvars);
    lx.pos += i + 1;
    if (lx.accept('^')) {
      long long p = lx.integer();
      if (p < 0) {
        inner = inner.invert_monomial();
        p = -p;
      }
      Laurent out = Laurent::one(nvars);
      for (long long k = 0; k < p; ++k) out *= inner;
      return out;
    }
    return inner;
  }
  char c = lx.peek();
  if (c == 'q') {
    ++lx.pos;
    long long var = lx.integer();
    int power = 1;
    if (lx.accept('^')) power = static_cast<int>(lx.integer());
    return Laurent::monomial(nvars, static_cast<int>(var), power);
  }
  if (std::isdigit(static_cast<unsigned char>(c))) {
    lx.skip_ws();
    size_t start = lx.pos;
    while (lx.pos < lx.s.size() &&
           (std::isdigit(static_cast<unsigned char>(lx.s[lx.pos])) || lx.s[lx.pos] == '/'))
      ++lx.pos;
    return Laurent::constant(nvars, Rational::parse(lx.s.substr(start, lx.pos - start)));
  }
  throw std::invalid_argument("Laurent::parse: unexpected character in '" + lx.s + "'");
}

} // namespace

Laurent Laurent::parse(const std::string &text, int nvars) {
  ScalarLexer lx(text);
  Laurent total(nvars);
  bool first = true;
  while (!lx.eof()) {
    bool neg = false;
    if (lx.accept('-')) {
      neg = true;
    } else if (lx.accept('+')) {
      // explicit plus
    } else if (!first) {
      throw std::invalid_argument("Laurent::parse: expected '+' or '-' in '" + text + "'");
    }
    first = false;
    Laurent term = parse_factor(lx, nvars);
    while (lx.accept('*')) term *= parse_factor(lx, nvars);
    total += neg ? -term : term;
  }
  return total;
}

std::ostream &operator<<(std::ostream &os, const Laurent &s) { return os << s.str(); }

} // namespace mpa
