#pragma once

#include "mpa/laurent.hpp"
#include "mpa/quiver.hpp"

#include <map>
#include <string>
#include <vector>

namespace mpa {

struct RoutingMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class LetterKind : unsigned char {
  Arr,   // a doubled arrow, routes t(d) -> h(d)
  X,     // x_d^{sign} = (1 + d d*)^{sign} loop component at t(d)
  XBar,  // xbar_d^{sign} = x_d^{sign} - 1, loop at t(d)
  R,     // relation letter, loop at each supported vertex
  RPrime // r' = (q+r)^{-1} - q^{-1}, loop at each supported vertex
};

struct Letter {
  LetterKind kind = LetterKind::Arr;
  int d = -1;      // doubled arrow id; -1 for R/RPrime
  int sign = 0;    // +1/-1 for X/XBar
  VertexId from = 0;
  VertexId to = 0;

  bool operator==(const Letter &o) const {
    return kind == o.kind && d == o.d && sign == o.sign && from == o.from && to == o.to;
  }
  bool operator!=(const Letter &o) const { return !(*this == o); }
  bool operator<(const Letter &o) const {
    if (kind != o.kind) return kind < o.kind;
    if (d != o.d) return d < o.d;
    if (sign != o.sign) return sign < o.sign;
    if (from != o.from) return from < o.from;
    return to < o.to;
  }
  bool is_loop() const { return from == to; }
};

Letter arrow_letter(const DoubledQuiver &dq, int d);
Letter x_letter(const DoubledQuiver &dq, int d, int sign);
Letter xbar_letter(const DoubledQuiver &dq, int d, int sign);
Letter r_letter(VertexId v, bool prime);

// A vertex-routed word; empty letter list is the idempotent e_start.
struct Word {
  VertexId start = 0;
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(VertexId v) : start(v) {}
  Word(VertexId v, std::vector<Letter> ls) : start(v), letters(std::move(ls)) {}

  VertexId end() const { return letters.empty() ? start : letters.back().to; }
  size_t size() const { return letters.size(); }
  bool is_idempotent() const { return letters.empty(); }
  void validate() const; // consecutive letters route compatibly

  bool operator==(const Word &o) const { return start == o.start && letters == o.letters; }
  bool operator<(const Word &o) const {
    if (start != o.start) return start < o.start;
    if (letters.size() != o.letters.size()) return letters.size() < o.letters.size();
    return letters < o.letters;
  }
};

// Concatenation; std::nullopt when end(w1) != start(w2) (maps to zero under
// multiplication, not an error).
std::optional<Word> concat(const Word &w1, const Word &w2);

// Finite formal sum of (Laurent, Word), canonical: no zero coefficients,
// words in a fixed deterministic order.
class Element {
public:
  Element() : nvars_(0) {}
  explicit Element(int nvars) : nvars_(nvars) {}

  static Element zero(int nvars) { return Element(nvars); }
  static Element idempotent(int nvars, VertexId v) {
    Element e(nvars);
    e.add(Word(v), Laurent::one(nvars));
    return e;
  }
  static Element from_word(int nvars, const Word &w, const Laurent &c) {
    Element e(nvars);
    e.add(w, c);
    return e;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<Word, Laurent> &terms() const { return terms_; }

  void add(const Word &w, const Laurent &c);

  Element operator-() const;
  friend Element operator+(const Element &a, const Element &b);
  friend Element operator-(const Element &a, const Element &b);
  friend Element operator*(const Element &a, const Element &b); // bilinear concat
  Element &operator+=(const Element &b) { return *this = *this + b; }
  Element &operator-=(const Element &b) { return *this = *this - b; }
  Element &operator*=(const Element &b) { return *this = *this * b; }
  friend Element operator*(const Laurent &c, const Element &a);

  friend bool operator==(const Element &a, const Element &b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Element &a, const Element &b) { return !(a == b); }

  // Every occurrence of `letter` replaced by `replacement`, multilinearly.
  // The replacement's terms must all route from->to matching the letter.
  Element substitute(const Letter &letter, const Element &replacement) const;

  // e_i * this * e_j: the sub-sum of terms routing i -> j.
  Element component(VertexId i, VertexId j) const;
  Element left_component(VertexId i) const;

  void validate() const;

private:
  int nvars_;
  std::map<Word, Laurent> terms_;
};

// Printing uses the doubled quiver for arrow names; barred and inverse x
// letters print as xbar[a]/xinv[a] per the expression grammar.
std::string letter_str(const DoubledQuiver &dq, const Letter &l);
std::string word_str(const DoubledQuiver &dq, const Word &w);
std::string element_str(const DoubledQuiver &dq, const Element &e);

} // namespace mpa
