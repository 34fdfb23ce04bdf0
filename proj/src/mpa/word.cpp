#include "mpa/word.hpp"

#include <sstream>

namespace mpa {

Letter arrow_letter(const DoubledQuiver &dq, int d) {
  return Letter{LetterKind::Arr, d, 0, dq.tail(d), dq.head(d)};
}

Letter x_letter(const DoubledQuiver &dq, int d, int sign) {
  return Letter{LetterKind::X, d, sign, dq.tail(d), dq.tail(d)};
}

Letter xbar_letter(const DoubledQuiver &dq, int d, int sign) {
  return Letter{LetterKind::XBar, d, sign, dq.tail(d), dq.tail(d)};
}

Letter r_letter(VertexId v, bool prime) {
  return Letter{prime ? LetterKind::RPrime : LetterKind::R, -1, 0, v, v};
}

void Word::validate() const {
  VertexId at = start;
  for (const Letter &l : letters) {
    if (l.from != at)
      throw RoutingMismatch("word: letter does not continue the route");
    at = l.to;
  }
}

std::optional<Word> concat(const Word &w1, const Word &w2) {
  if (w1.end() != w2.start) return std::nullopt;
  Word w(w1.start, w1.letters);
  w.letters.insert(w.letters.end(), w2.letters.begin(), w2.letters.end());
  return w;
}

void Element::add(const Word &w, const Laurent &c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Element Element::operator-() const {
  Element r(nvars_);
  for (const auto &[w, c] : terms_) r.terms_.emplace(w, -c);
  return r;
}

Element operator+(const Element &a, const Element &b) {
  Element r = a;
  for (const auto &[w, c] : b.terms_) r.add(w, c);
  return r;
}

Element operator-(const Element &a, const Element &b) { return a + (-b); }

Element operator*(const Element &a, const Element &b) {
  Element r(a.nvars_);
  for (const auto &[wa, ca] : a.terms_)
    for (const auto &[wb, cb] : b.terms_)
      if (auto w = concat(wa, wb)) r.add(*w, ca * cb);
  return r;
}

Element operator*(const Laurent &c, const Element &a) {
  Element r(a.nvars());
  for (const auto &[w, cw] : a.terms()) r.add(w, c * cw);
  return r;
}

Element Element::substitute(const Letter &letter, const Element &replacement) const {
  for (const auto &[w, c] : replacement.terms())
    if (w.start != letter.from || w.end() != letter.to)
      throw RoutingMismatch("substitute: replacement does not route like the letter");
  Element out(nvars_);
  for (const auto &[w, c] : terms_) {
    Element pieces = Element::from_word(nvars_, Word(w.start), Laurent::one(nvars_));
    for (const Letter &l : w.letters) {
      Element next =
          (l == letter) ? replacement
                        : Element::from_word(nvars_, Word(l.from, {l}), Laurent::one(nvars_));
      pieces *= next;
    }
    out += c * pieces;
  }
  return out;
}

Element Element::component(VertexId i, VertexId j) const {
  Element r(nvars_);
  for (const auto &[w, c] : terms_)
    if (w.start == i && w.end() == j) r.add(w, c);
  return r;
}

Element Element::left_component(VertexId i) const {
  Element r(nvars_);
  for (const auto &[w, c] : terms_)
    if (w.start == i) r.add(w, c);
  return r;
}

void Element::validate() const {
  for (const auto &[w, c] : terms_) {
    w.validate();
    if (c.is_zero()) throw std::logic_error("element: stored zero coefficient");
  }
}

std::string letter_str(const DoubledQuiver &dq, const Letter &l) {
  switch (l.kind) {
  case LetterKind::Arr:
    return dq.name(l.d);
  case LetterKind::X:
    return (l.sign > 0 ? "x[" : "xinv[") + dq.name(l.d) + "]";
  case LetterKind::XBar:
    return (l.sign > 0 ? "xbar[" : "xbarinv[") + dq.name(l.d) + "]";
  case LetterKind::R:
    return "r";
  case LetterKind::RPrime:
    return "r'";
  }
  return "?";
}

std::string word_str(const DoubledQuiver &dq, const Word &w) {
  if (w.is_idempotent()) return "e" + std::to_string(w.start);
  std::ostringstream os;
  os << "e" << w.start;
  for (const Letter &l : w.letters) os << "*" << letter_str(dq, l);
  return os.str();
}

std::string element_str(const DoubledQuiver &dq, const Element &e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[w, c] : e.terms()) {
    if (!first) os << " + ";
    first = false;
    if (c.is_one())
      os << word_str(dq, w);
    else
      os << "(" << c.str() << ")*" << word_str(dq, w);
  }
  return os.str();
}

} // namespace mpa
