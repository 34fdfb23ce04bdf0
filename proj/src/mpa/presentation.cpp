#include "mpa/presentation.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace mpa {

std::string flavor_name(Flavor f) {
  switch (f) {
  case Flavor::Cycle:
    return "cycle";
  case Flavor::CycleBarred:
    return "cycle-barred";
  case Flavor::Partial:
    return "partial";
  case Flavor::PartialBarred:
    return "partial-barred";
  case Flavor::Combined:
    return "combined";
  }
  return "?";
}

Laurent Presentation::qpow(VertexId v, int power) const {
  int idx = quiver.vertex_index(v);
  if (qspec) {
    Rational base = (*qspec)[static_cast<size_t>(idx)];
    Rational val(1);
    Rational b = power >= 0 ? base : base.inverse();
    for (int k = 0; k < (power >= 0 ? power : -power); ++k) val *= b;
    return Laurent::constant(nvars, val);
  }
  return Laurent::monomial(nvars, idx, power);
}

Element Presentation::idem(VertexId v) const { return Element::idempotent(nvars, v); }

Element Presentation::letter_word(const Letter &l) const {
  return Element::from_word(nvars, Word(l.from, {l}), Laurent::one(nvars));
}

Element Presentation::arr_el(int d) const { return letter_word(arrow_letter(dq, d)); }

Letter Presentation::x_let(int d, int sign) const {
  return barred[static_cast<size_t>(d)] ? xbar_letter(dq, d, sign) : x_letter(dq, d, sign);
}

Element Presentation::xel(int d, int sign) const {
  Element e = letter_word(x_let(d, sign));
  if (barred[static_cast<size_t>(d)]) e += idem(dq.tail(d));
  return e;
}

Element Presentation::r_el(VertexId v, bool prime) const {
  return letter_word(r_letter(v, prime));
}

Element Presentation::red_el(int d, int sign) const {
  VertexId v = dq.tail(d);
  std::vector<int> before, after; // same-tail arrows on either side of d in the order
  for (int b : dq.out_arrows_ordered(v)) {
    if (b == d) continue;
    if (dq.rank[static_cast<size_t>(b)] < dq.rank[static_cast<size_t>(d)])
      before.push_back(b);
    else
      after.push_back(b);
  }
  Element out = idem(v);
  if (sign > 0) {
    // l_d^{-1} (r+q) r_d^{-1}
    for (auto it = before.rbegin(); it != before.rend(); ++it)
      out *= xel(*it, -dq.epsilon(*it));
    out *= r_el(v, false) + scalar_at(v, 1);
    for (auto it = after.rbegin(); it != after.rend(); ++it) out *= xel(*it, -dq.epsilon(*it));
  } else {
    // r_d (r'+q^{-1}) l_d
    for (int b : after) out *= xel(b, dq.epsilon(b));
    out *= r_el(v, true) + scalar_at(v, -1);
    for (int b : before) out *= xel(b, dq.epsilon(b));
  }
  return out;
}

Element Presentation::rho_complement(VertexId v, int sign) const {
  std::vector<int> arrows;
  for (int d : dq.out_arrows_ordered(v))
    if (complement_set.count(d)) arrows.push_back(d);
  Element out = idem(v);
  if (sign > 0) {
    for (int d : arrows) out *= xel(d, dq.epsilon(d));
  } else {
    for (auto it = arrows.rbegin(); it != arrows.rend(); ++it) out *= xel(*it, -dq.epsilon(*it));
  }
  return out;
}

Element Presentation::agg_a() const {
  Element e(nvars);
  for (const auto &[v, d] : cyc_fwd) e += arr_el(d);
  return e;
}
Element Presentation::agg_astar() const {
  Element e(nvars);
  for (const auto &[v, d] : cyc_fwd) e += arr_el(dq.star(d));
  return e;
}
Element Presentation::agg_x(int sign) const {
  Element e(nvars);
  for (const auto &[v, d] : cyc_fwd) e += xel(d, sign);
  return e;
}
Element Presentation::agg_y(int sign) const {
  Element e(nvars);
  for (const auto &[v, d] : cyc_star) e += xel(d, sign);
  return e;
}
Element Presentation::agg_r(bool prime) const {
  Element e(nvars);
  for (VertexId v : r_support) e += r_el(v, prime);
  return e;
}

Element Presentation::drop_r(const Element &e) const {
  Element out(nvars);
  for (const auto &[w, c] : e.terms()) {
    bool has_r = false;
    for (const Letter &l : w.letters)
      if (l.kind == LetterKind::R || l.kind == LetterKind::RPrime) {
        has_r = true;
        break;
      }
    if (!has_r) out.add(w, c);
  }
  return out;
}

Element Presentation::eliminate_y(const Element &e) const {
  if (cyc_star.empty()) return e;
  std::set<int> stars;
  for (const auto &[v, d] : cyc_star) stars.insert(d);
  auto is_y = [&](const Letter &l) {
    return (l.kind == LetterKind::X || l.kind == LetterKind::XBar) && stars.count(l.d);
  };
  Element current = e;
  for (;;) {
    bool changed = false;
    Element next(nvars);
    for (const auto &[w, c] : current.terms()) {
      size_t k = w.letters.size();
      for (size_t i = 0; i < w.letters.size(); ++i)
        if (is_y(w.letters[i])) {
          k = i;
          break;
        }
      if (k == w.letters.size()) {
        next.add(w, c);
        continue;
      }
      changed = true;
      const Letter y = w.letters[k];
      VertexId v = y.from;
      Element mid(nvars);
      if (k > 0 && w.letters[k - 1].kind == LetterKind::Arr &&
          system.guard_arrows.count(w.letters[k - 1].d)) {
        // a y^s -> x^s a, exact for plain and barred letters alike
        int d = w.letters[k - 1].d;
        Word pre(w.start,
                 std::vector<Letter>(w.letters.begin(), w.letters.begin() + static_cast<long>(k - 1)));
        Word post(y.to, std::vector<Letter>(w.letters.begin() + static_cast<long>(k + 1),
                                            w.letters.end()));
        mid = letter_word(x_let(d, y.sign)) * arr_el(d);
        Element piece = Element::from_word(nvars, pre, c) * mid *
                        Element::from_word(nvars, post, Laurent::one(nvars));
        next += piece;
      } else {
        // substitute via the (possibly perturbed) substitution reductions
        int dv = cyc_fwd.at(v);
        Element full = (y.sign > 0)
                           ? rho_complement(v, +1) * (r_el(v, true) + scalar_at(v, -1)) *
                                 xel(dv, +1)
                           : xel(dv, -1) * (r_el(v, false) + scalar_at(v, 1)) *
                                 rho_complement(v, -1);
        Element repl = barred[static_cast<size_t>(y.d)] ? full - idem(v) : full;
        Word pre(w.start,
                 std::vector<Letter>(w.letters.begin(), w.letters.begin() + static_cast<long>(k)));
        Word post(y.to, std::vector<Letter>(w.letters.begin() + static_cast<long>(k + 1),
                                            w.letters.end()));
        next += Element::from_word(nvars, pre, c) * repl *
                Element::from_word(nvars, post, Laurent::one(nvars));
      }
    }
    current = std::move(next);
    if (!changed) return current;
  }
}

Element Presentation::normal_form(const Element &e, bool lambda_level) const {
  Element nf = system.normalize(eliminate_y(e));
  return lambda_level ? drop_r(nf) : nf;
}

std::set<Letter> Presentation::basis_alphabet(bool lambda_level) const {
  std::set<Letter> out;
  std::set<int> stars;
  for (const auto &[v, d] : cyc_star) stars.insert(d);
  for (const Letter &l : system.alphabet) {
    if ((l.kind == LetterKind::X || l.kind == LetterKind::XBar) && stars.count(l.d))
      continue; // input-only y letters
    if (lambda_level && (l.kind == LetterKind::R || l.kind == LetterKind::RPrime)) continue;
    out.insert(l);
  }
  return out;
}

std::vector<Word> Presentation::enumerate_basis(int max_len, bool lambda_level) const {
  std::set<Letter> inv = basis_alphabet(lambda_level);
  std::map<VertexId, std::vector<Letter>> by_from;
  for (const Letter &l : inv) by_from[l.from].push_back(l);

  std::vector<Word> out;
  std::vector<VertexId> verts = quiver.vertices;
  std::sort(verts.begin(), verts.end());

  // A word is extendable only if it stays irreducible; new matches can only
  // end at the appended letter.
  auto still_irreducible = [&](const Word &w) {
    for (const Rule &r : system.rules) {
      if (r.pattern.size() > w.letters.size()) continue;
      size_t pos = w.letters.size() - r.pattern.size();
      bool ok = true;
      for (size_t k = 0; k < r.pattern.size(); ++k)
        if (!(w.letters[pos + k] == r.pattern[k])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      if (r.guard == GuardKind::NotPrecededByCycleArrow && pos > 0) {
        const Letter &prev = w.letters[pos - 1];
        if (prev.kind == LetterKind::Arr && system.guard_arrows.count(prev.d)) continue;
      }
      return false;
    }
    return true;
  };

  std::vector<Word> stack;
  for (VertexId v : verts) stack.push_back(Word(v));
  while (!stack.empty()) {
    Word w = stack.back();
    stack.pop_back();
    out.push_back(w);
    if (static_cast<int>(w.letters.size()) >= max_len) continue;
    auto it = by_from.find(w.end());
    if (it == by_from.end()) continue;
    for (const Letter &l : it->second) {
      Word w2 = w;
      w2.letters.push_back(l);
      if (still_irreducible(w2)) stack.push_back(w2);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<CycleBasisDescriptor> Presentation::describe_cycle_word(const Word &w) const {
  if (flavor != Flavor::Cycle && flavor != Flavor::CycleBarred) return std::nullopt;
  CycleBasisDescriptor d;
  d.start = w.start;
  size_t i = 0;
  int xsign = 0;
  while (i < w.letters.size() &&
         (w.letters[i].kind == LetterKind::X || w.letters[i].kind == LetterKind::XBar)) {
    if (xsign == 0) xsign = w.letters[i].sign;
    if (w.letters[i].sign != xsign) return std::nullopt;
    d.x_power += w.letters[i].sign;
    ++i;
  }
  bool starred = false;
  bool first = true;
  while (i < w.letters.size()) {
    if (w.letters[i].kind != LetterKind::Arr) return std::nullopt;
    bool is_star = w.letters[i].d >= dq.m;
    if (first) {
      starred = is_star;
      first = false;
    } else if (is_star != starred) {
      return std::nullopt;
    }
    ++d.arrow_count;
    ++i;
  }
  d.starred = starred;
  return d;
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

namespace {

// Full-element version of a pattern: XBar letters stand for x^s - 1, so the
// element they denote is letter + idempotent; all other letters denote
// themselves.
Element pattern_full(const Presentation &p, const std::vector<Letter> &pattern) {
  Element out = p.idem(pattern.front().from);
  for (const Letter &l : pattern) {
    Element e = Element::from_word(p.nvars, Word(l.from, {l}), Laurent::one(p.nvars));
    if (l.kind == LetterKind::XBar) e += p.idem(l.from);
    out *= e;
  }
  return out;
}

// The rule sending `pattern` to its equal-by-identity element: the RHS is
// identity_rhs minus the non-pattern part of the pattern's full element.
void add_rule(Presentation &p, const std::string &family, const std::string &name,
              std::vector<Letter> pattern, const Element &identity_rhs,
              GuardKind guard = GuardKind::None) {
  Element full = pattern_full(p, pattern);
  Word pw(pattern.front().from, pattern);
  Element rhs = identity_rhs - full;
  rhs.add(pw, Laurent::one(p.nvars));
  if (rhs.terms().count(pw))
    throw std::logic_error("rule " + name + ": replacement still contains the pattern");
  Rule r;
  r.name = name;
  r.family = family;
  r.pattern = std::move(pattern);
  r.replacement = std::move(rhs);
  r.guard = guard;
  p.system.rules.push_back(std::move(r));
}

void add_b_rules(Presentation &p) {
  for (VertexId v : p.r_support) {
    Letter r = r_letter(v, false), rp = r_letter(v, true);
    Element rhs = (-p.qpow(v, 1)) * p.r_el(v, true) + (-p.qpow(v, -1)) * p.r_el(v, false);
    add_rule(p, "b1", "b1@" + std::to_string(v), {r, rp}, rhs);
    add_rule(p, "b2", "b2@" + std::to_string(v), {rp, r}, rhs);
  }
}

// Cycle reductions at each cycle vertex; rho_complement is the perturbation
// of Prop 7.7 and collapses to the plain system when the complement is empty.
void add_cycle_rules(Presentation &p) {
  for (VertexId v : p.white) {
    const int d = p.cyc_fwd.at(v);        // a at v
    const int sv = p.cyc_star.at(v);      // a* with tail v
    const VertexId w = p.dq.head(d);      // next vertex around the cycle
    const int dn = p.cyc_fwd.at(w);       // a at w (x at w lives on dn)
    const int dp = p.dq.star(sv);         // a_{v-1}, x at the previous vertex
    const std::string at = "@" + std::to_string(v);

    Element rho_v = p.rho_complement(v, +1);
    Element rho_inv_v = p.rho_complement(v, -1);
    Element rho_w1 = p.rho_complement(w, +1) - p.idem(w);
    Element rp_v = p.r_el(v, true), r_v = p.r_el(v, false);
    Element rp_w = p.r_el(w, true);

    // y at v, fully substituted: y = rho' (r' + q^-1) x
    Element yfull = rho_v * (rp_v + p.scalar_at(v, -1)) * p.xel(d, +1);
    Element yinvfull = p.xel(d, -1) * (r_v + p.scalar_at(v, 1)) * rho_inv_v;

    add_rule(p, "c1", "c1" + at, {p.x_let(d, +1), p.x_let(d, -1)}, p.idem(v));
    add_rule(p, "c2", "c2" + at, {p.x_let(d, -1), p.x_let(d, +1)}, p.idem(v));
    add_rule(p, "c3", "c3" + at, {arrow_letter(p.dq, d), arrow_letter(p.dq, p.dq.star(d))},
             p.xel(d, +1) - p.idem(v));
    add_rule(p, "c4", "c4" + at, {arrow_letter(p.dq, sv), arrow_letter(p.dq, p.dq.star(sv))},
             yfull - p.idem(v));
    add_rule(p, "c5", "c5" + at, {arrow_letter(p.dq, sv), p.x_let(dp, +1)},
             yfull * p.arr_el(sv));
    // a x = q [x a - a (rho'-1)(r'+q^-1) x - a r' x ] at the head vertex
    add_rule(p, "c6", "c6" + at, {arrow_letter(p.dq, d), p.x_let(dn, +1)},
             p.qpow(w, 1) * (p.xel(d, +1) * p.arr_el(d)) +
                 (-p.qpow(w, 1)) *
                     (p.arr_el(d) * rho_w1 * (rp_w + p.scalar_at(w, -1)) * p.xel(dn, +1)) +
                 (-p.qpow(w, 1)) * (p.arr_el(d) * rp_w * p.xel(dn, +1)));
    // a x^-1 = x^-1 a (rho'-1)(r'+q^-1) + x^-1 a r' + q^-1 x^-1 a
    add_rule(p, "c7", "c7" + at, {arrow_letter(p.dq, d), p.x_let(dn, -1)},
             p.xel(d, -1) * p.arr_el(d) * rho_w1 * (rp_w + p.scalar_at(w, -1)) +
                 p.xel(d, -1) * p.arr_el(d) * rp_w +
                 p.qpow(w, -1) * (p.xel(d, -1) * p.arr_el(d)));
    // a* x^-1 = x^-1 (r+q) rho'^-1 a*
    add_rule(p, "c8", "c8" + at, {arrow_letter(p.dq, sv), p.x_let(dp, -1)},
             p.xel(d, -1) * (r_v + p.scalar_at(v, 1)) * rho_inv_v * p.arr_el(sv));
    add_rule(p, "c9", "c9" + at, {p.x_let(sv, -1)}, yinvfull,
             GuardKind::NotPrecededByCycleArrow);
    add_rule(p, "c10", "c10" + at, {p.x_let(sv, +1)}, yfull,
             GuardKind::NotPrecededByCycleArrow);
  }
}

void add_partial_rules(Presentation &p) {
  const Forest &f = *p.forest;
  auto in_f = [&](int d) { return f.contains(d); };
  for (int d : p.complement_set) {
    const int ds = p.dq.star(d);
    const VertexId td = p.dq.tail(d);
    const std::string at = "@" + p.dq.name(d);
    if (!in_f(d) && !in_f(ds)) {
      add_rule(p, "p1", "p1" + at, {p.x_let(d, +1), p.x_let(d, -1)}, p.idem(td));
      add_rule(p, "p2", "p2" + at, {p.x_let(d, -1), p.x_let(d, +1)}, p.idem(td));
      for (int s : {+1, -1})
        add_rule(p, "p5", std::string("p5") + (s > 0 ? "+" : "-") + at,
                 {arrow_letter(p.dq, d), p.x_let(ds, s)}, p.xel(d, s) * p.arr_el(d));
    }
    if (in_f(d)) {
      Element red = p.red_el(d, +1);
      Element red_inv = p.red_el(d, -1);
      add_rule(p, "p3", "p3" + at, {arrow_letter(p.dq, d), arrow_letter(p.dq, ds)},
               red - p.idem(td));
      add_rule(p, "p6", "p6" + at, {arrow_letter(p.dq, d), p.x_let(ds, +1)},
               red * p.arr_el(d));
      add_rule(p, "p7", "p7" + at, {p.x_let(ds, +1), p.x_let(ds, +1)},
               p.xel(ds, +1) + p.arr_el(ds) * red * p.arr_el(d));
      add_rule(p, "p8", "p8" + at, {p.x_let(ds, +1), arrow_letter(p.dq, ds)},
               p.arr_el(ds) * red);
      add_rule(p, "ps1", "ps1+" + at, {p.x_let(d, +1)}, red);
      add_rule(p, "ps1", "ps1-" + at, {p.x_let(d, -1)}, red_inv);
      add_rule(p, "ps2", "ps2" + at, {p.x_let(ds, -1)},
               p.idem(p.dq.tail(ds)) - p.arr_el(ds) * red_inv * p.arr_el(d));
    } else {
      add_rule(p, "p4", "p4" + at, {arrow_letter(p.dq, d), arrow_letter(p.dq, ds)},
               p.xel(d, +1) - p.idem(td));
    }
  }
}

void build_measure(Presentation &p) {
  Measure &m = p.system.measure;
  for (const auto &[v, d] : p.cyc_fwd) m.cyc_fwd.insert(d);
  for (const auto &[v, d] : p.cyc_star) m.cyc_star.insert(d);
  m.complement_arrows = p.complement_set;
  m.pair_index_of_base.assign(static_cast<size_t>(p.dq.m), -1);
  // Forest pairs first, closer to the roots first; then the rest by id.
  std::set<int> seen;
  if (p.forest) {
    std::vector<std::pair<int, int>> fa; // (depth of tail, base id)
    for (int d : p.forest->arrows) {
      int b = p.dq.base_arrow(d);
      fa.push_back({p.forest->depth[static_cast<size_t>(
                        p.quiver.vertex_index(p.dq.tail(d)))],
                    b});
    }
    std::sort(fa.begin(), fa.end());
    for (auto &[dep, b] : fa) {
      seen.insert(b);
      m.pair_order.push_back(b);
    }
  }
  for (int d : p.complement_set) {
    int b = p.dq.base_arrow(d);
    if (!seen.insert(b).second) continue;
    m.pair_order.push_back(b);
  }
  for (size_t k = 0; k < m.pair_order.size(); ++k)
    m.pair_index_of_base[static_cast<size_t>(m.pair_order[k])] = static_cast<int>(k);

  switch (p.flavor) {
  case Flavor::Cycle:
    m.kind = Measure::Kind::N;
    break;
  case Flavor::CycleBarred:
    m.kind = Measure::Kind::NZ;
    break;
  case Flavor::Partial:
  case Flavor::PartialBarred:
    m.kind = Measure::Kind::Nprime;
    break;
  case Flavor::Combined:
    m.kind = Measure::Kind::Combined;
    break;
  }
}

void certify(Presentation &p) {
  ConfluenceReport report = p.system.check_confluence(p.dq);
  if (!report.all_resolve) {
    std::ostringstream os;
    os << flavor_name(p.flavor) << " system failed confluence certification:";
    for (const auto &r : report.results)
      if (!r.resolves) os << " " << r.ambiguity.family;
    throw ConfluenceFailure(os.str());
  }
}

} // namespace

Presentation cycle_system(int n, bool is_barred, const std::optional<std::vector<Rational>> &qspec,
                          bool do_certify) {
  if (n < 1) throw QuiverError("cycle_system: need n >= 1");
  Presentation p;
  p.flavor = is_barred ? Flavor::CycleBarred : Flavor::Cycle;
  p.quiver = cycle_quiver(n);
  p.dq = build_doubled(p.quiver);
  p.nvars = n;
  p.qspec = qspec;
  if (qspec && static_cast<int>(qspec->size()) != n)
    throw std::invalid_argument("cycle_system: q assignment size mismatch");
  p.barred.assign(static_cast<size_t>(2 * n), is_barred);
  for (int v = 0; v < n; ++v) {
    p.white.push_back(v);
    p.r_support.insert(v);
    p.cyc_fwd[v] = v;                             // a_v : v -> v+1
    p.cyc_star[v] = p.dq.star((v + n - 1) % n);   // a_{v-1}* : v -> v-1
  }
  for (const auto &[v, d] : p.cyc_fwd) p.system.guard_arrows.insert(d);
  build_measure(p);
  p.system.nvars = p.nvars;
  add_cycle_rules(p);
  add_b_rules(p);
  p.system.finalize();
  if (do_certify) certify(p);
  return p;
}

Presentation partial_system(const Quiver &q_in, const std::vector<VertexId> &white,
                            bool is_barred, const std::optional<std::vector<Rational>> &qspec,
                            bool do_certify) {
  q_in.validate();
  // Reachability from the white set is what the forest needs; components made
  // of isolated white vertices are fine (they arise as cycle complements).
  DoubledQuiver dq0 = build_doubled(q_in);
  Forest f0 = spanning_forest(dq0, white);
  // Re-orient so forest arrows lie in Q_1.
  std::vector<bool> flip(q_in.arrows.size(), false);
  for (int d : f0.arrows)
    if (d >= dq0.m) flip[static_cast<size_t>(d - dq0.m)] = true;

  Presentation p;
  p.flavor = is_barred ? Flavor::PartialBarred : Flavor::Partial;
  p.quiver = reorient(q_in, flip);
  p.dq = build_doubled(p.quiver);
  p.nvars = static_cast<int>(p.quiver.vertices.size());
  p.qspec = qspec;
  if (qspec && static_cast<int>(qspec->size()) != p.nvars)
    throw std::invalid_argument("partial_system: q assignment size mismatch");
  p.white = white;
  std::sort(p.white.begin(), p.white.end());
  p.barred.assign(static_cast<size_t>(2 * p.dq.m), is_barred);
  for (VertexId v : p.quiver.vertices)
    if (std::find(white.begin(), white.end(), v) == white.end()) p.r_support.insert(v);
  for (int d = 0; d < p.dq.arrows(); ++d) p.complement_set.insert(d);

  Forest f;
  f.roots = f0.roots;
  f.parent_arrow.assign(p.quiver.vertices.size(), -1);
  f.depth = f0.depth;
  for (size_t i = 0; i < p.quiver.vertices.size(); ++i) {
    int d = f0.parent_arrow[i];
    if (d < 0) continue;
    int nd = d >= dq0.m ? d - dq0.m : d;
    f.parent_arrow[i] = nd;
    f.arrows.push_back(nd);
  }
  std::sort(f.arrows.begin(), f.arrows.end());
  f.validate(p.dq, p.white);
  p.forest = f;

  build_measure(p);
  p.system.nvars = p.nvars;
  add_partial_rules(p);
  add_b_rules(p);
  p.system.finalize();
  if (do_certify) certify(p);
  return p;
}

Presentation combined_system(const Quiver &q_in, const std::optional<std::vector<Rational>> &qspec,
                             const CombinedOptions &opts) {
  q_in.validate();
  if (!q_in.connected()) throw Disconnected("combined_system: quiver is disconnected");
  CycleDecomposition dec0 = split_cycle(q_in);

  // Orient cycle arrows along the cyclic order v_k -> v_{k+1}.
  std::vector<bool> flip(q_in.arrows.size(), false);
  size_t ncyc = dec0.cycle_vertices.size();
  for (size_t k = 0; k < dec0.cycle_arrows.size(); ++k) {
    int a = dec0.cycle_arrows[k];
    VertexId want_tail = dec0.cycle_vertices[k];
    if (q_in.arrows[static_cast<size_t>(a)].tail != want_tail) flip[static_cast<size_t>(a)] = true;
  }
  Quiver q1 = reorient(q_in, flip);
  std::vector<VertexId> white = dec0.cycle_vertices;

  // Orient forest arrows (complement only) toward the cycle.
  DoubledQuiver dq1 = build_doubled(q1);
  Forest f1 = spanning_forest(dq1, white, dec0.complement_arrows);
  std::vector<bool> flip2(q1.arrows.size(), false);
  for (int d : f1.arrows)
    if (d >= dq1.m) flip2[static_cast<size_t>(d - dq1.m)] = true;

  Presentation p;
  p.flavor = Flavor::Combined;
  p.quiver = reorient(q1, flip2);
  int m = static_cast<int>(p.quiver.arrows.size());
  // Order: cycle originals, cycle stars, complement originals, complement stars.
  std::set<int> cyc_bases(dec0.cycle_arrows.begin(), dec0.cycle_arrows.end());
  std::vector<int> order;
  for (int a = 0; a < m; ++a)
    if (cyc_bases.count(a)) order.push_back(a);
  for (int a = 0; a < m; ++a)
    if (cyc_bases.count(a)) order.push_back(a + m);
  for (int a = 0; a < m; ++a)
    if (!cyc_bases.count(a)) order.push_back(a);
  for (int a = 0; a < m; ++a)
    if (!cyc_bases.count(a)) order.push_back(a + m);
  p.dq = build_doubled(p.quiver, order);
  p.nvars = static_cast<int>(p.quiver.vertices.size());
  p.qspec = qspec;
  if (qspec && static_cast<int>(qspec->size()) != p.nvars)
    throw std::invalid_argument("combined_system: q assignment size mismatch");
  p.white = white;
  p.cycledec = dec0;
  for (VertexId v : p.quiver.vertices) p.r_support.insert(v);
  for (int a = 0; a < m; ++a)
    if (!cyc_bases.count(a)) {
      p.complement_set.insert(a);
      p.complement_set.insert(a + m);
    }
  // Default barring per the minimal substitution: complement arrows whose
  // tail is on the cycle.
  std::set<VertexId> white_set(white.begin(), white.end());
  p.barred.assign(static_cast<size_t>(2 * m), false);
  for (int d : p.complement_set)
    if (opts.bar_all || white_set.count(p.dq.tail(d))) p.barred[static_cast<size_t>(d)] = true;

  for (size_t k = 0; k < ncyc; ++k) {
    VertexId v = dec0.cycle_vertices[k];
    int fwd = dec0.cycle_arrows[k];
    int prev = dec0.cycle_arrows[(k + ncyc - 1) % ncyc];
    p.cyc_fwd[v] = fwd;
    p.cyc_star[v] = p.dq.star(prev);
  }
  for (const auto &[v, d] : p.cyc_fwd) p.system.guard_arrows.insert(d);

  Forest f;
  f.roots = f1.roots;
  f.parent_arrow.assign(p.quiver.vertices.size(), -1);
  f.depth = f1.depth;
  for (size_t i = 0; i < p.quiver.vertices.size(); ++i) {
    int d = f1.parent_arrow[i];
    if (d < 0) continue;
    int nd = d >= dq1.m ? d - dq1.m : d;
    f.parent_arrow[i] = nd;
    f.arrows.push_back(nd);
  }
  std::sort(f.arrows.begin(), f.arrows.end());
  f.validate(p.dq, p.white);
  p.forest = f;

  build_measure(p);
  p.system.nvars = p.nvars;
  add_cycle_rules(p);
  add_partial_rules(p);
  add_b_rules(p);
  p.system.finalize();
  if (opts.certify) certify(p);
  return p;
}

std::string Presentation::family_label(const std::string &t) const {
  static const std::map<std::string, std::string> cyc = {
      {"c1|c2", "(I)"},  {"c2|c1", "(II)"},  {"c3|c4", "(III)"}, {"c4|c3", "(IV)"},
      {"c5|c1", "(V)"},  {"c6|c1", "(VI)"},  {"c8|c2", "(VII)"}, {"c7|c2", "(VIII)"},
      {"c3|c5", "(IX)"}, {"c4|c6", "(X)"},   {"c3|c8", "(XI)"},  {"c4|c7", "(XII)"}};
  static const std::map<std::string, std::string> par = {
      {"p1|p2", "(I)"},   {"p2|p1", "(II)"},  {"p5|p1", "(III)"}, {"p5|p2", "(IV)"},
      {"p6|p7", "(V)"},   {"p7|p8", "(VI)"},  {"p8|p4", "(VII)"}, {"p6|p8", "(VIII)"},
      {"p4|p6", "(IX)"},  {"p4|p5", "(X)"},   {"p4|p4", "(XI)"},  {"p3|p4", "(XII)"},
      {"p4|p3", "(XIII)"}};
  auto c = cyc.find(t);
  if (c != cyc.end()) return c->second;
  auto q = par.find(t);
  if (q != par.end()) return q->second;
  if (t == "b1|b2" || t == "b2|b1") return "(B)";
  if (t == "p7|p7") return "(VI')"; // x^3 self-overlap of the square reduction
  return "";
}

// ---------------------------------------------------------------------------
// Strong free product verification
// ---------------------------------------------------------------------------

namespace {

// Counting oracle: alternating products of irreducible r-free words and
// homogeneous r-blocks, composed along routing.
std::map<int, long long> free_product_counts(const Presentation &p, int max_len) {
  std::vector<Word> lambda_words = p.enumerate_basis(max_len, true);
  std::vector<VertexId> verts = p.quiver.vertices;
  auto vidx = [&](VertexId v) { return static_cast<size_t>(p.quiver.vertex_index(v)); };
  size_t n = verts.size();
  // lam[u][v][len]
  std::vector<std::vector<std::vector<long long>>> lam(
      n, std::vector<std::vector<long long>>(n, std::vector<long long>(static_cast<size_t>(max_len) + 1, 0)));
  for (const Word &w : lambda_words)
    if (!w.is_idempotent())
      ++lam[vidx(w.start)][vidx(w.end())][w.letters.size()];

  // G[u][v][len][type]: type 0 = empty so far, 1 = last block lambda, 2 = last block r
  std::vector<std::vector<std::vector<std::array<long long, 3>>>> G(
      n, std::vector<std::vector<std::array<long long, 3>>>(
             n, std::vector<std::array<long long, 3>>(static_cast<size_t>(max_len) + 1,
                                                      {0, 0, 0})));
  for (size_t u = 0; u < n; ++u) G[u][u][0][0] = 1;
  for (int len = 1; len <= max_len; ++len) {
    for (size_t u = 0; u < n; ++u)
      for (size_t v = 0; v < n; ++v) {
        // extend with a lambda block of size b ending at v
        for (int b = 1; b <= len; ++b)
          for (size_t mid = 0; mid < n; ++mid) {
            long long ways = lam[mid][v][static_cast<size_t>(b)];
            if (!ways) continue;
            G[u][v][static_cast<size_t>(len)][1] +=
                ways * (G[u][mid][static_cast<size_t>(len - b)][0] +
                        G[u][mid][static_cast<size_t>(len - b)][2]);
          }
        // extend with an r block (r^b or r'^b) at vertex v
        if (p.r_support.count(verts[v]))
          for (int b = 1; b <= len; ++b)
            G[u][v][static_cast<size_t>(len)][2] +=
                2 * (G[u][v][static_cast<size_t>(len - b)][0] +
                     G[u][v][static_cast<size_t>(len - b)][1]);
      }
  }
  std::map<int, long long> counts;
  for (int len = 0; len <= max_len; ++len) {
    long long total = 0;
    for (size_t u = 0; u < n; ++u)
      for (size_t v = 0; v < n; ++v)
        for (int t = 0; t < 3; ++t) total += G[u][v][static_cast<size_t>(len)][static_cast<size_t>(t)];
    counts[len] = total;
  }
  return counts;
}

} // namespace

FreeProductReport verify_strong_free_product(const Presentation &p, int max_len) {
  FreeProductReport rep;
  // (a) every bounded word over the L alphabet reduces to irreducible form
  std::set<Letter> inv = p.basis_alphabet(false);
  std::map<VertexId, std::vector<Letter>> by_from;
  for (const Letter &l : inv) by_from[l.from].push_back(l);
  std::vector<Word> stack;
  for (VertexId v : p.quiver.vertices) stack.push_back(Word(v));
  while (!stack.empty()) {
    Word w = stack.back();
    stack.pop_back();
    ++rep.words_checked;
    Element nf = p.system.normalize(Element::from_word(p.nvars, w, Laurent::one(p.nvars)));
    for (const auto &[nw, c] : nf.terms()) {
      if (!p.system.is_irreducible(nw)) {
        rep.pass = false;
        rep.failure = "normal form contains a reducible word: " + word_str(p.dq, nw);
        return rep;
      }
    }
    if (static_cast<int>(w.letters.size()) < max_len) {
      auto it = by_from.find(w.end());
      if (it != by_from.end())
        for (const Letter &l : it->second) {
          Word w2 = w;
          w2.letters.push_back(l);
          stack.push_back(w2);
        }
    }
  }
  // (b) distinct irreducible words are distinct basis elements (structural);
  // (c) counting matches the free product formula.
  std::vector<Word> irr = p.enumerate_basis(max_len, false);
  for (const Word &w : irr) rep.enumerated_counts[static_cast<int>(w.letters.size())]++;
  rep.predicted_counts = free_product_counts(p, max_len);
  for (int len = 0; len <= max_len; ++len) {
    long long a = rep.enumerated_counts.count(len) ? rep.enumerated_counts[len] : 0;
    long long b = rep.predicted_counts.count(len) ? rep.predicted_counts[len] : 0;
    if (a != b) {
      rep.pass = false;
      rep.failure = "count mismatch at length " + std::to_string(len) + ": enumerated " +
                    std::to_string(a) + ", free-product formula " + std::to_string(b);
      return rep;
    }
  }
  return rep;
}

} // namespace mpa
