#include "mpa/rewrite.hpp"

#include <algorithm>
#include <sstream>

namespace mpa {

namespace {

bool is_cycle_x(const Measure &m, const Letter &l) {
  return (l.kind == LetterKind::X || l.kind == LetterKind::XBar) && m.cyc_fwd.count(l.d);
}
bool is_cycle_y(const Measure &m, const Letter &l) {
  return (l.kind == LetterKind::X || l.kind == LetterKind::XBar) && m.cyc_star.count(l.d);
}
bool is_cycle_arrow(const Measure &m, const Letter &l) {
  return l.kind == LetterKind::Arr && (m.cyc_fwd.count(l.d) || m.cyc_star.count(l.d));
}
bool is_complement_arrow(const Measure &m, const Letter &l) {
  return l.kind == LetterKind::Arr && m.complement_arrows.count(l.d);
}
bool is_complement_x(const Measure &m, const Letter &l) {
  if (l.kind != LetterKind::X && l.kind != LetterKind::XBar) return false;
  return !m.cyc_fwd.count(l.d) && !m.cyc_star.count(l.d);
}

} // namespace

std::vector<long long> Measure::value(const Word &w) const {
  const bool cycle_block = kind == Kind::N || kind == Kind::NZ || kind == Kind::Combined;
  const bool comp_block = kind == Kind::Nprime || kind == Kind::Combined;

  std::vector<long long> v;
  if (cycle_block) {
    long long n_a = 0, n_pairs = 0, n_adj = 0, n_y = 0;
    long long arrows_seen = 0;
    for (size_t i = 0; i < w.letters.size(); ++i) {
      const Letter &l = w.letters[i];
      bool xlike = is_cycle_x(*this, l) || is_cycle_y(*this, l);
      if (xlike) n_pairs += arrows_seen;
      if (is_cycle_arrow(*this, l)) ++arrows_seen;
      if (l.kind == LetterKind::Arr && cyc_fwd.count(l.d)) {
        ++n_a;
        if (i + 1 < w.letters.size() && is_cycle_x(*this, w.letters[i + 1])) ++n_adj;
      }
      if (is_cycle_y(*this, l)) ++n_y;
    }
    v.push_back(n_a);
    v.push_back(n_pairs);
    v.push_back(n_adj);
    v.push_back(n_y);
  }
  if (comp_block) {
    std::vector<long long> phi2(pair_order.size(), 0);
    long long middle = 0, arrows_seen = 0;
    for (const Letter &l : w.letters) {
      int base = -1;
      if (l.d >= 0 && (l.kind == LetterKind::Arr || l.kind == LetterKind::X ||
                       l.kind == LetterKind::XBar)) {
        // complement letters only; cycle letters are classified above
        if (is_complement_arrow(*this, l) || is_complement_x(*this, l)) {
          int b = l.d;
          size_t m = pair_index_of_base.size();
          base = (static_cast<size_t>(b) < m) ? b : b - static_cast<int>(m);
        }
      }
      if (base >= 0 && pair_index_of_base[static_cast<size_t>(base)] >= 0) {
        size_t k = static_cast<size_t>(pair_index_of_base[static_cast<size_t>(base)]);
        if (l.kind == LetterKind::Arr)
          phi2[k] += 2;
        else
          phi2[k] += (l.sign > 0) ? 3 : 6;
      }
      if (is_complement_x(*this, l)) middle += arrows_seen;
      if (is_complement_arrow(*this, l)) ++arrows_seen;
    }
    v.insert(v.end(), phi2.begin(), phi2.end());
    v.push_back(middle);
  }
  long long n_r = 0;
  for (const Letter &l : w.letters)
    if (l.kind == LetterKind::R || l.kind == LetterKind::RPrime) ++n_r;
  v.push_back(n_r);
  v.push_back(static_cast<long long>(w.letters.size()));
  return v;
}

bool measure_less(const std::vector<long long> &a, const std::vector<long long> &b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void ReductionSystem::finalize() {
  for (const Rule &r : rules) {
    if (r.pattern.empty()) throw std::logic_error("rule '" + r.name + "' has empty pattern");
    Word pw(r.pattern.front().from, r.pattern);
    pw.validate();
    for (const auto &[w, c] : r.replacement.terms()) {
      if (w.start != pw.start || w.end() != pw.end())
        throw RoutingMismatch("rule '" + r.name + "': replacement routing differs from pattern");
    }
    for (const Letter &l : r.pattern) alphabet.insert(l);
    for (const auto &[w, c] : r.replacement.terms())
      for (const Letter &l : w.letters) alphabet.insert(l);
  }
  cache_.clear();
}

std::vector<long long> ReductionSystem::measure_value(const Word &w) const {
  for (const Letter &l : w.letters)
    if (!alphabet.count(l))
      throw UnknownLetter("measure_value: letter outside the system alphabet");
  return measure.value(w);
}

bool ReductionSystem::matches_at(const Word &w, const Rule &r, size_t pos) const {
  if (pos + r.pattern.size() > w.letters.size()) return false;
  for (size_t k = 0; k < r.pattern.size(); ++k)
    if (!(w.letters[pos + k] == r.pattern[k])) return false;
  if (r.guard == GuardKind::NotPrecededByCycleArrow && pos > 0) {
    const Letter &prev = w.letters[pos - 1];
    if (prev.kind == LetterKind::Arr && guard_arrows.count(prev.d)) return false;
  }
  return true;
}

std::optional<ReductionSystem::Match>
ReductionSystem::find_match(const Word &w, Strategy strategy, std::mt19937_64 *rng) const {
  if (strategy == Strategy::Leftmost) {
    // Earliest-listed rule, leftmost match of that rule.
    for (int r = 0; r < static_cast<int>(rules.size()); ++r)
      for (size_t pos = 0; pos + rules[static_cast<size_t>(r)].pattern.size() <= w.letters.size();
           ++pos)
        if (matches_at(w, rules[static_cast<size_t>(r)], pos)) return Match{pos, r};
    return std::nullopt;
  }
  std::vector<Match> all;
  for (int r = 0; r < static_cast<int>(rules.size()); ++r)
    for (size_t pos = 0; pos + rules[static_cast<size_t>(r)].pattern.size() <= w.letters.size();
         ++pos)
      if (matches_at(w, rules[static_cast<size_t>(r)], pos)) all.push_back({pos, r});
  if (all.empty()) return std::nullopt;
  if (strategy == Strategy::Rightmost) {
    auto it = std::max_element(all.begin(), all.end(), [](const Match &a, const Match &b) {
      if (a.pos != b.pos) return a.pos < b.pos;
      return a.rule > b.rule;
    });
    return *it;
  }
  return all[(*rng)() % all.size()];
}

Element ReductionSystem::rewrite_once(const Word &w, int rule_idx, size_t pos) const {
  const Rule &r = rules[static_cast<size_t>(rule_idx)];
  Element out(nvars);
  std::vector<Letter> prefix(w.letters.begin(), w.letters.begin() + static_cast<long>(pos));
  std::vector<Letter> suffix(w.letters.begin() + static_cast<long>(pos + r.pattern.size()),
                             w.letters.end());
  auto base = measure.value(w);
  for (const auto &[rw, rc] : r.replacement.terms()) {
    Word nw(w.start, prefix);
    nw.letters.insert(nw.letters.end(), rw.letters.begin(), rw.letters.end());
    nw.letters.insert(nw.letters.end(), suffix.begin(), suffix.end());
    if (!measure_less(measure.value(nw), base))
      throw MeasureViolation(r.name, w,
                             "rule '" + r.name + "' did not strictly decrease the measure");
    out.add(nw, rc);
  }
  return out;
}

Element ReductionSystem::normalize_word(const Word &w, bool use_cache) const {
  if (use_cache) {
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
  }
  Element nf(nvars);
  auto match = find_match(w, Strategy::Leftmost, nullptr);
  if (!match) {
    nf.add(w, Laurent::one(nvars));
  } else {
    Element stepped = rewrite_once(w, match->rule, match->pos);
    for (const auto &[w2, c2] : stepped.terms()) nf += c2 * normalize_word(w2, use_cache);
  }
  if (use_cache) cache_.emplace(w, nf);
  return nf;
}

Element ReductionSystem::normalize(const Element &e, Strategy strategy, unsigned seed,
                                   bool use_cache) const {
  if (strategy == Strategy::Leftmost) {
    Element out(nvars);
    for (const auto &[w, c] : e.terms()) out += c * normalize_word(w, use_cache);
    return out;
  }
  std::mt19937_64 rng(seed);
  Element current = e;
  Element done(nvars);
  while (!current.is_zero()) {
    // Pick the first reducible word under the canonical order and rewrite it
    // with the requested strategy.
    bool any = false;
    for (const auto &[w, c] : current.terms()) {
      auto match = find_match(w, strategy, &rng);
      if (!match) continue;
      Element stepped = rewrite_once(w, match->rule, match->pos);
      Element next = current;
      next.add(w, -c);
      next += c * stepped;
      current = std::move(next);
      any = true;
      break;
    }
    if (!any) {
      done += current;
      break;
    }
  }
  return done;
}

Element ReductionSystem::normalize_with_transcript(const Element &e,
                                                   std::vector<TranscriptStep> &steps,
                                                   const DoubledQuiver &dq) const {
  Element current = e;
  for (;;) {
    std::optional<Match> match;
    Word where;
    Laurent coeff;
    for (const auto &[w, c] : current.terms()) {
      match = find_match(w, Strategy::Leftmost, nullptr);
      if (match) {
        where = w;
        coeff = c;
        break;
      }
    }
    if (!match) return current;
    Element stepped = rewrite_once(where, match->rule, match->pos);
    current.add(where, -coeff);
    current += coeff * stepped;
    steps.push_back({rules[static_cast<size_t>(match->rule)].name, match->pos,
                     element_str(dq, current)});
  }
}

bool ReductionSystem::is_irreducible(const Word &w) const {
  return !find_match(w, Strategy::Leftmost, nullptr).has_value();
}

std::vector<Ambiguity> ReductionSystem::ambiguities() const {
  std::vector<Ambiguity> out;
  std::set<std::tuple<Word, int, int, size_t>> seen;
  auto push = [&](const Word &w, int r1, int r2, size_t pos) {
    if (!seen.insert({w, r1, r2, pos}).second) return;
    Ambiguity a;
    a.word = w;
    a.rule_left = r1;
    a.rule_right = r2;
    a.position = pos;
    a.family = rules[static_cast<size_t>(r1)].family + "|" + rules[static_cast<size_t>(r2)].family;
    out.push_back(a);
  };
  for (int i = 0; i < static_cast<int>(rules.size()); ++i) {
    const auto &p1 = rules[static_cast<size_t>(i)].pattern;
    for (int j = 0; j < static_cast<int>(rules.size()); ++j) {
      const auto &p2 = rules[static_cast<size_t>(j)].pattern;
      // Proper overlaps: a nonempty suffix of p1 equals a prefix of p2.
      for (size_t o = 1; o < std::min(p1.size(), p2.size()) + 1; ++o) {
        if (o == p1.size() && o == p2.size()) continue; // identical-position match
        if (o > p1.size() || o > p2.size()) continue;
        bool ok = true;
        for (size_t k = 0; k < o; ++k)
          if (!(p1[p1.size() - o + k] == p2[k])) {
            ok = false;
            break;
          }
        if (!ok) continue;
        if (o == p2.size()) continue; // inclusion handled below
        Word w(p1.front().from, p1);
        for (size_t k = o; k < p2.size(); ++k) w.letters.push_back(p2[k]);
        size_t pos = p1.size() - o;
        if (!matches_at(w, rules[static_cast<size_t>(j)], pos)) continue; // guard failed
        if (!matches_at(w, rules[static_cast<size_t>(i)], 0)) continue;
        push(w, i, j, pos);
      }
      // Inclusion ambiguities: p2 strictly inside p1.
      if (p2.size() < p1.size() && i != j) {
        for (size_t off = 0; off + p2.size() <= p1.size(); ++off) {
          bool ok = true;
          for (size_t k = 0; k < p2.size(); ++k)
            if (!(p1[off + k] == p2[k])) {
              ok = false;
              break;
            }
          if (!ok) continue;
          Word w(p1.front().from, p1);
          if (!matches_at(w, rules[static_cast<size_t>(j)], off)) continue;
          push(w, i, j, off);
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Ambiguity &a, const Ambiguity &b) {
    if (!(a.word == b.word)) return a.word < b.word;
    if (a.rule_left != b.rule_left) return a.rule_left < b.rule_left;
    return a.rule_right < b.rule_right;
  });
  return out;
}

ConfluenceReport ReductionSystem::check_confluence(const DoubledQuiver &dq) const {
  ConfluenceReport report;
  for (const Ambiguity &a : ambiguities()) {
    AmbiguityResult res;
    res.ambiguity = a;
    Element left = rewrite_once(a.word, a.rule_left, 0);
    Element right = rewrite_once(a.word, a.rule_right, a.position);
    res.left_steps.push_back({rules[static_cast<size_t>(a.rule_left)].name, 0,
                              element_str(dq, left)});
    res.right_steps.push_back({rules[static_cast<size_t>(a.rule_right)].name, a.position,
                               element_str(dq, right)});
    res.left_nf = normalize_with_transcript(left, res.left_steps, dq);
    res.right_nf = normalize_with_transcript(right, res.right_steps, dq);
    res.resolves = (res.left_nf == res.right_nf);
    if (!res.resolves) report.all_resolve = false;
    report.results.push_back(std::move(res));
  }
  return report;
}

std::set<std::string> ConfluenceReport::families() const {
  std::set<std::string> f;
  for (const auto &r : results) f.insert(r.ambiguity.family);
  return f;
}

} // namespace mpa
