#pragma once

#include "mpa/word.hpp"

#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace mpa {

struct UnknownLetter : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MeasureViolation : std::runtime_error {
  MeasureViolation(std::string rule, Word w, std::string what)
      : std::runtime_error(std::move(what)), rule_name(std::move(rule)), word(std::move(w)) {}
  std::string rule_name;
  Word word;
};

enum class GuardKind : unsigned char {
  None,
  NotPrecededByCycleArrow // paper's "(if not preceded by a)" one-letter look-behind
};

struct Rule {
  std::string name;   // unique instance name, e.g. "r6@2"
  std::string family; // family tag, e.g. "r6" (used to group ambiguities)
  std::vector<Letter> pattern;
  Element replacement;
  GuardKind guard = GuardKind::None;
};

// Well-founded measures: the paper's counting tuples, plus a trailing word
// length so inverse reductions decrease strictly in arrow-free context.
struct Measure {
  enum class Kind { N, Nprime, NZ, Combined };
  Kind kind = Kind::N;

  // Cycle letter classification (N / NZ / Combined).
  std::set<int> cyc_fwd;  // forward cycle arrows: the aggregate "a"
  std::set<int> cyc_star; // their stars: "a*"; x lives on fwd tails, y on star tails

  // Complement classification (Nprime / Combined): unordered {d,d*} pairs in
  // the forest-first order, keyed by base arrow id.
  std::vector<int> pair_order;          // base arrow ids, measure-major first
  std::vector<int> pair_index_of_base;  // base arrow id -> position or -1
  std::set<int> complement_arrows;      // doubled ids counted as complement arrows

  std::vector<long long> value(const Word &w) const;
};

bool measure_less(const std::vector<long long> &a, const std::vector<long long> &b);

enum class Strategy { Leftmost, Rightmost, Random };

struct TranscriptStep {
  std::string rule;
  size_t position = 0;
  std::string element_after; // canonical rendering of the intermediate element
};

struct Ambiguity {
  Word word;
  int rule_left = 0;   // matches at position 0
  int rule_right = 0;  // matches at `position`
  size_t position = 0;
  std::string family;  // "<fam_left>|<fam_right>"
};

struct AmbiguityResult {
  Ambiguity ambiguity;
  bool resolves = false;
  std::vector<TranscriptStep> left_steps;
  std::vector<TranscriptStep> right_steps;
  Element left_nf;
  Element right_nf;
};

struct ConfluenceReport {
  std::vector<AmbiguityResult> results;
  bool all_resolve = true;
  std::set<std::string> families() const;
};

class ReductionSystem {
public:
  std::vector<Rule> rules;
  Measure measure;
  std::set<int> guard_arrows; // forward cycle arrows for look-behind guards
  std::set<Letter> alphabet;
  int nvars = 0;

  void finalize(); // build match index, validate rules

  std::vector<long long> measure_value(const Word &w) const;

  // Unique normal form. Every applied step is checked to strictly decrease
  // the measure; MeasureViolation otherwise. The per-word cache is only used
  // by the default strategy.
  Element normalize(const Element &e, Strategy strategy = Strategy::Leftmost,
                    unsigned seed = 0, bool use_cache = true) const;

  Element normalize_with_transcript(const Element &e, std::vector<TranscriptStep> &steps,
                                    const DoubledQuiver &dq) const;

  bool is_irreducible(const Word &w) const;

  std::vector<Ambiguity> ambiguities() const;
  ConfluenceReport check_confluence(const DoubledQuiver &dq_for_printing) const;

  Element rewrite_once(const Word &w, int rule_idx, size_t pos) const;

  void clear_cache() const { cache_.clear(); }

private:
  struct Match {
    size_t pos;
    int rule;
  };
  bool matches_at(const Word &w, const Rule &r, size_t pos) const;
  std::optional<Match> find_match(const Word &w, Strategy strategy, std::mt19937_64 *rng) const;
  Element normalize_word(const Word &w, bool use_cache) const;

  mutable std::map<Word, Element> cache_;
};

} // namespace mpa
