#pragma once

#include "mpa/rewrite.hpp"

#include <memory>
#include <optional>

namespace mpa {

struct ConfluenceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Flavor { Cycle, CycleBarred, Partial, PartialBarred, Combined };

std::string flavor_name(Flavor f);

// For the cycle flavors, irreducible words have the shape x^m a^l / x^m (a*)^l
// per start vertex.
struct CycleBasisDescriptor {
  VertexId start = 0;
  int x_power = 0;
  int arrow_count = 0;
  bool starred = false; // direction a* instead of a
};

class Presentation {
public:
  Flavor flavor = Flavor::Cycle;
  Quiver quiver; // post-reorientation
  DoubledQuiver dq;
  std::vector<VertexId> white;                 // relation-free / cycle vertices
  std::optional<Forest> forest;                // Partial*, Combined
  std::optional<CycleDecomposition> cycledec;  // Combined
  std::map<VertexId, int> cyc_fwd;             // white vertex -> forward cycle arrow
  std::map<VertexId, int> cyc_star;            // white vertex -> star cycle arrow with that tail
  std::vector<bool> barred;                    // per doubled arrow
  std::set<VertexId> r_support;
  std::set<int> complement_set;                // doubled ids of non-cycle arrows
  ReductionSystem system;
  int nvars = 0;
  std::optional<std::vector<Rational>> qspec;

  // ---- scalar and element helpers ----
  Laurent qpow(VertexId v, int power) const;
  Element idem(VertexId v) const;
  Element scalar_at(VertexId v, int qpower) const { return qpow(v, qpower) * idem(v); }
  Element arr_el(int d) const;
  Element letter_word(const Letter &l) const;
  Letter x_let(int d, int sign) const; // presentation's letter for x_d^sign
  Element xel(int d, int sign) const;  // full element of x_d^sign over the letters
  Element r_el(VertexId v, bool prime) const;
  Element red_el(int d, int sign) const;          // forest substitution targets
  Element rho_complement(VertexId v, int sign) const;

  // Aggregate cycle elements a, a*, x^s, y^s summed over the white vertices.
  Element agg_a() const;
  Element agg_astar() const;
  Element agg_x(int sign) const;
  Element agg_y(int sign) const;
  Element agg_r(bool prime) const;

  // Rewrites cycle y-letters from parsed input: reorders a y^s -> x^s a, else
  // substitutes per the (possibly perturbed) substitution reductions.
  Element eliminate_y(const Element &e) const;

  Element drop_r(const Element &e) const;
  Element normal_form(const Element &e, bool lambda_level = false) const;
  bool is_zero_in_lambda(const Element &e) const {
    return normal_form(e, true).is_zero();
  }

  // All irreducible words of letter-length <= max_len over the basis alphabet
  // (input-only y letters excluded; lambda_level drops r/r').
  std::vector<Word> enumerate_basis(int max_len, bool lambda_level) const;

  std::optional<CycleBasisDescriptor> describe_cycle_word(const Word &w) const;

  std::set<Letter> basis_alphabet(bool lambda_level) const;

  std::string print(const Element &e) const { return element_str(dq, e); }

  // Maps the paper's ambiguity family labels ("(I)".."(XIII)", "B") from the
  // internal rule-pair tags; empty when the pair is not a named family.
  std::string family_label(const std::string &pair_tag) const;
};

struct FreeProductReport {
  bool pass = true;
  std::string failure;
  std::map<int, long long> enumerated_counts; // by length, r-blocks included
  std::map<int, long long> predicted_counts;  // free-product counting formula
  long long words_checked = 0;
};

Presentation cycle_system(int n, bool barred,
                          const std::optional<std::vector<Rational>> &qspec = std::nullopt,
                          bool certify = true);

Presentation partial_system(const Quiver &q, const std::vector<VertexId> &white, bool barred,
                            const std::optional<std::vector<Rational>> &qspec = std::nullopt,
                            bool certify = true);

struct CombinedOptions {
  bool bar_all = false; // default bars only complement arrows with tail on the cycle
  bool certify = true;
};

Presentation combined_system(const Quiver &q,
                             const std::optional<std::vector<Rational>> &qspec = std::nullopt,
                             const CombinedOptions &opts = {});

// Surjectivity/counting checks for the strong free product property at
// bounded word length.
FreeProductReport verify_strong_free_product(const Presentation &p, int max_len);

} // namespace mpa
