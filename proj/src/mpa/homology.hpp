#pragma once

#include "mpa/theta.hpp"

namespace mpa {

// Generators of the bimodule complex and its dual. EtaAD(c) is the dual
// generator pairing with eta_{c*}; it anchors like eta_c.
enum class GenKind : unsigned char { EtaV, EtaA, EtaVD, EtaAD };

struct Gen {
  GenKind kind = GenKind::EtaV;
  int idx = 0; // vertex or doubled arrow id
  bool operator==(const Gen &o) const { return kind == o.kind && idx == o.idx; }
  bool operator<(const Gen &o) const {
    if (kind != o.kind) return kind < o.kind;
    return idx < o.idx;
  }
};

// Sum of left (x) gen (x) right with Laurent coefficients; the left/right
// words are kept Lambda-normalized so equality is canonical-form equality.
class BimodElement {
public:
  explicit BimodElement(const Presentation &p) : p_(&p) {}

  const Presentation &presentation() const { return *p_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::tuple<Gen, Word, Word>, Laurent> &terms() const { return terms_; }

  void add_sandwich(const Element &left, Gen g, const Element &right,
                    const Laurent &scale);
  BimodElement operator-() const;
  friend BimodElement operator+(const BimodElement &a, const BimodElement &b);
  friend BimodElement operator-(const BimodElement &a, const BimodElement &b);
  BimodElement &operator+=(const BimodElement &b) { return *this = *this + b; }
  friend bool operator==(const BimodElement &a, const BimodElement &b) {
    return a.terms_ == b.terms_;
  }

  BimodElement left_mul(const Element &x) const;
  BimodElement right_mul(const Element &y) const;

  std::string str() const;

private:
  const Presentation *p_;
  std::map<std::tuple<Gen, Word, Word>, Laurent> terms_;
};

using GenTable = std::map<Gen, BimodElement>;

// The complex P_2 --alpha--> P_1 --beta--> P_0 --gamma--> Lambda of Shaw's
// bimodule resolution, its theta-twisted dual, and the phi comparison maps of
// the self-duality theorem, at the generator level over a cycle presentation.
class HomologyContext {
public:
  explicit HomologyContext(const Presentation &p);

  const Presentation &p() const { return *p_; }

  BimodElement alpha(VertexId v) const;       // image in P_1
  BimodElement beta(int d) const;             // image in P_0
  Element gamma_of_beta(int d) const;         // gamma applied to beta(eta_d)
  Element psi2(VertexId v) const;             // rho e_v - q e_v

  // Mechanical duals (transposes through the evaluation pairing).
  GenTable alpha_dual() const; // EtaAD(c) -> sum of EtaVD sandwiches
  GenTable beta_dual() const;  // EtaVD(v) -> sum of EtaAD sandwiches

  // phi_0(eta_v) = q eta_v^vee; phi_1(eta_a) = xi_{a*}: the case sandwich.
  BimodElement phi0(VertexId v) const;
  BimodElement phi1(int d) const;
  // Coefficient pair of phi1 and its inverse.
  std::pair<Element, Element> phi1_coeffs(int d) const;

  // theta-twists: coefficients pass through the opposite-order theta; dual-1
  // elements are conjugated through the xi basis on the way.
  BimodElement twist_dual0(const BimodElement &e) const;
  BimodElement twist_dual1(const BimodElement &e) const;

  CheckReport verify_complex() const;
  CheckReport verify_selfduality() const;
  CheckReport verify_dual_tables() const; // mechanical alpha-dual vs the case formulas

private:
  BimodElement delta(int d) const; // Delta_a of the alpha formula
  const Presentation *p_;
  OrderedContext ctx_;   // engine order, q on the left
  OrderedContext twist_; // reversed order, q on the right
};

CheckReport verify_homology_suite(const Presentation &p);

} // namespace mpa
